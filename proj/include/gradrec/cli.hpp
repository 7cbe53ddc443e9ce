#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gradrec/analysis.hpp"
#include "gradrec/error.hpp"
#include "gradrec/inf_sup.hpp"
#include "gradrec/io.hpp"
#include "gradrec/projection.hpp"
#include "gradrec/verify.hpp"

namespace gradrec::cli {

enum class Command { recover, study, verify, infsup };
enum class MethodChoice { oblique, orthogonal, both };
enum class Format { csv, json };

/// Process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_usage = 2,
    exit_numerical = 3,
};

/// Everything a single invocation needs. Spec strings stay raw here and are
/// all parsed before any computation starts.
struct RunConfig {
    Command command = Command::recover;
    double alpha = 0.0;
    double beta = 1.0;
    std::string mesh;
    std::string function;
    MethodChoice method = MethodChoice::oblique;
    Norm norm = Norm::l2_interior;
    std::vector<std::size_t> levels;
    Format format = Format::csv;
    std::optional<std::string> out_path;
    std::uint64_t seed = 1;
    Suite suite = Suite::all;
    double tolerance_scale = 1.0;
};

inline int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::singular_system:
        case ErrorCode::no_convergence: return exit_numerical;
        default: return exit_usage;
    }
}

inline std::string method_name(Method m) { return m == Method::oblique ? "oblique" : "orthogonal"; }

inline std::vector<Method> methods_of(MethodChoice c) {
    switch (c) {
        case MethodChoice::oblique: return {Method::oblique};
        case MethodChoice::orthogonal: return {Method::orthogonal};
        case MethodChoice::both: return {Method::oblique, Method::orthogonal};
    }
    return {Method::oblique};
}

namespace detail {

using nlohmann::json;

inline json to_json(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

inline std::string render_table(const Table& t, Format format, const std::string& command) {
    if (format == Format::csv) return write_csv(t);
    json rows = json::array();
    for (const auto& row : t.rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < t.header.size(); ++c) {
            const bool index = t.header[c] == "i" || t.header[c] == "n";
            obj[t.header[c]] = index && row[c] ? json(static_cast<std::uint64_t>(*row[c])) : to_json(row[c]);
        }
        rows.push_back(std::move(obj));
    }
    return json{{"command", command}, {"rows", std::move(rows)}}.dump(2) + "\n";
}

/// Per-node table: i, x, u, g (per method), exact derivative, signed error.
inline Table recover_table(const FunctionSpec& spec, const Mesh& m, MethodChoice choice) {
    const auto methods = methods_of(choice);
    const auto u = interpolate(spec, m);
    std::vector<NodalFunction> gs;
    for (const auto method : methods) gs.push_back(recover(u, method));

    Table t;
    t.header = {"i", "x", "u"};
    const bool single = methods.size() == 1;
    for (const auto method : methods) t.header.push_back(single ? "g" : "g_" + method_name(method));
    t.header.push_back("du_exact");
    for (const auto method : methods) t.header.push_back(single ? "err" : "err_" + method_name(method));

    const bool exact = spec.has_exact_derivative();
    for (std::size_t i = 0; i < m.node_count(); ++i) {
        std::vector<std::optional<double>> row{static_cast<double>(i), m[i], u[i]};
        for (const auto& g : gs) row.emplace_back(g[i]);
        const std::optional<double> du = exact ? std::optional(spec.derivative(m[i])) : std::nullopt;
        row.push_back(du);
        for (const auto& g : gs) row.push_back(du ? std::optional(g[i] - *du) : std::nullopt);
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline std::string render_study(const std::vector<std::pair<Method, ConvergenceStudy>>& studies,
                                Format format) {
    const bool single = studies.size() == 1;
    if (format == Format::json) {
        json out = json::object();
        out["command"] = "study";
        json list = json::array();
        for (const auto& [method, study] : studies) {
            json records = json::array();
            for (const auto& r : study.records) {
                records.push_back(
                    {{"n", r.n}, {"h", r.h}, {"error", r.error}, {"rate", to_json(r.rate)}});
            }
            list.push_back({{"method", method_name(method)},
                            {"records", std::move(records)},
                            {"slope", to_json(study.slope)}});
        }
        out["studies"] = std::move(list);
        return out.dump(2) + "\n";
    }
    std::string csv = single ? "n,h,error,rate\n" : "method,n,h,error,rate\n";
    for (const auto& [method, study] : studies) {
        const std::string prefix = single ? "" : method_name(method) + ",";
        for (const auto& r : study.records) {
            csv += prefix + std::to_string(r.n) + "," + format_number(r.h) + "," +
                   format_number(r.error) + "," + (r.rate ? format_number(*r.rate) : "") + "\n";
        }
        csv += prefix + "fit,,," + (study.slope ? format_number(*study.slope) : "") + "\n";
    }
    return csv;
}

inline std::string render_checks(const std::vector<CheckResult>& checks, Format format) {
    auto relation = [](Relation r) { return r == Relation::within ? "within" : "at-least"; };
    if (format == Format::json) {
        json list = json::array();
        for (const auto& c : checks) {
            list.push_back({{"suite", c.suite},
                            {"check", c.name},
                            {"relation", relation(c.relation)},
                            {"measured", c.measured},
                            {"predicted", c.predicted},
                            {"tolerance", c.tolerance},
                            {"passed", c.passed}});
        }
        return json{{"command", "verify"}, {"passed", all_passed(checks)}, {"checks", std::move(list)}}
                   .dump(2) +
               "\n";
    }
    std::string csv = "suite,check,relation,measured,predicted,tolerance,status\n";
    for (const auto& c : checks) {
        csv += c.suite + "," + c.name + "," + relation(c.relation) + "," + format_number(c.measured) +
               "," + format_number(c.predicted) + "," + format_number(c.tolerance) + "," +
               (c.passed ? "PASS" : "FAIL") + "\n";
    }
    return csv;
}

// Writes next to the destination and renames, so a failed run never leaves
// a partial file behind.
inline void write_atomically(const std::string& path, const std::string& data) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::io_error, "cannot write '" + tmp.string() + "'");
        out << data;
        out.flush();
        if (!out) throw Error(ErrorCode::io_error, "write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorCode::io_error, "cannot rename onto '" + path + "'");
    }
}

inline void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::parse_error, what);
}

}  // namespace detail

/**
 * Executes one command. Data goes to `out` (or to config.out_path), and
 * failures produce a single `error: <code>: <message>` line on `err` with no
 * data output. Returns the process exit status.
 */
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (!(config.beta > config.alpha)) {
            throw Error(ErrorCode::invalid_interval, "domain requires alpha < beta");
        }
        std::string payload;
        int status = exit_ok;

        switch (config.command) {
            case Command::recover: {
                detail::require(!config.mesh.empty(), "recover needs --mesh");
                detail::require(!config.function.empty(), "recover needs --func");
                const Mesh m = parse_mesh_spec(config.mesh, config.alpha, config.beta);
                const auto spec = parse_function_spec(config.function);
                payload = detail::render_table(detail::recover_table(spec, m, config.method),
                                               config.format, "recover");
                break;
            }
            case Command::study: {
                detail::require(!config.mesh.empty(), "study needs --mesh");
                detail::require(!config.function.empty(), "study needs --func");
                detail::require(!config.levels.empty(), "study needs --levels");
                const auto family =
                    parse_mesh_family(config.mesh, config.alpha, config.beta, config.seed);
                const auto spec = parse_function_spec(config.function);
                spec.require_exact_derivative();
                std::vector<std::pair<Method, ConvergenceStudy>> studies;
                for (const auto method : methods_of(config.method)) {
                    studies.emplace_back(method, convergence_study(spec, family, config.levels,
                                                                   method, config.norm));
                }
                payload = detail::render_study(studies, config.format);
                break;
            }
            case Command::verify: {
                VerifyOptions opts;
                opts.seed = config.seed;
                opts.tolerance_scale = config.tolerance_scale;
                opts.alpha = config.alpha;
                opts.beta = config.beta;
                const auto checks = run_verify(config.suite, opts);
                payload = detail::render_checks(checks, config.format);
                if (!all_passed(checks)) status = exit_verification_failed;
                break;
            }
            case Command::infsup: {
                const auto family = parse_mesh_family(config.mesh.empty() ? "uniform" : config.mesh,
                                                      config.alpha, config.beta, config.seed);
                const auto levels = config.levels.empty()
                                        ? std::vector<std::size_t>(inf_sup_levels.begin(),
                                                                   inf_sup_levels.end())
                                        : config.levels;
                Table t;
                t.header = {"n", "h", "inf_sup"};
                for (const auto n : levels) {
                    const Mesh m = family.make(n);
                    t.rows.push_back({static_cast<double>(n), mesh_size(m), estimate_inf_sup(m)});
                }
                payload = detail::render_table(t, config.format, "infsup");
                break;
            }
        }

        if (config.out_path) {
            detail::write_atomically(*config.out_path, payload);
        } else {
            out << payload;
            out.flush();
        }
        return status;
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << "\n";
        return exit_numerical;
    }
}

}  // namespace gradrec::cli
