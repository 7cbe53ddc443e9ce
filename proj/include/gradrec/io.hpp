#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "gradrec/error.hpp"
#include "gradrec/function_spec.hpp"
#include "gradrec/mesh.hpp"

namespace gradrec {

/// Shortest decimal representation that parses back to the same double.
inline std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline Error parse_failure(std::string_view what, std::string_view text, std::size_t pos) {
    return Error(ErrorCode::parse_error, std::string(what) + " at position " + std::to_string(pos) +
                                             " in '" + std::string(text) + "'");
}

struct Token {
    std::string_view text;
    std::size_t offset;  // position within the full spec string
};

inline std::vector<Token> split(std::string_view s, char sep, std::size_t base) {
    std::vector<Token> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        const auto end = pos == std::string_view::npos ? s.size() : pos;
        out.push_back(Token{s.substr(start, end - start), base + start});
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline double to_double(const Token& t, std::string_view full) {
    double v = 0.0;
    const auto* first = t.text.data();
    const auto* last = first + t.text.size();
    const auto res = std::from_chars(first, last, v);
    if (t.text.empty() || res.ec != std::errc() || res.ptr != last) {
        throw parse_failure("expected a number", full, t.offset);
    }
    return v;
}

inline std::uint64_t to_unsigned(const Token& t, std::string_view full) {
    std::uint64_t v = 0;
    const auto* first = t.text.data();
    const auto* last = first + t.text.size();
    const auto res = std::from_chars(first, last, v);
    if (t.text.empty() || res.ec != std::errc() || res.ptr != last) {
        throw parse_failure("expected a non-negative integer", full, t.offset);
    }
    return v;
}

// "kind:args" -> (kind, args tokens). args empty when there is no colon.
inline std::pair<std::string_view, std::vector<Token>> split_spec(std::string_view s) {
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) return {s, {}};
    return {s.substr(0, colon), split(s.substr(colon + 1), ',', colon + 1)};
}

inline void expect_args(const std::vector<Token>& args, std::size_t lo, std::size_t hi,
                        std::string_view kind, std::string_view full) {
    if (args.size() < lo || args.size() > hi) {
        const auto pos = args.empty() ? full.size() : args.back().offset;
        throw parse_failure(std::string(kind) + " expects " + std::to_string(lo) +
                                (lo == hi ? "" : ".." + std::to_string(hi)) + " argument(s), got " +
                                std::to_string(args.size()),
                            full, pos);
    }
}

}  // namespace detail

/// Reads a two-column headerless CSV of x,u rows with increasing x.
inline FunctionSpec read_sampled_function(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
    std::vector<double> xs;
    std::vector<double> us;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = detail::split(line, ',', 0);
        if (cells.size() != 2) {
            throw Error(ErrorCode::parse_error,
                        path + ":" + std::to_string(row) + ": expected 2 columns x,u");
        }
        try {
            xs.push_back(detail::to_double(cells[0], line));
            us.push_back(detail::to_double(cells[1], line));
        } catch (const Error& e) {
            throw Error(ErrorCode::parse_error, path + ":" + std::to_string(row) + ": " + e.what());
        }
        if (xs.size() > 1 && !(xs.back() > xs[xs.size() - 2])) {
            throw Error(ErrorCode::parse_error,
                        path + ":" + std::to_string(row) + ": x values must be increasing");
        }
    }
    if (xs.empty()) throw Error(ErrorCode::parse_error, path + ": no samples");
    return FunctionSpec::sampled(std::move(xs), std::move(us));
}

/// `poly:c0,c1,...` | `sin:A,k` | `exp:s` | `file:PATH`.
inline FunctionSpec parse_function_spec(std::string_view s) {
    if (s.empty()) throw detail::parse_failure("empty function spec", s, 0);
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) {
        throw detail::parse_failure("expected 'kind:args'", s, s.size());
    }
    const auto kind = s.substr(0, colon);
    if (kind == "file") {
        const auto path = s.substr(colon + 1);
        if (path.empty()) throw detail::parse_failure("missing file path", s, colon + 1);
        return read_sampled_function(std::string(path));
    }
    const auto [name, args] = detail::split_spec(s);
    if (name == "poly") {
        detail::expect_args(args, 1, std::size_t(-1), name, s);
        std::vector<double> c;
        for (const auto& t : args) c.push_back(detail::to_double(t, s));
        return FunctionSpec::polynomial(std::move(c));
    }
    if (name == "sin") {
        detail::expect_args(args, 2, 2, name, s);
        return FunctionSpec::sinusoid(detail::to_double(args[0], s), detail::to_double(args[1], s));
    }
    if (name == "exp") {
        detail::expect_args(args, 1, 1, name, s);
        return FunctionSpec::exponential(detail::to_double(args[0], s));
    }
    throw detail::parse_failure("unknown function kind '" + std::string(name) + "'", s, 0);
}

/// `uniform:n` | `graded:n,delta` | `perturbed:n,rho,seed` on [alpha, beta].
inline Mesh parse_mesh_spec(std::string_view s, double alpha, double beta) {
    const auto [name, args] = detail::split_spec(s);
    if (name == "uniform") {
        detail::expect_args(args, 1, 1, name, s);
        return uniform(alpha, beta, detail::to_unsigned(args[0], s));
    }
    if (name == "graded") {
        detail::expect_args(args, 2, 2, name, s);
        return graded(alpha, beta, detail::to_unsigned(args[0], s), detail::to_double(args[1], s));
    }
    if (name == "perturbed") {
        detail::expect_args(args, 3, 3, name, s);
        return perturbed(alpha, beta, detail::to_unsigned(args[0], s), detail::to_double(args[1], s),
                         detail::to_unsigned(args[2], s));
    }
    throw detail::parse_failure("unknown mesh kind '" + std::string(name) + "'", s, 0);
}

/// Refinement family without an element count: `uniform` | `graded:delta` |
/// `perturbed:rho[,seed]`. Parameters are range-checked immediately.
inline MeshFamily parse_mesh_family(std::string_view s, double alpha, double beta,
                                    std::uint64_t default_seed) {
    const auto [name, args] = detail::split_spec(s);
    MeshFamily f;
    f.alpha = alpha;
    f.beta = beta;
    f.seed = default_seed;
    if (name == "uniform") {
        if (!args.empty()) detail::expect_args(args, 0, 0, name, s);
        f.kind = MeshFamily::Kind::uniform;
    } else if (name == "graded") {
        detail::expect_args(args, 1, 1, name, s);
        f.kind = MeshFamily::Kind::graded;
        f.delta = detail::to_double(args[0], s);
    } else if (name == "perturbed") {
        detail::expect_args(args, 1, 2, name, s);
        f.kind = MeshFamily::Kind::perturbed;
        f.rho = detail::to_double(args[0], s);
        if (args.size() == 2) f.seed = detail::to_unsigned(args[1], s);
    } else {
        throw detail::parse_failure("unknown mesh family '" + std::string(name) + "'", s, 0);
    }
    f.make(3);
    return f;
}

/// `n1,n2,...`.
inline std::vector<std::size_t> parse_levels(std::string_view s) {
    std::vector<std::size_t> levels;
    for (const auto& t : detail::split(s, ',', 0)) {
        levels.push_back(static_cast<std::size_t>(detail::to_unsigned(t, s)));
    }
    return levels;
}

/// `alpha,beta`.
inline std::pair<double, double> parse_domain(std::string_view s) {
    const auto parts = detail::split(s, ',', 0);
    if (parts.size() != 2) throw detail::parse_failure("expected 'alpha,beta'", s, 0);
    const double a = detail::to_double(parts[0], s);
    const double b = detail::to_double(parts[1], s);
    if (!(b > a)) {
        throw Error(ErrorCode::invalid_interval, "domain requires alpha < beta, got '" +
                                                     std::string(s) + "'");
    }
    return {a, b};
}

/// Numeric CSV table; empty cells are std::nullopt.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;
};

inline std::string write_csv(const Table& t) {
    std::string out;
    for (std::size_t c = 0; c < t.header.size(); ++c) {
        if (c) out += ',';
        out += t.header[c];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            if (row[c]) out += format_number(*row[c]);
        }
        out += '\n';
    }
    return out;
}

inline Table parse_csv(std::string_view text) {
    Table t;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line_no == 1) {
            for (const auto& tok : detail::split(line, ',', 0)) t.header.emplace_back(tok.text);
            continue;
        }
        if (line.empty()) continue;
        const auto cells = detail::split(line, ',', 0);
        if (cells.size() != t.header.size()) {
            throw Error(ErrorCode::parse_error, "csv line " + std::to_string(line_no) + " has " +
                                                    std::to_string(cells.size()) + " cells, header has " +
                                                    std::to_string(t.header.size()));
        }
        std::vector<std::optional<double>> row;
        for (const auto& cell : cells) {
            if (cell.text.empty()) {
                row.emplace_back();
            } else {
                row.emplace_back(detail::to_double(cell, line));
            }
        }
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw Error(ErrorCode::parse_error, "csv input has no header");
    return t;
}

}  // namespace gradrec
