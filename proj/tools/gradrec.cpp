// gradrec: gradient recovery on 1D meshes from the command line.
//
//   gradrec recover --mesh uniform:4 --func poly:0,0,1 --method both
//   gradrec study   --mesh graded:0.2 --func sin:1,1 --levels 16,32,64,128
//   gradrec verify  --suite all
//   gradrec infsup  --mesh uniform --levels 8,16,32

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "gradrec/cli.hpp"

namespace {

using namespace gradrec;
using namespace gradrec::cli;

struct RawOptions {
    std::string domain = "0,1";
    std::string levels;
    std::optional<std::string> out;
};

void add_common(CLI::App& sub, RunConfig& cfg, RawOptions& raw) {
    sub.add_option("--domain", raw.domain, "Interval alpha,beta")->capture_default_str();
    sub.add_option("--format", cfg.format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}));
    sub.add_option("--out", raw.out, "Write output to PATH instead of stdout");
    sub.add_option("--seed", cfg.seed, "Seed for random meshes")->capture_default_str();
}

void add_method(CLI::App& sub, RunConfig& cfg) {
    sub.add_option("--method", cfg.method, "Recovery operator")
        ->transform(CLI::CheckedTransformer(std::map<std::string, MethodChoice>{
            {"oblique", MethodChoice::oblique},
            {"orthogonal", MethodChoice::orthogonal},
            {"both", MethodChoice::both}}));
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    RawOptions raw;

    CLI::App app{"Gradient recovery by oblique projection onto linear finite elements"};
    app.require_subcommand(1, 1);

    auto* recover = app.add_subcommand("recover", "Recover the gradient of a function on a mesh");
    add_common(*recover, cfg, raw);
    add_method(*recover, cfg);
    recover->add_option("--mesh", cfg.mesh, "uniform:n | graded:n,delta | perturbed:n,rho,seed")
        ->required();
    recover->add_option("--func", cfg.function, "poly:c0,c1,... | sin:A,k | exp:s | file:PATH")
        ->required();

    auto* study = app.add_subcommand("study", "Convergence study over refinement levels");
    add_common(*study, cfg, raw);
    add_method(*study, cfg);
    study->add_option("--mesh", cfg.mesh, "uniform | graded:delta | perturbed:rho[,seed]")
        ->required();
    study->add_option("--func", cfg.function, "Function spec with exact derivative")->required();
    study->add_option("--levels", raw.levels, "Element counts n1,n2,...")->required();
    study->add_option("--norm", cfg.norm, "Error norm")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Norm>{
            {"l2", Norm::l2},
            {"l2-interior", Norm::l2_interior},
            {"max-nodal", Norm::max_nodal},
            {"max-nodal-interior", Norm::max_nodal_interior}}));

    auto* verify = app.add_subcommand("verify", "Run the identity suites");
    add_common(*verify, cfg, raw);
    verify->add_option("--suite", cfg.suite, "Which suite")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Suite>{
            {"quadratic", Suite::quadratic},
            {"cubic", Suite::cubic},
            {"biorthogonality", Suite::biorthogonality},
            {"infsup", Suite::infsup},
            {"all", Suite::all}}));
    verify->add_option("--tolerance-scale", cfg.tolerance_scale,
                       "Multiply every identity tolerance (harness self-test)")
        ->capture_default_str();

    auto* infsup = app.add_subcommand("infsup", "Discrete inf-sup constant across levels");
    add_common(*infsup, cfg, raw);
    infsup->add_option("--mesh", cfg.mesh, "uniform | graded:delta | perturbed:rho[,seed]  (default uniform)");
    infsup->add_option("--levels", raw.levels, "Element counts n1,n2,...");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: parse-error: " << e.what() << "\n";
        return exit_usage;
    }

    if (*recover) cfg.command = Command::recover;
    if (*study) cfg.command = Command::study;
    if (*verify) cfg.command = Command::verify;
    if (*infsup) cfg.command = Command::infsup;

    try {
        std::tie(cfg.alpha, cfg.beta) = parse_domain(raw.domain);
        if (!raw.levels.empty()) cfg.levels = parse_levels(raw.levels);
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return exit_code_for(e.code());
    }
    cfg.out_path = raw.out;

    return run(cfg, std::cout, std::cerr);
}
