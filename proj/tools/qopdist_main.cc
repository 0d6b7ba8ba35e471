#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qopdist/commands.h"
#include "qopdist/suites.h"

int main(int argc, char** argv) {
    CLI::App app{"Trace distance, maximizing quantum operations and their verification suites"};
    app.require_subcommand(1);

    std::string file_a, file_b, metric = "trace";
    auto* dist = app.add_subcommand("dist", "Distance between two state files");
    dist->add_option("file_a", file_a)->required();
    dist->add_option("file_b", file_b)->required();
    dist->add_option("--metric", metric, "trace|fidelity|sine|angle");

    std::string mode = "on-q", out_file;
    int dim_out = 2;
    auto* maximize = app.add_subcommand("maximize", "Build an operation maximizing the probability gap of a pair");
    maximize->add_option("file_rho", file_a)->required();
    maximize->add_option("file_sigma", file_b)->required();
    maximize->add_option("--dim-out", dim_out, "Output dimension");
    maximize->add_option("--mode", mode, "on-q|on-r");
    maximize->add_option("--out", out_file, "kraus_set file to write")->required();

    double d_target = 0.5;
    int count = 1;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    double tol = qopdist::default_tolerance();
    auto* pairs = app.add_subcommand("pairs", "Write state pairs maximized by a given operation");
    pairs->add_option("kraus_file", file_a)->required();
    pairs->add_option("--d-target", d_target, "Trace distance of every pair")->required();
    pairs->add_option("--count", count, "Number of pairs");
    pairs->add_option("--seed", seed, "Random seed");
    pairs->add_option("--out-dir", out_dir, "Directory for the pair files");
    pairs->add_option("--tol", tol, "Tolerance");

    std::string suite, report_file;
    int cases = 0;
    bool timing = false;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", suite, "thm1|thm2|thm3|thm4|thm5|cloning|lemma1|lemma2|appendixB|section3|all")
        ->required();
    verify->add_option("--seed", seed, "Random seed");
    verify->add_option("--cases", cases, "Cases per suite (0 selects the suite default)");
    verify->add_option("--tol", tol, "Tolerance");
    verify->add_option("--report", report_file, "Report file (stdout when absent)");
    verify->add_flag("--timing", timing, "Record wall-clock time in the report");

    auto* clone = app.add_subcommand("clone", "Exact cloner distance factor for two pure states");
    clone->add_option("file_omega1", file_a)->required();
    clone->add_option("file_omega2", file_b)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qopdist::kExitParse;
    }

    if (*dist) {
        return qopdist::cmd_dist(file_a, file_b, metric, std::cout, std::cerr);
    }
    if (*maximize) {
        return qopdist::cmd_maximize(file_a, file_b, dim_out, mode, out_file, std::cout, std::cerr);
    }
    if (*pairs) {
        return qopdist::cmd_pairs(file_a, d_target, count, seed, out_dir, tol, std::cout, std::cerr);
    }
    if (*verify) {
        return qopdist::cmd_verify(suite, seed, cases, tol, report_file, timing, std::cout, std::cerr);
    }
    return qopdist::cmd_clone(file_a, file_b, std::cout, std::cerr);
}
