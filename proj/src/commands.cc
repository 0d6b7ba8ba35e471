#include "qopdist/commands.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

#include "qopdist/errors.h"
#include "qopdist/matrix_file.h"
#include "qopdist/maximizers.h"
#include "qopdist/metrics.h"
#include "qopdist/suites.h"

namespace qopdist {

namespace {

std::string fixed12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", x);
    return buf;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DegenerateInputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const NotMaximizingShapeError& e) {
        err << "error: " << e.what() << "\n";
        return kExitShape;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
}

bool same_dim(const DensityMatrix& a, const DensityMatrix& b, std::ostream& err) {
    if (a.dim() != b.dim()) {
        err << "error: dimension mismatch (" << a.dim() << " vs " << b.dim() << ")\n";
        return false;
    }
    return true;
}

}  // namespace

int cmd_dist(const std::string& file_a, const std::string& file_b, const std::string& metric, std::ostream& out,
             std::ostream& err) {
    return guarded(err, [&] {
        if (metric != "trace" && metric != "fidelity" && metric != "sine" && metric != "angle") {
            err << "error: unknown metric '" << metric << "'\n";
            return static_cast<int>(kExitParse);
        }
        const DensityMatrix a = load_state(file_a);
        const DensityMatrix b = load_state(file_b);
        if (!same_dim(a, b, err)) {
            return static_cast<int>(kExitDimension);
        }
        double value = 0.0;
        if (metric == "trace") {
            value = trace_distance(a, b);
        } else if (metric == "fidelity") {
            value = fidelity(a, b);
        } else if (metric == "sine") {
            value = sine_distance(a, b);
        } else {
            value = angle(a, b);
        }
        out << fixed12(value) << "\n";
        return static_cast<int>(kExitOk);
    });
}

int cmd_maximize(const std::string& file_rho, const std::string& file_sigma, int dim_out, const std::string& mode,
                 const std::string& out_file, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        MaximizerMode m;
        if (mode == "on-q") {
            m = MaximizerMode::kOnQ;
        } else if (mode == "on-r") {
            m = MaximizerMode::kOnR;
        } else {
            err << "error: mode must be on-q or on-r\n";
            return static_cast<int>(kExitParse);
        }
        if (dim_out < 1) {
            err << "error: output dimension must be positive\n";
            return static_cast<int>(kExitParse);
        }
        const DensityMatrix rho = load_state(file_rho);
        const DensityMatrix sigma = load_state(file_sigma);
        if (!same_dim(rho, sigma, err)) {
            return static_cast<int>(kExitDimension);
        }
        const QuantumOperation e = build_maximizing_operation(rho, sigma, dim_out, m);
        const MaximizerCertificate cert = certify_maximizer(e, rho, sigma);
        save_kraus_set(out_file, e);
        out << "mode " << to_string(cert.mode) << "\n";
        out << "e_distance " << fixed12(e_distance(e, rho, sigma)) << "\n";
        out << "trace_distance " << fixed12(trace_distance(rho, sigma)) << "\n";
        return static_cast<int>(kExitOk);
    });
}

int cmd_pairs(const std::string& kraus_file, double d_target, int count, std::uint64_t seed,
              const std::string& out_dir, double tol, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (!(d_target > 0.0 && d_target < 1.0)) {
            err << "error: target distance must lie in (0, 1)\n";
            return static_cast<int>(kExitParse);
        }
        if (count < 1) {
            err << "error: count must be positive\n";
            return static_cast<int>(kExitParse);
        }
        const QuantumOperation e = load_kraus_set(kraus_file);
        const MaximizerShape shape = maximizer_shape(e);
        std::filesystem::create_directories(out_dir);
        Rng rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        int failures = 0;
        for (int i = 0; i < count; ++i) {
            const double dl_total = (1.0 - d_target) * unit(rng);
            const PairWeights w =
                random_weights(static_cast<int>(shape.unit_space.size()), static_cast<int>(shape.zero_space.size()),
                               d_target, dl_total, 1.0 - d_target - dl_total, rng);
            const auto [rho, sigma] = build_state_pair(e, d_target, w);
            const double de = e_distance(e, rho, sigma);
            const double d = trace_distance(rho, sigma);
            const bool ok = std::abs(de - d_target) <= tol && std::abs(d - d_target) <= tol;
            failures += ok ? 0 : 1;
            const std::filesystem::path dir(out_dir);
            save_state((dir / ("pair_" + std::to_string(i) + "_rho.json")).string(), rho);
            save_state((dir / ("pair_" + std::to_string(i) + "_sigma.json")).string(), sigma);
            out << "pair " << i << " e_distance " << fixed12(de) << " trace_distance " << fixed12(d)
                << (ok ? " ok" : " FAIL") << "\n";
        }
        return failures == 0 ? static_cast<int>(kExitOk) : static_cast<int>(kExitFailures);
    });
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int n_cases, double tol, const std::string& report_file,
               bool timing, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (!is_known_suite(suite)) {
            err << "error: unknown suite '" << suite << "'\n";
            return static_cast<int>(kExitParse);
        }
        std::vector<SuiteReport> reports;
        for (const std::string& name : suite == "all" ? suite_names() : std::vector<std::string>{suite}) {
            const auto start = std::chrono::steady_clock::now();
            SuiteReport r = run_suite(name, seed, n_cases, tol);
            if (timing) {
                r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            }
            reports.push_back(std::move(r));
        }
        const std::string text = format_reports(reports);
        std::ostream& summary = report_file.empty() ? err : out;
        int failures = 0;
        for (const SuiteReport& r : reports) {
            summary << r.suite_name << ": " << r.n_cases << " cases, " << r.n_failures << " failures, worst residual "
                    << r.worst_residual << "\n";
            failures += r.n_failures;
        }
        if (report_file.empty()) {
            out << text;
        } else {
            std::ofstream f(report_file, std::ios::binary);
            if (!f) {
                err << "error: cannot write '" << report_file << "'\n";
                return static_cast<int>(kExitParse);
            }
            f << text;
        }
        return failures == 0 ? static_cast<int>(kExitOk) : static_cast<int>(kExitFailures);
    });
}

int cmd_clone(const std::string& file_omega1, const std::string& file_omega2, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const DensityMatrix a = load_state(file_omega1);
        const DensityMatrix b = load_state(file_omega2);
        for (const DensityMatrix* s : {&a, &b}) {
            if (s->purity() < 1.0 - 1e-9) {
                err << "error: cloner inputs must be pure, purity " << s->purity() << "\n";
                return static_cast<int>(kExitPurity);
            }
        }
        if (!same_dim(a, b, err)) {
            return static_cast<int>(kExitDimension);
        }
        const double d_in = trace_distance(a, b);
        if (d_in <= kTolDegenerate) {
            err << "error: cloner inputs must be distinct\n";
            return static_cast<int>(kExitDegenerate);
        }
        const ClonerOutputs c = cloner_outputs(a, b);
        const double d_out = trace_distance(c.g1, c.g2);
        out << "Omega " << fixed12(c.omega) << "\n";
        out << "D_in " << fixed12(d_in) << "\n";
        out << "D_out " << fixed12(d_out) << "\n";
        out << "factor " << fixed12(d_out / d_in) << "\n";
        return static_cast<int>(kExitOk);
    });
}

}  // namespace qopdist
