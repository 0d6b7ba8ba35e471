#include "qopdist/suites.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "qopdist/errors.h"
#include "qopdist/maximizers.h"
#include "qopdist/metrics.h"
#include "qopdist/statlab.h"

namespace qopdist {

namespace {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

DensityMatrix random_state(int dim, Rng& rng) { return random_density(dim, uniform_int(rng, 1, dim), rng); }

std::string label(const std::string& what, int index) {
    std::ostringstream out;
    out << what << " " << index;
    return out.str();
}

CaseRecord check_le(const std::string& name, double lhs, double rhs, double tol) {
    return CaseRecord{name, std::max(0.0, lhs - rhs), lhs <= rhs + tol, {{"lhs", lhs}, {"rhs", rhs}}};
}

CaseRecord check_eq(const std::string& name, double value, double expected, double tol) {
    const double err = std::abs(value - expected);
    return CaseRecord{name, err, err <= tol, {{"value", value}, {"expected", expected}}};
}

void run_thm1(SuiteReport& report, Rng& rng, int n, double tol) {
    for (int i = 0; i < n; ++i) {
        const int dim = uniform_int(rng, 2, 6);
        const DensityMatrix rho = random_state(dim, rng);
        const DensityMatrix sigma = random_state(dim, rng);
        const MaximizerMode mode = i % 2 == 0 ? MaximizerMode::kOnQ : MaximizerMode::kOnR;
        const int dim_out = uniform_int(rng, 1, 3);
        const double d = trace_distance(rho, sigma);
        const QuantumOperation e = build_maximizing_operation(rho, sigma, dim_out, mode);
        report.add(check_eq(label("attained pair", i), e_distance(e, rho, sigma), d, tol));

        const MaximizerCertificate cert = certify_maximizer(e, rho, sigma);
        report.add(CaseRecord{label("certified pair", i), cert.diagnostics.trace_residual, cert.mode == mode,
                              {{"trace_residual", cert.diagnostics.trace_residual}}});

        double worst = -1.0;
        for (int k = 0; k < 50; ++k) {
            const QuantumOperation other = random_operation(dim, uniform_int(rng, 1, 3), uniform_int(rng, 1, 3), rng);
            worst = std::max(worst, e_distance(other, rho, sigma) - d);
        }
        report.add(CaseRecord{label("random operations never exceed pair", i), std::max(0.0, worst), worst <= tol,
                              {{"max_excess", worst}}});
    }
}

void run_thm2(SuiteReport& report, Rng& rng, int n, double tol) {
    for (int i = 0; i < n; ++i) {
        const int dim = uniform_int(rng, 2, 6);
        const QuantumOperation e = random_operation(dim, uniform_int(rng, 1, 3), uniform_int(rng, 1, 3), rng);
        const ExtremalPair ext = max_e_distance_over_states(e);
        const std::vector<double> spectrum = eigenvalues(e.t());
        report.add(check_eq(label("spectral gap of operation", i), ext.value, spectrum.front() - spectrum.back(), tol));
        report.add(check_eq(label("extremal pair attains gap", i), e_distance(e, ext.rho_star, ext.sigma_star),
                            ext.value, tol));
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            worst = std::max(worst, e_distance(e, random_state(dim, rng), random_state(dim, rng)));
        }
        report.add(check_le(label("random pairs below gap", i), worst, ext.value, tol));
        const int tp_out = uniform_int(rng, 1, 3);
        const int tp_count = (dim + tp_out - 1) / tp_out + uniform_int(rng, 0, 1);
        const QuantumOperation tp = random_trace_preserving(dim, tp_out, tp_count, rng);
        report.add(check_eq(label("trace-preserving gap", i), max_e_distance_over_states(tp).value, 0.0, tol));
    }
}

std::vector<QuantumOperation> trial_operations(Rng& rng) {
    std::vector<QuantumOperation> ops;
    ops.push_back(reference_statistics_operation());
    for (int k = 0; k < 3; ++k) {
        const int dim_in = uniform_int(rng, 2, 6);
        ops.push_back(random_projective_operation(dim_in, uniform_int(rng, 1, dim_in - 1), uniform_int(rng, 1, 3), rng));
    }
    return ops;
}

void run_thm3(SuiteReport& report, Rng& rng, int n, double tol) {
    const std::vector<QuantumOperation> ops = trial_operations(rng);
    for (int i = 0; i < n; ++i) {
        const QuantumOperation& e = ops[i % ops.size()];
        const TrialRecord r = run_trials(e, 1, rng).front();
        const double normalized_excess = r.d_out_normalized - r.d_in / r.point.p_m;
        const double relative_excess =
            r.relative_increase ? *r.relative_increase - (1.0 - r.point.p_m) : -std::numeric_limits<double>::infinity();
        const double excess = std::max(normalized_excess, relative_excess);
        report.add(CaseRecord{label("trial", i),
                              std::max(0.0, excess),
                              excess <= tol,
                              {{"p_m", r.point.p_m},
                               {"p_n", r.point.p_n},
                               {"d_in", r.d_in},
                               {"d_out_normalized", r.d_out_normalized},
                               {"relative_increase", relative_increase_or_zero(r)}}});
    }
}

void run_thm4(SuiteReport& report, Rng& rng, int n, double tol) {
    {
        const DensityMatrix up = validate_state(HermitianOp::diagonal({1.0, 0.0}));
        const DensityMatrix down = validate_state(HermitianOp::diagonal({0.0, 1.0}));
        ComplexMatrix k = ComplexMatrix::Zero(2, 2);
        k(0, 0) = 1.0;
        const QuantumOperation e({k});
        const BoundReport b = theorem4_report(e, up, down);
        report.add(check_eq("orthogonal qubit saturation", b.d_out_subnormalized, b.d_in / 2.0, tol));
    }
    const std::vector<QuantumOperation> ops = trial_operations(rng);
    for (int i = 0; i < n; ++i) {
        const TrialRecord r = run_trials(ops[i % ops.size()], 1, rng).front();
        CaseRecord c = check_le(label("trial", i), r.d_out_subnormalized, r.d_in / 2.0, tol);
        report.add(std::move(c));
    }
}

void run_thm5(SuiteReport& report, Rng& rng, int n, double tol) {
    const QubitGapPoint best = max_qubit_gap(50, 6);
    CaseRecord top = check_eq("qubit maximum of sine minus trace distance", best.value, 0.25, 1e-4);
    top.values["u"] = best.u;
    top.values["v"] = best.v;
    top.values["eta"] = best.eta;
    report.add(std::move(top));
    report.add(check_eq("pure state against diag(3/4, 1/4)", qubit_gap(1.0, 0.5, 1.0), 0.25, tol));
    {
        const DensityMatrix pure = validate_state(HermitianOp::diagonal({1.0, 0.0}));
        const DensityMatrix mixed = validate_state(HermitianOp::diagonal({0.75, 0.25}));
        report.add(check_eq("witness pair via matrices", sine_distance(pure, mixed) - trace_distance(pure, mixed), 0.25,
                            tol));
    }
    {
        double worst = 0.0;
        const int steps = 10000;
        for (int k = 0; k <= steps; ++k) {
            const double x = 0.5 * std::numbers::pi * k / steps;
            worst = std::max(worst, std::sin(x) + std::cos(x));
        }
        report.add(check_le("sin plus cos on angle grid", worst, std::sqrt(2.0), 1e-12));
    }
    const double cap = std::sqrt(2.0) - 1.0;
    for (int i = 0; i < n; ++i) {
        const int dim = uniform_int(rng, 2, 6);
        const DensityMatrix rho = random_state(dim, rng);
        const DensityMatrix sigma = random_state(dim, rng);
        const FvdgBounds b = check_fvdg_bounds(rho, sigma, tol);
        const double gap = b.c - b.d;
        const double delta = angle(rho, sigma);
        const double chain = std::sin(delta) + std::cos(delta) - 1.0;
        const double excess = std::max({gap - chain, chain - cap, (1.0 - b.f) - b.d, b.d - b.c});
        report.add(CaseRecord{label("pair", i),
                              std::max(0.0, excess),
                              excess <= tol && b.lower_ok && b.upper_ok,
                              {{"trace", b.d}, {"fidelity", b.f}, {"sine", b.c}}});
    }
}

void run_cloning(SuiteReport& report, Rng& rng, int n, double tol) {
    {
        const DensityMatrix a = validate_state(HermitianOp::diagonal({1.0, 0.0}));
        const DensityMatrix b = validate_state(HermitianOp::diagonal({0.0, 1.0}));
        const ClonerOutputs out = cloner_outputs(a, b);
        report.add(check_eq("orthogonal inputs keep their distance", trace_distance(out.g1, out.g2), 1.0, tol));
    }
    const double floor = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
        const int dim = uniform_int(rng, 2, 4);
        const DensityMatrix a = random_pure(dim, rng);
        const DensityMatrix b = random_pure(dim, rng);
        const ClonerOutputs out = cloner_outputs(a, b);
        const double ratio = trace_distance(out.g1, out.g2) / trace_distance(a, b);
        const double expected = cloner_distance_factor(out.omega);
        const double err = std::abs(ratio - expected);
        report.add(CaseRecord{label("pure pair", i),
                              std::max(err, std::max(0.0, floor - ratio)),
                              err <= tol && ratio > floor,
                              {{"omega", out.omega}, {"ratio", ratio}, {"expected", expected}}});
    }
}

void run_lemma1(SuiteReport& report, Rng& rng, int n, double tol) {
    for (int i = 0; i < n; ++i) {
        const int dim = uniform_int(rng, 2, 6);
        const HermitianOp t = random_operation(dim, dim, uniform_int(rng, 1, 3), rng).t();
        const double d_frak = uniform_real(rng, 0.05, 1.0);
        const std::vector<double> spectrum = eigenvalues(t);
        const ExtremalTraces ext = extremal_trace_product(t, d_frak);
        report.add(check_eq(label("upper extreme attained", i), trace_product(t.matrix(), ext.q_max.matrix()),
                            spectrum.front() * d_frak, tol));
        report.add(check_eq(label("lower extreme attained", i), trace_product(t.matrix(), ext.q_min.matrix()),
                            spectrum.back() * d_frak, tol));
        double escape = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < 20; ++k) {
            const HermitianOp q = random_state(dim, rng).op() * d_frak;
            const double v = trace_product(t.matrix(), q.matrix());
            escape = std::max({escape, v - ext.max_val, ext.min_val - v});
        }
        report.add(CaseRecord{label("random positive operators inside bounds", i), std::max(0.0, escape),
                              escape <= tol, {{"escape", escape}}});
    }
}

double uniform_cdf(double x) { return std::clamp(x, 0.0, 1.0); }
double wedge_cdf(double x) {
    const double c = std::clamp(x, 0.0, 1.0);
    return 2.0 * c - c * c;
}

void run_lemma2(SuiteReport& report, Rng& rng, int n, double tol) {
    const std::vector<double> grid = uniform_grid(1.0, 2001);
    const SampledCdf uniform = cdf_from_function(uniform_cdf, grid);
    const SampledCdf wedge = cdf_from_function(wedge_cdf, grid);
    for (int order = 1; order <= 5; ++order) {
        report.add(check_eq(label("uniform moment by integration, order", order), moment_from_cdf(uniform, order),
                            moment_bound(MomentBound::kUniform, order), 1e-3));
        report.add(check_eq(label("wedge moment by integration, order", order), moment_from_cdf(wedge, order),
                            moment_bound(MomentBound::kWedge, order), 1e-3));
    }
    const DominanceResult dom = dominance_implies_moments(wedge, uniform, {1, 2, 3, 4, 5}, tol);
    report.add(CaseRecord{"wedge dominates uniform and has smaller moments", std::max(0.0, -dom.worst_dominance_gap),
                          dom.ok(), {{"worst_dominance_gap", dom.worst_dominance_gap}}});

    // Inverse-CDF draws from the density 2 - 2x.
    std::vector<double> samples(std::max(n, 1));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double& x : samples) {
        x = 1.0 - std::sqrt(1.0 - unit(rng));
    }
    const SampledCdf empirical = empirical_cdf(samples, grid);
    for (int order = 1; order <= 5; ++order) {
        const MomentCheck mc = moment_check(samples, order, MomentBound::kWedge);
        CaseRecord c = check_le(label("sampled wedge moment, order", order), mc.empirical_moment,
                                mc.bound + 3.0 * mc.std_error, 0.0);
        report.add(std::move(c));
        report.add(check_eq(label("direct and integrated sample moments agree, order", order),
                            moment_from_cdf(empirical, order), mc.empirical_moment, 1e-3));
    }
}

void run_appendix_b(SuiteReport& report, Rng& rng, int n, double tol) {
    for (int i = 0; i < n; ++i) {
        const int dim = uniform_int(rng, 2, 6);
        const HermitianOp a = random_hermitian(dim, rng);
        const HermitianOp b = random_hermitian(dim, rng);
        const HermitianOp c = random_hermitian(dim, rng);
        const double dab = trace_distance(a, b);
        const double axioms = std::max({-dab, trace_distance(a, a), std::abs(dab - trace_distance(b, a)),
                                        dab - trace_distance(a, c) - trace_distance(c, b)});
        report.add(CaseRecord{label("metric axioms", i), std::max(0.0, axioms), axioms <= tol, {{"distance", dab}}});

        const MaximizingProjector mp = maximizing_projector(a, b);
        const double expected = dab + (a.trace() - b.trace()) / 2.0;
        double beaten = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < 20; ++k) {
            const ComplexMatrix u = random_unitary(dim, rng);
            std::vector<double> weights(dim);
            for (double& w : weights) {
                w = k % 2 == 0 ? static_cast<double>(uniform_int(rng, 0, 1)) : uniform_real(rng, 0.0, 1.0);
            }
            const ComplexMatrix pi = u * HermitianOp::diagonal(weights).matrix() * u.adjoint();
            beaten = std::max(beaten, trace_product(pi, (a - b).matrix()) - mp.value);
        }
        const double lemma_err = std::max(std::abs(mp.value - expected), beaten);
        report.add(CaseRecord{label("maximizing projector", i), std::max(0.0, lemma_err), lemma_err <= tol,
                              {{"value", mp.value}, {"expected", expected}}});

        const double p = uniform_real(rng, 0.0, 1.0);
        const HermitianOp a2 = random_hermitian(dim, rng);
        const HermitianOp b2 = random_hermitian(dim, rng);
        const double lhs = trace_distance(a * p + a2 * (1.0 - p), b * p + b2 * (1.0 - p));
        const double rhs = p * dab + (1.0 - p) * trace_distance(a2, b2);
        report.add(check_le(label("joint convexity", i), lhs, rhs, tol));
    }
}

void run_section3(SuiteReport& report, Rng& rng, int n, double) {
    const std::vector<TrialRecord> records = run_trials(reference_statistics_operation(), n, rng);
    std::vector<double> d_out, rel_all, rel_increase_only;
    for (const TrialRecord& r : records) {
        d_out.push_back(r.d_out_normalized);
        rel_all.push_back(relative_increase_or_zero(r));
        if (r.relative_increase) {
            rel_increase_only.push_back(*r.relative_increase);
        }
    }
    std::vector<double> levels;
    for (int k = 1; k <= 9; ++k) {
        levels.push_back(k / 10.0);
    }
    auto add_cdf = [&](const std::string& what, const std::vector<CdfPoint>& points, bool gated) {
        for (const CdfPoint& p : points) {
            const double margin = p.lower_bound - 3.0 * p.std_error;
            std::ostringstream name;
            name << what << " at " << p.level;
            report.add(CaseRecord{name.str(),
                                  gated ? std::max(0.0, margin - p.empirical) : 0.0,
                                  gated ? p.holds : true,
                                  {{"empirical", p.empirical}, {"lower_bound", p.lower_bound}, {"std_error", p.std_error}}});
        }
    };
    add_cdf("output distance cdf", cdf_lower_bound_check(d_out, levels, uniform_cdf), true);
    add_cdf("relative increase cdf", cdf_lower_bound_check(rel_all, levels, wedge_cdf), true);
    if (!rel_increase_only.empty()) {
        add_cdf("diagnostic: relative increase cdf over increasing trials",
                cdf_lower_bound_check(rel_increase_only, levels, wedge_cdf), false);
    }
    for (int order = 1; order <= 5; ++order) {
        const MomentCheck u = moment_check(d_out, order, MomentBound::kUniform);
        report.add(check_le(label("output distance moment, order", order), u.empirical_moment,
                            u.bound + 3.0 * u.std_error, 0.0));
        const MomentCheck w = moment_check(rel_all, order, MomentBound::kWedge);
        report.add(check_le(label("relative increase moment, order", order), w.empirical_moment,
                            w.bound + 3.0 * w.std_error, 0.0));
    }
    const MeanDistanceCheck mean = mean_output_distance_bound(records);
    // Input distance has variance 1/18 under the triangle density; small runs widen to 3 SE.
    const double mean_tol = std::max(0.01, 3.0 * std::sqrt(1.0 / 18.0 / records.size()));
    report.add(check_eq("mean input distance", mean.mean_d_in, 1.0 / 3.0, mean_tol));
    report.add(check_le("mean subnormalized output distance", mean.mean_d_out_sub, 1.0 / 6.0,
                        std::max(0.01, 3.0 * mean.std_error_out)));
    report.add(CaseRecord{"mean subnormalized output distance within sampling error",
                          std::max(0.0, mean.mean_d_out_sub - 1.0 / 6.0 - 3.0 * mean.std_error_out),
                          mean.holds,
                          {{"mean", mean.mean_d_out_sub}, {"std_error", mean.std_error_out}}});
}

using SuiteFn = std::function<void(SuiteReport&, Rng&, int, double)>;

struct SuiteEntry {
    SuiteFn run;
    int default_cases;
};

const std::map<std::string, SuiteEntry>& registry() {
    static const std::map<std::string, SuiteEntry> entries = {
        {"thm1", {run_thm1, 40}},         {"thm2", {run_thm2, 40}},        {"thm3", {run_thm3, 1000}},
        {"thm4", {run_thm4, 1000}},       {"thm5", {run_thm5, 1000}},      {"cloning", {run_cloning, 200}},
        {"lemma1", {run_lemma1, 200}},    {"lemma2", {run_lemma2, 10000}}, {"appendixB", {run_appendix_b, 200}},
        {"section3", {run_section3, 10000}},
    };
    return entries;
}

}  // namespace

double default_tolerance() {
    const char* env = std::getenv("QOPDIST_DEFAULT_TOL");
    if (env != nullptr) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && std::isfinite(v) && v > 0.0) {
            return v;
        }
    }
    return 1e-9;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"thm1",   "thm2",   "thm3",      "thm4",    "thm5",
                                                   "cloning", "lemma1", "lemma2", "appendixB", "section3"};
    return names;
}

bool is_known_suite(const std::string& name) { return name == "all" || registry().count(name) > 0; }

int default_cases(const std::string& name) {
    const auto it = registry().find(name);
    if (it == registry().end()) {
        throw ValidationError("unknown suite '" + name + "'");
    }
    return it->second.default_cases;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, int n_cases, double tol) {
    const auto it = registry().find(name);
    if (it == registry().end()) {
        throw ValidationError("unknown suite '" + name + "'");
    }
    SuiteReport report;
    report.suite_name = name;
    report.seed = seed;
    Rng rng(seed);
    it->second.run(report, rng, n_cases > 0 ? n_cases : it->second.default_cases, tol);
    return report;
}

std::vector<SuiteReport> run_suites(const std::string& name, std::uint64_t seed, int n_cases, double tol) {
    if (name != "all") {
        return {run_suite(name, seed, n_cases, tol)};
    }
    std::vector<SuiteReport> reports;
    for (const std::string& s : suite_names()) {
        reports.push_back(run_suite(s, seed, n_cases, tol));
    }
    return reports;
}

QuantumOperation random_projective_operation(int dim_in, int unit_dims, int dim_out, Rng& rng) {
    if (unit_dims < 1 || unit_dims > dim_in || dim_out < 1) {
        throw ValidationError("need 1 <= unit_dims <= dim_in and dim_out >= 1");
    }
    const ComplexMatrix u = random_unitary(dim_in, rng);
    std::vector<ComplexMatrix> kraus;
    for (int k = 0; k < unit_dims; ++k) {
        const ComplexVector out = random_unit_vector(dim_out, rng);
        kraus.push_back(out * u.col(k).adjoint());
    }
    return QuantumOperation(std::move(kraus));
}

QuantumOperation reference_statistics_operation() {
    std::vector<ComplexMatrix> kraus;
    for (int k = 0; k < 2; ++k) {
        ComplexMatrix m = ComplexMatrix::Zero(2, 4);
        m(k, k) = 1.0;
        kraus.push_back(m);
    }
    return QuantumOperation(std::move(kraus));
}

}  // namespace qopdist
