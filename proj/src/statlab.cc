#include "qopdist/statlab.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qopdist/errors.h"

namespace qopdist {

namespace {

struct MeanAndError {
    double mean;
    double std_error;
};

MeanAndError mean_and_error(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var = xs.size() > 1 ? var / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
}

void require_grid(const SampledCdf& cdf) {
    if (cdf.grid.size() < 2 || cdf.grid.size() != cdf.values.size() || cdf.grid.front() != 0.0) {
        throw ValidationError("sampled CDF needs at least two grid points starting at 0");
    }
}

}  // namespace

TrianglePoint sample_triangle(Rng& rng) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    while (true) {
        const double a = uniform(rng);
        const double b = uniform(rng);
        if (a != b) {
            return {std::max(a, b), std::min(a, b)};
        }
    }
}

std::pair<DensityMatrix, DensityMatrix> pair_for_point(const QuantumOperation& e, const TrianglePoint& point,
                                                       Rng* split_rng) {
    if (!(point.p_n >= 0.0 && point.p_n < point.p_m && point.p_m <= 1.0)) {
        throw ValidationError("triangle point must satisfy 0 <= p_n < p_m <= 1");
    }
    const MaximizerShape shape = maximizer_shape(e);
    const int nq = static_cast<int>(shape.unit_space.size());
    const int nr = static_cast<int>(shape.zero_space.size());
    const double d = point.p_m - point.p_n;
    const PairWeights w = split_rng != nullptr ? random_weights(nq, nr, d, point.p_n, 1.0 - point.p_m, *split_rng)
                                               : uniform_weights(nq, nr, d, point.p_n, 1.0 - point.p_m);
    return build_state_pair(e, d, w);
}

std::vector<TrialRecord> run_trials(const QuantumOperation& e, int n_trials, Rng& rng) {
    std::vector<TrialRecord> records;
    records.reserve(n_trials);
    while (static_cast<int>(records.size()) < n_trials) {
        const TrianglePoint point = sample_triangle(rng);
        if (point.p_n <= kTolProb || point.p_m - point.p_n >= 1.0) {
            // Both normalized outputs must exist; such points have measure zero.
            continue;
        }
        const auto [rho, sigma] = pair_for_point(e, point, &rng);
        const BoundReport t3 = theorem3_report(e, rho, sigma);
        const BoundReport t4 = theorem4_report(e, rho, sigma);
        TrialRecord r;
        r.point = point;
        r.d_in = t3.d_in;
        r.d_out_normalized = *t3.d_out_normalized;
        r.d_out_subnormalized = t4.d_out_subnormalized;
        r.relative_increase = t3.relative_increase;
        r.normalized_bound_holds = t3.holds;
        r.subnormalized_bound_holds = t4.holds;
        r.relative_bound_holds = t3.relative_holds;
        records.push_back(r);
    }
    return records;
}

double relative_increase_or_zero(const TrialRecord& r) { return r.relative_increase.value_or(0.0); }

double moment_bound(MomentBound kind, int n) {
    if (n < 1) {
        throw ValidationError("moment order must be at least 1");
    }
    const double x = n;
    return kind == MomentBound::kUniform ? 1.0 / (x + 1.0) : 2.0 / (x * x + 3.0 * x + 2.0);
}

MomentCheck moment_check(const std::vector<double>& samples, int n, MomentBound kind) {
    if (samples.empty()) {
        throw ValidationError("moment_check needs at least one sample");
    }
    std::vector<double> powers;
    powers.reserve(samples.size());
    for (double x : samples) {
        if (!(x >= 0.0 && x <= 1.0)) {
            std::ostringstream msg;
            msg << "sample " << x << " outside [0, 1]";
            throw ValidationError(msg.str());
        }
        powers.push_back(std::pow(x, n));
    }
    const MeanAndError me = mean_and_error(powers);
    MomentCheck out;
    out.empirical_moment = me.mean;
    out.std_error = me.std_error;
    out.bound = moment_bound(kind, n);
    out.holds = out.empirical_moment <= out.bound + 3.0 * out.std_error;
    return out;
}

std::vector<double> uniform_grid(double hi, int points) {
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) {
        grid[i] = i == points - 1 ? hi : hi * i / (points - 1);
    }
    return grid;
}

SampledCdf empirical_cdf(std::vector<double> samples, const std::vector<double>& grid) {
    if (samples.empty()) {
        throw ValidationError("empirical CDF needs at least one sample");
    }
    std::sort(samples.begin(), samples.end());
    SampledCdf cdf{grid, {}};
    cdf.values.reserve(grid.size());
    for (double x : grid) {
        const auto count = std::upper_bound(samples.begin(), samples.end(), x) - samples.begin();
        cdf.values.push_back(static_cast<double>(count) / static_cast<double>(samples.size()));
    }
    return cdf;
}

SampledCdf cdf_from_function(double (*cdf)(double), const std::vector<double>& grid) {
    SampledCdf out{grid, {}};
    out.values.reserve(grid.size());
    for (double x : grid) {
        out.values.push_back(cdf(x));
    }
    return out;
}

double moment_from_cdf(const SampledCdf& cdf, int n) {
    require_grid(cdf);
    const double hi = cdf.grid.back();
    double integral = 0.0;
    for (size_t i = 1; i < cdf.grid.size(); ++i) {
        const double x0 = cdf.grid[i - 1];
        const double x1 = cdf.grid[i];
        const double f0 = n * std::pow(x0, n - 1) * cdf.values[i - 1];
        const double f1 = n * std::pow(x1, n - 1) * cdf.values[i];
        integral += 0.5 * (x1 - x0) * (f0 + f1);
    }
    return std::pow(hi, n) - integral;
}

DominanceResult dominance_implies_moments(const SampledCdf& cdf_g, const SampledCdf& cdf_h,
                                          const std::vector<int>& orders, double tol) {
    require_grid(cdf_g);
    require_grid(cdf_h);
    if (cdf_g.grid != cdf_h.grid) {
        throw ValidationError("CDFs must be sampled on the same grid");
    }
    DominanceResult out;
    out.worst_dominance_gap = cdf_g.values.front() - cdf_h.values.front();
    for (size_t i = 0; i < cdf_g.grid.size(); ++i) {
        out.worst_dominance_gap = std::min(out.worst_dominance_gap, cdf_g.values[i] - cdf_h.values[i]);
    }
    out.dominance_holds = out.worst_dominance_gap >= -tol;
    out.moments_ordered = true;
    for (int n : orders) {
        const double mg = moment_from_cdf(cdf_g, n);
        const double mh = moment_from_cdf(cdf_h, n);
        out.moments_g.push_back(mg);
        out.moments_h.push_back(mh);
        out.moments_ordered = out.moments_ordered && mg <= mh + tol;
    }
    return out;
}

MeanDistanceCheck mean_output_distance_bound(const std::vector<TrialRecord>& records) {
    if (records.empty()) {
        throw ValidationError("mean_output_distance_bound needs at least one record");
    }
    std::vector<double> d_in, d_out;
    d_in.reserve(records.size());
    d_out.reserve(records.size());
    for (const TrialRecord& r : records) {
        d_in.push_back(r.d_in);
        d_out.push_back(r.d_out_subnormalized);
    }
    const MeanAndError in = mean_and_error(d_in);
    const MeanAndError out = mean_and_error(d_out);
    MeanDistanceCheck check;
    check.mean_d_in = in.mean;
    check.mean_d_out_sub = out.mean;
    check.std_error_out = out.std_error;
    check.holds = out.mean <= 1.0 / 6.0 + 3.0 * out.std_error;
    return check;
}

std::vector<CdfPoint> cdf_lower_bound_check(const std::vector<double>& samples, const std::vector<double>& levels,
                                            double (*lower_bound)(double)) {
    if (samples.empty()) {
        throw ValidationError("CDF check needs at least one sample");
    }
    const double n = static_cast<double>(samples.size());
    std::vector<CdfPoint> out;
    for (double level : levels) {
        double hits = 0.0;
        for (double x : samples) {
            if (x <= level) hits += 1.0;
        }
        CdfPoint p;
        p.level = level;
        p.empirical = hits / n;
        p.std_error = std::sqrt(p.empirical * (1.0 - p.empirical) / n);
        p.lower_bound = lower_bound(level);
        p.holds = p.empirical >= p.lower_bound - 3.0 * p.std_error;
        out.push_back(p);
    }
    return out;
}

}  // namespace qopdist
