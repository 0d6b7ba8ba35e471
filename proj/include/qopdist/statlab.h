#ifndef QOPDIST_STATLAB_H
#define QOPDIST_STATLAB_H

#include <optional>
#include <utility>
#include <vector>

#include "qopdist/channels.h"
#include "qopdist/maximizers.h"
#include "qopdist/states.h"

namespace qopdist {

/// Occurrence probabilities (larger, smaller) of a pair under a maximizing operation.
struct TrianglePoint {
    double p_m = 0.0;
    double p_n = 0.0;
};

/// Uniform point of the triangle 0 <= p_n < p_m <= 1: sort two uniforms, reject ties.
TrianglePoint sample_triangle(Rng& rng);

/// Pair with tr(T rho) = p_m and tr(T sigma) = p_n, built with distance p_m - p_n,
/// dlambda total p_n and dkappa total 1 - p_m over the full unit eigenspace and kernel of T.
/// With split_rng the totals are split randomly, otherwise uniformly.
std::pair<DensityMatrix, DensityMatrix> pair_for_point(const QuantumOperation& e, const TrianglePoint& point,
                                                       Rng* split_rng = nullptr);

struct TrialRecord {
    TrianglePoint point;
    double d_in = 0.0;
    double d_out_normalized = 0.0;
    double d_out_subnormalized = 0.0;
    std::optional<double> relative_increase;  // present only when d_out_normalized > d_in
    bool normalized_bound_holds = false;       // d_out_normalized <= d_in / p_m
    bool subnormalized_bound_holds = false;    // d_out_subnormalized <= d_in / 2
    bool relative_bound_holds = false;         // relative_increase <= 1 - p_m (true when absent)
};

/// n_trials points of the triangle, each turned into a matched pair with random
/// weight splits and pushed through the bound reports.
std::vector<TrialRecord> run_trials(const QuantumOperation& e, int n_trials, Rng& rng);

/// Relative increase as a value in [0, 1]; trials without an increase count as 0.
double relative_increase_or_zero(const TrialRecord& r);

enum class MomentBound { kUniform, kWedge };

struct MomentCheck {
    double empirical_moment = 0.0;
    double std_error = 0.0;
    double bound = 0.0;
    bool holds = false;
};

/// 1/(n+1) for kUniform (density 1), 2/(n^2+3n+2) for kWedge (density 2 - 2x).
double moment_bound(MomentBound kind, int n);

/// Compares the empirical n-th moment against the dominating density's moment, with a 3-sigma margin.
MomentCheck moment_check(const std::vector<double>& samples, int n, MomentBound kind);

/// Cumulative distribution function sampled on a grid over [0, R].
struct SampledCdf {
    std::vector<double> grid;    // increasing, grid.front() == 0
    std::vector<double> values;  // F(grid[i]), nondecreasing, values.back() == 1
};

SampledCdf empirical_cdf(std::vector<double> samples, const std::vector<double>& grid);
SampledCdf cdf_from_function(double (*cdf)(double), const std::vector<double>& grid);
std::vector<double> uniform_grid(double hi, int points);

/// n-th moment from a CDF via integration by parts: R^n - int_0^R n x^(n-1) F(x) dx (trapezoid rule).
double moment_from_cdf(const SampledCdf& cdf, int n);

struct DominanceResult {
    bool dominance_holds = false;  // F_g >= F_h on the grid
    bool moments_ordered = false;  // <X^n> <= <Y^n> + tol for each order
    std::vector<double> moments_g;
    std::vector<double> moments_h;
    double worst_dominance_gap = 0.0;  // min over the grid of F_g - F_h
    bool ok() const { return dominance_holds && moments_ordered; }
};

/// If F_g dominates F_h pointwise, the moments of g are bounded by those of h.
DominanceResult dominance_implies_moments(const SampledCdf& cdf_g, const SampledCdf& cdf_h,
                                          const std::vector<int>& orders, double tol = 1e-9);

struct MeanDistanceCheck {
    double mean_d_in = 0.0;
    double mean_d_out_sub = 0.0;
    double std_error_out = 0.0;
    bool holds = false;  // mean_d_out_sub <= 1/6 + 3 sigma
};

MeanDistanceCheck mean_output_distance_bound(const std::vector<TrialRecord>& records);

struct CdfPoint {
    double level = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    double lower_bound = 0.0;
    bool holds = false;  // empirical >= lower_bound - 3 sigma
};

/// P[x <= level] against lower_bound(level) for every level.
std::vector<CdfPoint> cdf_lower_bound_check(const std::vector<double>& samples, const std::vector<double>& levels,
                                            double (*lower_bound)(double));

}  // namespace qopdist

#endif
