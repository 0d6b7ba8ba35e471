#ifndef QOPDIST_MAXIMIZERS_H
#define QOPDIST_MAXIMIZERS_H

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "qopdist/channels.h"
#include "qopdist/linalg.h"
#include "qopdist/states.h"

namespace qopdist {

/// Which projector T reduces to (up to a kernel term) for a maximizing operation.
enum class MaximizerMode { kOnQ, kOnR, kNotMaximizer };

std::string_view to_string(MaximizerMode mode);

/// Pairs closer than this in trace distance are treated as identical.
inline constexpr double kTolDegenerate = 1e-10;

/// Builds an operation whose e-distance on (rho, sigma) equals their trace distance.
///
/// The Kraus operators are |q'><q| for every eigenvector |q> of the positive
/// part of rho - sigma (mode kOnQ) or of the negative part (mode kOnR), so that
/// T is the projector onto that support. The output vectors |q'> only have to be
/// normalized; by default they are the standard basis of the output space,
/// reused cyclically when the support is larger than dim_out.
QuantumOperation build_maximizing_operation(const DensityMatrix& rho, const DensityMatrix& sigma, int dim_out,
                                            MaximizerMode mode,
                                            const std::optional<std::vector<ComplexVector>>& output_vectors = std::nullopt);

struct CertificateDiagnostics {
    double tr_tq = 0.0;
    double tr_q = 0.0;
    double tr_tr = 0.0;
    double tr_r = 0.0;
    /// trace deficit on the favoured support plus leakage into the other one;
    /// equals D - d_E for the chosen mode
    double trace_residual = 0.0;
    double support_block_residual = 0.0;  // ||T_SS - 1||_F
    double null_block_residual = 0.0;     // ||T_OO||_F
    double coupling_residual = 0.0;       // largest Frobenius norm among T_SO, T_SK, T_OK
    double block_tol = 0.0;
};

struct MaximizerCertificate {
    MaximizerMode mode = MaximizerMode::kNotMaximizer;
    std::optional<HermitianOp> m;  // kernel part of T, present iff mode != kNotMaximizer
    CertificateDiagnostics diagnostics;
};

/// Decides whether e maximizes the probability difference between rho and sigma
/// by decomposing T in the (supp Q, supp R, kernel) basis of rho - sigma.
///
/// A mode is granted when the trace conditions hold within `tol` and every block
/// residual is below the tolerance they imply for a positive T <= 1. The kOnQ
/// check runs first.
MaximizerCertificate certify_maximizer(const QuantumOperation& e, const DensityMatrix& rho, const DensityMatrix& sigma,
                                       double tol = 1e-8);

/// Eigenvalue weights for a state pair matched to a maximizing operation.
struct PairWeights {
    std::vector<double> lambda;        // sums to the target distance
    std::vector<double> kappa;         // sums to the target distance
    std::vector<double> delta_lambda;  // together with delta_kappa sums to 1 - target
    std::vector<double> delta_kappa;
};

/// Equal split of each total across n_q unit-eigenspace and n_r kernel directions.
PairWeights uniform_weights(int n_q, int n_r, double d_target, double delta_lambda_total, double delta_kappa_total);
/// Random split (normalized exponentials) of the same totals.
PairWeights random_weights(int n_q, int n_r, double d_target, double delta_lambda_total, double delta_kappa_total,
                           Rng& rng);

/// Orthonormal eigenvectors of T with eigenvalue 1 and with eigenvalue 0.
struct MaximizerShape {
    std::vector<ComplexVector> unit_space;
    std::vector<ComplexVector> zero_space;
    std::vector<double> spectrum;  // descending
};

/// Throws NotMaximizingShapeError unless T has both a unit and a zero eigenvalue (within eig_tol).
MaximizerShape maximizer_shape(const QuantumOperation& e, double eig_tol = 1e-9);

/// Builds rho, sigma, diagonal in eigenvectors of T, with
///   rho   = sum_q (lambda_q + dlambda_q)|q><q| + sum_r dkappa_r |r><r|
///   sigma = sum_r (kappa_r + dkappa_r)|r><r| + sum_q dlambda_q |q><q|
/// where the |q> span part of the unit eigenspace of T and the |r> part of its kernel.
/// Both trace and e-distance of the result equal d_target.
std::pair<DensityMatrix, DensityMatrix> build_state_pair(const QuantumOperation& e, double d_target,
                                                         const PairWeights& weights);

struct BoundReport {
    double d_in = 0.0;
    std::optional<double> d_out_normalized;
    double d_out_subnormalized = 0.0;
    double p_m = 0.0;
    double p_n = 0.0;
    double bound = 0.0;
    bool holds = false;
    /// (D_out - D_in) / D_out, present only when the normalized distance grew
    std::optional<double> relative_increase;
    bool relative_holds = true;
};

/// Normalized-output bound D(rho', sigma') <= D(rho, sigma) / p_m, plus the
/// relative-increase bound (D_out - D_in) / D_out <= 1 - p_m.
BoundReport theorem3_report(const QuantumOperation& e, const DensityMatrix& rho, const DensityMatrix& sigma,
                            double slack = 1e-9);
/// Subnormalized-output bound D(E(rho), E(sigma)) <= D(rho, sigma) / 2.
BoundReport theorem4_report(const QuantumOperation& e, const DensityMatrix& rho, const DensityMatrix& sigma,
                            double slack = 1e-9);

struct ExtremalTraces {
    double max_val;
    double min_val;
    HermitianOp q_max;
    HermitianOp q_min;
};

/// Extremes of tr(T Q) over positive Q with tr Q = d_frak, with optimizers.
ExtremalTraces extremal_trace_product(const HermitianOp& t, double d_frak);

struct MaximizingProjector {
    HermitianOp pi;
    double value;
};

/// Projector onto the positive part of A - B; maximizes tr(Pi (A - B)) over 0 <= Pi <= 1.
MaximizingProjector maximizing_projector(const HermitianOp& a, const HermitianOp& b);

}  // namespace qopdist

#endif
