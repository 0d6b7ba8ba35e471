#ifndef QOPDIST_CHANNELS_H
#define QOPDIST_CHANNELS_H

#include <vector>

#include "qopdist/linalg.h"
#include "qopdist/states.h"

namespace qopdist {

inline constexpr double kTolProb = 1e-12;
inline constexpr double kTolOperation = 1e-9;

/// Quantum operation in operator-sum form, rho -> sum_mu E_mu rho E_mu^dagger.
///
/// Each Kraus operator maps the dim_in input space to the dim_out output space.
/// The positive operator T = sum_mu E_mu^dagger E_mu is computed once at
/// construction and must satisfy 0 <= T <= 1, which is exactly the requirement
/// that every input occurs with probability tr(T rho) in [0, 1].
class QuantumOperation {
   public:
    explicit QuantumOperation(std::vector<ComplexMatrix> kraus, double tol = kTolOperation);

    int dim_in() const { return dim_in_; }
    int dim_out() const { return dim_out_; }
    const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
    const HermitianOp& t() const { return t_; }

   private:
    int dim_in_;
    int dim_out_;
    std::vector<ComplexMatrix> kraus_;
    HermitianOp t_;
};

/// Unnormalized output sum_mu E_mu rho E_mu^dagger.
HermitianOp apply(const QuantumOperation& e, const DensityMatrix& rho);
/// Same map applied to an arbitrary Hermitian input.
HermitianOp apply(const QuantumOperation& e, const HermitianOp& x);

HermitianOp t_operator(const QuantumOperation& e);

/// tr(T rho), clamped to [0, 1].
double occurrence_probability(const QuantumOperation& e, const DensityMatrix& rho);

struct NormalizedOutput {
    DensityMatrix state;
    double prob;
};

/// Output state conditioned on the operation occurring, with its probability.
NormalizedOutput normalize_output(const QuantumOperation& e, const DensityMatrix& rho, double tol_prob = kTolProb);

/// |tr(T rho) - tr(T sigma)|.
double e_distance(const QuantumOperation& e, const DensityMatrix& rho, const DensityMatrix& sigma);

bool is_trace_preserving(const QuantumOperation& e, double tol = kTolOperation);

struct ExtremalPair {
    double value;          // theta_max - theta_min
    DensityMatrix rho_star;    // normalized projector onto the theta_max eigenspace
    DensityMatrix sigma_star;  // normalized projector onto the theta_min eigenspace
    double theta_max;
    double theta_min;
};

/// Maximum of e_distance over all pairs of states, with a pair attaining it.
/// Eigenvalues within eig_tol of an extreme eigenvalue belong to its eigenspace.
ExtremalPair max_e_distance_over_states(const QuantumOperation& e, double eig_tol = 1e-12);

struct ContractivityRecord {
    double d_in;
    double d_out;
    bool holds;
};

/// Trace distance before and after a trace-preserving operation.
ContractivityRecord contractivity_check(const QuantumOperation& e, const DensityMatrix& rho, const DensityMatrix& sigma);

struct ClonerOutputs {
    HermitianOp g1;  // (1 + Omega)^-1 omega_1 (x) omega_1
    HermitianOp g2;
    double omega;    // fidelity of the two inputs
};

/// Outputs of the optimal probabilistic exact cloner for a pair of distinct pure states.
ClonerOutputs cloner_outputs(const DensityMatrix& omega1, const DensityMatrix& omega2, double tol = 1e-9);

/// sqrt(1 + Omega^2) / (1 + Omega) for Omega in [0, 1).
double cloner_distance_factor(double omega);

/// Random operation with `count` complex-normal Kraus candidates, rescaled by
/// 1 / sqrt(||T|| + margin) so that T < 1 strictly.
QuantumOperation random_operation(int dim_in, int dim_out, int count, Rng& rng, double margin = 1e-3);

/// Random trace-preserving operation: the first dim_in columns of a Haar
/// unitary on C^(count * dim_out), cut into `count` Kraus blocks.
/// Requires count * dim_out >= dim_in.
QuantumOperation random_trace_preserving(int dim_in, int dim_out, int count, Rng& rng);

/// Single-Kraus operation E = U.
QuantumOperation unitary_operation(const ComplexMatrix& u);

}  // namespace qopdist

#endif
