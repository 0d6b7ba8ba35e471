#ifndef QOPDIST_STATES_H
#define QOPDIST_STATES_H

#include <array>
#include <random>

#include "qopdist/linalg.h"

namespace qopdist {

/// Every randomized routine takes one of these explicitly; nothing is seeded globally.
using Rng = std::mt19937_64;

inline constexpr double kTolTrace = 1e-10;

/// Positive semidefinite Hermitian operator with unit trace.
class DensityMatrix {
   public:
    const HermitianOp& op() const { return op_; }
    const ComplexMatrix& matrix() const { return op_.matrix(); }
    int dim() const { return op_.dim(); }
    /// tr(rho^2)
    double purity() const;

   private:
    explicit DensityMatrix(HermitianOp op) : op_(std::move(op)) {}
    friend DensityMatrix validate_state(const HermitianOp& m, double tol);

    HermitianOp op_;
};

/// Accepts m iff it is PSD and has unit trace within tol; a residual trace
/// drift below tol is normalized away.
DensityMatrix validate_state(const HermitianOp& m, double tol = kTolPsd);

struct BlochVector {
    std::array<double, 3> u{};

    double norm() const;
};

/// Pauli matrices sigma_x, sigma_y, sigma_z.
const std::array<ComplexMatrix, 3>& pauli();

/// rho = (1 + u . sigma) / 2
DensityMatrix from_bloch(const BlochVector& u);
/// u_i = tr(rho sigma_i) for a qubit state.
BlochVector to_bloch(const DensityMatrix& rho);

/// Pure state |psi><psi| with |psi> drawn from the unitarily invariant measure.
DensityMatrix random_pure(int dim, Rng& rng);
/// Hilbert-Schmidt-induced mixed state G^dagger G / tr(G^dagger G), G of size rank x dim.
DensityMatrix random_density(int dim, int rank, Rng& rng);

/// Matrix with independent standard complex-normal entries.
ComplexMatrix random_ginibre(int rows, int cols, Rng& rng);
/// Random unit vector in C^dim.
ComplexVector random_unit_vector(int dim, Rng& rng);
/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix random_unitary(int dim, Rng& rng);
/// Hermitian operator (G + G^dagger) / 2 scaled by `scale`; no positivity or trace constraint.
HermitianOp random_hermitian(int dim, Rng& rng, double scale = 1.0);

}  // namespace qopdist

#endif
