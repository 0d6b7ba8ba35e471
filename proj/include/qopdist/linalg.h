#ifndef QOPDIST_LINALG_H
#define QOPDIST_LINALG_H

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qopdist {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kTolHerm = 1e-9;
inline constexpr double kTolPsd = 1e-9;
inline constexpr double kTolOrtho = 1e-9;
/// Relative cut used by spectral_split when no explicit tolerance is given.
inline constexpr double kRelTolZero = 1e-9;

bool all_finite(const ComplexMatrix& m);
/// Largest absolute entry.
double max_abs(const ComplexMatrix& m);
ComplexMatrix dagger(const ComplexMatrix& m);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// Standard basis vector e_index in C^dim.
ComplexVector basis_vector(int dim, int index);

/// Square complex matrix equal to its conjugate transpose.
///
/// Construction checks the symmetry within a tolerance and then stores the
/// exactly Hermitian part (M + M^dagger) / 2, so downstream code can rely on
/// real diagonals and exact symmetry.
class HermitianOp {
   public:
    explicit HermitianOp(const ComplexMatrix& m, double tol = kTolHerm);

    static HermitianOp zero(int dim);
    static HermitianOp identity(int dim);
    static HermitianOp diagonal(const std::vector<double>& entries);

    int dim() const { return static_cast<int>(m_.rows()); }
    const ComplexMatrix& matrix() const { return m_; }
    double trace() const { return m_.trace().real(); }

    HermitianOp operator+(const HermitianOp& other) const;
    HermitianOp operator-(const HermitianOp& other) const;
    HermitianOp operator*(double s) const;

   private:
    ComplexMatrix m_;
};

/// Real part of tr(a * b).
double trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenSystem {
    std::vector<double> values;          // descending
    std::vector<ComplexVector> vectors;  // orthonormal, vectors[k] pairs with values[k]
};

EigenSystem eig_hermitian(const HermitianOp& h);
std::vector<double> eigenvalues(const HermitianOp& h);

bool is_psd(const HermitianOp& h, double tol = kTolPsd);

/// Unique positive square root. Eigenvalues in [-tol_psd, 0) are clamped to 0.
HermitianOp psd_sqrt(const HermitianOp& a, double tol_psd = kTolPsd);

/// Positive and negative parts of a Hermitian operator with orthogonal supports.
struct SpectralSplit {
    HermitianOp q;  // positive part
    HermitianOp r;  // negative part, stored positive
    std::vector<ComplexVector> q_basis;
    std::vector<double> q_values;  // strictly positive eigenvalues
    std::vector<ComplexVector> r_basis;
    std::vector<double> r_values;  // magnitudes of the strictly negative eigenvalues
    std::vector<ComplexVector> kernel_basis;
};

/// Eigenvalues with |e| <= tol_zero go to the kernel. The default cut is
/// kRelTolZero times the largest |eigenvalue|.
SpectralSplit spectral_split(const HermitianOp& delta, std::optional<double> tol_zero = std::nullopt);

/// Sum of |v><v| over an orthonormal list.
HermitianOp projector_onto(std::span<const ComplexVector> vectors, int dim, double tol_ortho = kTolOrtho);

/// Half the sum of absolute eigenvalues.
double trace_norm_half(const HermitianOp& delta);

}  // namespace qopdist

#endif
