#include "qopdist/states.h"

#include <cmath>
#include <sstream>

#include "qopdist/errors.h"

namespace qopdist {

double DensityMatrix::purity() const { return trace_product(matrix(), matrix()); }

DensityMatrix validate_state(const HermitianOp& m, double tol) {
    const double min_eig = eigenvalues(m).back();
    if (min_eig < -tol) {
        std::ostringstream msg;
        msg << "state is not positive semidefinite: eigenvalue " << min_eig;
        throw ValidationError(msg.str());
    }
    const double tr = m.trace();
    if (std::abs(tr - 1.0) > tol) {
        std::ostringstream msg;
        msg << "state trace is " << tr << ", expected 1";
        throw ValidationError(msg.str());
    }
    return DensityMatrix(m * (1.0 / tr));
}

double BlochVector::norm() const { return std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]); }

const std::array<ComplexMatrix, 3>& pauli() {
    static const std::array<ComplexMatrix, 3> sigma = [] {
        const Complex i(0.0, 1.0);
        ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
        x << 0.0, 1.0, 1.0, 0.0;
        y << 0.0, -i, i, 0.0;
        z << 1.0, 0.0, 0.0, -1.0;
        return std::array<ComplexMatrix, 3>{x, y, z};
    }();
    return sigma;
}

DensityMatrix from_bloch(const BlochVector& u) {
    if (!(u.norm() <= 1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "Bloch vector length " << u.norm() << " exceeds 1";
        throw ValidationError(msg.str());
    }
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    for (int k = 0; k < 3; ++k) {
        m += u.u[k] * pauli()[k];
    }
    return validate_state(HermitianOp(0.5 * m));
}

BlochVector to_bloch(const DensityMatrix& rho) {
    if (rho.dim() != 2) {
        throw ValidationError("Bloch representation requires a qubit state");
    }
    BlochVector out;
    for (int k = 0; k < 3; ++k) {
        out.u[k] = trace_product(rho.matrix(), pauli()[k]);
    }
    return out;
}

ComplexMatrix random_ginibre(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

ComplexVector random_unit_vector(int dim, Rng& rng) {
    ComplexVector v = random_ginibre(dim, 1, rng).col(0);
    return v / v.norm();
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
    const ComplexMatrix g = random_ginibre(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < dim; ++k) {
        const Complex d = r(k, k);
        const double mag = std::abs(d);
        if (mag > 0.0) {
            q.col(k) *= d / mag;
        }
    }
    return q;
}

HermitianOp random_hermitian(int dim, Rng& rng, double scale) {
    const ComplexMatrix g = random_ginibre(dim, dim, rng);
    return HermitianOp(0.5 * scale * (g + g.adjoint()));
}

DensityMatrix random_pure(int dim, Rng& rng) {
    if (dim < 1) {
        throw ValidationError("dimension must be positive");
    }
    const ComplexVector psi = random_unit_vector(dim, rng);
    return validate_state(HermitianOp(psi * psi.adjoint()));
}

DensityMatrix random_density(int dim, int rank, Rng& rng) {
    if (dim < 1 || rank < 1 || rank > dim) {
        std::ostringstream msg;
        msg << "rank " << rank << " out of range for dimension " << dim;
        throw ValidationError(msg.str());
    }
    const ComplexMatrix g = random_ginibre(rank, dim, rng);
    const ComplexMatrix w = g.adjoint() * g;
    return validate_state(HermitianOp(w / w.trace().real()));
}

}  // namespace qopdist
