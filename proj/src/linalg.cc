#include "qopdist/linalg.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qopdist/errors.h"

namespace qopdist {

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector basis_vector(int dim, int index) {
    ComplexVector v = ComplexVector::Zero(dim);
    v(index) = 1.0;
    return v;
}

HermitianOp::HermitianOp(const ComplexMatrix& m, double tol) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        std::ostringstream msg;
        msg << "Hermitian operator must be square and non-empty, got " << m.rows() << "x" << m.cols();
        throw ValidationError(msg.str());
    }
    if (!all_finite(m)) {
        throw ValidationError("matrix has non-finite entries");
    }
    const double asym = max_abs(m - m.adjoint());
    if (asym > tol * std::max(1.0, max_abs(m))) {
        std::ostringstream msg;
        msg << "matrix is not Hermitian: max |M - M^dagger| = " << asym;
        throw ValidationError(msg.str());
    }
    m_ = (m + m.adjoint()) * 0.5;
}

HermitianOp HermitianOp::zero(int dim) { return HermitianOp(ComplexMatrix::Zero(dim, dim)); }

HermitianOp HermitianOp::identity(int dim) { return HermitianOp(ComplexMatrix::Identity(dim, dim)); }

HermitianOp HermitianOp::diagonal(const std::vector<double>& entries) {
    const int n = static_cast<int>(entries.size());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = entries[i];
    }
    return HermitianOp(m);
}

HermitianOp HermitianOp::operator+(const HermitianOp& other) const {
    if (dim() != other.dim()) {
        throw ValidationError("dimension mismatch in Hermitian sum");
    }
    return HermitianOp(m_ + other.m_);
}

HermitianOp HermitianOp::operator-(const HermitianOp& other) const {
    if (dim() != other.dim()) {
        throw ValidationError("dimension mismatch in Hermitian difference");
    }
    return HermitianOp(m_ - other.m_);
}

HermitianOp HermitianOp::operator*(double s) const { return HermitianOp(m_ * s); }

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    // tr(AB) = sum_ij A_ij B_ji
    return (a.array() * b.transpose().array()).sum().real();
}

EigenSystem eig_hermitian(const HermitianOp& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigensolver did not converge");
    }
    const int n = h.dim();
    EigenSystem out;
    out.values.reserve(n);
    out.vectors.reserve(n);
    // Eigen sorts ascending.
    for (int k = n - 1; k >= 0; --k) {
        out.values.push_back(solver.eigenvalues()(k));
        out.vectors.push_back(solver.eigenvectors().col(k));
    }
    return out;
}

std::vector<double> eigenvalues(const HermitianOp& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigensolver did not converge");
    }
    std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + h.dim());
    std::reverse(values.begin(), values.end());
    return values;
}

bool is_psd(const HermitianOp& h, double tol) { return eigenvalues(h).back() >= -tol; }

HermitianOp psd_sqrt(const HermitianOp& a, double tol_psd) {
    const EigenSystem es = eig_hermitian(a);
    const int n = a.dim();
    ComplexMatrix s = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        double e = es.values[k];
        if (e < -tol_psd) {
            std::ostringstream msg;
            msg << "operator is not positive semidefinite: eigenvalue " << e;
            throw ValidationError(msg.str());
        }
        e = std::max(e, 0.0);
        s += std::sqrt(e) * es.vectors[k] * es.vectors[k].adjoint();
    }
    return HermitianOp(s);
}

SpectralSplit spectral_split(const HermitianOp& delta, std::optional<double> tol_zero) {
    const int n = delta.dim();
    const EigenSystem es = eig_hermitian(delta);
    double scale = 0.0;
    for (double e : es.values) {
        scale = std::max(scale, std::abs(e));
    }
    const double cut = tol_zero.value_or(kRelTolZero * scale);

    ComplexMatrix q = ComplexMatrix::Zero(n, n);
    ComplexMatrix r = ComplexMatrix::Zero(n, n);
    std::vector<ComplexVector> q_basis, r_basis, kernel;
    std::vector<double> q_values, r_values;
    for (int k = 0; k < n; ++k) {
        const double e = es.values[k];
        const ComplexVector& v = es.vectors[k];
        if (e > cut) {
            q += e * v * v.adjoint();
            q_basis.push_back(v);
            q_values.push_back(e);
        } else if (e < -cut) {
            r += (-e) * v * v.adjoint();
            r_basis.push_back(v);
            r_values.push_back(-e);
        } else {
            kernel.push_back(v);
        }
    }
    return SpectralSplit{HermitianOp(q), HermitianOp(r), std::move(q_basis), std::move(q_values),
                         std::move(r_basis), std::move(r_values), std::move(kernel)};
}

HermitianOp projector_onto(std::span<const ComplexVector> vectors, int dim, double tol_ortho) {
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    for (size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != dim) {
            throw ValidationError("projector vector has wrong dimension");
        }
        for (size_t j = 0; j <= i; ++j) {
            const Complex overlap = vectors[j].dot(vectors[i]);
            const double expected = i == j ? 1.0 : 0.0;
            if (std::abs(overlap - expected) > tol_ortho) {
                std::ostringstream msg;
                msg << "vectors are not orthonormal: <v" << j << "|v" << i << "> = " << overlap;
                throw ValidationError(msg.str());
            }
        }
        p += vectors[i] * vectors[i].adjoint();
    }
    return HermitianOp(p);
}

double trace_norm_half(const HermitianOp& delta) {
    double sum = 0.0;
    for (double e : eigenvalues(delta)) {
        sum += std::abs(e);
    }
    return 0.5 * sum;
}

}  // namespace qopdist
