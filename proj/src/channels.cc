#include "qopdist/channels.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qopdist/errors.h"
#include "qopdist/metrics.h"

namespace qopdist {

namespace {

HermitianOp sum_kraus_products(const std::vector<ComplexMatrix>& kraus) {
    ComplexMatrix t = ComplexMatrix::Zero(kraus.front().cols(), kraus.front().cols());
    for (const ComplexMatrix& k : kraus) {
        t += k.adjoint() * k;
    }
    return HermitianOp(t);
}

void require_input_dim(const QuantumOperation& e, int dim) {
    if (e.dim_in() != dim) {
        std::ostringstream msg;
        msg << "operation input dimension " << e.dim_in() << " does not match state dimension " << dim;
        throw ValidationError(msg.str());
    }
}

const std::vector<ComplexMatrix>& checked_kraus(const std::vector<ComplexMatrix>& kraus) {
    if (kraus.empty()) {
        throw ValidationError("operation needs at least one Kraus operator");
    }
    for (const ComplexMatrix& k : kraus) {
        if (k.rows() == 0 || k.cols() == 0 || k.rows() != kraus.front().rows() || k.cols() != kraus.front().cols()) {
            throw ValidationError("Kraus operators must share a non-empty shape");
        }
        if (!all_finite(k)) {
            throw ValidationError("Kraus operator has non-finite entries");
        }
    }
    return kraus;
}

}  // namespace

QuantumOperation::QuantumOperation(std::vector<ComplexMatrix> kraus, double tol)
    : dim_in_(static_cast<int>(checked_kraus(kraus).front().cols())),
      dim_out_(static_cast<int>(kraus.front().rows())),
      kraus_(std::move(kraus)),
      t_(sum_kraus_products(kraus_)) {
    const std::vector<double> spectrum = eigenvalues(t_);
    if (spectrum.back() < -tol || spectrum.front() > 1.0 + tol) {
        std::ostringstream msg;
        msg << "T operator spectrum [" << spectrum.back() << ", " << spectrum.front() << "] is not inside [0, 1]";
        throw ValidationError(msg.str());
    }
}

HermitianOp apply(const QuantumOperation& e, const HermitianOp& x) {
    require_input_dim(e, x.dim());
    ComplexMatrix out = ComplexMatrix::Zero(e.dim_out(), e.dim_out());
    for (const ComplexMatrix& k : e.kraus()) {
        out += k * x.matrix() * k.adjoint();
    }
    return HermitianOp(out);
}

HermitianOp apply(const QuantumOperation& e, const DensityMatrix& rho) { return apply(e, rho.op()); }

HermitianOp t_operator(const QuantumOperation& e) { return e.t(); }

double occurrence_probability(const QuantumOperation& e, const DensityMatrix& rho) {
    require_input_dim(e, rho.dim());
    return std::clamp(trace_product(e.t().matrix(), rho.matrix()), 0.0, 1.0);
}

NormalizedOutput normalize_output(const QuantumOperation& e, const DensityMatrix& rho, double tol_prob) {
    const double p = occurrence_probability(e, rho);
    if (p <= tol_prob) {
        std::ostringstream msg;
        msg << "operation occurs with probability " << p << " on this input";
        throw ZeroProbabilityError(msg.str());
    }
    const HermitianOp out = apply(e, rho);
    // The trace of the applied output and tr(T rho) agree to round-off; divide by
    // the former so the normalized state has unit trace to machine precision.
    const double tr = out.trace();
    return NormalizedOutput{validate_state(out * (1.0 / tr), kTolPsd + 1e-14 / tr), p};
}

double e_distance(const QuantumOperation& e, const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_input_dim(e, rho.dim());
    require_input_dim(e, sigma.dim());
    const double diff = trace_product(e.t().matrix(), rho.matrix()) - trace_product(e.t().matrix(), sigma.matrix());
    return std::clamp(std::abs(diff), 0.0, 1.0);
}

bool is_trace_preserving(const QuantumOperation& e, double tol) {
    return max_abs(e.t().matrix() - ComplexMatrix::Identity(e.dim_in(), e.dim_in())) <= tol;
}

ExtremalPair max_e_distance_over_states(const QuantumOperation& e, double eig_tol) {
    const EigenSystem es = eig_hermitian(e.t());
    const double top = es.values.front();
    const double bottom = es.values.back();
    std::vector<ComplexVector> top_space, bottom_space;
    for (size_t k = 0; k < es.values.size(); ++k) {
        if (es.values[k] >= top - eig_tol) {
            top_space.push_back(es.vectors[k]);
        }
        if (es.values[k] <= bottom + eig_tol) {
            bottom_space.push_back(es.vectors[k]);
        }
    }
    const HermitianOp p_top = projector_onto(top_space, e.dim_in());
    const HermitianOp p_bottom = projector_onto(bottom_space, e.dim_in());
    return ExtremalPair{top - bottom, validate_state(p_top * (1.0 / top_space.size())),
                        validate_state(p_bottom * (1.0 / bottom_space.size())), top, bottom};
}

ContractivityRecord contractivity_check(const QuantumOperation& e, const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (!is_trace_preserving(e)) {
        throw ValidationError("contractivity is only guaranteed for trace-preserving operations");
    }
    ContractivityRecord out;
    out.d_in = trace_distance(rho, sigma);
    out.d_out = trace_distance(apply(e, rho), apply(e, sigma));
    out.holds = out.d_out <= out.d_in + 1e-9;
    return out;
}

ClonerOutputs cloner_outputs(const DensityMatrix& omega1, const DensityMatrix& omega2, double tol) {
    if (omega1.dim() != omega2.dim()) {
        throw ValidationError("cloner inputs must share a dimension");
    }
    for (const DensityMatrix* w : {&omega1, &omega2}) {
        if (std::abs(w->purity() - 1.0) > tol) {
            std::ostringstream msg;
            msg << "cloner input is not pure: tr(rho^2) = " << w->purity();
            throw ValidationError(msg.str());
        }
    }
    if (trace_distance(omega1, omega2) <= tol) {
        throw ValidationError("cloner inputs must be distinct");
    }
    const double omega = fidelity(omega1, omega2);
    const double scale = 1.0 / (1.0 + omega);
    return ClonerOutputs{HermitianOp(scale * kron(omega1.matrix(), omega1.matrix())),
                         HermitianOp(scale * kron(omega2.matrix(), omega2.matrix())), omega};
}

double cloner_distance_factor(double omega) {
    if (!(omega >= 0.0 && omega < 1.0)) {
        std::ostringstream msg;
        msg << "cloner fidelity must lie in [0, 1), got " << omega;
        throw ValidationError(msg.str());
    }
    return std::sqrt(1.0 + omega * omega) / (1.0 + omega);
}

QuantumOperation random_operation(int dim_in, int dim_out, int count, Rng& rng, double margin) {
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(count);
    for (int k = 0; k < count; ++k) {
        kraus.push_back(random_ginibre(dim_out, dim_in, rng));
    }
    const double norm = eigenvalues(sum_kraus_products(kraus)).front();
    const double scale = 1.0 / std::sqrt(norm + margin);
    for (ComplexMatrix& k : kraus) {
        k *= scale;
    }
    return QuantumOperation(std::move(kraus));
}

QuantumOperation random_trace_preserving(int dim_in, int dim_out, int count, Rng& rng) {
    const int big = count * dim_out;
    if (big < dim_in) {
        throw ValidationError("count * dim_out must be at least dim_in for a trace-preserving operation");
    }
    const ComplexMatrix isometry = random_unitary(big, rng).leftCols(dim_in);
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(count);
    for (int k = 0; k < count; ++k) {
        kraus.push_back(isometry.middleRows(k * dim_out, dim_out));
    }
    return QuantumOperation(std::move(kraus));
}

QuantumOperation unitary_operation(const ComplexMatrix& u) { return QuantumOperation({u}); }

}  // namespace qopdist
