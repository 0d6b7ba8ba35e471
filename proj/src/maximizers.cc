#include "qopdist/maximizers.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qopdist/errors.h"
#include "qopdist/metrics.h"

namespace qopdist {

namespace {

constexpr double kTolWeightSum = 1e-10;

double sum(const std::vector<double>& xs) { return std::accumulate(xs.begin(), xs.end(), 0.0); }

SpectralSplit checked_split(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw ValidationError("states must share a dimension");
    }
    if (trace_distance(rho, sigma) <= kTolDegenerate) {
        throw DegenerateInputError("states are identical; every operation has zero e-distance");
    }
    SpectralSplit split = spectral_split(rho.op() - sigma.op());
    if (split.q_basis.empty() || split.r_basis.empty()) {
        throw DegenerateInputError("difference of states lacks a positive or a negative part");
    }
    return split;
}

ComplexMatrix columns(const std::vector<ComplexVector>& vs, int dim) {
    ComplexMatrix out(dim, static_cast<Eigen::Index>(vs.size()));
    for (size_t i = 0; i < vs.size(); ++i) {
        out.col(static_cast<Eigen::Index>(i)) = vs[i];
    }
    return out;
}

std::vector<double> split_total(int n, double total, Rng* rng) {
    std::vector<double> w(n, 1.0);
    if (rng != nullptr) {
        std::exponential_distribution<double> exp1(1.0);
        for (double& x : w) {
            x = exp1(*rng);
        }
    }
    const double s = sum(w);
    for (double& x : w) {
        x *= total / s;
    }
    return w;
}

PairWeights make_weights(int n_q, int n_r, double d_target, double dl_total, double dk_total, Rng* rng) {
    if (n_q < 1 || n_r < 1) {
        throw ValidationError("weight lists need at least one entry each");
    }
    PairWeights w;
    w.lambda = split_total(n_q, d_target, rng);
    w.kappa = split_total(n_r, d_target, rng);
    w.delta_lambda = split_total(n_q, dl_total, rng);
    w.delta_kappa = split_total(n_r, dk_total, rng);
    return w;
}

void require_positive(const std::vector<double>& xs, const char* name, bool strict) {
    for (double x : xs) {
        if (!(strict ? x > 0.0 : x >= 0.0)) {
            std::ostringstream msg;
            msg << name << " entries must be " << (strict ? "positive" : "nonnegative") << ", got " << x;
            throw ValidationError(msg.str());
        }
    }
}

}  // namespace

std::string_view to_string(MaximizerMode mode) {
    switch (mode) {
        case MaximizerMode::kOnQ:
            return "ON_Q";
        case MaximizerMode::kOnR:
            return "ON_R";
        case MaximizerMode::kNotMaximizer:
            return "NOT_MAXIMIZER";
    }
    return "NOT_MAXIMIZER";
}

QuantumOperation build_maximizing_operation(const DensityMatrix& rho, const DensityMatrix& sigma, int dim_out,
                                            MaximizerMode mode,
                                            const std::optional<std::vector<ComplexVector>>& output_vectors) {
    if (mode == MaximizerMode::kNotMaximizer) {
        throw ValidationError("a maximizing operation must target supp(Q) or supp(R)");
    }
    if (dim_out < 1) {
        throw ValidationError("output dimension must be positive");
    }
    const SpectralSplit split = checked_split(rho, sigma);
    const std::vector<ComplexVector>& support = mode == MaximizerMode::kOnQ ? split.q_basis : split.r_basis;

    std::vector<ComplexVector> outs;
    if (output_vectors) {
        if (output_vectors->size() != support.size()) {
            std::ostringstream msg;
            msg << "expected " << support.size() << " output vectors, got " << output_vectors->size();
            throw ValidationError(msg.str());
        }
        for (const ComplexVector& v : *output_vectors) {
            if (v.size() != dim_out || std::abs(v.norm() - 1.0) > kTolOrtho) {
                throw ValidationError("output vectors must be normalized vectors of the output space");
            }
        }
        outs = *output_vectors;
    } else {
        for (size_t i = 0; i < support.size(); ++i) {
            outs.push_back(basis_vector(dim_out, static_cast<int>(i % dim_out)));
        }
    }

    std::vector<ComplexMatrix> kraus;
    kraus.reserve(support.size());
    for (size_t i = 0; i < support.size(); ++i) {
        kraus.push_back(outs[i] * support[i].adjoint());
    }
    return QuantumOperation(std::move(kraus));
}

MaximizerCertificate certify_maximizer(const QuantumOperation& e, const DensityMatrix& rho, const DensityMatrix& sigma,
                                       double tol) {
    const SpectralSplit split = checked_split(rho, sigma);
    if (e.dim_in() != rho.dim()) {
        throw ValidationError("operation input dimension does not match the states");
    }
    const int n = rho.dim();
    const int nq = static_cast<int>(split.q_basis.size());
    const int nr = static_cast<int>(split.r_basis.size());
    const int nk = static_cast<int>(split.kernel_basis.size());

    std::vector<ComplexVector> basis = split.q_basis;
    basis.insert(basis.end(), split.r_basis.begin(), split.r_basis.end());
    basis.insert(basis.end(), split.kernel_basis.begin(), split.kernel_basis.end());
    const ComplexMatrix u = columns(basis, n);
    const ComplexMatrix tb = u.adjoint() * e.t().matrix() * u;

    CertificateDiagnostics diag;
    diag.tr_tq = trace_product(e.t().matrix(), split.q.matrix());
    diag.tr_q = split.q.trace();
    diag.tr_tr = trace_product(e.t().matrix(), split.r.matrix());
    diag.tr_r = split.r.trace();

    double smallest = std::numeric_limits<double>::infinity();
    for (double x : split.q_values) smallest = std::min(smallest, x);
    for (double x : split.r_values) smallest = std::min(smallest, x);
    // For 0 <= T <= 1 a trace residual eps bounds the diagonal blocks by eps / smallest
    // and, through 2x2 principal minors, every coupling block by sqrt(n eps / smallest).
    diag.block_tol = std::sqrt(n * tol / smallest) + tol / smallest + 1e-12;

    const int kernel_offset = nq + nr;
    auto block = [&](int row, int rows, int col, int cols) -> double {
        if (rows == 0 || cols == 0) return 0.0;
        return tb.block(row, col, rows, cols).norm();
    };

    MaximizerCertificate cert;
    for (MaximizerMode mode : {MaximizerMode::kOnQ, MaximizerMode::kOnR}) {
        const bool on_q = mode == MaximizerMode::kOnQ;
        const int s_off = on_q ? 0 : nq;
        const int s_len = on_q ? nq : nr;
        const int o_off = on_q ? nq : 0;
        const int o_len = on_q ? nr : nq;

        const double residual =
            on_q ? (diag.tr_q - diag.tr_tq) + diag.tr_tr : (diag.tr_r - diag.tr_tr) + diag.tr_tq;
        const double support_res =
            (tb.block(s_off, s_off, s_len, s_len) - ComplexMatrix::Identity(s_len, s_len)).norm();
        const double null_res = block(o_off, o_len, o_off, o_len);
        const double coupling_res = std::max({block(s_off, s_len, o_off, o_len), block(s_off, s_len, kernel_offset, nk),
                                              block(o_off, o_len, kernel_offset, nk)});

        bool m_ok = true;
        ComplexMatrix m = ComplexMatrix::Zero(n, n);
        if (nk > 0) {
            const ComplexMatrix kernel_cols = u.rightCols(nk);
            const ComplexMatrix kk = tb.block(kernel_offset, kernel_offset, nk, nk);
            const std::vector<double> kk_eigs = eigenvalues(HermitianOp(kk));
            m_ok = kk_eigs.back() >= -kTolOperation && kk_eigs.front() <= 1.0 + kTolOperation;
            m = kernel_cols * kk * kernel_cols.adjoint();
        }

        const bool ok = residual < tol && support_res <= diag.block_tol && null_res <= diag.block_tol &&
                        coupling_res <= diag.block_tol && m_ok;
        if (on_q || ok) {
            diag.trace_residual = residual;
            diag.support_block_residual = support_res;
            diag.null_block_residual = null_res;
            diag.coupling_residual = coupling_res;
        }
        if (ok) {
            cert.mode = mode;
            cert.m = HermitianOp(m);
            break;
        }
    }
    cert.diagnostics = diag;
    return cert;
}

PairWeights uniform_weights(int n_q, int n_r, double d_target, double delta_lambda_total, double delta_kappa_total) {
    return make_weights(n_q, n_r, d_target, delta_lambda_total, delta_kappa_total, nullptr);
}

PairWeights random_weights(int n_q, int n_r, double d_target, double delta_lambda_total, double delta_kappa_total,
                           Rng& rng) {
    return make_weights(n_q, n_r, d_target, delta_lambda_total, delta_kappa_total, &rng);
}

MaximizerShape maximizer_shape(const QuantumOperation& e, double eig_tol) {
    const EigenSystem es = eig_hermitian(e.t());
    MaximizerShape shape;
    shape.spectrum = es.values;
    for (size_t k = 0; k < es.values.size(); ++k) {
        if (std::abs(es.values[k] - 1.0) <= eig_tol) {
            shape.unit_space.push_back(es.vectors[k]);
        } else if (std::abs(es.values[k]) <= eig_tol) {
            shape.zero_space.push_back(es.vectors[k]);
        }
    }
    if (shape.unit_space.empty() || shape.zero_space.empty()) {
        std::ostringstream msg;
        msg << "T must have eigenvalues 1 and 0; spectrum is";
        for (double x : es.values) msg << ' ' << x;
        throw NotMaximizingShapeError(msg.str());
    }
    return shape;
}

std::pair<DensityMatrix, DensityMatrix> build_state_pair(const QuantumOperation& e, double d_target,
                                                         const PairWeights& w) {
    const MaximizerShape shape = maximizer_shape(e);
    if (!(d_target > 0.0 && d_target < 1.0)) {
        throw ValidationError("target distance must lie in (0, 1)");
    }
    const size_t nq = w.lambda.size();
    const size_t nr = w.kappa.size();
    if (nq == 0 || nr == 0 || w.delta_lambda.size() != nq || w.delta_kappa.size() != nr) {
        throw ValidationError("weight lists are empty or have mismatched lengths");
    }
    if (nq > shape.unit_space.size() || nr > shape.zero_space.size()) {
        std::ostringstream msg;
        msg << "requested " << nq << " unit and " << nr << " kernel directions, T offers " << shape.unit_space.size()
            << " and " << shape.zero_space.size();
        throw ValidationError(msg.str());
    }
    require_positive(w.lambda, "lambda", true);
    require_positive(w.kappa, "kappa", true);
    require_positive(w.delta_lambda, "delta_lambda", false);
    require_positive(w.delta_kappa, "delta_kappa", false);
    if (std::abs(sum(w.lambda) - d_target) > kTolWeightSum || std::abs(sum(w.kappa) - d_target) > kTolWeightSum) {
        throw ValidationError("lambda and kappa must each sum to the target distance");
    }
    if (std::abs(sum(w.delta_lambda) + sum(w.delta_kappa) - (1.0 - d_target)) > kTolWeightSum) {
        throw ValidationError("variations must sum to 1 - target distance");
    }

    const int n = e.dim_in();
    ComplexMatrix rho = ComplexMatrix::Zero(n, n);
    ComplexMatrix sigma = ComplexMatrix::Zero(n, n);
    for (size_t i = 0; i < nq; ++i) {
        const ComplexMatrix p = shape.unit_space[i] * shape.unit_space[i].adjoint();
        rho += (w.lambda[i] + w.delta_lambda[i]) * p;
        sigma += w.delta_lambda[i] * p;
    }
    for (size_t i = 0; i < nr; ++i) {
        const ComplexMatrix p = shape.zero_space[i] * shape.zero_space[i].adjoint();
        rho += w.delta_kappa[i] * p;
        sigma += (w.kappa[i] + w.delta_kappa[i]) * p;
    }
    return {validate_state(HermitianOp(rho)), validate_state(HermitianOp(sigma))};
}

BoundReport theorem3_report(const QuantumOperation& e, const DensityMatrix& rho, const DensityMatrix& sigma,
                            double slack) {
    if (certify_maximizer(e, rho, sigma).mode == MaximizerMode::kNotMaximizer) {
        throw ValidationError("operation does not maximize the probability difference of this pair");
    }
    const NormalizedOutput out_rho = normalize_output(e, rho);
    const NormalizedOutput out_sigma = normalize_output(e, sigma);

    BoundReport r;
    r.d_in = trace_distance(rho, sigma);
    r.d_out_normalized = trace_distance(out_rho.state, out_sigma.state);
    r.d_out_subnormalized = trace_distance(apply(e, rho), apply(e, sigma));
    r.p_m = std::max(out_rho.prob, out_sigma.prob);
    r.p_n = std::min(out_rho.prob, out_sigma.prob);
    r.bound = r.d_in / r.p_m;
    r.holds = *r.d_out_normalized <= r.bound + slack;
    if (*r.d_out_normalized > r.d_in) {
        r.relative_increase = (*r.d_out_normalized - r.d_in) / *r.d_out_normalized;
        r.relative_holds = *r.relative_increase <= 1.0 - r.p_m + slack;
    }
    return r;
}

BoundReport theorem4_report(const QuantumOperation& e, const DensityMatrix& rho, const DensityMatrix& sigma,
                            double slack) {
    if (certify_maximizer(e, rho, sigma).mode == MaximizerMode::kNotMaximizer) {
        throw ValidationError("operation does not maximize the probability difference of this pair");
    }
    BoundReport r;
    r.d_in = trace_distance(rho, sigma);
    r.d_out_subnormalized = trace_distance(apply(e, rho), apply(e, sigma));
    const double p_rho = occurrence_probability(e, rho);
    const double p_sigma = occurrence_probability(e, sigma);
    r.p_m = std::max(p_rho, p_sigma);
    r.p_n = std::min(p_rho, p_sigma);
    r.bound = 0.5 * r.d_in;
    r.holds = r.d_out_subnormalized <= r.bound + slack;
    return r;
}

ExtremalTraces extremal_trace_product(const HermitianOp& t, double d_frak) {
    if (!(d_frak > 0.0)) {
        throw ValidationError("trace constraint must be positive");
    }
    const EigenSystem es = eig_hermitian(t);
    if (es.values.back() < -kTolPsd) {
        std::ostringstream msg;
        msg << "T must be positive semidefinite, smallest eigenvalue " << es.values.back();
        throw ValidationError(msg.str());
    }
    const ComplexVector& top = es.vectors.front();
    const ComplexVector& bottom = es.vectors.back();
    return ExtremalTraces{es.values.front() * d_frak, es.values.back() * d_frak,
                          HermitianOp(d_frak * top * top.adjoint()), HermitianOp(d_frak * bottom * bottom.adjoint())};
}

MaximizingProjector maximizing_projector(const HermitianOp& a, const HermitianOp& b) {
    if (a.dim() != b.dim()) {
        throw ValidationError("operators must share a dimension");
    }
    const HermitianOp diff = a - b;
    const SpectralSplit split = spectral_split(diff);
    HermitianOp pi = projector_onto(split.q_basis, a.dim());
    const double value = trace_product(pi.matrix(), diff.matrix());
    return MaximizingProjector{std::move(pi), value};
}

}  // namespace qopdist
