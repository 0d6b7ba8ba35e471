#include "qopdist/metrics.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "qopdist/errors.h"

namespace qopdist {

namespace {

void require_same_dim(int a, int b) {
    if (a != b) {
        std::ostringstream msg;
        msg << "dimension mismatch: " << a << " vs " << b;
        throw ValidationError(msg.str());
    }
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

// Eigenvalues at round-off level relative to the largest one count as zero:
// sqrt would otherwise turn 1e-17 noise into 3e-9 errors in the fidelity.
constexpr double kRoundoffCut = 64.0 * 2.220446049250313e-16;

HermitianOp sqrt_with_cut(const HermitianOp& a) {
    const EigenSystem es = eig_hermitian(a);
    const double cut = kRoundoffCut * std::max(1.0, std::abs(es.values.front()));
    ComplexMatrix s = ComplexMatrix::Zero(a.dim(), a.dim());
    for (size_t k = 0; k < es.values.size(); ++k) {
        if (es.values[k] > cut) {
            s += std::sqrt(es.values[k]) * es.vectors[k] * es.vectors[k].adjoint();
        }
    }
    return HermitianOp(s);
}

bool better(const QubitGapPoint& p, const QubitGapPoint& best) {
    if (p.value != best.value) {
        return p.value > best.value;
    }
    return std::tie(p.u, p.v, p.eta) < std::tie(best.u, best.v, best.eta);
}

struct Axis {
    double lo;
    double hi;
};

double grid_point(const Axis& a, int i, int n) { return i == n - 1 ? a.hi : a.lo + (a.hi - a.lo) * i / (n - 1); }

QubitGapPoint scan(const Axis& au, const Axis& av, const Axis& ae, int n, QubitGapPoint best) {
    for (int i = 0; i < n; ++i) {
        const double u = grid_point(au, i, n);
        for (int j = 0; j < n; ++j) {
            const double v = grid_point(av, j, n);
            for (int k = 0; k < n; ++k) {
                const double eta = grid_point(ae, k, n);
                const QubitGapPoint p{u, v, eta, qubit_gap(u, v, eta)};
                if (better(p, best)) {
                    best = p;
                }
            }
        }
    }
    return best;
}

Axis shrink(double center, double half_width, double lo, double hi) {
    return {std::max(lo, center - half_width), std::min(hi, center + half_width)};
}

}  // namespace

double trace_distance(const HermitianOp& a, const HermitianOp& b) {
    require_same_dim(a.dim(), b.dim());
    return trace_norm_half(a - b);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    return trace_distance(rho.op(), sigma.op());
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require_same_dim(rho.dim(), sigma.dim());
    const ComplexMatrix s = sqrt_with_cut(rho.op()).matrix();
    const HermitianOp sandwich(s * sigma.matrix() * s);
    const std::vector<double> spectrum = eigenvalues(sandwich);
    const double cut = kRoundoffCut * std::max(1.0, std::abs(spectrum.front()));
    double f = 0.0;
    for (double e : spectrum) {
        if (e > cut) {
            f += std::sqrt(e);
        }
    }
    return clamp_unit(f);
}

double angle(const DensityMatrix& rho, const DensityMatrix& sigma) { return std::acos(fidelity(rho, sigma)); }

double sine_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    const double f = fidelity(rho, sigma);
    return std::sqrt(clamp_unit(1.0 - f * f));
}

double qubit_gap(double u, double v, double eta) {
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0 && eta >= -1.0 && eta <= 1.0)) {
        std::ostringstream msg;
        msg << "qubit_gap arguments outside [0,1]x[0,1]x[-1,1]: (" << u << ", " << v << ", " << eta << ")";
        throw ValidationError(msg.str());
    }
    const double mixed = std::sqrt(1.0 - u * u) * std::sqrt(1.0 - v * v);
    const double sine = std::sqrt(std::max(0.0, 1.0 - u * v * eta - mixed)) / std::sqrt(2.0);
    const double trace = 0.5 * std::sqrt(std::max(0.0, u * u + v * v - 2.0 * u * v * eta));
    return sine - trace;
}

QubitGapPoint max_qubit_gap(int coarse_n, int refine_rounds) {
    if (coarse_n < 20) {
        throw ValidationError("max_qubit_gap needs at least 20 grid points per axis");
    }
    Axis au{0.0, 1.0};
    Axis av{0.0, 1.0};
    Axis ae{-1.0, 1.0};
    QubitGapPoint best{0.0, 0.0, -1.0, qubit_gap(0.0, 0.0, -1.0)};
    best = scan(au, av, ae, coarse_n, best);
    for (int round = 0; round < refine_rounds; ++round) {
        const double hu = 2.0 * (au.hi - au.lo) / (coarse_n - 1);
        const double hv = 2.0 * (av.hi - av.lo) / (coarse_n - 1);
        const double he = 2.0 * (ae.hi - ae.lo) / (coarse_n - 1);
        au = shrink(best.u, hu, 0.0, 1.0);
        av = shrink(best.v, hv, 0.0, 1.0);
        ae = shrink(best.eta, he, -1.0, 1.0);
        best = scan(au, av, ae, coarse_n, best);
    }
    return best;
}

FvdgBounds check_fvdg_bounds(const DensityMatrix& rho, const DensityMatrix& sigma, double slack) {
    FvdgBounds out;
    out.d = trace_distance(rho, sigma);
    out.f = fidelity(rho, sigma);
    out.c = std::sqrt(clamp_unit(1.0 - out.f * out.f));
    out.lower_ok = 1.0 - out.f <= out.d + slack;
    out.upper_ok = out.d <= out.c + slack;
    return out;
}

}  // namespace qopdist
