#ifndef QOPDIST_METRICS_H
#define QOPDIST_METRICS_H

#include "qopdist/linalg.h"
#include "qopdist/states.h"

namespace qopdist {

/// Half the trace norm of A - B. A metric on Hermitian operators of a fixed dimension.
double trace_distance(const HermitianOp& a, const HermitianOp& b);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// tr sqrt(sqrt(rho) sigma sqrt(rho)), clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
/// arccos F, in [0, pi/2].
double angle(const DensityMatrix& rho, const DensityMatrix& sigma);
/// sqrt(1 - F^2) = sin(angle).
double sine_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Sine distance minus trace distance for qubits with Bloch lengths u, v and
/// cosine eta of the angle between the Bloch vectors.
double qubit_gap(double u, double v, double eta);

struct QubitGapPoint {
    double u = 0.0;
    double v = 0.0;
    double eta = 0.0;
    double value = 0.0;
};

/// Maximizes qubit_gap over [0,1] x [0,1] x [-1,1]: a coarse_n^3 grid followed by
/// refine_rounds of grid search in a shrinking box around the incumbent.
/// Ties are broken towards the lexicographically smallest (u, v, eta).
QubitGapPoint max_qubit_gap(int coarse_n, int refine_rounds);

struct FvdgBounds {
    double d = 0.0;  // trace distance
    double f = 0.0;  // fidelity
    double c = 0.0;  // sine distance
    bool lower_ok = false;  // 1 - F <= D
    bool upper_ok = false;  // D <= C
};

FvdgBounds check_fvdg_bounds(const DensityMatrix& rho, const DensityMatrix& sigma, double slack = 1e-9);

}  // namespace qopdist

#endif
