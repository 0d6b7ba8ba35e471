#include "qopdist/metrics.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qopdist/errors.h"

using namespace qopdist;

namespace {

DensityMatrix ket0() { return validate_state(HermitianOp::diagonal({1.0, 0.0})); }
DensityMatrix ket1() { return validate_state(HermitianOp::diagonal({0.0, 1.0})); }

BlochVector random_ball(Rng& rng) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit;
    BlochVector u;
    for (double& c : u.u) {
        c = normal(rng);
    }
    const double scale = std::cbrt(unit(rng)) / u.norm();
    for (double& c : u.u) {
        c *= scale;
    }
    return u;
}

double dot(const BlochVector& a, const BlochVector& b) {
    return a.u[0] * b.u[0] + a.u[1] * b.u[1] + a.u[2] * b.u[2];
}

// Qubits with Bloch lengths u, v and cos(angle between them) = eta.
std::pair<DensityMatrix, DensityMatrix> gap_pair(double u, double v, double eta) {
    const double s = std::sqrt(std::max(0.0, 1.0 - eta * eta));
    return {from_bloch({{0.0, 0.0, u}}), from_bloch({{v * s, 0.0, v * eta}})};
}

DensityMatrix random_state(int dim, Rng& rng) {
    return random_density(dim, std::uniform_int_distribution<int>(1, dim)(rng), rng);
}

}  // namespace

TEST(trace_distance, examples) {
    const DensityMatrix a = ket0();
    EXPECT_EQ(trace_distance(a, a), 0.0);
    EXPECT_NEAR(trace_distance(ket0(), ket1()), 1.0, 1e-15);
    EXPECT_THROW(trace_distance(HermitianOp::zero(2), HermitianOp::zero(3)), ValidationError);
}

TEST(trace_distance, half_bloch_difference_for_qubits) {
    Rng rng(1);
    for (int trial = 0; trial < 500; ++trial) {
        const BlochVector u = random_ball(rng);
        const BlochVector v = random_ball(rng);
        BlochVector diff;
        for (int k = 0; k < 3; ++k) {
            diff.u[k] = u.u[k] - v.u[k];
        }
        EXPECT_NEAR(trace_distance(from_bloch(u), from_bloch(v)), 0.5 * diff.norm(), 1e-10);
    }
}

TEST(fidelity, examples) {
    Rng rng(2);
    const DensityMatrix rho = random_density(3, 2, rng);
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-9);
    for (double lambda : {0.0, 0.1, 0.25, 0.7, 1.0}) {
        const DensityMatrix sigma = validate_state(HermitianOp::diagonal({1.0 - lambda, lambda}));
        EXPECT_NEAR(fidelity(ket0(), sigma), std::sqrt(1.0 - lambda), 1e-9);
        EXPECT_NEAR(sine_distance(ket0(), sigma), std::sqrt(lambda), 1e-9);
    }
}

TEST(fidelity, qubit_closed_form_and_symmetry) {
    Rng rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        const BlochVector u = random_ball(rng);
        const BlochVector v = random_ball(rng);
        const double f2 = 0.5 * (1.0 + dot(u, v) +
                                 std::sqrt(1.0 - u.norm() * u.norm()) * std::sqrt(1.0 - v.norm() * v.norm()));
        const DensityMatrix a = from_bloch(u);
        const DensityMatrix b = from_bloch(v);
        EXPECT_NEAR(fidelity(a, b), std::sqrt(f2), 1e-9);
        EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-9);
    }
}

TEST(fidelity, pure_state_overlap_oracle) {
    Rng rng(4);
    for (int trial = 0; trial < 300; ++trial) {
        const int dim = 2 + trial % 5;
        const ComplexVector psi = random_unit_vector(dim, rng);
        const ComplexVector phi = random_unit_vector(dim, rng);
        const DensityMatrix a = validate_state(HermitianOp(psi * psi.adjoint()));
        const DensityMatrix b = validate_state(HermitianOp(phi * phi.adjoint()));
        EXPECT_NEAR(fidelity(a, b), std::abs(psi.dot(phi)), 1e-9);
    }
}

TEST(fidelity, multiplicative_on_tensor_squares) {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 2 + trial % 3;
        const DensityMatrix a = random_pure(dim, rng);
        const DensityMatrix b = random_pure(dim, rng);
        const DensityMatrix aa = validate_state(HermitianOp(kron(a.matrix(), a.matrix())));
        const DensityMatrix bb = validate_state(HermitianOp(kron(b.matrix(), b.matrix())));
        const double f = fidelity(a, b);
        EXPECT_NEAR(fidelity(aa, bb), f * f, 1e-9);
    }
}

TEST(angle, examples) {
    const DensityMatrix a = ket0();
    EXPECT_NEAR(angle(a, a), 0.0, 1e-7);
    EXPECT_NEAR(angle(ket0(), ket1()), std::numbers::pi / 2.0, 1e-12);
    // |<0|+>| = 1/sqrt(2).
    const DensityMatrix plus = from_bloch({{1.0, 0.0, 0.0}});
    EXPECT_NEAR(fidelity(ket0(), plus), 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(angle(ket0(), plus), std::numbers::pi / 4.0, 1e-9);
}

TEST(sine_distance, examples_and_pure_saturation) {
    const DensityMatrix a = ket0();
    EXPECT_NEAR(sine_distance(a, a), 0.0, 1e-7);
    Rng rng(6);
    for (int trial = 0; trial < 300; ++trial) {
        const int dim = 2 + trial % 5;
        const DensityMatrix x = random_pure(dim, rng);
        const DensityMatrix y = random_pure(dim, rng);
        EXPECT_NEAR(sine_distance(x, y), trace_distance(x, y), 1e-9);
        EXPECT_NEAR(sine_distance(x, y), std::sin(angle(x, y)), 1e-12);
    }
}

TEST(qubit_gap, examples) {
    EXPECT_NEAR(qubit_gap(1.0, 1.0, 1.0), 0.0, 1e-15);
    // |0> against diag(3/4, 1/4): Bloch lengths 1 and 1/2, parallel.
    EXPECT_NEAR(qubit_gap(1.0, 0.5, 1.0), 0.25, 1e-12);
    EXPECT_NEAR(qubit_gap(1.0, 0.25, 1.0), std::sqrt(3.0 / 8.0) - 3.0 / 8.0, 1e-12);
    EXPECT_THROW(qubit_gap(1.1, 0.5, 0.0), ValidationError);
    EXPECT_THROW(qubit_gap(0.5, -0.1, 0.0), ValidationError);
    EXPECT_THROW(qubit_gap(0.5, 0.5, 1.5), ValidationError);
}

TEST(qubit_gap, witness_pair_from_matrices) {
    const DensityMatrix mixed = validate_state(HermitianOp::diagonal({0.75, 0.25}));
    EXPECT_NEAR(to_bloch(mixed).norm(), 0.5, 1e-15);
    EXPECT_NEAR(sine_distance(ket0(), mixed) - trace_distance(ket0(), mixed), 0.25, 1e-10);
}

TEST(qubit_gap, agrees_with_metrics_on_bloch_states) {
    Rng rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double u = unit(rng), v = unit(rng), eta = sym(rng);
        const auto [a, b] = gap_pair(u, v, eta);
        EXPECT_NEAR(qubit_gap(u, v, eta), sine_distance(a, b) - trace_distance(a, b), 1e-9)
            << u << " " << v << " " << eta;
    }
}

TEST(max_qubit_gap, finds_one_quarter) {
    const QubitGapPoint best = max_qubit_gap(50, 6);
    EXPECT_NEAR(best.value, 0.25, 1e-4);
    EXPECT_LE(best.value, std::sqrt(2.0) - 1.0 + 1e-12);
    EXPECT_NEAR(qubit_gap(best.u, best.v, best.eta), best.value, 1e-15);
}

TEST(max_qubit_gap, coarse_runs_stay_in_the_bracket) {
    for (int n : {20, 31}) {
        const QubitGapPoint best = max_qubit_gap(n, 2);
        EXPECT_GE(best.value, 0.25 - 1e-4);
        EXPECT_LE(best.value, std::sqrt(2.0) - 1.0 + 1e-12);
    }
    EXPECT_THROW(max_qubit_gap(5, 1), ValidationError);
}

TEST(check_fvdg_bounds, pure_and_equal_and_random) {
    Rng rng(8);
    const DensityMatrix x = random_pure(3, rng);
    const DensityMatrix y = random_pure(3, rng);
    const FvdgBounds pure = check_fvdg_bounds(x, y);
    EXPECT_TRUE(pure.lower_ok && pure.upper_ok);
    EXPECT_LT(std::abs(pure.c - pure.d), 1e-9);

    const FvdgBounds same = check_fvdg_bounds(x, x);
    EXPECT_NEAR(1.0 - same.f, 0.0, 1e-9);
    EXPECT_NEAR(same.d, 0.0, 1e-12);

    for (int trial = 0; trial < 1000; ++trial) {
        const int dim = 2 + trial % 5;
        const DensityMatrix a = random_state(dim, rng);
        const DensityMatrix b = random_state(dim, rng);
        const FvdgBounds fb = check_fvdg_bounds(a, b);
        EXPECT_TRUE(fb.lower_ok && fb.upper_ok);
        const double delta = angle(a, b);
        EXPECT_LE(fb.c - fb.d, std::sin(delta) + std::cos(delta) - 1.0 + 1e-9);
        EXPECT_LE(std::sin(delta) + std::cos(delta), std::sqrt(2.0) + 1e-12);
        EXPECT_LE(fb.c - fb.d, std::sqrt(2.0) - 1.0 + 1e-9);
    }
}

TEST(trace_distance, metric_axioms_on_hermitian_triples) {
    Rng rng(9);
    for (int trial = 0; trial < 500; ++trial) {
        const int dim = 2 + trial % 5;
        const HermitianOp a = random_hermitian(dim, rng);
        const HermitianOp b = random_hermitian(dim, rng);
        const HermitianOp c = random_hermitian(dim, rng);
        const double dab = trace_distance(a, b);
        EXPECT_GT(dab, 0.0);
        EXPECT_EQ(trace_distance(a, a), 0.0);
        EXPECT_NEAR(dab, trace_distance(b, a), 1e-12);
        EXPECT_LE(dab, trace_distance(a, c) + trace_distance(c, b) + 1e-10);
    }
}

TEST(trace_distance, joint_convexity) {
    Rng rng(10);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const int dim = 2 + trial % 5;
        const int terms = 2 + trial % 3;
        std::vector<double> p(terms);
        double total = 0.0;
        for (double& w : p) {
            w = -std::log(1.0 - unit(rng));
            total += w;
        }
        HermitianOp sa = HermitianOp::zero(dim), sb = HermitianOp::zero(dim);
        double rhs = 0.0;
        for (int j = 0; j < terms; ++j) {
            const HermitianOp a = random_hermitian(dim, rng);
            const HermitianOp b = random_hermitian(dim, rng);
            sa = sa + a * (p[j] / total);
            sb = sb + b * (p[j] / total);
            rhs += p[j] / total * trace_distance(a, b);
        }
        EXPECT_LE(trace_distance(sa, sb), rhs + 1e-10);
    }
}
