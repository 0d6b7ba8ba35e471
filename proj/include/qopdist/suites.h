#ifndef QOPDIST_SUITES_H
#define QOPDIST_SUITES_H

#include <cstdint>
#include <string>
#include <vector>

#include "qopdist/channels.h"
#include "qopdist/report.h"

namespace qopdist {

/// Global tolerance: 1e-9 unless QOPDIST_DEFAULT_TOL holds a positive number.
double default_tolerance();

/// Names accepted by run_suites, excluding "all".
const std::vector<std::string>& suite_names();
bool is_known_suite(const std::string& name);
int default_cases(const std::string& name);

/// Runs one named suite. n_cases <= 0 selects the suite default. `tol` is the
/// slack for every inequality and the tolerance for every equality, except for
/// checks with their own fixed statistical or grid tolerance.
/// The report's elapsed_seconds is left at 0.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, int n_cases, double tol);

/// run_suite for one name, or for every name in order when name == "all".
/// Throws ValidationError for an unknown name.
std::vector<SuiteReport> run_suites(const std::string& name, std::uint64_t seed, int n_cases, double tol);

/// Maximizer-shaped operation: T projects onto `unit_dims` random orthonormal
/// directions of C^dim_in, each sent to a random unit vector of C^dim_out.
QuantumOperation random_projective_operation(int dim_in, int unit_dims, int dim_out, Rng& rng);

/// Operation from C^4 to C^2 with T = diag(1, 1, 0, 0), Kraus |k><k| for k = 0, 1.
QuantumOperation reference_statistics_operation();

}  // namespace qopdist

#endif
