#ifndef QOPDIST_COMMANDS_H
#define QOPDIST_COMMANDS_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace qopdist {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailures = 1,    // verify found failing cases
    kExitParse = 2,       // unreadable input, bad argument or unknown suite
    kExitDimension = 3,
    kExitDegenerate = 4,  // identical or indistinguishable inputs
    kExitShape = 5,       // operation lacks unit or zero T eigenvalues
    kExitPurity = 6,
};

/// Prints one of trace, fidelity, sine or angle between two state files, fixed with 12 decimals.
int cmd_dist(const std::string& file_a, const std::string& file_b, const std::string& metric, std::ostream& out,
             std::ostream& err);

/// Writes a kraus_set whose e-distance on the pair equals their trace distance.
int cmd_maximize(const std::string& file_rho, const std::string& file_sigma, int dim_out, const std::string& mode,
                 const std::string& out_file, std::ostream& out, std::ostream& err);

/// Writes `count` state pairs at trace distance d_target, each maximized by the
/// given operation, as pair_<i>_rho.json and pair_<i>_sigma.json in out_dir.
int cmd_pairs(const std::string& kraus_file, double d_target, int count, std::uint64_t seed,
              const std::string& out_dir, double tol, std::ostream& out, std::ostream& err);

/// Runs a suite (or "all"), prints one summary line per suite and writes the
/// line-delimited report to report_file, or to `out` when report_file is empty.
/// With `timing`, elapsed_seconds carries wall-clock time; otherwise it is 0
/// so that reports are reproducible byte for byte.
int cmd_verify(const std::string& suite, std::uint64_t seed, int n_cases, double tol, const std::string& report_file,
               bool timing, std::ostream& out, std::ostream& err);

/// Prints Omega, D_in, D_out and D_out / D_in for the exact cloner on two pure states.
int cmd_clone(const std::string& file_omega1, const std::string& file_omega2, std::ostream& out, std::ostream& err);

}  // namespace qopdist

#endif
