#ifndef QOPDIST_MATRIX_FILE_H
#define QOPDIST_MATRIX_FILE_H

#include <string>
#include <vector>

#include "qopdist/channels.h"
#include "qopdist/errors.h"
#include "qopdist/linalg.h"
#include "qopdist/states.h"

namespace qopdist {

/// Malformed or inconsistent matrix document.
class ParseError : public Error {
   public:
    using Error::Error;
};

/// On-disk matrix document. Entries are [re, im] pairs in row-major order.
///
///   {"kind": "state", "dim_rows": 2, "dim_cols": 2, "entries": [[1, 0], [0, 0], [0, 0], [0, 0]]}
///
/// A kraus_set document instead carries "dim_in", "dim_out" and an
/// "operators" list of untagged matrix documents, each dim_out x dim_in.
struct MatrixFile {
    std::string kind;  // "state", "hermitian", "kraus_set" or empty
    int dim_rows = 0;
    int dim_cols = 0;
    std::vector<ComplexMatrix> matrices;  // one entry unless kind == "kraus_set"
};

MatrixFile parse_matrix_file(const std::string& text);
std::string format_matrix_file(const MatrixFile& file);

MatrixFile read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const MatrixFile& file);

/// Loads a single square matrix and validates it as a state (any kind except kraus_set).
DensityMatrix load_state(const std::string& path);
QuantumOperation load_kraus_set(const std::string& path);

void save_state(const std::string& path, const DensityMatrix& rho);
void save_kraus_set(const std::string& path, const QuantumOperation& e);

}  // namespace qopdist

#endif
