#include "qopdist/matrix_file.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qopdist {

namespace {

using nlohmann::json;

int require_dim(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() <= 0) {
        throw ParseError(std::string("missing or non-positive integer field '") + key + "'");
    }
    return static_cast<int>(j[key].get<long long>());
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) {
        throw ParseError("matrix document must be an object");
    }
    const int rows = require_dim(j, "dim_rows");
    const int cols = require_dim(j, "dim_cols");
    if (!j.contains("entries") || !j["entries"].is_array()) {
        throw ParseError("missing 'entries' array");
    }
    const json& entries = j["entries"];
    if (entries.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols)) {
        std::ostringstream msg;
        msg << "expected " << rows * cols << " entries for a " << rows << "x" << cols << " matrix, found "
            << entries.size();
        throw ParseError(msg.str());
    }
    ComplexMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const json& z = entries[static_cast<size_t>(r) * cols + c];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                throw ParseError("each entry must be a two-element [re, im] array of numbers");
            }
            m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    if (!all_finite(m)) {
        throw ParseError("matrix entries must be finite");
    }
    return m;
}

json matrix_to_json(const ComplexMatrix& m) {
    json entries = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            entries.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
    }
    return json{{"dim_rows", m.rows()}, {"dim_cols", m.cols()}, {"entries", entries}};
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

MatrixFile parse_matrix_file(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ParseError("matrix document must be an object");
    }
    MatrixFile file;
    if (j.contains("kind")) {
        if (!j["kind"].is_string()) {
            throw ParseError("'kind' must be a string");
        }
        file.kind = j["kind"].get<std::string>();
        if (file.kind != "state" && file.kind != "hermitian" && file.kind != "kraus_set") {
            throw ParseError("unknown kind '" + file.kind + "'");
        }
    }
    if (file.kind == "kraus_set") {
        const int dim_in = require_dim(j, "dim_in");
        const int dim_out = require_dim(j, "dim_out");
        if (!j.contains("operators") || !j["operators"].is_array() || j["operators"].empty()) {
            throw ParseError("kraus_set needs a non-empty 'operators' array");
        }
        for (const json& op : j["operators"]) {
            ComplexMatrix m = matrix_from_json(op);
            if (m.rows() != dim_out || m.cols() != dim_in) {
                std::ostringstream msg;
                msg << "operator is " << m.rows() << "x" << m.cols() << ", expected " << dim_out << "x" << dim_in;
                throw ParseError(msg.str());
            }
            file.matrices.push_back(std::move(m));
        }
        file.dim_rows = dim_out;
        file.dim_cols = dim_in;
        return file;
    }
    file.matrices.push_back(matrix_from_json(j));
    file.dim_rows = static_cast<int>(file.matrices[0].rows());
    file.dim_cols = static_cast<int>(file.matrices[0].cols());
    return file;
}

std::string format_matrix_file(const MatrixFile& file) {
    json j;
    if (file.kind == "kraus_set") {
        j["kind"] = file.kind;
        j["dim_in"] = file.dim_cols;
        j["dim_out"] = file.dim_rows;
        j["operators"] = json::array();
        for (const ComplexMatrix& m : file.matrices) {
            j["operators"].push_back(matrix_to_json(m));
        }
    } else {
        if (file.matrices.size() != 1) {
            throw ValidationError("a non-kraus_set document holds exactly one matrix");
        }
        j = matrix_to_json(file.matrices[0]);
        if (!file.kind.empty()) {
            j["kind"] = file.kind;
        }
    }
    return j.dump() + "\n";
}

MatrixFile read_matrix_file(const std::string& path) { return parse_matrix_file(read_text(path)); }

void write_matrix_file(const std::string& path, const MatrixFile& file) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot write '" + path + "'");
    }
    out << format_matrix_file(file);
}

DensityMatrix load_state(const std::string& path) {
    const MatrixFile file = read_matrix_file(path);
    if (file.kind == "kraus_set") {
        throw ParseError("'" + path + "' holds a kraus_set, expected a state");
    }
    if (file.dim_rows != file.dim_cols) {
        throw ParseError("state in '" + path + "' is not square");
    }
    try {
        return validate_state(HermitianOp(file.matrices[0]));
    } catch (const ValidationError& e) {
        throw ParseError("'" + path + "' is not a valid state: " + e.what());
    }
}

QuantumOperation load_kraus_set(const std::string& path) {
    MatrixFile file = read_matrix_file(path);
    if (file.kind != "kraus_set") {
        throw ParseError("'" + path + "' is not a kraus_set document");
    }
    try {
        return QuantumOperation(std::move(file.matrices));
    } catch (const ValidationError& e) {
        throw ParseError("'" + path + "' is not a valid operation: " + e.what());
    }
}

void save_state(const std::string& path, const DensityMatrix& rho) {
    write_matrix_file(path, MatrixFile{"state", rho.dim(), rho.dim(), {rho.matrix()}});
}

void save_kraus_set(const std::string& path, const QuantumOperation& e) {
    write_matrix_file(path, MatrixFile{"kraus_set", e.dim_out(), e.dim_in(), e.kraus()});
}

}  // namespace qopdist
