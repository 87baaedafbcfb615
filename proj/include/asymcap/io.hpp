#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "asymcap/representation.hpp"
#include "asymcap/states.hpp"

namespace asymcap::io {

using json = nlohmann::json;

// File formats. Complex entries are two-element arrays [re, im]; a matrix is
// an array of rows.
//
// Representation document:
//   {"order": N, "cayley": [[...], ...], "generators": [...],
//    "dim": d, "matrices": [matrix_0, ..., matrix_{N-1}]}
// "generators" may be omitted, meaning every element.
//
// State document: {"dim": d, "matrix": matrix} or a bare matrix.

MatrixXc<double> matrix_from_json(const json& j, const std::string& field);
json matrix_to_json(const MatrixXc<double>& m);

Representation<double> representation_from_json(const json& j);
json representation_to_json(const Representation<double>& rep);

DensityMatrix<double> state_from_json(const json& j);
json state_to_json(const DensityMatrix<double>& rho);

/// Reads and parses a JSON file; MalformedInput on I/O or syntax errors.
json read_json_file(const std::string& path);

struct LoadedSource {
  std::string source;
  Representation<double> rep;
  /// SHA-256 of the canonical representation document.
  std::string digest;
};

/// "catalog:<group>/<rep>" or a file path. Catalog ids are first looked up
/// as <ASYMCAP_CATALOG_DIR>/<group>/<rep>.json when that variable is set.
LoadedSource load_source(const std::string& source);

std::string sha256_hex(std::string_view data);

/// Row-major (re, im) pairs as native doubles.
void write_basis_binary(const std::string& path, const MatrixXc<double>& b);
MatrixXc<double> read_basis_binary(const std::string& path, int dim);

/// Rounds to `digits` significant decimal digits.
double round_significant(double value, int digits = 12);

}  // namespace asymcap::io
