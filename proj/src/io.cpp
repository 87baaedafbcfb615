#include "asymcap/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "asymcap/catalog.hpp"

namespace asymcap::io {
namespace {

std::complex<double> complex_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw MalformedInput(field, "expected a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

int int_field(const json& j, const std::string& field) {
  if (!j.contains(field)) throw MalformedInput(field, "missing");
  if (!j[field].is_number_integer()) throw MalformedInput(field, "expected an integer");
  return j[field].get<int>();
}

}  // namespace

MatrixXc<double> matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw MalformedInput(field, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw MalformedInput(field + "[0]", "expected a row array");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  MatrixXc<double> m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    const json& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw MalformedInput(row_field, "expected a row of length " + std::to_string(cols));
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[c], row_field + "[" + std::to_string(c) + "]");
  }
  return m;
}

json matrix_to_json(const MatrixXc<double>& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Representation<double> representation_from_json(const json& j) {
  if (!j.is_object()) throw MalformedInput("<document>", "expected a JSON object");
  const int order = int_field(j, "order");
  if (order < 1) throw MalformedInput("order", "must be positive");
  if (!j.contains("cayley") || !j["cayley"].is_array()) throw MalformedInput("cayley", "missing or not an array");
  const json& table_json = j["cayley"];
  if (static_cast<int>(table_json.size()) != order) throw MalformedInput("cayley", "expected " + std::to_string(order) + " rows");
  std::vector<std::vector<int>> table(order);
  for (int a = 0; a < order; ++a) {
    const std::string field = "cayley[" + std::to_string(a) + "]";
    const json& row = table_json[a];
    if (!row.is_array() || static_cast<int>(row.size()) != order) throw MalformedInput(field, "expected " + std::to_string(order) + " entries");
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw MalformedInput(field, "entries must be integers");
      table[a].push_back(v.get<int>());
    }
  }
  std::vector<int> generators;
  if (j.contains("generators")) {
    if (!j["generators"].is_array()) throw MalformedInput("generators", "expected an array");
    for (const auto& v : j["generators"]) {
      if (!v.is_number_integer()) throw MalformedInput("generators", "entries must be integers");
      generators.push_back(v.get<int>());
    }
  }
  auto group = std::make_shared<const FiniteGroup>(validate_group(table, generators));

  const int dim = int_field(j, "dim");
  if (dim < 1) throw MalformedInput("dim", "must be positive");
  if (!j.contains("matrices") || !j["matrices"].is_array()) throw MalformedInput("matrices", "missing or not an array");
  const json& mats_json = j["matrices"];
  if (static_cast<int>(mats_json.size()) != order) throw MalformedInput("matrices", "expected one matrix per element");
  std::vector<MatrixXc<double>> mats;
  for (int g = 0; g < order; ++g) {
    const std::string field = "matrices[" + std::to_string(g) + "]";
    MatrixXc<double> m = matrix_from_json(mats_json[g], field);
    if (m.rows() != dim || m.cols() != dim) throw MalformedInput(field, "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    mats.push_back(std::move(m));
  }
  return Representation<double>(std::move(group), std::move(mats));
}

json representation_to_json(const Representation<double>& rep) {
  json j;
  j["order"] = rep.order();
  j["cayley"] = rep.group().cayley();
  j["generators"] = std::vector<int>(rep.group().generators().begin(), rep.group().generators().end());
  j["dim"] = rep.dim();
  json mats = json::array();
  for (const auto& m : rep.matrices()) mats.push_back(matrix_to_json(m));
  j["matrices"] = std::move(mats);
  return j;
}

DensityMatrix<double> state_from_json(const json& j) {
  MatrixXc<double> m;
  if (j.is_object()) {
    if (!j.contains("matrix")) throw MalformedInput("matrix", "missing");
    m = matrix_from_json(j["matrix"], "matrix");
    if (j.contains("dim") && (!j["dim"].is_number_integer() || j["dim"].get<long>() != m.rows())) {
      throw MalformedInput("dim", "does not match the matrix");
    }
  } else {
    m = matrix_from_json(j, "matrix");
  }
  if (m.rows() != m.cols()) throw MalformedInput("matrix", "must be square");
  return DensityMatrix<double>(m);
}

json state_to_json(const DensityMatrix<double>& rho) {
  return json{{"dim", rho.dim()}, {"matrix", matrix_to_json(rho.matrix())}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput(path, "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw MalformedInput(path, std::string("JSON syntax error at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
}

LoadedSource load_source(const std::string& source) {
  constexpr std::string_view prefix = "catalog:";
  auto finish = [&](Representation<double> rep) {
    std::string digest = sha256_hex(representation_to_json(rep).dump());
    return LoadedSource{source, std::move(rep), std::move(digest)};
  };
  if (std::string_view(source).substr(0, prefix.size()) == prefix) {
    const std::string id(strip_catalog_prefix(source));
    if (const char* dir = std::getenv("ASYMCAP_CATALOG_DIR"); dir != nullptr && *dir != '\0') {
      const std::filesystem::path candidate = std::filesystem::path(dir) / (id + ".json");
      if (std::filesystem::exists(candidate)) return finish(representation_from_json(read_json_file(candidate.string())));
    }
    return finish(catalog_representation(id));
  }
  return finish(representation_from_json(read_json_file(source)));
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

void write_basis_binary(const std::string& path, const MatrixXc<double>& b) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MalformedInput(path, "cannot open file for writing");
  for (Eigen::Index r = 0; r < b.rows(); ++r) {
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
      const double pair[2] = {b(r, c).real(), b(r, c).imag()};
      out.write(reinterpret_cast<const char*>(pair), sizeof pair);
    }
  }
}

MatrixXc<double> read_basis_binary(const std::string& path, int dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput(path, "cannot open file");
  MatrixXc<double> b(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      double pair[2];
      if (!in.read(reinterpret_cast<char*>(pair), sizeof pair)) throw MalformedInput(path, "file is truncated");
      b(r, c) = {pair[0], pair[1]};
    }
  }
  return b;
}

double round_significant(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

}  // namespace asymcap::io
