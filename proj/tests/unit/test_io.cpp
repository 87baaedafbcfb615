#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "asymcap/catalog.hpp"
#include "asymcap/io.hpp"
#include "oracles.hpp"

using namespace asymcap;
using oracle::Mat;

namespace {

const std::string data_dir = ASYMCAP_TEST_DATA;

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "asymcap_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string field_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const MalformedInput& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("representation round trip") {
  for (const char* id : {"s3/standard", "q8/u_tensor_I", "z5/phase"}) {
    const auto rep = catalog_representation(id);
    const auto back = io::representation_from_json(io::representation_to_json(rep));
    CHECK(back.order() == rep.order());
    CHECK(back.group().cayley() == rep.group().cayley());
    for (int g = 0; g < rep.order(); ++g) CHECK(back.matrix(g) == rep.matrix(g));
  }
}

TEST_CASE("representation file") {
  const auto rep = io::representation_from_json(io::read_json_file(data_dir + "/z2_sign.json"));
  CHECK(rep.dim() == 2);
  CHECK(rep.matrix(1)(1, 1) == std::complex<double>(-1.0, 0.0));
}

TEST_CASE("malformed inputs name the offending field") {
  CHECK(field_of([] { io::representation_from_json(io::read_json_file(data_dir + "/malformed_rep.json")); })
            .find("matrices[1][1]") != std::string::npos);
  CHECK(field_of([] { io::read_json_file(data_dir + "/broken_syntax.json"); }).find("syntax") != std::string::npos);
  CHECK(field_of([] { io::read_json_file(data_dir + "/does_not_exist.json"); }).find("cannot open") != std::string::npos);
  CHECK(field_of([] { io::representation_from_json(io::json::parse(R"({"cayley": [[0]]})")); }).find("order") !=
        std::string::npos);
  CHECK(field_of([] {
          io::representation_from_json(io::json::parse(R"({"order": 1, "cayley": [[0]], "dim": 1, "matrices": [[[1]]]})"));
        }).find("matrices[0][0][0]") != std::string::npos);
  CHECK(field_of([] {
          io::representation_from_json(
              io::json::parse(R"({"order": 1, "cayley": [[0]], "dim": 2, "matrices": [[[[1, 0]]]]})"));
        }).find("matrices[0]") != std::string::npos);
}

TEST_CASE("validation failures from files are validation errors") {
  CHECK_THROWS_AS(io::representation_from_json(io::read_json_file(data_dir + "/z2_not_unitary.json")), NotUnitary);
  CHECK_THROWS_AS(io::representation_from_json(
                      io::json::parse(R"({"order": 2, "cayley": [[0, 1], [1, 1]], "dim": 1, "matrices": [[[[1, 0]]], [[[1, 0]]]]})")),
                  NotAGroup);
}

TEST_CASE("state documents") {
  const auto rho = io::state_from_json(io::read_json_file(data_dir + "/maximally_mixed_2.json"));
  CHECK((rho.matrix() - Mat::Identity(2, 2) / 2.0).norm() == 0.0);
  const auto bare = io::state_from_json(io::json::parse(R"([[[1, 0], [0, 0]], [[0, 0], [0, 0]]])"));
  CHECK(bare.matrix()(0, 0) == std::complex<double>(1.0, 0.0));
  const auto back = io::state_from_json(io::state_to_json(rho));
  CHECK(back.matrix() == rho.matrix());
  CHECK_THROWS_AS(io::state_from_json(io::json::parse(R"({"dim": 3, "matrix": [[[1, 0]]]})")), MalformedInput);
  CHECK_THROWS_AS(io::state_from_json(io::json::parse(R"([[[2, 0]]])")), InvalidState);
}

TEST_CASE("catalog sources and digests") {
  const auto a = io::load_source("catalog:s3/regular");
  const auto b = io::load_source("catalog:s3/regular");
  CHECK(a.digest == b.digest);
  CHECK(a.digest.size() == 64);
  CHECK(a.digest != io::load_source("catalog:s3/permutation").digest);
  CHECK_THROWS_AS(io::load_source("catalog:nope/none"), UnknownCatalogId);
  CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("external catalog directory takes precedence") {
  const auto dir = scratch("catalog");
  std::filesystem::create_directories(dir / "custom");
  std::filesystem::copy_file(data_dir + "/z2_sign.json", dir / "custom" / "sign.json",
                             std::filesystem::copy_options::overwrite_existing);
  ::setenv("ASYMCAP_CATALOG_DIR", dir.c_str(), 1);
  const auto loaded = io::load_source("catalog:custom/sign");
  CHECK(loaded.rep.dim() == 2);
  const auto builtin = io::load_source("catalog:z3/phase");
  CHECK(builtin.rep.dim() == 3);
  ::unsetenv("ASYMCAP_CATALOG_DIR");
  CHECK_THROWS_AS(io::load_source("catalog:custom/sign"), UnknownCatalogId);
}

TEST_CASE("basis dump round trip") {
  std::mt19937_64 rng(4);
  const Mat b = oracle::ginibre(5, 5, rng);
  const auto path = scratch("basis.bin").string();
  io::write_basis_binary(path, b);
  CHECK(std::filesystem::file_size(path) == 5 * 5 * 2 * sizeof(double));
  CHECK(io::read_basis_binary(path, 5) == b);
  std::ifstream in(path, std::ios::binary);
  double first[2];
  in.read(reinterpret_cast<char*>(first), sizeof first);
  CHECK(first[0] == b(0, 0).real());
  CHECK(first[1] == b(0, 0).imag());
  double second[2];
  in.read(reinterpret_cast<char*>(second), sizeof second);
  CHECK(second[0] == b(0, 1).real());
  CHECK_THROWS_AS(io::read_basis_binary(path, 6), MalformedInput);
}

TEST_CASE("significant digit rounding") {
  CHECK(io::round_significant(1.0 / 3.0) == 0.333333333333);
  CHECK(io::round_significant(std::log2(6.0)) == 2.58496250072);
  CHECK(io::round_significant(0.0) == 0.0);
  CHECK(io::round_significant(-1234567.89012345) == -1234567.89012);
  CHECK(io::round_significant(2.0) == 2.0);
}
