#include "asymcap/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

namespace asymcap {
namespace {

using Mat = MatrixXc<double>;
using Cplx = std::complex<double>;

struct GroupName {
  std::string family;  // "trivial", "z", "d", "s", "q8"
  int n = 0;
};

std::optional<int> parse_int(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

std::optional<GroupName> parse_group(std::string_view name) {
  if (name == "trivial") return GroupName{"trivial", 1};
  if (name == "q8") return GroupName{"q8", 8};
  if (name == "s3") return GroupName{"s", 3};
  if (name == "s4") return GroupName{"s", 4};
  if (name.size() >= 2 && (name[0] == 'z' || name[0] == 'd')) {
    const auto n = parse_int(name.substr(1));
    if (!n) return std::nullopt;
    if (name[0] == 'z' && *n >= 1 && *n <= 64) return GroupName{"z", *n};
    if (name[0] == 'd' && *n >= 2 && *n <= 32) return GroupName{"d", *n};
  }
  return std::nullopt;
}

std::vector<std::vector<int>> permutations(int k) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> all;
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return all;
}

int index_of(const std::vector<std::vector<int>>& perms, const std::vector<int>& p) {
  return static_cast<int>(std::find(perms.begin(), perms.end(), p) - perms.begin());
}

// Unit products for 1, i, j, k: unit index and sign.
constexpr int kQuatUnit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
constexpr int kQuatSign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};

FiniteGroup build_group(const GroupName& name) {
  std::vector<std::vector<int>> table;
  std::vector<int> generators;
  if (name.family == "trivial") {
    table = {{0}};
  } else if (name.family == "z") {
    const int n = name.n;
    table.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    generators = {n == 1 ? 0 : 1};
  } else if (name.family == "d") {
    const int n = name.n;
    table.assign(2 * n, std::vector<int>(2 * n));
    for (int x = 0; x < 2 * n; ++x) {
      for (int y = 0; y < 2 * n; ++y) {
        const int a = x % n, e = x / n, b = y % n, f = y / n;
        const int k = ((e ? a - b : a + b) % n + n) % n;
        table[x][y] = k + n * (e ^ f);
      }
    }
    generators = {1, n};
  } else if (name.family == "s") {
    const auto perms = permutations(name.n);
    const int order = static_cast<int>(perms.size());
    table.assign(order, std::vector<int>(order));
    for (int a = 0; a < order; ++a) {
      for (int b = 0; b < order; ++b) {
        std::vector<int> c(name.n);
        for (int i = 0; i < name.n; ++i) c[i] = perms[a][perms[b][i]];
        table[a][b] = index_of(perms, c);
      }
    }
    std::vector<int> swap01(name.n), cycle(name.n);
    std::iota(swap01.begin(), swap01.end(), 0);
    std::swap(swap01[0], swap01[1]);
    for (int i = 0; i < name.n; ++i) cycle[i] = (i + 1) % name.n;
    generators = {index_of(perms, swap01), index_of(perms, cycle)};
  } else {
    table.assign(8, std::vector<int>(8));
    for (int x = 0; x < 8; ++x) {
      for (int y = 0; y < 8; ++y) {
        const int u = x / 2, v = y / 2;
        const int sign = kQuatSign[u][v] * (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1);
        table[x][y] = 2 * kQuatUnit[u][v] + (sign < 0 ? 1 : 0);
      }
    }
    generators = {2, 4};
  }
  return validate_group(table, generators);
}

Mat regular(const FiniteGroup& group, int g) {
  const int n = group.order();
  Mat u = Mat::Zero(n, n);
  for (int h = 0; h < n; ++h) u(group.multiply(g, h), h) = 1.0;
  return u;
}

Mat direct_sum(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Mat dihedral_standard(int n, int x) {
  const int a = x % n, e = x / n;
  const double theta = 2.0 * std::numbers::pi * a / n;
  Mat rot(2, 2);
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  Mat reflect(2, 2);
  reflect << 1.0, 0.0, 0.0, -1.0;
  return e ? Mat(rot * reflect) : rot;
}

Mat permutation_matrix(const std::vector<int>& p) {
  const int k = static_cast<int>(p.size());
  Mat m = Mat::Zero(k, k);
  for (int i = 0; i < k; ++i) m(p[i], i) = 1.0;
  return m;
}

int permutation_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
  return inversions % 2 ? -1 : 1;
}

// Orthonormal basis of the complement of (1, ..., 1) in R^k (Helmert).
Mat helmert(int k) {
  Mat v = Mat::Zero(k, k - 1);
  for (int c = 1; c < k; ++c) {
    const double norm = std::sqrt(static_cast<double>(c * (c + 1)));
    for (int i = 0; i < c; ++i) v(i, c - 1) = 1.0 / norm;
    v(c, c - 1) = -static_cast<double>(c) / norm;
  }
  return v;
}

Mat quaternion_irrep(int x) {
  const Cplx i(0.0, 1.0);
  Mat m(2, 2);
  switch (x / 2) {
    case 0: m << 1.0, 0.0, 0.0, 1.0; break;
    case 1: m << i, 0.0, 0.0, -i; break;
    case 2: m << 0.0, 1.0, -1.0, 0.0; break;
    default: m << 0.0, i, i, 0.0; break;
  }
  return x % 2 ? Mat(-m) : m;
}

}  // namespace

std::string_view strip_catalog_prefix(std::string_view id) {
  constexpr std::string_view prefix = "catalog:";
  if (id.substr(0, prefix.size()) == prefix) id.remove_prefix(prefix.size());
  return id;
}

GroupPtr catalog_group(std::string_view name) {
  const auto parsed = parse_group(name);
  if (!parsed) throw UnknownCatalogId(std::string(name));
  return std::make_shared<const FiniteGroup>(build_group(*parsed));
}

Representation<double> catalog_representation(std::string_view id) {
  const std::string_view bare = strip_catalog_prefix(id);
  const auto slash = bare.find('/');
  if (slash == std::string_view::npos) throw UnknownCatalogId(std::string(id));
  const std::string_view group_name = bare.substr(0, slash);
  const std::string_view rep = bare.substr(slash + 1);
  const auto parsed = parse_group(group_name);
  if (!parsed) throw UnknownCatalogId(std::string(id));
  GroupPtr group = catalog_group(group_name);
  const FiniteGroup& g = *group;
  const int order = g.order();
  std::vector<Mat> mats;
  mats.reserve(order);
  auto fill = [&](auto&& make) {
    for (int x = 0; x < order; ++x) mats.push_back(make(x));
  };
  const Mat i2 = Mat::Identity(2, 2);

  if (rep == "regular") {
    fill([&](int x) { return regular(g, x); });
  } else if (parsed->family == "trivial" && rep.size() > 2 && rep.substr(0, 2) == "id") {
    const auto d = parse_int(rep.substr(2));
    if (!d || *d < 1 || *d > 8) throw UnknownCatalogId(std::string(id));
    fill([&](int) { return Mat(Mat::Identity(*d, *d)); });
  } else if (parsed->family == "z" && (rep == "phase" || (rep == "sign" && parsed->n % 2 == 0))) {
    const int n = parsed->n;
    fill([&](int x) {
      if (rep == "sign") return Mat((Mat(2, 2) << 1.0, 0.0, 0.0, x % 2 ? -1.0 : 1.0).finished());
      Mat m = Mat::Zero(n, n);
      for (int k = 0; k < n; ++k) m(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * ((k * x) % n) / n);
      return m;
    });
  } else if (parsed->family == "d" && rep == "standard") {
    fill([&](int x) { return dihedral_standard(parsed->n, x); });
  } else if (parsed->family == "d" && rep == "sign") {
    fill([&](int x) { return Mat(Mat::Constant(1, 1, x / parsed->n ? -1.0 : 1.0)); });
  } else if (parsed->family == "d" && rep == "standard_tensor_I") {
    fill([&](int x) { return kron<double>(dihedral_standard(parsed->n, x), i2); });
  } else if (parsed->family == "d" && rep == "standard_plus_trivial") {
    fill([&](int x) { return direct_sum(Mat::Identity(1, 1), dihedral_standard(parsed->n, x)); });
  } else if (parsed->family == "s" &&
             (rep == "permutation" || rep == "standard" || rep == "sign" || rep == "standard_tensor_I")) {
    const auto perms = permutations(parsed->n);
    const Mat basis = helmert(parsed->n);
    fill([&](int x) {
      const Mat p = permutation_matrix(perms[x]);
      if (rep == "permutation") return p;
      if (rep == "sign") return Mat(Mat::Constant(1, 1, permutation_sign(perms[x])));
      const Mat standard = basis.adjoint() * p * basis;
      return rep == "standard" ? standard : kron<double>(standard, i2);
    });
  } else if (parsed->family == "q8" && (rep == "irrep" || rep == "u_tensor_I")) {
    fill([&](int x) { return rep == "irrep" ? quaternion_irrep(x) : kron<double>(quaternion_irrep(x), i2); });
  } else {
    throw UnknownCatalogId(std::string(id));
  }
  return Representation<double>(std::move(group), std::move(mats));
}

const std::vector<std::string>& builtin_fixtures() {
  static const std::vector<std::string> fixtures = {
      "trivial/id1",     "trivial/id2",       "z2/sign",
      "z3/phase",        "z8/phase",          "z6/regular",
      "d3/standard",     "d4/standard",       "d4/regular",
      "d4/standard_tensor_I", "d4/standard_plus_trivial", "d5/standard",
      "s3/sign",         "s3/standard",       "s3/permutation",
      "s3/regular",      "s3/standard_tensor_I", "s4/standard",
      "s4/permutation",  "s4/regular",        "q8/irrep",
      "q8/u_tensor_I",   "q8/regular",
  };
  return fixtures;
}

}  // namespace asymcap
