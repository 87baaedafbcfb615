#include "asymcap/group.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "asymcap/errors.hpp"

namespace asymcap {

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a) {
    for (int b = a + 1; b < order_; ++b) {
      if (multiply(a, b) != multiply(b, a)) return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> FiniteGroup::cayley() const {
  std::vector<std::vector<int>> rows(order_, std::vector<int>(order_));
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) rows[a][b] = multiply(a, b);
  }
  return rows;
}

std::vector<int> FiniteGroup::closure(std::span<const int> seeds) const {
  std::vector<char> seen(order_, 0);
  std::deque<int> frontier{identity_};
  seen[identity_] = 1;
  while (!frontier.empty()) {
    const int x = frontier.front();
    frontier.pop_front();
    for (int s : seeds) {
      const int y = multiply(x, s);
      if (!seen[y]) {
        seen[y] = 1;
        frontier.push_back(y);
      }
    }
  }
  std::vector<int> out;
  for (int g = 0; g < order_; ++g) {
    if (seen[g]) out.push_back(g);
  }
  return out;
}

FiniteGroup validate_group(const std::vector<std::vector<int>>& cayley, std::vector<int> generators) {
  const int n = static_cast<int>(cayley.size());
  if (n == 0) throw NotAGroup("empty table", {-1, -1, -1});

  FiniteGroup group;
  group.order_ = n;
  group.table_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(cayley[a].size()) != n) throw NotAGroup("row " + std::to_string(a) + " has wrong length", {a, -1, -1});
    for (int b = 0; b < n; ++b) {
      const int v = cayley[a][b];
      if (v < 0 || v >= n) throw NotAGroup("entry out of range", {a, b, v});
      group.table_[static_cast<std::size_t>(a) * n + b] = v;
    }
  }

  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = group.multiply(e, g) == g && group.multiply(g, e) == g;
    if (ok) identity = e;
  }
  if (identity < 0) throw NotAGroup("no identity element", {-1, -1, -1});
  group.identity_ = identity;

  group.inverse_.assign(n, -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (group.multiply(g, h) == identity && group.multiply(h, g) == identity) {
        group.inverse_[g] = h;
        break;
      }
    }
    if (group.inverse_[g] < 0) throw NotAGroup("element has no inverse", {g, -1, -1});
  }

  if (generators.empty()) {
    for (int g = 0; g < n; ++g) {
      if (g != identity || n == 1) generators.push_back(g);
    }
  }
  for (int s : generators) {
    if (s < 0 || s >= n) throw NotAGroup("generator out of range", {s, -1, -1});
  }
  group.generators_ = std::move(generators);

  auto check = [&](int a, int b, int c) {
    if (group.multiply(group.multiply(a, b), c) != group.multiply(a, group.multiply(b, c))) {
      throw NotAGroup("associativity fails", {a, b, c});
    }
  };
  if (n <= exhaustive_associativity_limit) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) check(a, b, c);
  } else {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int s : group.generators_) check(a, b, s);
  }

  if (static_cast<int>(group.closure(group.generators_).size()) != n) {
    throw NotAGroup("generators do not generate the group", {-1, -1, -1});
  }
  return group;
}

std::vector<int> power_components(int element, int base_order, int n) {
  std::vector<int> parts(n);
  for (int i = n - 1; i >= 0; --i) {
    parts[i] = element % base_order;
    element /= base_order;
  }
  return parts;
}

FiniteGroup direct_power(const FiniteGroup& group, int n, long order_cap) {
  if (n < 1) throw NotAGroup("direct power needs n >= 1", {n, -1, -1});
  if (n == 1) return group;

  const int base = group.order();
  long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= base;
    if (total > order_cap) throw DimensionCapExceeded("product group order", total, order_cap);
  }
  const int order = static_cast<int>(total);

  FiniteGroup out;
  out.order_ = order;
  out.table_.resize(static_cast<std::size_t>(order) * order);
  std::vector<std::vector<int>> parts(order);
  for (int g = 0; g < order; ++g) parts[g] = power_components(g, base, n);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      int index = 0;
      for (int i = 0; i < n; ++i) index = index * base + group.multiply(parts[a][i], parts[b][i]);
      out.table_[static_cast<std::size_t>(a) * order + b] = index;
    }
  }
  auto compose = [&](auto&& component) {
    int index = 0;
    for (int i = 0; i < n; ++i) index = index * base + component(i);
    return index;
  };
  out.identity_ = compose([&](int) { return group.identity(); });
  out.inverse_.resize(order);
  for (int g = 0; g < order; ++g) out.inverse_[g] = compose([&](int i) { return group.inverse(parts[g][i]); });
  for (int pos = 0; pos < n; ++pos) {
    for (int s : group.generators()) {
      out.generators_.push_back(compose([&](int i) { return i == pos ? s : group.identity(); }));
    }
  }
  return out;
}

}  // namespace asymcap
