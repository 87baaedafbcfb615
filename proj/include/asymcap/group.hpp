#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace asymcap {

/// A finite group given by its Cayley table. Elements are the indices
/// 0..order()-1. Instances only come out of validate_group() or
/// direct_power(), so every invariant holds for the lifetime of the object.
class FiniteGroup {
 public:
  int order() const { return order_; }
  int identity() const { return identity_; }
  int multiply(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inverse(int g) const { return inverse_[g]; }
  std::span<const int> generators() const { return generators_; }
  bool is_abelian() const;

  /// Row-major order x order table.
  std::span<const int> table() const { return table_; }
  std::vector<std::vector<int>> cayley() const;

  /// Closure of `seeds` under right multiplication, as a sorted index list.
  std::vector<int> closure(std::span<const int> seeds) const;

 private:
  friend FiniteGroup validate_group(const std::vector<std::vector<int>>&, std::vector<int>);
  friend FiniteGroup direct_power(const FiniteGroup&, int, long);

  FiniteGroup() = default;

  int order_ = 0;
  int identity_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> generators_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Orders up to this size get an exhaustive associativity check; larger
/// tables are checked on (a, b, generator) triples.
inline constexpr int exhaustive_associativity_limit = 256;

/// Validates a Cayley table and computes identity and inverses.
/// An empty generator list means "use every element".
/// Throws NotAGroup naming the violating triple.
FiniteGroup validate_group(const std::vector<std::vector<int>>& cayley, std::vector<int> generators = {});

/// The direct product G x ... x G (n factors). Element (g_1, ..., g_n) has
/// index sum_i g_i * |G|^(n-1-i), i.e. the first factor is most significant.
/// Throws DimensionCapExceeded when |G|^n exceeds `order_cap`.
FiniteGroup direct_power(const FiniteGroup& group, int n, long order_cap);

/// Splits a direct-power element index into its factor indices.
std::vector<int> power_components(int element, int base_order, int n);

}  // namespace asymcap
