#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "asymcap/group.hpp"
#include "asymcap/representation.hpp"

namespace asymcap {

// Builtin groups and representations, addressed as "<group>/<rep>" with an
// optional "catalog:" prefix.
//
// Groups:  trivial, z<n> (1 <= n <= 64), d<n> (dihedral of order 2n,
//          2 <= n <= 32), s3, s4, q8.
// Element conventions:
//   z<n>  k is the residue k, generator 1.
//   d<n>  r^k s^e has index k + n*e, generators r and s.
//   s<k>  permutations in lexicographic order, (a*b)(i) = a(b(i)).
//   q8    index 2u + [negative] for units u = 1, i, j, k.
//
// Representations:
//   any group : regular
//   trivial   : id<d> (identity on dimension 1 <= d <= 8)
//   z<n>      : phase (diag of all n characters), sign (n even)
//   d<n>      : standard, sign, standard_tensor_I, standard_plus_trivial
//   s3, s4    : permutation, standard, sign, standard_tensor_I
//   q8        : irrep, u_tensor_I

GroupPtr catalog_group(std::string_view name);

/// Throws UnknownCatalogId.
Representation<double> catalog_representation(std::string_view id);

/// The fixture list used by sweeps over "the full catalog".
const std::vector<std::string>& builtin_fixtures();

/// Strips an optional "catalog:" prefix.
std::string_view strip_catalog_prefix(std::string_view id);

}  // namespace asymcap
