#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hallforge/cf.hpp"

namespace hallforge {

/// Ordered product 1_{F1}^{n1} ... 1_{Fk}^{nk}; the empty monomial is the unit.
struct PBWMonomial {
  std::vector<std::pair<IndecFamily, int>> factors;

  int gamma() const;
  std::string name(const Backend& b) const;  // "{S1}^2 {S2}", "1" for the unit
  bool operator==(const PBWMonomial&) const = default;
};

/// Iterated convolution of the factors in their listed order.
CFElement phi(Algebra& alg, const PBWMonomial& m);

/// (prod n_i!, n_1 F_1 + ... + n_k F_k); requires pairwise disjoint families.
std::pair<Rational, ConstructibleSet> leading_term(const PBWMonomial& m);

/// Every monomial of gamma <= m over the families (sorted canonically), by
/// gamma and then by exponent vector, largest exponents of earlier families first.
std::vector<PBWMonomial> pbw_monomials(const std::vector<IndecFamily>& families, int m);

struct TruncationReport {
  std::vector<std::string> families;
  int gamma_bound = 0;
  std::vector<std::string> columns;  // monomials
  std::vector<std::string> rows;     // shapes in the support of the images
  struct Entry {
    std::size_t row, col;
    Rational value;
  };
  std::vector<Entry> entries;
  std::vector<Rational> diagonal;
  bool triangular = true;
  bool diagonal_ok = true;
  std::size_t rank = 0;
  bool injective = false;
  bool surjective = false;
  /// Indecomposable families outside the input that back-substitution needed
  /// as gamma-1 generators (their images are products of the input only up to
  /// lower filtration degree).
  std::vector<std::string> auxiliary;
  std::optional<std::string> counterexample;  // "monomial: offending stratum"

  bool bijective() const { return triangular && diagonal_ok && injective && surjective; }
  nlohmann::ordered_json to_json() const;
};

/// Certifies that Phi is an isomorphism on the gamma <= m truncation spanned
/// by PBW monomials over the families.
TruncationReport check_iso_on_truncation(Algebra& alg, std::vector<IndecFamily> families, int m);

}  // namespace hallforge
