#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "hallforge/backend.hpp"
#include "hallforge/shape.hpp"

namespace hallforge {

/// Finite or cofinite subset of P^1, on symbolic point labels.
class P1Set {
 public:
  static P1Set finite(std::set<std::string> points);
  static P1Set cofinite(std::set<std::string> excluded);
  static P1Set all() { return cofinite({}); }

  bool is_cofinite() const { return cofinite_; }
  /// Listed points: members (finite) or excluded points (cofinite).
  const std::set<std::string>& points() const { return points_; }
  bool contains(const std::string& x) const { return cofinite_ != (points_.count(x) > 0); }
  bool empty() const { return !cofinite_ && points_.empty(); }

  P1Set complement() const;
  P1Set intersect(const P1Set& o) const;
  P1Set unite(const P1Set& o) const;
  P1Set minus(const P1Set& o) const;

  /// Naive Euler characteristic: |points| or 2 - |excluded|.
  long long chi_na() const;

  auto operator<=>(const P1Set&) const = default;

 private:
  bool cofinite_ = false;
  std::set<std::string> points_;
};

long long chi_na(const P1Set& s);

/// Constructible family of indecomposables: an explicit finite label set, or
/// the torsion sheaves of one degree over a cofinite subset of P^1. Torsion
/// families over finite bases are stored as finite label sets.
class IndecFamily {
 public:
  IndecFamily() = default;
  static IndecFamily finite(std::vector<IndecLabel> labels);
  static IndecFamily torsion(int degree, const P1Set& base);

  bool is_finite() const { return degree_ == 0; }
  bool empty() const { return is_finite() && labels_.empty(); }
  const std::vector<IndecLabel>& labels() const { return labels_; }
  int degree() const { return degree_; }
  /// Excluded points of a cofinite family.
  const std::set<std::string>& excluded() const { return excluded_; }

  bool contains(const IndecLabel& l) const;
  IndecFamily intersect(const IndecFamily& o) const;
  IndecFamily minus(const IndecFamily& o) const;
  bool disjoint(const IndecFamily& o) const { return intersect(o).empty(); }

  /// Labels the family distinguishes plus, for cofinite families, the generic
  /// label T_d@*, relative to a frame naming every excluded point.
  std::vector<IndecLabel> atoms(const Frame& frame) const;
  /// Points this family needs named to be expressible.
  Frame frame() const;

  /// "{S1,S2}", "T1@*", "T2@*\{x,y}".
  std::string descriptor(const Backend& b) const;

  std::strong_ordering operator<=>(const IndecFamily& o) const;
  bool operator==(const IndecFamily& o) const = default;

 private:
  std::vector<IndecLabel> labels_;
  int degree_ = 0;
  std::set<std::string> excluded_;
};

/// Krull-Schmidt set n_1 F_1 + ... + n_k F_k over pairwise disjoint families.
class Stratum {
 public:
  Stratum() = default;  // the zero object {[0]}
  /// Merges repeated families; a part over the empty family makes the stratum
  /// the empty set.
  explicit Stratum(std::vector<std::pair<IndecFamily, int>> parts);
  static Stratum of_class(const IsoClass& c);
  static Stratum empty_stratum();

  bool is_empty() const { return empty_; }

  const std::vector<std::pair<IndecFamily, int>>& parts() const { return parts_; }
  int gamma() const;
  bool contains(const IsoClass& x) const;
  Stratum direct_sum(const Stratum& o) const;  // may produce overlapping parts
  bool pairwise_disjoint() const;

  std::strong_ordering operator<=>(const Stratum& o) const;
  bool operator==(const Stratum& o) const = default;

 private:
  std::vector<std::pair<IndecFamily, int>> parts_;
  bool empty_ = false;
};

/// Stratified Krull-Schmidt set: disjoint union of strata in normal form.
class ConstructibleSet {
 public:
  ConstructibleSet() = default;  // empty set
  static ConstructibleSet of_class(const IsoClass& c);
  static ConstructibleSet of_family(const IndecFamily& f);
  /// Normal form of a union of (possibly overlapping) strata; throws
  /// BackendMismatch when labels of different backends are mixed.
  static ConstructibleSet normalize(const std::vector<Stratum>& raw);
  /// Normal form of the support of a 0/1-valued shape function.
  static ConstructibleSet from_shapes(const ShapeFunction& f, const Frame& frame);

  const std::vector<Stratum>& strata() const { return strata_; }
  bool empty() const { return strata_.empty(); }
  int gamma() const;  // max over strata, 0 for the empty set
  bool contains(const IsoClass& x) const;

  ConstructibleSet direct_sum(const ConstructibleSet& o) const;
  ConstructibleSet unite(const ConstructibleSet& o) const;

  /// Shape expansion over a frame naming every point the set needs.
  Frame frame() const;
  ShapeFunction shapes(const Frame& frame) const;

  /// Strata joined by " | "; a stratum of singletons prints as "[S1+S2]".
  std::string to_string(const Backend& b) const;

  /// Ordered by (gamma, strata).
  std::strong_ordering operator<=>(const ConstructibleSet& o) const;
  bool operator==(const ConstructibleSet& o) const = default;

 private:
  std::vector<Stratum> strata_;
};

IndecFamily family_from_spec(const Backend& b, const FamilySpec& spec);

/// Declared backend name of the family if any, else its descriptor.
std::string family_label(const IndecFamily& f, const Backend& b);

std::string stratum_string(const Stratum& s, const Backend& b);

// Free-function forms of the member operations.
ConstructibleSet direct_sum(const ConstructibleSet& a, const ConstructibleSet& b);
int gamma(const ConstructibleSet& s);

}  // namespace hallforge
