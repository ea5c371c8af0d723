#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hallforge/backend.hpp"
#include "hallforge/cache.hpp"
#include "hallforge/count_kernel.hpp"
#include "hallforge/rational.hpp"

namespace hallforge {

/// Integer polynomial in q, ascending coefficients, no trailing zeros.
class HallPolynomial {
 public:
  HallPolynomial() = default;
  explicit HallPolynomial(std::vector<Integer> coeffs);

  const std::vector<Integer>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  Integer eval(const Integer& q) const;
  Integer at_one() const;
  /// "q^2+3q-1", "0".
  std::string to_string() const;
  bool operator==(const HallPolynomial&) const = default;

 private:
  std::vector<Integer> coeffs_;
};

/// Coefficients (ascending) of the interpolating polynomial through the points.
std::vector<Rational> interpolate(const std::vector<std::pair<Integer, Integer>>& points);

/// Product of factorials of the multiplicities of a multiset of labels.
Integer split_constant(const IsoClass& multiplicities);

/// Euler characteristics chi(V(X, Z; Y)) for every (X, Z), computed as the
/// number of subobjects fixed by the torus scaling the summands of Y.
std::map<ClassPair, Integer> localized_constants(const Backend& b, const IsoClass& target);

enum class Route {
  Count,     // interpolated point counts only
  Localize,  // torus fixed points only
  Auto,      // counting within bounds, fixed points beyond them
};

struct CountTable {
  IsoClass target;
  std::map<ClassPair, HallPolynomial> polys;
  std::vector<int> samples;  // field orders enumerated (empty when loaded from cache)
};

/// Structure constants e(X, Z, Y) = 1_[X] * 1_[Z] ([Y]) of one backend. Count
/// tables are computed per target for all (sub, quot) keys at once.
class HallConstants {
 public:
  HallConstants(Backend b, Bounds bounds = {}, Route route = Route::Count,
                std::shared_ptr<Cache> cache = nullptr);

  const Backend& backend() const { return backend_; }
  const Bounds& bounds() const { return bounds_; }
  Route route() const { return route_; }
  const std::shared_ptr<Cache>& cache() const { return cache_; }

  const CountTable& count_table(const IsoClass& target);
  HallPolynomial hall_polynomial(const IsoClass& sub, const IsoClass& quot, const IsoClass& target);

  /// Nonzero q=1 constants of the target, by the configured route.
  const std::map<ClassPair, Integer>& constants(const IsoClass& target);
  Integer euler_constant(const IsoClass& sub, const IsoClass& quot, const IsoClass& target);

  std::size_t enumerations() const { return enumerations_; }

 private:
  std::map<ClassPair, Integer> from_counts(const IsoClass& target);

  Backend backend_;
  Bounds bounds_;
  Route route_;
  std::shared_ptr<Cache> cache_;
  std::map<IsoClass, CountTable> tables_;
  std::map<IsoClass, std::map<ClassPair, Integer>> constants_;
  std::size_t enumerations_ = 0;
  std::recursive_mutex mu_;
};

}  // namespace hallforge
