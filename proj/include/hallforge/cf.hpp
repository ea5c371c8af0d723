#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hallforge/family.hpp"
#include "hallforge/hall.hpp"

namespace hallforge {

/// Element of CF^KS: a rational-valued function on iso classes, stored by its
/// values on shapes over a frame. The frame is always the minimal one, so
/// equal functions have identical representations.
class CFElement {
 public:
  CFElement() = default;  // zero
  static CFElement from_shapes(Frame frame, ShapeFunction values);
  static CFElement indicator(const ConstructibleSet& s);
  static CFElement of_class(const IsoClass& c, const Rational& coeff = 1);
  static CFElement unit() { return of_class(IsoClass{}); }

  const Frame& frame() const { return frame_; }
  const ShapeFunction& shapes() const { return values_; }
  bool is_zero() const { return values_.empty(); }

  /// Values over a finer frame.
  ShapeFunction shapes_over(const Frame& finer) const { return refine(values_, frame_, finer); }

  Rational evaluate(const IsoClass& x) const;
  int gamma() const;  // max gamma over the support, 0 for zero
  bool is_indec_supported() const;
  /// Part supported on classes of gamma >= k.
  CFElement gamma_at_least(int k) const;

  /// Level sets in canonical order of their sets.
  std::vector<std::pair<Rational, ConstructibleSet>> terms() const;

  CFElement operator+(const CFElement& o) const;
  CFElement operator-(const CFElement& o) const;
  CFElement operator-() const;
  CFElement operator*(const Rational& c) const;
  CFElement& operator+=(const CFElement& o) { return *this = *this + o; }
  bool operator==(const CFElement& o) const { return frame_ == o.frame_ && values_ == o.values_; }
  bool operator<(const CFElement& o) const;  // arbitrary total order for containers

  /// "2*[J1+J1] + 1*[J2]", "0" for zero.
  std::string to_text(const Backend& b) const;
  /// [{"coefficient": "p/q", "strata": [...]}, ...]
  nlohmann::ordered_json to_json(const Backend& b) const;

 private:
  Frame frame_;
  ShapeFunction values_;
};

inline CFElement operator*(const Rational& c, const CFElement& f) { return f * c; }

/// Result of comparing a family product with pointwise tube products.
struct SampleReport {
  struct Point {
    std::string point;
    bool agrees = true;
  };
  std::vector<Point> points;
  bool ok() const;
};

/// Convolution algebra of one backend.
class Algebra {
 public:
  explicit Algebra(Backend b, Bounds bounds = {}, Route route = Route::Auto,
                   std::shared_ptr<Cache> cache = nullptr);

  const Backend& backend() const { return backend_; }
  const Bounds& bounds() const { return bounds_; }
  /// Structure constants used by products: the backend's own, or for P1 the
  /// tube (nilpotent loop) at a single point.
  HallConstants& constants() { return *constants_; }
  std::shared_ptr<HallConstants> constants_ptr() const { return constants_; }
  /// Backend whose constants serve the products (the cache must match it).
  static Backend constants_backend(const Backend& b);

  CFElement convolve(const CFElement& f, const CFElement& g);
  /// k-th convolution power of 1_O for one indecomposable family O; asserts
  /// the result is k! 1_{kO} plus terms of smaller gamma.
  CFElement power(const ConstructibleSet& o, int k);
  CFElement bracket(const CFElement& f, const CFElement& g);

  /// Nonzero e(X, Z, Y) over all (X, Z); for P1 the product of tube
  /// constants over the support points of Y.
  std::map<ClassPair, Integer> structure_constants(const IsoClass& y);

  /// Y -> e(X, Z, Y) for classes of a finite backend.
  const ShapeFunction& basis_product(const IsoClass& x, const IsoClass& z);

  /// Restrictions of f, g and f*g to the classes supported at each sample
  /// point, compared with products in the tube algebra.
  SampleReport sample_check(const CFElement& f, const CFElement& g, const CFElement& fg,
                            const std::vector<std::string>& points);

  /// Sample points used by every family product: named points plus fresh ones.
  static constexpr int kFreshSamples = 4;

 private:
  Algebra(Backend b, Bounds bounds, std::shared_ptr<HallConstants> constants);
  CFElement convolve_finite(const CFElement& f, const CFElement& g);
  CFElement convolve_p1(const CFElement& f, const CFElement& g);
  Algebra& tube();

  Backend backend_;
  Bounds bounds_;
  std::shared_ptr<HallConstants> constants_;
  std::map<std::pair<IsoClass, IsoClass>, ShapeFunction> products_;
  std::unique_ptr<Algebra> tube_;
};

/// Loop-backend class with the partition of blocks; torsion classes at one point.
IsoClass tube_class(const std::vector<int>& partition);
IsoClass torsion_class(const std::vector<int>& partition, const std::string& point);

/// Partitions of n as nonincreasing vectors, in a fixed order.
std::vector<std::vector<int>> partitions(int n);

}  // namespace hallforge
