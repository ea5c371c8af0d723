#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "hallforge/cf.hpp"

namespace hallforge {

/// Element of CF^KS (x) CF^KS, stored as a function on pairs of shapes over one
/// frame. The two factors see the frame independently.
class TensorElement {
 public:
  TensorElement() = default;
  static TensorElement pure(const CFElement& a, const CFElement& b);

  const Frame& frame() const { return frame_; }
  const std::map<ClassPair, Rational>& values() const { return values_; }
  bool is_zero() const { return values_.empty(); }
  std::map<ClassPair, Rational> values_over(const Frame& finer) const;

  Rational evaluate(const IsoClass& a, const IsoClass& b) const;
  TensorElement swapped() const;

  TensorElement operator+(const TensorElement& o) const;
  TensorElement operator-(const TensorElement& o) const;
  TensorElement operator*(const Rational& c) const;
  bool operator==(const TensorElement& o) const;

  struct Term {
    Rational coefficient;
    ConstructibleSet left, right;
  };
  /// Canonical decomposition into sums of c * 1_L (x) 1_R.
  std::vector<Term> terms() const;
  std::string to_text(const Backend& b) const;
  nlohmann::ordered_json to_json(const Backend& b) const;

  /// Right factors for each left shape a: B -> T(a, B).
  std::map<IsoClass, CFElement> slices() const;

 private:
  friend TensorElement make_tensor(Frame, std::map<ClassPair, Rational>);
  Frame frame_;
  std::map<ClassPair, Rational> values_;
};

TensorElement make_tensor(Frame frame, std::map<ClassPair, Rational> values);

/// Delta(f)(A, B) = f(A + B): every splitting of a summand multiset has coefficient 1.
TensorElement comultiply(const CFElement& f);
/// f([0]).
Rational counit(const CFElement& f);
CFElement counit_left(const TensorElement& t);   // (eps (x) id)
CFElement counit_right(const TensorElement& t);  // (id (x) eps)

/// (f1 (x) g1)(f2 (x) g2) = (f1 * f2) (x) (g1 * g2), extended bilinearly.
TensorElement tensor_product(Algebra& alg, const TensorElement& s, const TensorElement& t);

struct GreenReport {
  Rational lhs, rhs;
  bool equal = false;
  std::string convention;
  struct Contribution {
    IsoClass rho, sigma, eps, tau;
    Integer weight;
  };
  std::vector<Contribution> witness;
  nlohmann::ordered_json to_json(const Backend& b) const;
};

inline const std::string kGreenConvention =
    "g^a_{O2 O1} = (1_{O1} * 1_{O2})(a): the first subscript names the quotient-side set";

/// Degenerate Green identity at (o1, o2, alpha', beta'):
/// (1_{o1} * 1_{o2})(alpha' + beta') against the sum over sub/quotient splittings
/// (rho, eps) of alpha' and (sigma, tau) of beta' with rho + sigma in o1 and
/// eps + tau in o2 of e(rho, eps, alpha') e(sigma, tau, beta').
GreenReport green_check(Algebra& alg, const ConstructibleSet& o1, const ConstructibleSet& o2,
                        const IsoClass& alpha, const IsoClass& beta);

struct BialgebraReport {
  TensorElement lhs, rhs;  // Delta(f*g), Delta(f)*Delta(g)
  bool equal = false;
  std::optional<std::tuple<IsoClass, IsoClass, Rational, Rational>> first_difference;
  nlohmann::ordered_json to_json(const Backend& b) const;
};

BialgebraReport bialgebra_check(Algebra& alg, const CFElement& f, const CFElement& g);

}  // namespace hallforge
