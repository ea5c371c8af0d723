#include "hallforge/coalgebra.hpp"

#include <algorithm>

#include "hallforge/errors.hpp"

namespace hallforge {

namespace {

std::vector<std::pair<IsoClass, Rational>> refine_shape(const IsoClass& s, const Frame& from, const Frame& to) {
  auto r = refine(ShapeFunction{{s, Rational(1)}}, from, to);
  return {r.begin(), r.end()};
}

}  // namespace

TensorElement make_tensor(Frame frame, std::map<ClassPair, Rational> values) {
  for (auto& [key, v] : values) v.canonicalize();
  std::erase_if(values, [](const auto& kv) { return kv.second == 0; });
  frame.tidy();
  TensorElement t;
  t.frame_ = std::move(frame);
  t.values_ = std::move(values);
  return t;
}

TensorElement TensorElement::pure(const CFElement& a, const CFElement& b) {
  Frame fr = a.frame().unite(b.frame());
  std::map<ClassPair, Rational> v;
  auto sa = a.shapes_over(fr), sb = b.shapes_over(fr);
  for (auto& [x, c] : sa)
    for (auto& [y, d] : sb) v[{x, y}] = c * d;
  return make_tensor(fr, std::move(v));
}

std::map<ClassPair, Rational> TensorElement::values_over(const Frame& finer) const {
  if (finer == frame_) return values_;
  std::map<ClassPair, Rational> out;
  for (auto& [key, c] : values_)
    for (auto& [a, ca] : refine_shape(key.first, frame_, finer))
      for (auto& [b, cb] : refine_shape(key.second, frame_, finer)) out[{a, b}] += c * ca * cb;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Rational TensorElement::evaluate(const IsoClass& a, const IsoClass& b) const {
  auto it = values_.find({shape_of(a, frame_), shape_of(b, frame_)});
  return it == values_.end() ? Rational(0) : it->second;
}

TensorElement TensorElement::swapped() const {
  std::map<ClassPair, Rational> v;
  for (auto& [key, c] : values_) v[{key.second, key.first}] = c;
  return make_tensor(frame_, std::move(v));
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
  Frame fr = frame_.unite(o.frame_);
  auto v = values_over(fr);
  for (auto& [key, c] : o.values_over(fr)) v[key] += c;
  return make_tensor(fr, std::move(v));
}

TensorElement TensorElement::operator*(const Rational& c) const {
  std::map<ClassPair, Rational> v;
  if (c != 0)
    for (auto& [key, x] : values_) v[key] = x * c;
  return make_tensor(frame_, std::move(v));
}

TensorElement TensorElement::operator-(const TensorElement& o) const { return *this + o * Rational(-1); }

bool TensorElement::operator==(const TensorElement& o) const {
  Frame fr = frame_.unite(o.frame_);
  return values_over(fr) == o.values_over(fr);
}

std::map<IsoClass, CFElement> TensorElement::slices() const {
  std::map<IsoClass, ShapeFunction> rows;
  for (auto& [key, c] : values_) rows[key.first][key.second] = c;
  std::map<IsoClass, CFElement> out;
  for (auto& [a, row] : rows) out.emplace(a, CFElement::from_shapes(frame_, row));
  return out;
}

std::vector<TensorElement::Term> TensorElement::terms() const {
  // Left shapes with equal right factor form one left set.
  std::map<CFElement, ShapeFunction> groups;
  for (auto& [a, g] : slices()) groups[g][a] = 1;
  std::vector<Term> out;
  for (auto& [g, lefts] : groups) {
    ConstructibleSet left = ConstructibleSet::from_shapes(lefts, frame_);
    for (auto& [c, right] : g.terms()) out.push_back({c, left, right});
  }
  std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) {
    if (x.left != y.left) return x.left < y.left;
    if (x.right != y.right) return x.right < y.right;
    return x.coefficient < y.coefficient;
  });
  return out;
}

namespace {

std::string wrap(const ConstructibleSet& s, const Backend& b) {
  std::string t = s.to_string(b);
  return s.strata().size() > 1 ? "(" + t + ")" : t;
}

nlohmann::ordered_json strata_json(const ConstructibleSet& s, const Backend& b) {
  auto a = nlohmann::ordered_json::array();
  for (auto& st : s.strata()) a.push_back(stratum_string(st, b));
  return a;
}

}  // namespace

std::string TensorElement::to_text(const Backend& b) const {
  auto ts = terms();
  if (ts.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Rational& c = ts[i].coefficient;
    if (i == 0)
      out += to_string(c);
    else
      out += c < 0 ? " - " + to_string(Rational(-c)) : " + " + to_string(c);
    out += "*" + wrap(ts[i].left, b) + " (x) " + wrap(ts[i].right, b);
  }
  return out;
}

nlohmann::ordered_json TensorElement::to_json(const Backend& b) const {
  auto arr = nlohmann::ordered_json::array();
  for (auto& t : terms()) {
    nlohmann::ordered_json j;
    j["coefficient"] = to_string(t.coefficient);
    j["left"] = strata_json(t.left, b);
    j["right"] = strata_json(t.right, b);
    arr.push_back(std::move(j));
  }
  return arr;
}

TensorElement comultiply(const CFElement& f) {
  std::map<ClassPair, Rational> v;
  for (auto& [s, c] : f.shapes())
    for (auto& split : s.splittings()) v[split] += c;
  return make_tensor(f.frame(), std::move(v));
}

Rational counit(const CFElement& f) { return f.evaluate(IsoClass{}); }

CFElement counit_left(const TensorElement& t) {
  ShapeFunction v;
  for (auto& [key, c] : t.values())
    if (key.first.is_zero()) v[key.second] += c;
  return CFElement::from_shapes(t.frame(), std::move(v));
}

CFElement counit_right(const TensorElement& t) {
  ShapeFunction v;
  for (auto& [key, c] : t.values())
    if (key.second.is_zero()) v[key.first] += c;
  return CFElement::from_shapes(t.frame(), std::move(v));
}

TensorElement tensor_product(Algebra& alg, const TensorElement& s, const TensorElement& t) {
  Frame fr = s.frame().unite(t.frame());
  auto indicator = [&](const IsoClass& a) { return CFElement::from_shapes(fr, {{a, Rational(1)}}); };
  // Group each factor as sum over left shapes a of delta_a (x) g_a.
  auto rows = [&](const TensorElement& x) {
    std::map<IsoClass, ShapeFunction> r;
    for (auto& [key, c] : x.values_over(fr)) r[key.first][key.second] = c;
    std::vector<std::pair<CFElement, CFElement>> out;
    for (auto& [a, row] : r) out.emplace_back(indicator(a), CFElement::from_shapes(fr, row));
    return out;
  };
  TensorElement acc;
  for (auto& [a1, g1] : rows(s))
    for (auto& [a2, g2] : rows(t)) acc = acc + TensorElement::pure(alg.convolve(a1, a2), alg.convolve(g1, g2));
  return acc;
}

GreenReport green_check(Algebra& alg, const ConstructibleSet& o1, const ConstructibleSet& o2,
                        const IsoClass& alpha, const IsoClass& beta) {
  GreenReport rep;
  rep.convention = kGreenConvention;
  CFElement prod = alg.convolve(CFElement::indicator(o1), CFElement::indicator(o2));
  rep.lhs = prod.evaluate(alpha + beta);
  auto ta = alg.structure_constants(alpha);
  auto tb = alg.structure_constants(beta);
  Integer rhs = 0;
  for (auto& [ka, ea] : ta)
    for (auto& [kb, eb] : tb) {
      // ka = (rho, eps) sub/quotient of alpha; kb = (sigma, tau) of beta.
      if (!o1.contains(ka.first + kb.first) || !o2.contains(ka.second + kb.second)) continue;
      Integer w = ea * eb;
      rhs += w;
      rep.witness.push_back({ka.first, kb.first, ka.second, kb.second, w});
    }
  rep.rhs = Rational(rhs);
  rep.equal = rep.lhs == rep.rhs;
  return rep;
}

nlohmann::ordered_json GreenReport::to_json(const Backend& b) const {
  nlohmann::ordered_json j;
  j["lhs"] = to_string(lhs);
  j["rhs"] = to_string(rhs);
  j["equal"] = equal;
  j["convention"] = convention;
  auto w = nlohmann::ordered_json::array();
  for (auto& c : witness)
    w.push_back({{"rho", b.class_name(c.rho)},
                 {"sigma", b.class_name(c.sigma)},
                 {"eps", b.class_name(c.eps)},
                 {"tau", b.class_name(c.tau)},
                 {"weight", c.weight.get_str()}});
  j["witness"] = w;
  return j;
}

BialgebraReport bialgebra_check(Algebra& alg, const CFElement& f, const CFElement& g) {
  BialgebraReport rep;
  rep.lhs = comultiply(alg.convolve(f, g));
  rep.rhs = tensor_product(alg, comultiply(f), comultiply(g));
  Frame fr = rep.lhs.frame().unite(rep.rhs.frame());
  auto l = rep.lhs.values_over(fr), r = rep.rhs.values_over(fr);
  rep.equal = l == r;
  if (!rep.equal) {
    std::set<ClassPair> keys;
    for (auto& kv : l) keys.insert(kv.first);
    for (auto& kv : r) keys.insert(kv.first);
    for (auto& k : keys) {
      Rational a = l.count(k) ? l[k] : Rational(0), c = r.count(k) ? r[k] : Rational(0);
      if (a != c) {
        rep.first_difference = std::make_tuple(k.first, k.second, a, c);
        break;
      }
    }
  }
  return rep;
}

nlohmann::ordered_json BialgebraReport::to_json(const Backend& b) const {
  nlohmann::ordered_json j;
  j["lhs"] = lhs.to_json(b);
  j["rhs"] = rhs.to_json(b);
  j["equal"] = equal;
  if (first_difference) {
    auto& [x, y, a, c] = *first_difference;
    j["witness"] = {{"left", b.class_name(x)}, {"right", b.class_name(y)}, {"lhs", to_string(a)}, {"rhs", to_string(c)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

}  // namespace hallforge
