#include "hallforge/cf.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "hallforge/errors.hpp"
#include "hallforge/quiver.hpp"

namespace hallforge {

// ---- CFElement -----------------------------------------------------------

CFElement CFElement::from_shapes(Frame frame, ShapeFunction values) {
  for (auto& [shape, v] : values) v.canonicalize();
  std::erase_if(values, [](const auto& kv) { return kv.second == 0; });
  coarsen(frame, values);
  CFElement e;
  e.frame_ = std::move(frame);
  e.values_ = std::move(values);
  return e;
}

CFElement CFElement::indicator(const ConstructibleSet& s) {
  Frame fr = s.frame();
  return from_shapes(fr, s.shapes(fr));
}

CFElement CFElement::of_class(const IsoClass& c, const Rational& coeff) {
  return indicator(ConstructibleSet::of_class(c)) * coeff;
}

Rational CFElement::evaluate(const IsoClass& x) const {
  auto it = values_.find(shape_of(x, frame_));
  return it == values_.end() ? Rational(0) : it->second;
}

int CFElement::gamma() const {
  int g = 0;
  for (auto& [s, v] : values_) g = std::max(g, s.gamma());
  return g;
}

bool CFElement::is_indec_supported() const {
  return std::all_of(values_.begin(), values_.end(), [](const auto& kv) { return kv.first.gamma() == 1; });
}

CFElement CFElement::gamma_at_least(int k) const {
  ShapeFunction v;
  for (auto& [s, c] : values_)
    if (s.gamma() >= k) v.emplace(s, c);
  return from_shapes(frame_, std::move(v));
}

std::vector<std::pair<Rational, ConstructibleSet>> CFElement::terms() const {
  std::map<Rational, ShapeFunction> levels;
  for (auto& [s, v] : values_) levels[v][s] = 1;
  std::vector<std::pair<Rational, ConstructibleSet>> out;
  for (auto& [v, ind] : levels) out.emplace_back(v, ConstructibleSet::from_shapes(ind, frame_));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  return out;
}

CFElement CFElement::operator+(const CFElement& o) const {
  Frame u = frame_.unite(o.frame_);
  ShapeFunction a = shapes_over(u);
  for (auto& [s, v] : o.shapes_over(u)) a[s] += v;
  return from_shapes(std::move(u), std::move(a));
}

CFElement CFElement::operator-() const { return *this * Rational(-1); }

CFElement CFElement::operator-(const CFElement& o) const { return *this + (-o); }

CFElement CFElement::operator*(const Rational& c) const {
  Rational k = c;  // mpq arithmetic requires canonical operands
  k.canonicalize();
  if (k == 0) return {};
  CFElement e = *this;
  for (auto& [s, v] : e.values_) v *= k;
  return e;
}

bool CFElement::operator<(const CFElement& o) const {
  if (frame_.named != o.frame_.named) return frame_.named < o.frame_.named;
  return values_ < o.values_;
}

namespace {

std::string set_text(const ConstructibleSet& s, const Backend& b) {
  std::string t = s.to_string(b);
  return s.strata().size() > 1 ? "(" + t + ")" : t;
}

}  // namespace

std::string CFElement::to_text(const Backend& b) const {
  auto ts = terms();
  if (ts.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Rational& c = ts[i].first;
    if (i == 0)
      out += to_string(c);
    else
      out += c < 0 ? " - " + to_string(Rational(-c)) : " + " + to_string(c);
    out += "*" + set_text(ts[i].second, b);
  }
  return out;
}

nlohmann::ordered_json CFElement::to_json(const Backend& b) const {
  auto arr = nlohmann::ordered_json::array();
  for (auto& [c, s] : terms()) {
    nlohmann::ordered_json t;
    t["coefficient"] = to_string(c);
    auto strata = nlohmann::ordered_json::array();
    for (auto& st : s.strata()) strata.push_back(stratum_string(st, b));
    t["strata"] = std::move(strata);
    arr.push_back(std::move(t));
  }
  return arr;
}

bool SampleReport::ok() const {
  return std::all_of(points.begin(), points.end(), [](const Point& p) { return p.agrees; });
}

// ---- helpers -------------------------------------------------------------

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int cap) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(left, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

IsoClass tube_class(const std::vector<int>& partition) {
  std::vector<IndecLabel> ls;
  for (int p : partition) ls.push_back(block_label(p));
  return IsoClass(ls);
}

IsoClass torsion_class(const std::vector<int>& partition, const std::string& point) {
  std::vector<IndecLabel> ls;
  for (int p : partition) ls.push_back(torsion_label(p, point));
  return IsoClass(ls);
}

// ---- Algebra -------------------------------------------------------------

Backend Algebra::constants_backend(const Backend& b) {
  return b.kind() == BackendKind::P1Torsion ? Backend::loop_nilpotent("tube") : b;
}

Algebra::Algebra(Backend b, Bounds bounds, Route route, std::shared_ptr<Cache> cache)
    : backend_(std::move(b)), bounds_(bounds) {
  constants_ = std::make_shared<HallConstants>(constants_backend(backend_), bounds_, route, std::move(cache));
}

Algebra::Algebra(Backend b, Bounds bounds, std::shared_ptr<HallConstants> constants)
    : backend_(std::move(b)), bounds_(bounds), constants_(std::move(constants)) {}

Algebra& Algebra::tube() {
  if (!tube_) tube_.reset(new Algebra(constants_->backend(), bounds_, constants_));
  return *tube_;
}

const ShapeFunction& Algebra::basis_product(const IsoClass& x, const IsoClass& z) {
  auto key = std::make_pair(x, z);
  if (auto it = products_.find(key); it != products_.end()) return it->second;
  ShapeFunction out;
  int gmax = x.gamma() + z.gamma();
  for (auto& y : classes_of_dim(backend_, add(backend_.dim(x), backend_.dim(z)))) {
    if (y.gamma() > gmax) continue;  // such constants vanish
    auto& table = constants_->constants(y);
    auto it = table.find(key);
    if (it != table.end()) out[y] = Rational(it->second);
  }
  return products_.emplace(key, std::move(out)).first->second;
}

namespace {

void check_gamma(const Bounds& bounds, int g) {
  if (g > bounds.max_gamma) throw ResourceError("max_gamma", bounds.max_gamma, g);
}

}  // namespace

CFElement Algebra::convolve(const CFElement& f, const CFElement& g) {
  if (f.is_zero() || g.is_zero()) return {};
  return backend_.kind() == BackendKind::P1Torsion ? convolve_p1(f, g) : convolve_finite(f, g);
}

CFElement Algebra::convolve_finite(const CFElement& f, const CFElement& g) {
  if (!f.frame().empty() || !g.frame().empty())
    throw BackendMismatch("point-framed function passed to a finite backend");
  ShapeFunction out;
  for (auto& [x, a] : f.shapes())
    for (auto& [z, b] : g.shapes()) {
      check_gamma(bounds_, x.gamma() + z.gamma());
      for (auto& [y, e] : basis_product(x, z)) out[y] += a * b * e;
    }
  return CFElement::from_shapes({}, std::move(out));
}

namespace {

void reject_line_bundles(const CFElement& f) {
  for (auto& [s, v] : f.shapes())
    for (auto& [l, m] : s.parts())
      if (l.kind == LabelKind::LineBundle)
        throw CapabilityError("products involving line bundles are not supported");
}

// Every multiset of nonempty partitions with total size n.
std::vector<std::vector<std::vector<int>>> partition_multisets(int n) {
  std::vector<std::vector<int>> pool;
  for (int m = 1; m <= n; ++m)
    for (auto& p : partitions(m)) pool.push_back(p);
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      int s = 0;
      for (int v : pool[i]) s += v;
      if (s > left) continue;
      cur.push_back(pool[i]);
      rec(i, left - s);
      cur.pop_back();
    }
  };
  rec(0, n);
  return out;
}

}  // namespace

CFElement Algebra::convolve_p1(const CFElement& f, const CFElement& g) {
  reject_line_bundles(f);
  reject_line_bundles(g);

  std::set<std::string> named;
  for (const Frame* fr : {&f.frame(), &g.frame()})
    for (auto& [d, pts] : fr->named) named.insert(pts.begin(), pts.end());
  std::vector<std::string> points(named.begin(), named.end());

  std::set<int> sizes;
  int gmax = 0;
  for (auto& [x, a] : f.shapes())
    for (auto& [z, b] : g.shapes()) {
      sizes.insert(x.size() + z.size());
      gmax = std::max(gmax, x.gamma() + z.gamma());
    }
  check_gamma(bounds_, gmax);
  int nmax = *sizes.rbegin();

  Frame result_frame;
  if (!points.empty())
    for (int d = 1; d <= nmax; ++d) result_frame.named[d] = named;

  // (f*g)(Y) summed over pointwise splittings of Y.
  auto value_at = [&](const std::vector<std::pair<std::string, std::vector<int>>>& y) {
    Rational total = 0;
    std::vector<IndecLabel> xs, zs;
    std::function<void(std::size_t, Integer)> rec = [&](std::size_t i, Integer w) {
      if (i == y.size()) {
        Rational fx = f.evaluate(IsoClass(xs));
        if (fx == 0) return;
        Rational gz = g.evaluate(IsoClass(zs));
        if (gz != 0) total += fx * gz * Rational(w);
        return;
      }
      const std::string& pt = y[i].first;
      for (auto& [key, e] : constants_->constants(tube_class(y[i].second))) {
        std::size_t nx = xs.size(), nz = zs.size();
        for (auto& l : key.first.summands()) xs.push_back(torsion_label(l.dim[0], pt));
        for (auto& l : key.second.summands()) zs.push_back(torsion_label(l.dim[0], pt));
        rec(i + 1, w * e);
        xs.resize(nx);
        zs.resize(nz);
      }
    };
    rec(0, Integer(1));
    return total;
  };

  ShapeFunction values;
  std::map<IsoClass, bool> seen;
  for (int n : sizes) {
    std::vector<std::pair<std::string, std::vector<int>>> y;
    std::function<void(std::size_t, int)> at_named = [&](std::size_t i, int left) {
      if (i == points.size()) {
        for (auto& fresh : partition_multisets(left)) {
          auto full = y;
          for (std::size_t k = 0; k < fresh.size(); ++k)
            full.emplace_back("~g" + std::to_string(k + 1), fresh[k]);
          std::vector<IndecLabel> ls;
          for (auto& [pt, lam] : full)
            for (int p : lam) ls.push_back(torsion_label(p, pt));
          IsoClass concrete(ls);
          if (concrete.gamma() > gmax) continue;
          Rational v = value_at(full);
          IsoClass shape = shape_of(concrete, result_frame);
          auto [it, fresh_shape] = seen.emplace(shape, true);
          if (fresh_shape) {
            if (v != 0) values[shape] = v;
          } else {
            auto jt = values.find(shape);
            Rational prev = jt == values.end() ? Rational(0) : jt->second;
            if (prev != v)
              throw NonConstantFamily("family product takes values " + to_string(prev) + " and " +
                                      to_string(v) + " on one generic shape");
          }
        }
        return;
      }
      for (int m = 0; m <= left; ++m)
        for (auto& lam : partitions(m)) {
          if (m) y.emplace_back(points[i], lam);
          at_named(i + 1, left - m);
          if (m) y.pop_back();
        }
    };
    at_named(0, n);
  }
  CFElement result = CFElement::from_shapes(result_frame, std::move(values));

  std::vector<std::string> samples = points;
  for (int k = 1; k <= kFreshSamples; ++k) samples.push_back("~s" + std::to_string(k));
  auto report = sample_check(f, g, result, samples);
  for (auto& p : report.points)
    if (!p.agrees) throw NonConstantFamily("family product disagrees with the tube product at point " + p.point);
  return result;
}

namespace {

int max_size(const CFElement& f) {
  int m = 0;
  for (auto& [s, v] : f.shapes()) m = std::max(m, s.size());
  return m;
}

CFElement restrict_to_point(const CFElement& f, const std::string& point, int up_to) {
  ShapeFunction v;
  for (int n = 0; n <= up_to; ++n)
    for (auto& lam : partitions(n)) {
      Rational c = f.evaluate(torsion_class(lam, point));
      if (c != 0) v[tube_class(lam)] = c;
    }
  return CFElement::from_shapes({}, std::move(v));
}

}  // namespace

SampleReport Algebra::sample_check(const CFElement& f, const CFElement& g, const CFElement& fg,
                                   const std::vector<std::string>& points) {
  SampleReport report;
  int mf = max_size(f), mg = max_size(g);
  for (auto& p : points) {
    auto rf = restrict_to_point(f, p, mf);
    auto rg = restrict_to_point(g, p, mg);
    auto expected = tube().convolve(rf, rg);
    auto got = restrict_to_point(fg, p, mf + mg);
    report.points.push_back({p, expected == got});
  }
  return report;
}

std::map<ClassPair, Integer> Algebra::structure_constants(const IsoClass& y) {
  if (backend_.kind() != BackendKind::P1Torsion) return constants_->constants(y);
  std::map<std::string, std::vector<int>> by_point;
  for (auto& l : y.summands()) {
    if (l.kind != LabelKind::Torsion || is_generic(l))
      throw CapabilityError("structure constants need concrete torsion classes");
    by_point[l.point].push_back(l.dim[0]);
  }
  std::map<ClassPair, Integer> acc = {{{IsoClass{}, IsoClass{}}, Integer(1)}};
  for (auto& [pt, lam] : by_point) {
    std::map<ClassPair, Integer> next;
    for (auto& [key, e] : constants_->constants(tube_class(lam))) {
      std::vector<IndecLabel> xs, zs;
      for (auto& l : key.first.summands()) xs.push_back(torsion_label(l.dim[0], pt));
      for (auto& l : key.second.summands()) zs.push_back(torsion_label(l.dim[0], pt));
      for (auto& [k0, e0] : acc) next[{k0.first + IsoClass(xs), k0.second + IsoClass(zs)}] += e0 * e;
    }
    acc = std::move(next);
  }
  return acc;
}

CFElement Algebra::power(const ConstructibleSet& o, int k) {
  if (k < 1) throw PreconditionError("power exponent must be positive");
  if (o.strata().size() != 1 || o.strata()[0].parts().size() != 1 || o.strata()[0].gamma() != 1)
    throw PreconditionError("power expects a single indecomposable family");
  const IndecFamily& fam = o.strata()[0].parts()[0].first;
  CFElement base = CFElement::indicator(o);
  CFElement r = base;
  for (int i = 2; i <= k; ++i) r = convolve(r, base);
  CFElement lead = CFElement::indicator(ConstructibleSet::normalize({Stratum({{fam, k}})})) *
                   Rational(factorial(k));
  if ((r - lead).gamma() >= k)
    throw InvariantViolation("power does not have leading term k! 1_{kO}");
  return r;
}

CFElement Algebra::bracket(const CFElement& f, const CFElement& g) {
  return convolve(f, g) - convolve(g, f);
}

}  // namespace hallforge
