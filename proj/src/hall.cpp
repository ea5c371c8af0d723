#include "hallforge/hall.hpp"

#include <algorithm>
#include <set>

#include "hallforge/errors.hpp"
#include "hallforge/field.hpp"

namespace hallforge {

HallPolynomial::HallPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer HallPolynomial::eval(const Integer& q) const {
  Integer r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * q + *it;
  return r;
}

Integer HallPolynomial::at_one() const {
  Integer r = 0;
  for (auto& c : coeffs_) r += c;
  return r;
}

std::string HallPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int d = degree(); d >= 0; --d) {
    const Integer& c = coeffs_[d];
    if (c == 0) continue;
    Integer a = abs(c);
    if (!out.empty()) out += c < 0 ? "-" : "+";
    else if (c < 0) out += "-";
    if (d == 0 || a != 1) out += a.get_str();
    if (d >= 1) out += "q";
    if (d >= 2) out += "^" + std::to_string(d);
  }
  return out;
}

std::vector<Rational> interpolate(const std::vector<std::pair<Integer, Integer>>& points) {
  std::size_t n = points.size();
  // Newton divided differences, then expand the Newton form.
  std::vector<Rational> dd(n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = Rational(points[i].second);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      Rational den(points[i].first - points[i - j].first);
      if (den == 0) throw PreconditionError("interpolation nodes must be distinct");
      dd[i] = (dd[i] - dd[i - 1]) / den;
    }
  std::vector<Rational> poly;  // ascending
  for (std::size_t k = n; k-- > 0;) {
    // poly = poly * (x - x_k) + dd[k]
    std::vector<Rational> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * Rational(points[k].first);
    }
    next[0] += dd[k];
    poly = std::move(next);
  }
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  return poly;
}

Integer split_constant(const IsoClass& multiplicities) {
  Integer r = 1;
  for (auto& [l, m] : multiplicities.parts()) r *= factorial(static_cast<unsigned>(m));
  return r;
}

namespace {

// Counting can only finish once deg + 2 field orders are sampled, where the
// degree of a Hall polynomial is at most the dimension of the product of
// Grassmannians, sum_v floor(d_v^2 / 4). False when the last needed order is
// unavailable or its enumeration would exceed max_work.
bool counting_fits(const Backend& b, const IsoClass& target, const Bounds& bounds) {
  if (target.size() > bounds.max_dim) return false;
  DimVector d = b.dim(target);
  std::size_t degree = 0;
  for (int dv : d) degree += static_cast<std::size_t>(dv) * dv / 4;
  auto qs = prime_powers_up_to(bounds.max_q);
  std::size_t needed = std::min(degree + 2, qs.size());
  long double work = 1;
  for (int dv : d) work *= static_cast<long double>(subspace_count(qs[needed - 1], dv));
  return work <= static_cast<long double>(bounds.max_work);
}

// Options (sub, quot) for one indecomposable summand under the torus action.
std::vector<ClassPair> fixed_subobjects(const Backend& b, const IndecLabel& l) {
  std::vector<ClassPair> out;
  switch (b.kind()) {
    case BackendKind::LoopNilpotent: {
      int m = l.dim[0];
      for (int k = 0; k <= m; ++k) {
        IsoClass s = k ? IsoClass({block_label(k)}) : IsoClass{};
        IsoClass t = m - k ? IsoClass({block_label(m - k)}) : IsoClass{};
        out.emplace_back(s, t);
      }
      return out;
    }
    case BackendKind::DynkinQuiver: {
      int n = static_cast<int>(l.dim.size());
      int lo = -1, hi = -1;
      for (int i = 0; i < n; ++i)
        if (l.dim[i]) {
          if (lo < 0) lo = i;
          hi = i;
        }
      int len = hi - lo + 1;
      auto components = [&](const std::vector<bool>& in) {
        std::vector<IndecLabel> parts;
        int i = 0;
        while (i < len) {
          if (!in[i]) {
            ++i;
            continue;
          }
          DimVector d(n, 0);
          while (i < len && in[i]) d[lo + i++] = 1;
          parts.push_back(root_label(d));
        }
        return IsoClass(parts);
      };
      for (int mask = 0; mask < (1 << len); ++mask) {
        std::vector<bool> in(len), out_set(len);
        for (int i = 0; i < len; ++i) {
          in[i] = (mask >> i) & 1;
          out_set[i] = !in[i];
        }
        bool closed = true;
        for (int i = 0; i + 1 < len && closed; ++i) {
          bool fwd = b.arrow_forward(lo + i);
          int from = fwd ? i : i + 1, to = fwd ? i + 1 : i;
          if (in[from] && !in[to]) closed = false;
        }
        if (closed) out.emplace_back(components(in), components(out_set));
      }
      return out;
    }
    case BackendKind::P1Torsion: break;
  }
  throw CapabilityError("fixed-point localization needs a quiver backend");
}

}  // namespace

std::map<ClassPair, Integer> localized_constants(const Backend& b, const IsoClass& target) {
  std::map<ClassPair, Integer> acc{{ClassPair{IsoClass{}, IsoClass{}}, Integer(1)}};
  for (auto& l : target.summands()) {
    auto opts = fixed_subobjects(b, l);
    std::map<ClassPair, Integer> next;
    for (auto& [k, v] : acc)
      for (auto& [s, t] : opts) next[{k.first + s, k.second + t}] += v;
    acc = std::move(next);
  }
  return acc;
}

HallConstants::HallConstants(Backend b, Bounds bounds, Route route, std::shared_ptr<Cache> cache)
    : backend_(std::move(b)), bounds_(bounds), route_(route), cache_(std::move(cache)) {
  if (backend_.kind() == BackendKind::P1Torsion)
    throw CapabilityError("p1-torsion constants are assembled pointwise from a loop backend");
}

const CountTable& HallConstants::count_table(const IsoClass& target) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  if (auto it = tables_.find(target); it != tables_.end()) return it->second;
  for (auto& l : target.summands()) backend_.validate(l);
  if (target.size() > bounds_.max_dim) throw ResourceError("max_dim", bounds_.max_dim, target.size());

  const std::string& bname = backend_.name();
  std::string tname = backend_.class_name(target);
  CountTable table;
  table.target = target;

  if (cache_) {
    if (auto done = cache_->get(Cache::complete_key(bname, tname))) {
      auto keys = cache_->keys_for_target(tname);
      if (done->size() == 1 && (*done)[0] == static_cast<long>(keys.size())) {
        for (auto& k : keys) {
          // key = backend|sub|quot|target
          auto p1 = k.find('|'), p2 = k.find('|', p1 + 1), p3 = k.find('|', p2 + 1);
          IsoClass sub = backend_.parse_class(k.substr(p1 + 1, p2 - p1 - 1));
          IsoClass quot = backend_.parse_class(k.substr(p2 + 1, p3 - p2 - 1));
          table.polys[{sub, quot}] = HallPolynomial(*cache_->get(k));
        }
        return tables_.emplace(target, std::move(table)).first->second;
      }
    }
  }

  std::vector<SubrepHistogram> hists;
  std::set<ClassPair> keys;
  std::map<ClassPair, HallPolynomial> accepted;
  bool done = false;
  for (int q : prime_powers_up_to(bounds_.max_q)) {
    hists.push_back(enumerate_subreps(backend_, target, q, bounds_));
    ++enumerations_;
    table.samples.push_back(q);
    for (auto& [k, v] : hists.back().counts) keys.insert(k);
    for (auto& [k, poly] : accepted)
      if (poly.eval(q) != hists.back().at(k.first, k.second))
        throw NonPolynomialCount("accepted polynomial " + poly.to_string() + " for " +
                                 backend_.class_name(k.first) + "," + backend_.class_name(k.second) +
                                 " in " + tname + " fails at q=" + std::to_string(q));
    std::size_t n = hists.size();
    if (n < 2) continue;
    for (auto& k : keys) {
      if (accepted.count(k)) continue;
      std::vector<std::pair<Integer, Integer>> pts;
      for (std::size_t i = 0; i + 1 < n; ++i)
        pts.emplace_back(Integer(hists[i].q), Integer(static_cast<unsigned long>(hists[i].at(k.first, k.second))));
      auto coeffs = interpolate(pts);
      bool integral = true;
      std::vector<Integer> ic;
      for (auto& c : coeffs) {
        if (c.get_den() != 1) integral = false;
        ic.push_back(c.get_num());
      }
      if (!integral) continue;
      HallPolynomial p(ic);
      if (p.eval(hists[n - 1].q) == Integer(static_cast<unsigned long>(hists[n - 1].at(k.first, k.second))))
        accepted.emplace(k, p);
    }
    if (accepted.size() == keys.size()) {
      done = true;
      break;
    }
  }
  if (!done)
    throw NonPolynomialCount("counts for target " + tname +
                             " did not stabilise to integer polynomials with q <= " +
                             std::to_string(bounds_.max_q));
  for (auto& [k, p] : accepted)
    if (!p.is_zero()) table.polys.emplace(k, p);

  if (cache_) {
    std::vector<std::pair<std::string, std::vector<Integer>>> batch;
    for (auto& [k, p] : table.polys)
      batch.emplace_back(Cache::key(bname, backend_.class_name(k.first), backend_.class_name(k.second), tname),
                         p.coeffs());
    batch.emplace_back(Cache::complete_key(bname, tname),
                       std::vector<Integer>{Integer(static_cast<unsigned long>(table.polys.size()))});
    cache_->put(batch);
  }
  return tables_.emplace(target, std::move(table)).first->second;
}

HallPolynomial HallConstants::hall_polynomial(const IsoClass& sub, const IsoClass& quot,
                                              const IsoClass& target) {
  const CountTable& t = count_table(target);
  auto it = t.polys.find({sub, quot});
  return it == t.polys.end() ? HallPolynomial{} : it->second;
}

std::map<ClassPair, Integer> HallConstants::from_counts(const IsoClass& target) {
  std::map<ClassPair, Integer> out;
  for (auto& [k, p] : count_table(target).polys) {
    Integer v = p.at_one();
    if (v != 0) out.emplace(k, v);
  }
  return out;
}

const std::map<ClassPair, Integer>& HallConstants::constants(const IsoClass& target) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  if (auto it = constants_.find(target); it != constants_.end()) return it->second;
  for (auto& l : target.summands()) backend_.validate(l);
  std::map<ClassPair, Integer> values;
  switch (route_) {
    case Route::Count: values = from_counts(target); break;
    case Route::Localize: values = localized_constants(backend_, target); break;
    case Route::Auto:
      if (!tables_.count(target) && !counting_fits(backend_, target, bounds_)) {
        values = localized_constants(backend_, target);
        break;
      }
      try {
        values = from_counts(target);
      } catch (const ResourceError&) {
        values = localized_constants(backend_, target);
      }
      break;
  }
  std::erase_if(values, [](const auto& kv) { return kv.second == 0; });
  return constants_.emplace(target, std::move(values)).first->second;
}

Integer HallConstants::euler_constant(const IsoClass& sub, const IsoClass& quot, const IsoClass& target) {
  const auto& c = constants(target);
  auto it = c.find({sub, quot});
  return it == c.end() ? Integer(0) : it->second;
}

}  // namespace hallforge
