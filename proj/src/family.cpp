#include "hallforge/family.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "hallforge/errors.hpp"

namespace hallforge {

// ---- P1Set ---------------------------------------------------------------

P1Set P1Set::finite(std::set<std::string> points) {
  P1Set s;
  s.points_ = std::move(points);
  return s;
}

P1Set P1Set::cofinite(std::set<std::string> excluded) {
  P1Set s;
  s.cofinite_ = true;
  s.points_ = std::move(excluded);
  return s;
}

P1Set P1Set::complement() const {
  P1Set s = *this;
  s.cofinite_ = !cofinite_;
  return s;
}

namespace {

std::set<std::string> set_and(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::set<std::string> r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
  return r;
}
std::set<std::string> set_or(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::set<std::string> r = a;
  r.insert(b.begin(), b.end());
  return r;
}
std::set<std::string> set_minus(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::set<std::string> r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
  return r;
}

}  // namespace

P1Set P1Set::intersect(const P1Set& o) const {
  if (!cofinite_ && !o.cofinite_) return finite(set_and(points_, o.points_));
  if (!cofinite_) return finite(set_minus(points_, o.points_));
  if (!o.cofinite_) return finite(set_minus(o.points_, points_));
  return cofinite(set_or(points_, o.points_));
}

P1Set P1Set::unite(const P1Set& o) const {
  return complement().intersect(o.complement()).complement();
}

P1Set P1Set::minus(const P1Set& o) const { return intersect(o.complement()); }

long long P1Set::chi_na() const {
  auto n = static_cast<long long>(points_.size());
  return cofinite_ ? 2 - n : n;
}

long long chi_na(const P1Set& s) { return s.chi_na(); }

// ---- IndecFamily ---------------------------------------------------------

IndecFamily IndecFamily::finite(std::vector<IndecLabel> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  for (auto& l : labels)
    if (is_generic(l)) throw PreconditionError("generic point label in a finite family");
  IndecFamily f;
  f.labels_ = std::move(labels);
  return f;
}

IndecFamily IndecFamily::torsion(int degree, const P1Set& base) {
  if (degree < 1) throw PreconditionError("torsion degree must be positive");
  if (!base.is_cofinite()) {
    std::vector<IndecLabel> ls;
    for (auto& p : base.points()) ls.push_back(torsion_label(degree, p));
    return finite(std::move(ls));
  }
  IndecFamily f;
  f.degree_ = degree;
  f.excluded_ = base.points();
  return f;
}

bool IndecFamily::contains(const IndecLabel& l) const {
  if (is_finite()) return std::binary_search(labels_.begin(), labels_.end(), l);
  return l.kind == LabelKind::Torsion && l.dim.size() == 1 && l.dim[0] == degree_ &&
         !excluded_.count(l.point);
}

IndecFamily IndecFamily::intersect(const IndecFamily& o) const {
  if (is_finite() || o.is_finite()) {
    const IndecFamily& fin = is_finite() ? *this : o;
    const IndecFamily& other = is_finite() ? o : *this;
    std::vector<IndecLabel> ls;
    for (auto& l : fin.labels_)
      if (other.contains(l)) ls.push_back(l);
    return finite(std::move(ls));
  }
  if (degree_ != o.degree_) return {};
  return torsion(degree_, P1Set::cofinite(set_or(excluded_, o.excluded_)));
}

IndecFamily IndecFamily::minus(const IndecFamily& o) const {
  if (is_finite()) {
    std::vector<IndecLabel> ls;
    for (auto& l : labels_)
      if (!o.contains(l)) ls.push_back(l);
    return finite(std::move(ls));
  }
  if (o.is_finite()) {
    auto ex = excluded_;
    for (auto& l : o.labels_)
      if (contains(l)) ex.insert(l.point);
    return torsion(degree_, P1Set::cofinite(std::move(ex)));
  }
  if (degree_ != o.degree_) return *this;
  return torsion(degree_, P1Set::finite(set_minus(o.excluded_, excluded_)));
}

std::vector<IndecLabel> IndecFamily::atoms(const Frame& frame) const {
  if (is_finite()) return labels_;
  std::vector<IndecLabel> out;
  auto it = frame.named.find(degree_);
  for (auto& x : excluded_)
    if (!frame.names(degree_, x))
      throw InvariantViolation("frame does not name an excluded point of a family");
  if (it != frame.named.end())
    for (auto& p : it->second)
      if (!excluded_.count(p)) out.push_back(torsion_label(degree_, p));
  out.push_back(generic_torsion(degree_));
  std::sort(out.begin(), out.end());
  return out;
}

Frame IndecFamily::frame() const {
  Frame fr;
  if (!is_finite()) {
    fr.named[degree_] = excluded_;
  } else {
    for (auto& l : labels_)
      if (l.kind == LabelKind::Torsion) fr.named[l.dim[0]].insert(l.point);
  }
  fr.tidy();
  return fr;
}

std::string IndecFamily::descriptor(const Backend& b) const {
  if (is_finite()) {
    std::string s = "{";
    for (std::size_t i = 0; i < labels_.size(); ++i) s += (i ? "," : "") + b.label_name(labels_[i]);
    return s + "}";
  }
  std::string s = "T" + std::to_string(degree_) + "@*";
  if (!excluded_.empty()) {
    s += "\\{";
    bool first = true;
    for (auto& x : excluded_) {
      s += (first ? "" : ",") + x;
      first = false;
    }
    s += "}";
  }
  return s;
}

std::strong_ordering IndecFamily::operator<=>(const IndecFamily& o) const {
  // Finite families first, then cofinite ones by degree.
  if (auto c = is_finite() <=> o.is_finite(); c != 0) return c == std::strong_ordering::greater
                                                              ? std::strong_ordering::less
                                                              : std::strong_ordering::greater;
  if (auto c = labels_ <=> o.labels_; c != 0) return c;
  if (auto c = degree_ <=> o.degree_; c != 0) return c;
  return excluded_ <=> o.excluded_;
}

IndecFamily family_from_spec(const Backend& b, const FamilySpec& spec) {
  if (spec.is_torsion()) {
    std::set<std::string> pts(spec.points.begin(), spec.points.end());
    return IndecFamily::torsion(spec.degree, spec.cofinite ? P1Set::cofinite(pts) : P1Set::finite(pts));
  }
  std::vector<IndecLabel> ls;
  for (auto& n : spec.labels) ls.push_back(b.parse_label(n));
  return IndecFamily::finite(std::move(ls));
}

// ---- Stratum -------------------------------------------------------------

Stratum::Stratum(std::vector<std::pair<IndecFamily, int>> parts) {
  std::sort(parts.begin(), parts.end());
  for (auto& [f, n] : parts) {
    if (n < 0) throw PreconditionError("negative multiplicity in a stratum");
    if (n == 0) continue;
    if (f.empty()) {
      parts_.clear();
      empty_ = true;
      return;
    }
    if (!parts_.empty() && parts_.back().first == f)
      parts_.back().second += n;
    else
      parts_.emplace_back(f, n);
  }
}

Stratum Stratum::of_class(const IsoClass& c) {
  std::vector<std::pair<IndecFamily, int>> parts;
  for (auto& [l, m] : c.parts()) parts.emplace_back(IndecFamily::finite({l}), m);
  return Stratum(std::move(parts));
}

int Stratum::gamma() const {
  int g = 0;
  for (auto& p : parts_) g += p.second;
  return g;
}

bool Stratum::pairwise_disjoint() const {
  for (std::size_t i = 0; i < parts_.size(); ++i)
    for (std::size_t j = i + 1; j < parts_.size(); ++j)
      if (!parts_[i].first.disjoint(parts_[j].first)) return false;
  return true;
}

bool Stratum::contains(const IsoClass& x) const {
  if (empty_) return false;
  if (!pairwise_disjoint()) return ConstructibleSet::normalize({*this}).contains(x);
  std::vector<int> used(parts_.size(), 0);
  for (auto& [l, m] : x.parts()) {
    bool found = false;
    for (std::size_t i = 0; i < parts_.size() && !found; ++i)
      if (parts_[i].first.contains(l)) {
        used[i] += m;
        found = true;
      }
    if (!found) return false;
  }
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (used[i] != parts_[i].second) return false;
  return true;
}

Stratum Stratum::direct_sum(const Stratum& o) const {
  if (empty_ || o.empty_) return empty_stratum();
  auto parts = parts_;
  parts.insert(parts.end(), o.parts_.begin(), o.parts_.end());
  return Stratum(std::move(parts));
}

Stratum Stratum::empty_stratum() {
  Stratum s;
  s.empty_ = true;
  return s;
}

std::strong_ordering Stratum::operator<=>(const Stratum& o) const {
  if (auto c = gamma() <=> o.gamma(); c != 0) return c;
  if (auto c = empty_ <=> o.empty_; c != 0) return c;
  return parts_ <=> o.parts_;
}

// ---- ConstructibleSet ----------------------------------------------------

namespace {

// All multisets of size n over `atoms`, as (label, count) lists.
std::vector<std::vector<std::pair<IndecLabel, int>>> multisets(const std::vector<IndecLabel>& atoms,
                                                               int n) {
  std::vector<std::vector<std::pair<IndecLabel, int>>> out;
  std::vector<std::pair<IndecLabel, int>> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    if (i == atoms.size()) return;
    for (int c = left; c >= 0; --c) {
      if (c) cur.emplace_back(atoms[i], c);
      rec(i + 1, left - c);
      if (c) cur.pop_back();
    }
  };
  rec(0, n);
  return out;
}

void expand_stratum(const Stratum& s, const Frame& frame, ShapeFunction& out) {
  if (s.is_empty()) return;
  std::vector<std::vector<std::vector<std::pair<IndecLabel, int>>>> options;
  for (auto& [fam, n] : s.parts()) {
    options.push_back(multisets(fam.atoms(frame), n));
    if (options.back().empty()) return;
  }
  std::vector<std::size_t> idx(options.size(), 0);
  while (true) {
    std::vector<std::pair<IndecLabel, int>> parts;
    for (std::size_t i = 0; i < options.size(); ++i)
      parts.insert(parts.end(), options[i][idx[i]].begin(), options[i][idx[i]].end());
    out[IsoClass::from_parts(parts)] = 1;
    std::size_t i = 0;
    while (i < idx.size() && idx[i] + 1 == options[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
    ++idx[i];
  }
}

int kind_class(LabelKind k) {
  return (k == LabelKind::Torsion || k == LabelKind::LineBundle) ? 2 : static_cast<int>(k);
}

void check_single_backend(const ShapeFunction& f) {
  bool seen = false;
  int kind = 0;
  std::size_t len = 0;
  for (auto& [s, v] : f)
    for (auto& [l, m] : s.parts()) {
      if (!seen) {
        seen = true;
        kind = kind_class(l.kind);
        len = l.dim.size();
      } else if (kind_class(l.kind) != kind || l.dim.size() != len) {
        throw BackendMismatch("labels of different backends in one constructible set");
      }
    }
}

}  // namespace

ConstructibleSet ConstructibleSet::of_class(const IsoClass& c) {
  return normalize({Stratum::of_class(c)});
}

ConstructibleSet ConstructibleSet::of_family(const IndecFamily& f) {
  return normalize({Stratum({{f, 1}})});
}

ConstructibleSet ConstructibleSet::normalize(const std::vector<Stratum>& raw) {
  Frame frame;
  for (auto& s : raw)
    for (auto& [fam, n] : s.parts()) frame = frame.unite(fam.frame());
  ShapeFunction f;
  for (auto& s : raw) expand_stratum(s, frame, f);
  return from_shapes(f, frame);
}

ConstructibleSet ConstructibleSet::from_shapes(const ShapeFunction& indicator, const Frame& frame0) {
  ShapeFunction f;
  for (auto& [s, v] : indicator)
    if (v != 0) f[s] = 1;
  check_single_backend(f);
  Frame frame = frame0;
  coarsen(frame, f);
  auto blocks = coarsest_blocks(f);

  std::map<IndecLabel, std::size_t> block_of;
  std::vector<IndecFamily> fams;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (auto& l : blocks[b]) block_of[l] = b;
    const IndecLabel& head = blocks[b].front();
    if (is_generic(head)) {
      int d = head.dim[0];
      auto it = frame.named.find(d);
      fams.push_back(IndecFamily::torsion(
          d, P1Set::cofinite(it == frame.named.end() ? std::set<std::string>{} : it->second)));
    } else {
      fams.push_back(IndecFamily::finite(blocks[b]));
    }
  }

  std::set<std::vector<int>> vectors;
  for (auto& [s, v] : f) {
    std::vector<int> c(blocks.size(), 0);
    for (auto& [l, m] : s.parts()) c[block_of.at(l)] += m;
    vectors.insert(std::move(c));
  }

  ConstructibleSet out;
  std::vector<IndecLabel> merged;  // finite families of gamma-1 strata
  for (auto& c : vectors) {
    std::vector<std::pair<IndecFamily, int>> parts;
    for (std::size_t b = 0; b < c.size(); ++b)
      if (c[b]) parts.emplace_back(fams[b], c[b]);
    if (parts.size() == 1 && parts[0].second == 1 && parts[0].first.is_finite()) {
      auto& ls = parts[0].first.labels();
      merged.insert(merged.end(), ls.begin(), ls.end());
      continue;
    }
    out.strata_.push_back(Stratum(std::move(parts)));
  }
  if (!merged.empty()) out.strata_.push_back(Stratum({{IndecFamily::finite(merged), 1}}));
  std::sort(out.strata_.begin(), out.strata_.end());
  return out;
}

int ConstructibleSet::gamma() const {
  int g = 0;
  for (auto& s : strata_) g = std::max(g, s.gamma());
  return g;
}

bool ConstructibleSet::contains(const IsoClass& x) const {
  return std::any_of(strata_.begin(), strata_.end(), [&](const Stratum& s) { return s.contains(x); });
}

ConstructibleSet ConstructibleSet::direct_sum(const ConstructibleSet& o) const {
  std::vector<Stratum> raw;
  for (auto& a : strata_)
    for (auto& b : o.strata_) raw.push_back(a.direct_sum(b));
  return normalize(raw);
}

ConstructibleSet ConstructibleSet::unite(const ConstructibleSet& o) const {
  auto raw = strata_;
  raw.insert(raw.end(), o.strata_.begin(), o.strata_.end());
  return normalize(raw);
}

Frame ConstructibleSet::frame() const {
  Frame fr;
  for (auto& s : strata_)
    for (auto& [fam, n] : s.parts()) fr = fr.unite(fam.frame());
  return fr;
}

ShapeFunction ConstructibleSet::shapes(const Frame& frame) const {
  ShapeFunction f;
  for (auto& s : strata_) expand_stratum(s, frame, f);
  return f;
}

std::strong_ordering ConstructibleSet::operator<=>(const ConstructibleSet& o) const {
  if (auto c = gamma() <=> o.gamma(); c != 0) return c;
  return strata_ <=> o.strata_;
}

std::string family_label(const IndecFamily& f, const Backend& b) {
  for (auto& spec : b.families()) {
    try {
      if (family_from_spec(b, spec) == f) return spec.name;
    } catch (const Error&) {
    }
  }
  return f.descriptor(b);
}

std::string stratum_string(const Stratum& s, const Backend& b) {
  if (s.is_empty()) return "<empty>";
  bool singletons = std::all_of(s.parts().begin(), s.parts().end(), [](const auto& p) {
    return p.first.is_finite() && p.first.labels().size() == 1;
  });
  if (singletons) {
    std::vector<std::pair<IndecLabel, int>> parts;
    for (auto& [fam, n] : s.parts()) parts.emplace_back(fam.labels()[0], n);
    return b.class_name(IsoClass::from_parts(parts));
  }
  std::string out = "<";
  bool first = true;
  for (auto& [fam, n] : s.parts()) {
    out += first ? "" : ", ";
    if (n != 1) out += std::to_string(n) + " ";
    out += family_label(fam, b);
    first = false;
  }
  return out + ">";
}

std::string ConstructibleSet::to_string(const Backend& b) const {
  if (strata_.empty()) return "<empty>";
  std::string out;
  for (std::size_t i = 0; i < strata_.size(); ++i)
    out += (i ? " | " : "") + stratum_string(strata_[i], b);
  return out;
}

ConstructibleSet direct_sum(const ConstructibleSet& a, const ConstructibleSet& b) {
  return a.direct_sum(b);
}

int gamma(const ConstructibleSet& s) { return s.gamma(); }

}  // namespace hallforge
