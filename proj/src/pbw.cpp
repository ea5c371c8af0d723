#include "hallforge/pbw.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "hallforge/errors.hpp"

namespace hallforge {

int PBWMonomial::gamma() const {
  int g = 0;
  for (auto& f : factors) g += f.second;
  return g;
}

std::string PBWMonomial::name(const Backend& b) const {
  if (factors.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    s += (i ? " " : "") + family_label(factors[i].first, b);
    if (factors[i].second != 1) s += "^" + std::to_string(factors[i].second);
  }
  return s;
}

CFElement phi(Algebra& alg, const PBWMonomial& m) {
  CFElement r = CFElement::unit();
  for (auto& [fam, n] : m.factors) {
    CFElement u = CFElement::indicator(ConstructibleSet::of_family(fam));
    for (int i = 0; i < n; ++i) r = alg.convolve(r, u);
  }
  return r;
}

namespace {

bool pairwise_disjoint(const std::vector<IndecFamily>& fams) {
  for (std::size_t i = 0; i < fams.size(); ++i)
    for (std::size_t j = i + 1; j < fams.size(); ++j)
      if (!fams[i].disjoint(fams[j])) return false;
  return true;
}

PBWMonomial monomial_of(const std::vector<IndecFamily>& fams, const std::vector<int>& n) {
  PBWMonomial m;
  for (std::size_t i = 0; i < fams.size(); ++i)
    if (n[i]) m.factors.emplace_back(fams[i], n[i]);
  return m;
}

}  // namespace

std::pair<Rational, ConstructibleSet> leading_term(const PBWMonomial& m) {
  std::vector<IndecFamily> fams;
  Integer c = 1;
  for (auto& [f, n] : m.factors) {
    fams.push_back(f);
    c *= factorial(static_cast<unsigned>(n));
  }
  if (!pairwise_disjoint(fams)) throw PreconditionError("PBW monomial families are not pairwise disjoint");
  return {Rational(c), ConstructibleSet::normalize({Stratum(m.factors)})};
}

namespace {

std::vector<std::vector<int>> exponent_vectors(std::size_t k, int m) {
  std::vector<std::vector<int>> out;
  for (int g = 0; g <= m; ++g) {
    std::vector<int> cur(k, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i == k) {
        if (left == 0) out.push_back(cur);
        return;
      }
      for (int c = left; c >= 0; --c) {
        cur[i] = c;
        rec(i + 1, left - c);
      }
      cur[i] = 0;
    };
    rec(0, g);
  }
  return out;
}

std::size_t rational_rank(std::vector<std::vector<Rational>> cols) {
  // Column echelon elimination; each column is a vector over the rows.
  std::size_t rank = 0;
  if (cols.empty()) return 0;
  std::size_t nrows = cols[0].size();
  for (std::size_t r = 0; r < nrows && rank < cols.size(); ++r) {
    std::size_t piv = rank;
    while (piv < cols.size() && cols[piv][r] == 0) ++piv;
    if (piv == cols.size()) continue;
    std::swap(cols[piv], cols[rank]);
    for (std::size_t c = rank + 1; c < cols.size(); ++c) {
      if (cols[c][r] == 0) continue;
      Rational factor = cols[c][r] / cols[rank][r];
      for (std::size_t i = r; i < nrows; ++i) cols[c][i] -= factor * cols[rank][i];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::vector<PBWMonomial> pbw_monomials(const std::vector<IndecFamily>& families, int m) {
  auto fams = families;
  std::sort(fams.begin(), fams.end());
  std::vector<PBWMonomial> out;
  for (auto& n : exponent_vectors(fams.size(), m)) out.push_back(monomial_of(fams, n));
  return out;
}

namespace {

// Images of monomials over a growing list of families, memoized by exponents.
class ImageTable {
 public:
  ImageTable(Algebra& alg, std::vector<IndecFamily> fams) : alg_(alg), fams_(std::move(fams)) {}

  const std::vector<IndecFamily>& families() const { return fams_; }

  std::size_t add_family(const IndecFamily& f) {
    fams_.push_back(f);
    return fams_.size() - 1;
  }

  // Family containing the label, if any.
  std::optional<std::size_t> family_of(const IndecLabel& l) const {
    for (std::size_t i = 0; i < fams_.size(); ++i)
      if (fams_[i].contains(l)) return i;
    return std::nullopt;
  }

  std::vector<int> padded(std::vector<int> n) const {
    n.resize(fams_.size(), 0);
    return n;
  }

  // Product in canonical family order.
  const CFElement& image(const std::vector<int>& n0) {
    auto n = padded(n0);
    while (!n.empty() && n.back() == 0) n.pop_back();
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    std::vector<std::size_t> order(n.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fams_[a] < fams_[b]; });
    std::size_t last = n.size();
    for (std::size_t idx : order)
      if (idx < n.size() && n[idx]) last = idx;
    CFElement r;
    if (last == n.size()) {
      r = CFElement::unit();
    } else {
      auto prefix = n;
      --prefix[last];
      r = alg_.convolve(image(prefix), CFElement::indicator(ConstructibleSet::of_family(fams_[last])));
    }
    return memo_.emplace(n, std::move(r)).first->second;
  }

  PBWMonomial monomial(const std::vector<int>& n0) const {
    auto n = padded(n0);
    std::vector<std::pair<IndecFamily, int>> f;
    for (std::size_t i = 0; i < n.size(); ++i)
      if (n[i]) f.emplace_back(fams_[i], n[i]);
    std::sort(f.begin(), f.end());
    return PBWMonomial{f};
  }

 private:
  Algebra& alg_;
  std::vector<IndecFamily> fams_;
  std::map<std::vector<int>, CFElement> memo_;
};

CFElement ks_indicator(const PBWMonomial& m) {
  return CFElement::indicator(ConstructibleSet::normalize({Stratum(m.factors)}));
}

Rational diagonal_of(const PBWMonomial& m) {
  Integer c = 1;
  for (auto& f : m.factors) c *= factorial(static_cast<unsigned>(f.second));
  return Rational(c);
}

}  // namespace

TruncationReport check_iso_on_truncation(Algebra& alg, std::vector<IndecFamily> families, int m) {
  const Backend& b = alg.backend();
  if (families.empty()) throw PreconditionError("no families given");
  std::sort(families.begin(), families.end());
  for (auto& f : families)
    if (f.empty()) throw PreconditionError("empty family");
  if (!pairwise_disjoint(families)) throw PreconditionError("families are not pairwise disjoint");

  TruncationReport rep;
  rep.gamma_bound = m;
  for (auto& f : families) rep.families.push_back(family_label(f, b));

  ImageTable table(alg, families);
  auto exps = exponent_vectors(families.size(), m);
  std::vector<CFElement> images;
  Frame frame;
  for (auto& n : exps) {
    PBWMonomial mono = table.monomial(n);
    rep.columns.push_back(mono.name(b));
    const CFElement& img = table.image(n);
    images.push_back(img);
    frame = frame.unite(img.frame());
    Rational c = diagonal_of(mono);
    auto lead = ks_indicator(mono);
    CFElement diff = img - lead * c;
    if (mono.gamma() > 0 && diff.gamma() >= mono.gamma()) {
      rep.triangular = false;
      if (!rep.counterexample) {
        auto top = diff.gamma_at_least(diff.gamma());
        rep.counterexample = mono.name(b) + ": " + top.to_text(b);
      }
    }
    // Diagonal entry: value of the image on the leading stratum.
    Rational d = 0;
    auto shapes = lead.shapes();
    if (!shapes.empty()) d = img.evaluate(shapes.begin()->first);
    if (mono.gamma() == 0) d = img.evaluate(IsoClass{});
    rep.diagonal.push_back(d);
    if (d != c) rep.diagonal_ok = false;
  }

  // Sparse matrix over the union of supports.
  std::map<IsoClass, std::size_t> row_index;
  std::vector<ShapeFunction> cols;
  for (auto& img : images) {
    cols.push_back(img.shapes_over(frame));
    for (auto& [s, v] : cols.back()) row_index.emplace(s, 0);
  }
  std::size_t r = 0;
  for (auto& [s, idx] : row_index) {
    idx = r++;
    rep.rows.push_back(b.class_name(s));
  }
  std::vector<std::vector<Rational>> dense(cols.size(), std::vector<Rational>(row_index.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (auto& [s, v] : cols[j]) {
      rep.entries.push_back({row_index[s], j, v});
      dense[j][row_index[s]] = v;
    }
  rep.rank = rational_rank(std::move(dense));
  rep.injective = rep.rank == cols.size();

  // Back-substitution: write every 1_{n1 F1 + ... + nk Fk} through images.
  rep.surjective = true;
  std::vector<std::string> aux_names;
  for (auto& n : exps) {
    if (!rep.surjective) break;
    PBWMonomial mono = table.monomial(n);
    CFElement target = ks_indicator(mono);
    CFElement h = target;
    CFElement rebuilt;
    while (!h.is_zero()) {
      int g = h.gamma();
      CFElement top = h.gamma_at_least(g);
      std::map<std::vector<int>, Rational> coeffs;
      bool ok = true;
      for (auto& [s, v] : top.shapes()) {
        std::vector<int> e(table.families().size(), 0);
        for (auto& [l, k] : s.parts()) {
          auto fi = table.family_of(l);
          if (!fi) {
            IndecFamily extra;
            if (is_generic(l)) {
              std::set<std::string> ex;
              auto it = h.frame().named.find(l.dim[0]);
              if (it != h.frame().named.end()) ex = it->second;
              for (auto& f : table.families()) {
                auto fr = f.frame();
                if (auto jt = fr.named.find(l.dim[0]); jt != fr.named.end()) ex.insert(jt->second.begin(), jt->second.end());
              }
              extra = IndecFamily::torsion(l.dim[0], P1Set::cofinite(ex));
            } else {
              extra = IndecFamily::finite({l});
            }
            fi = table.add_family(extra);
            aux_names.push_back(family_label(extra, b));
            e.push_back(0);
          }
          e[*fi] += k;
        }
        while (!e.empty() && e.back() == 0) e.pop_back();
        coeffs.emplace(e, v);
      }
      CFElement candidate, step;
      for (auto& [e, c] : coeffs) {
        PBWMonomial me = table.monomial(e);
        candidate += ks_indicator(me) * c;
        step += table.image(e) * (c / diagonal_of(me));
      }
      if (candidate != top) ok = false;
      CFElement next = h - step;
      if (!next.is_zero() && next.gamma() >= g) ok = false;
      if (!ok) {
        rep.surjective = false;
        rep.counterexample = rep.counterexample.value_or(mono.name(b) + ": " + top.to_text(b));
        break;
      }
      rebuilt += step;
      h = next;
    }
    if (rep.surjective && rebuilt != target) {
      rep.surjective = false;
      rep.counterexample = rep.counterexample.value_or(mono.name(b) + ": back-substitution mismatch");
    }
  }
  std::sort(aux_names.begin(), aux_names.end());
  aux_names.erase(std::unique(aux_names.begin(), aux_names.end()), aux_names.end());
  rep.auxiliary = aux_names;
  return rep;
}

nlohmann::ordered_json TruncationReport::to_json() const {
  nlohmann::ordered_json j;
  j["families"] = families;
  j["gamma_bound"] = gamma_bound;
  j["columns"] = columns;
  j["rows"] = rows;
  auto m = nlohmann::ordered_json::array();
  for (auto& e : entries) m.push_back({e.row, e.col, to_string(e.value)});
  j["matrix"] = m;
  auto d = nlohmann::ordered_json::array();
  for (auto& v : diagonal) d.push_back(to_string(v));
  j["diagonal"] = d;
  j["triangular"] = triangular;
  j["diagonal_ok"] = diagonal_ok;
  j["rank"] = rank;
  j["injective"] = injective;
  j["surjective"] = surjective;
  j["auxiliary"] = auxiliary;
  j["bijective"] = bijective();
  j["counterexample"] = counterexample ? nlohmann::ordered_json(*counterexample) : nlohmann::ordered_json();
  return j;
}

}  // namespace hallforge
