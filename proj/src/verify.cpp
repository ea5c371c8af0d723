#include "hallforge/verify.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>
#include <random>

#include "hallforge/coalgebra.hpp"
#include "hallforge/errors.hpp"
#include "hallforge/pbw.hpp"
#include "hallforge/quiver.hpp"

namespace hallforge {

void SuiteReport::check(bool ok, const std::string& what) {
  ++checks;
  if (ok) return;
  ++violations;
  if (failures.size() < 10) failures.push_back(what);
}

nlohmann::ordered_json SuiteReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["passed"] = passed();
  j["checks"] = checks;
  j["violations"] = violations;
  j["details"] = details;
  j["failures"] = failures;
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"assoc", "lie-closure", "riedtmann", "pbw",
                                                 "green", "bialgebra", "euler-axioms"};
  return names;
}

namespace {

bool is_p1(const Algebra& alg) { return alg.backend().kind() == BackendKind::P1Torsion; }

// Concrete classes of total size <= n; for P1, torsion classes at two points.
std::vector<IsoClass> small_classes(const Algebra& alg, int n) {
  if (!is_p1(alg)) return classes_up_to(alg.backend(), n);
  std::vector<IsoClass> out;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b)
      for (auto& la : partitions(a))
        for (auto& lb : partitions(b)) out.push_back(torsion_class(la, "x") + torsion_class(lb, "y"));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IndecLabel> small_indecomposables(const Algebra& alg, int n) {
  if (!is_p1(alg)) return indecomposables(alg.backend(), n);
  std::vector<IndecLabel> out;
  for (int d = 1; d <= n; ++d)
    for (auto p : {"x", "y"}) out.push_back(torsion_label(d, p));
  std::sort(out.begin(), out.end());
  return out;
}

// Declared indecomposable families of a P1 backend with degree <= n.
std::vector<IndecFamily> declared_families(const Algebra& alg, int n) {
  std::vector<IndecFamily> out;
  for (auto& spec : alg.backend().families()) {
    IndecFamily f = family_from_spec(alg.backend(), spec);
    int size = f.is_finite() ? 0 : f.degree();
    for (auto& l : f.labels()) size = std::max(size, l.size());
    if (size <= n) out.push_back(f);
  }
  return out;
}

int max_size(const CFElement& f) {
  int m = 0;
  for (auto& [s, v] : f.shapes()) m = std::max(m, s.size());
  return m;
}

std::string name(const Algebra& alg, const IsoClass& c) { return alg.backend().class_name(c); }

Integer binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

bool sub_multiset(const IsoClass& a, const IsoClass& b) {
  for (auto& [l, m] : a.parts())
    if (b.multiplicity(l) < m) return false;
  return true;
}

IsoClass multiset_minus(const IsoClass& b, const IsoClass& a) {
  std::vector<std::pair<IndecLabel, int>> parts;
  for (auto& [l, m] : b.parts()) {
    int k = m - a.multiplicity(l);
    if (k > 0) parts.emplace_back(l, k);
  }
  return IsoClass::from_parts(parts);
}

}  // namespace

SuiteReport verify_assoc(Algebra& alg, const SuiteOptions& opt) {
  int dim = opt.dim ? opt.dim : 4;
  SuiteReport rep;
  rep.suite = "assoc";
  std::vector<CFElement> basis;
  for (auto& c : small_classes(alg, dim))
    if (!c.is_zero()) basis.push_back(CFElement::of_class(c));
  for (auto& f : declared_families(alg, dim)) basis.push_back(CFElement::indicator(ConstructibleSet::of_family(f)));
  const Backend& b = alg.backend();
  std::size_t triples = 0;
  for (auto& x : basis)
    for (auto& y : basis) {
      if (max_size(x) + max_size(y) > dim) continue;
      CFElement xy = alg.convolve(x, y);
      for (auto& z : basis) {
        if (max_size(x) + max_size(y) + max_size(z) > dim) continue;
        ++triples;
        rep.check(alg.convolve(xy, z) == alg.convolve(x, alg.convolve(y, z)),
                  "(" + x.to_text(b) + ", " + y.to_text(b) + ", " + z.to_text(b) + ")");
      }
    }
  for (auto& x : basis) {
    rep.check(alg.convolve(CFElement::unit(), x) == x && alg.convolve(x, CFElement::unit()) == x,
              "identity at " + x.to_text(b));
  }

  // Random small elements: integer and half-integer combinations.
  std::mt19937 rng(opt.seed);
  std::vector<CFElement> pieces = {CFElement::unit()};
  for (auto& x : basis)
    if (max_size(x) <= 2) pieces.push_back(x);
  auto random_element = [&] {
    CFElement f;
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < terms; ++i) {
      long num = static_cast<long>(rng() % 7) - 3;
      if (num == 0) num = 1;
      long den = 1 + static_cast<long>(rng() % 2);
      f += pieces[rng() % pieces.size()] * Rational(num, den);
    }
    return f;
  };
  int sampled = 0;
  while (sampled < opt.samples) {
    CFElement x = random_element(), y = random_element(), z = random_element();
    if (max_size(x) + max_size(y) + max_size(z) > dim + 1) continue;
    ++sampled;
    CFElement lhs = alg.convolve(alg.convolve(x, y), z), rhs = alg.convolve(x, alg.convolve(y, z));
    rep.check(lhs == rhs, "random (" + x.to_text(b) + ", " + y.to_text(b) + ", " + z.to_text(b) + "): " +
                              lhs.to_text(b) + " vs " + rhs.to_text(b));
  }
  rep.details["dim"] = dim;
  rep.details["basis_size"] = basis.size();
  rep.details["basis_triples"] = triples;
  rep.details["random_triples"] = sampled;
  return rep;
}

SuiteReport verify_lie_closure(Algebra& alg, const SuiteOptions& opt) {
  int dim = opt.dim ? opt.dim : 4;
  SuiteReport rep;
  rep.suite = "lie-closure";
  const Backend& b = alg.backend();
  std::vector<CFElement> gens;
  std::vector<IsoClass> gen_class;
  for (auto& l : small_indecomposables(alg, dim)) {
    gens.push_back(CFElement::of_class(IsoClass({l})));
    gen_class.push_back(IsoClass({l}));
  }
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const IsoClass &x = gen_class[i], &z = gen_class[j];
      if (x.size() + z.size() > dim) continue;
      ++pairs;
      CFElement br = alg.bracket(gens[i], gens[j]);
      rep.check(br.is_indec_supported(), "bracket of " + name(alg, x) + ", " + name(alg, z));
      CFElement prod = alg.convolve(gens[i], gens[j]);
      rep.check(prod.gamma() <= 2, "gamma bound for " + name(alg, x) + " * " + name(alg, z));
      if (i != j) {
        // Product of disjoint indecomposables: 1_{X+Z} plus indecomposable corrections.
        CFElement corr = prod - CFElement::of_class(x + z);
        rep.check(corr.is_indec_supported(), "correction form for " + name(alg, x) + " * " + name(alg, z));
      }
      // Support: every class in the support carries a nonzero constant.
      for (auto& [y, v] : prod.shapes()) {
        auto table = alg.structure_constants(y);
        rep.check(table.count({x, z}) > 0, "support of " + name(alg, x) + " * " + name(alg, z) + " at " + name(alg, y));
      }
    }
  std::size_t serre = 0;
  if (b.kind() == BackendKind::DynkinQuiver && dim >= 3) {
    for (std::size_t v = 0; v + 1 < b.vertices().size(); ++v) {
      DimVector di(b.vertex_count(), 0), dj(b.vertex_count(), 0);
      di[v] = 1;
      dj[v + 1] = 1;
      CFElement si = CFElement::of_class(IsoClass({root_label(di)}));
      CFElement sj = CFElement::of_class(IsoClass({root_label(dj)}));
      rep.check(alg.bracket(si, alg.bracket(si, sj)).is_zero(), "Serre relation at vertex pair " + std::to_string(v));
      rep.check(alg.bracket(sj, alg.bracket(sj, si)).is_zero(), "Serre relation at vertex pair " + std::to_string(v));
      serre += 2;
    }
  }
  rep.details["dim"] = dim;
  rep.details["generators"] = gens.size();
  rep.details["pairs"] = pairs;
  rep.details["serre_relations"] = serre;
  return rep;
}

SuiteReport verify_riedtmann(Algebra& alg, const SuiteOptions& opt) {
  int dim = opt.dim ? opt.dim : 5;
  SuiteReport rep;
  rep.suite = "riedtmann";
  auto classes = small_classes(alg, dim);
  std::size_t nonzero = 0, split = 0, blockwise = 0;
  for (auto& y : classes) {
    auto table = alg.structure_constants(y);
    for (auto& [key, e] : table) {
      auto& [x, z] = key;
      ++nonzero;
      bool equal_gamma = y.gamma() == x.gamma() + z.gamma();
      rep.check(y.gamma() <= x.gamma() + z.gamma() && equal_gamma == (y == x + z),
                "Riedtmann at (" + name(alg, x) + ", " + name(alg, z) + ", " + name(alg, y) + ")");
      // Blockwise: each nontrivial splitting Y = Y1 + Y2 lifts to splittings of X and Z.
      for (auto& [y1, y2] : y.splittings()) {
        if (y1.is_zero() || y2.is_zero()) continue;
        ++blockwise;
        auto t1 = alg.structure_constants(y1);
        auto t2 = alg.structure_constants(y2);
        bool found = false;
        for (auto& [k1, e1] : t1) {
          if (!sub_multiset(k1.first, x) || !sub_multiset(k1.second, z)) continue;
          if (t2.count({multiset_minus(x, k1.first), multiset_minus(z, k1.second)})) {
            found = true;
            break;
          }
        }
        rep.check(found, "blockwise at (" + name(alg, x) + ", " + name(alg, z) + ", " + name(alg, y1) + " + " +
                             name(alg, y2) + ")");
      }
    }
    // Split constants: e(X, Z, X + Z) = prod_i C(m_i, x_i) over the summands of Y.
    for (auto& [x, z] : y.splittings()) {
      ++split;
      Integer expect = 1;
      for (auto& [l, m] : y.parts()) expect *= binomial(m, x.multiplicity(l));
      auto it = table.find({x, z});
      Integer got = it == table.end() ? Integer(0) : it->second;
      rep.check(got == expect, "split constant at (" + name(alg, x) + ", " + name(alg, z) + ")");
    }
  }
  rep.details["dim"] = dim;
  rep.details["targets"] = classes.size();
  rep.details["nonzero_constants"] = nonzero;
  rep.details["split_checks"] = split;
  rep.details["blockwise_checks"] = blockwise;
  return rep;
}

SuiteReport verify_pbw(Algebra& alg, const SuiteOptions& opt) {
  int gamma = opt.gamma ? opt.gamma : 2;
  SuiteReport rep;
  rep.suite = "pbw";
  std::vector<IndecFamily> fams = opt.families;
  if (fams.empty()) {
    if (is_p1(alg)) {
      fams = declared_families(alg, opt.dim ? opt.dim : 2);
      if (fams.empty()) fams = {IndecFamily::torsion(1, P1Set::all())};
    } else {
      for (auto& l : indecomposables(alg.backend(), opt.dim ? opt.dim : 2)) fams.push_back(IndecFamily::finite({l}));
    }
  }
  auto tr = check_iso_on_truncation(alg, fams, gamma);
  rep.check(tr.triangular, "gamma-triangularity");
  rep.check(tr.diagonal_ok, "diagonal entries prod n_i!");
  rep.check(tr.injective, "injectivity (rank)");
  rep.check(tr.surjective, "surjectivity (back-substitution)");
  // Functoriality: phi of a concatenation is the product of the phis.
  auto monos = pbw_monomials(fams, gamma);
  for (auto& m : monos) {
    if (m.factors.size() < 2) continue;
    PBWMonomial head{{m.factors.front()}}, tail{{m.factors.begin() + 1, m.factors.end()}};
    rep.check(phi(alg, m) == alg.convolve(phi(alg, head), phi(alg, tail)), "functoriality at " + m.name(alg.backend()));
  }
  rep.details["truncation"] = tr.to_json();
  return rep;
}

SuiteReport verify_green(Algebra& alg, const SuiteOptions& opt) {
  int dim = opt.dim ? opt.dim : 4;
  SuiteReport rep;
  rep.suite = "green";
  auto classes = small_classes(alg, dim);
  const Backend& b = alg.backend();
  std::size_t nonzero = 0;
  for (auto& alpha : classes)
    for (auto& beta : classes) {
      if (alpha.size() + beta.size() > dim) continue;
      IsoClass y = alpha + beta;
      for (auto& x : classes) {
        if (x.size() > y.size()) continue;
        for (auto& z : classes) {
          if (x.size() + z.size() != y.size()) continue;
          if (!is_p1(alg) && add(b.dim(x), b.dim(z)) != b.dim(y)) continue;
          auto r = green_check(alg, ConstructibleSet::of_class(x), ConstructibleSet::of_class(z), alpha, beta);
          if (r.lhs != 0) ++nonzero;
          rep.check(r.equal, "Green at o1=" + name(alg, x) + " o2=" + name(alg, z) + " a'=" + name(alg, alpha) +
                                 " b'=" + name(alg, beta) + ": " + to_string(r.lhs) + " vs " + to_string(r.rhs));
        }
      }
    }
  for (auto& f1 : declared_families(alg, dim))
    for (auto& f2 : declared_families(alg, dim))
      for (auto& alpha : classes)
        for (auto& beta : classes) {
          if (alpha.size() + beta.size() > dim) continue;
          auto r = green_check(alg, ConstructibleSet::of_family(f1), ConstructibleSet::of_family(f2), alpha, beta);
          rep.check(r.equal, "Green for families at a'=" + name(alg, alpha) + " b'=" + name(alg, beta));
        }
  rep.details["dim"] = dim;
  rep.details["nonzero_cases"] = nonzero;
  rep.details["convention"] = kGreenConvention;
  return rep;
}

bool coassociative(const CFElement& f) {
  using Triple = std::tuple<IsoClass, IsoClass, IsoClass>;
  TensorElement d = comultiply(f);
  std::map<Triple, Rational> left, right;
  for (auto& [key, c] : d.values()) {
    for (auto& [a, b] : key.first.splittings()) left[{a, b, key.second}] += c;   // (Delta x id)
    for (auto& [b, e] : key.second.splittings()) right[{key.first, b, e}] += c;  // (id x Delta)
  }
  return left == right;
}

SuiteReport verify_bialgebra(Algebra& alg, const SuiteOptions& opt) {
  int dim = opt.dim ? opt.dim : 4;
  int gamma = opt.gamma ? opt.gamma : 2;
  SuiteReport rep;
  rep.suite = "bialgebra";
  const Backend& b = alg.backend();
  std::vector<CFElement> basis;
  std::vector<CFElement> coalgebra_basis;  // gamma <= max(gamma, 3)
  for (auto& c : small_classes(alg, dim)) {
    if (c.gamma() <= gamma) basis.push_back(CFElement::of_class(c));
    if (c.gamma() <= std::max(gamma, 3)) coalgebra_basis.push_back(CFElement::of_class(c));
  }
  for (auto& f : declared_families(alg, dim)) {
    basis.push_back(CFElement::indicator(ConstructibleSet::of_family(f)));
    coalgebra_basis.push_back(basis.back());
  }
  std::size_t pairs = 0;
  for (auto& f : basis)
    for (auto& g : basis) {
      if (max_size(f) + max_size(g) > dim) continue;
      ++pairs;
      auto r = bialgebra_check(alg, f, g);
      rep.check(r.equal, "Delta(f*g) at f=" + f.to_text(b) + " g=" + g.to_text(b));
    }
  for (auto& f : coalgebra_basis) {
    auto d = comultiply(f);
    rep.check(counit_left(d) == f && counit_right(d) == f, "counit laws at " + f.to_text(b));
    rep.check(d.swapped() == d, "cocommutativity at " + f.to_text(b));
    rep.check(coassociative(f), "coassociativity at " + f.to_text(b));
    auto fv = f.shapes_over(d.frame());
    bool closed_form = true;
    for (auto& [key, c] : d.values()) {
      auto it = fv.find(key.first + key.second);
      closed_form = closed_form && it != fv.end() && it->second == c;
    }
    rep.check(closed_form, "Delta(f)(A, B) = f(A + B) at " + f.to_text(b));
  }
  rep.details["dim"] = dim;
  rep.details["gamma"] = gamma;
  rep.details["pairs"] = pairs;
  rep.details["coalgebra_elements"] = coalgebra_basis.size();
  return rep;
}

SuiteReport verify_euler_axioms(Algebra& alg, const SuiteOptions& opt) {
  SuiteReport rep;
  rep.suite = "euler-axioms";
  rep.check(chi_na(P1Set::all()) == 2, "chi(P^1) = 2");
  std::mt19937 rng(opt.seed);
  const std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f", "g"};
  auto random_set = [&] {
    std::set<std::string> pts;
    for (auto& p : pool)
      if (rng() % 3 == 0) pts.insert(p);
    return rng() % 2 ? P1Set::finite(pts) : P1Set::cofinite(pts);
  };
  // Point counts over F_q: a cofinite set misses |E| of the q + 1 points.
  auto count = [](const P1Set& s, long q) {
    auto n = static_cast<long>(s.points().size());
    return s.is_cofinite() ? q + 1 - n : n;
  };
  auto at_one = [](const std::function<long(long)>& poly) {
    std::vector<std::pair<Integer, Integer>> pts;
    for (long q : {2, 3, 4, 5}) pts.emplace_back(Integer(q), Integer(poly(q)));
    auto c = interpolate(pts);
    Rational v = 0;
    for (auto& x : c) v += x;
    return v;
  };
  for (int i = 0; i < opt.samples * 2; ++i) {
    P1Set a = random_set(), b = random_set();
    std::string w = "pair " + std::to_string(i);
    rep.check(chi_na(a.unite(b)) + chi_na(a.intersect(b)) == chi_na(a) + chi_na(b), "inclusion-exclusion, " + w);
    rep.check(chi_na(a.unite(b)) == chi_na(a) + chi_na(b.minus(a)), "additivity on a disjoint union, " + w);
    rep.check(chi_na(a) + chi_na(a.complement()) == 2, "complement, " + w);
    rep.check(at_one([&](long q) { return count(a, q); }) == Rational(static_cast<long>(chi_na(a))), "count specialisation, " + w);
    rep.check(at_one([&](long q) { return count(a, q) * count(b, q); }) == Rational(static_cast<long>(chi_na(a) * chi_na(b))),
              "multiplicativity, " + w);
  }
  if (is_p1(alg)) {
    // Fibration rule on the degree-1 family squared.
    auto o1 = IndecFamily::torsion(1, P1Set::all()), o2 = IndecFamily::torsion(2, P1Set::all());
    CFElement u1 = CFElement::indicator(ConstructibleSet::of_family(o1));
    CFElement sq = alg.convolve(u1, u1);
    CFElement expect = CFElement::indicator(ConstructibleSet::normalize({Stratum({{o1, 2}})})) * Rational(2) +
                       CFElement::indicator(ConstructibleSet::of_family(o2));
    rep.check(sq == expect, "1_{O1} * 1_{O1} = 2 1_{2 O1} + 1_{O2}");
    auto samples = alg.sample_check(u1, u1, sq, {"~p1", "~p2", "~p3", "~p4"});
    for (auto& p : samples.points) rep.check(p.agrees, "tube agreement at sampled point " + p.point);
    rep.details["family_square"] = sq.to_json(alg.backend());
  }
  rep.details["random_pairs"] = opt.samples * 2;
  return rep;
}

SuiteReport run_suite(Algebra& alg, const std::string& name, SuiteOptions opt) {
  if (name == "assoc") return verify_assoc(alg, opt);
  if (name == "lie-closure") return verify_lie_closure(alg, opt);
  if (name == "riedtmann") return verify_riedtmann(alg, opt);
  if (name == "pbw") return verify_pbw(alg, opt);
  if (name == "green") return verify_green(alg, opt);
  if (name == "bialgebra") return verify_bialgebra(alg, opt);
  if (name == "euler-axioms") return verify_euler_axioms(alg, opt);
  throw PreconditionError("unknown verification suite '" + name + "'");
}

}  // namespace hallforge
