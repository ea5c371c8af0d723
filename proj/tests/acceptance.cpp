// Acceptance harness: one PASS/FAIL line per criterion. Criteria 1-12 run
// three times (cold persistent cache, warm cache, no cache); criterion 13
// compares their canonical outputs byte for byte.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <unistd.h>

#include "hallforge/coalgebra.hpp"
#include "hallforge/errors.hpp"
#include "hallforge/expr.hpp"
#include "hallforge/pbw.hpp"
#include "hallforge/quiver.hpp"
#include "hallforge/verify.hpp"

using namespace hallforge;
using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

enum class CacheMode { Cold, Warm, None };

const char* mode_name(CacheMode m) {
  switch (m) {
    case CacheMode::Cold: return "cold";
    case CacheMode::Warm: return "warm";
    case CacheMode::None: return "none";
  }
  return "?";
}

// Algebras of one pass, one per backend file, sharing the pass's cache mode.
class Env {
 public:
  Env(CacheMode mode, fs::path cache_dir) : mode_(mode), dir_(std::move(cache_dir)) {}

  CacheMode mode() const { return mode_; }
  const fs::path& dir() const { return dir_; }

  const Backend& backend(const std::string& name) {
    auto it = backends_.find(name);
    if (it == backends_.end())
      it = backends_.emplace(name, Backend::load(std::string(HALLFORGE_BACKEND_DIR) + "/" + name + ".json")).first;
    return it->second;
  }

  Algebra& algebra(const std::string& name, Bounds bounds = {}) {
    std::string key = name + "/" + std::to_string(bounds.max_dim);
    auto it = algebras_.find(key);
    if (it != algebras_.end()) return *it->second;
    const Backend& b = backend(name);
    Backend cb = Algebra::constants_backend(b);
    std::shared_ptr<Cache> cache = mode_ == CacheMode::None
                                       ? std::make_shared<Cache>(cb)
                                       : std::make_shared<Cache>(cb, (dir_ / (name + ".cache.json")).string());
    return *algebras_.emplace(key, std::make_unique<Algebra>(b, bounds, Route::Auto, cache)).first->second;
  }

  std::string cache_file(const std::string& name) const { return (dir_ / (name + ".cache.json")).string(); }

 private:
  CacheMode mode_;
  fs::path dir_;
  std::map<std::string, Backend> backends_;
  std::map<std::string, std::unique_ptr<Algebra>> algebras_;
};

struct Outcome {
  bool ok = true;
  std::vector<std::string> problems;
  ojson output = ojson::object();  // canonical, compared across passes

  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (problems.size() < 5) problems.push_back(what);
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;  // 0: untimed
  bool timed_warm;
  std::function<Outcome(Env&)> run;
};

CFElement u(Env& env, const std::string& backend, const std::string& expr) {
  return parse_element(env.backend(backend), expr);
}

std::string run_cli(const std::vector<std::string>& args, int& status) {
  std::string cmd = HALLFORGE_CLI;
  for (auto& a : args) cmd += " '" + a + "'";
  cmd += " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  status = pclose(p);
  return out;
}

// Gamma of every term but the leading class must be below `top`.
bool lower_terms_below(const CFElement& f, const IsoClass& lead, int top) {
  for (auto& [s, v] : f.shapes())
    if (!(s == lead) && s.gamma() >= top) return false;
  return true;
}

Integer binom(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Outcome structure_constants_a2(Env& env) {
  Outcome o;
  std::vector<std::string> base = {"--backend", std::string(HALLFORGE_BACKEND_DIR) + "/a2.json", "--json"};
  if (env.mode() != CacheMode::None) base.insert(base.end(), {"--cache", env.cache_file("a2-cli")});
  struct Case {
    std::string cmd, f, g, expect;
  };
  const std::vector<Case> cases = {
      {"mul", "[S2]", "[S1]", "1*([P12] | [S1+S2])"},
      {"mul", "[S1]", "[S2]", "1*[S1+S2]"},
      {"bracket", "[S1]", "[S2]", "-1*[P12]"},
  };
  for (auto& c : cases) {
    std::vector<std::string> args = {c.cmd, c.f, c.g};
    args.insert(args.end(), base.begin(), base.end());
    int status = 0;
    std::string out = run_cli(args, status);
    o.require(status == 0, c.cmd + " exited with status " + std::to_string(status));
    if (status != 0) continue;
    ojson j = ojson::parse(out);
    o.require(j["text"] == c.expect, c.cmd + " " + c.f + " " + c.g + " gave " + j["text"].get<std::string>());
    o.output[c.cmd + " " + c.f + " " + c.g] = j["result"];
  }
  // Same values in-process, checked term by term.
  auto& alg = env.algebra("a2");
  CFElement prod = alg.convolve(u(env, "a2", "[S2]"), u(env, "a2", "[S1]"));
  o.require(prod == u(env, "a2", "[S1+S2] + [P12]"), "in-process 1_S2 * 1_S1");
  o.require(alg.bracket(u(env, "a2", "[S1]"), u(env, "a2", "[S2]")) == u(env, "a2", "-[P12]"), "in-process bracket");
  return o;
}

Outcome loop_golden(Env& env) {
  Outcome o;
  auto& alg = env.algebra("loop");
  const Backend& b = env.backend("loop");
  auto j1 = b.parse_class("[J1]"), j11 = b.parse_class("[J1+J1]"), j2 = b.parse_class("[J2]");
  HallPolynomial p = alg.constants().hall_polynomial(j1, j1, j11);
  o.require(p == HallPolynomial({Integer(1), Integer(1)}), "hall polynomial (1),(1),(1,1) = " + p.to_string());
  Integer e = alg.constants().euler_constant(j1, j1, j11);
  o.require(e == 2, "euler constant (1),(1),(1,1) = " + e.get_str());
  HallPolynomial p2 = alg.constants().hall_polynomial(j1, j1, j2);
  o.require(p2 == HallPolynomial({Integer(1)}), "hall polynomial (1),(1),(2) = " + p2.to_string());
  o.require(alg.constants().euler_constant(j1, j1, j2) == 1, "euler constant (1),(1),(2)");
  CFElement sq = alg.convolve(CFElement::of_class(j1), CFElement::of_class(j1));
  o.require(sq == CFElement::of_class(j11, 2) + CFElement::of_class(j2), "square = " + sq.to_text(b));
  o.output["hall_11_11"] = p.to_string();
  o.output["hall_1_1_2"] = p2.to_string();
  o.output["euler_11_11"] = e.get_str();
  o.output["square"] = sq.to_json(b);
  return o;
}

Outcome factorial_powers(Env& env) {
  Outcome o;
  for (auto [backend, label] : {std::pair{"a2", "S1"}, std::pair{"loop", "J1"}}) {
    auto& alg = env.algebra(backend);
    const Backend& b = env.backend(backend);
    IndecLabel l = b.parse_label(label);
    ConstructibleSet fam = ConstructibleSet::of_family(IndecFamily::finite({l}));
    for (int k = 1; k <= 4; ++k) {
      CFElement r = alg.power(fam, k);
      IsoClass lead = IsoClass(std::vector<IndecLabel>(k, l));
      std::string where = std::string(backend) + " {" + label + "}^" + std::to_string(k);
      o.require(r.evaluate(lead) == Rational(factorial(static_cast<unsigned>(k))), where + ": leading coefficient");
      o.require(lower_terms_below(r, lead, k), where + ": remaining terms have gamma >= k");
      o.output[where] = r.to_json(b);
    }
  }
  return o;
}

Outcome binomial_leading(Env& env) {
  Outcome o;
  const std::vector<std::tuple<std::string, std::string, std::string>> pairs = {
      {"a2", "S1", "S2"}, {"a2", "S1", "P12"}, {"a2", "S2", "P12"}, {"loop", "J1", "J2"}};
  for (auto& [backend, n1, n2] : pairs) {
    auto& alg = env.algebra(backend, Bounds{.max_dim = 8});
    const Backend& b = env.backend(backend);
    IndecLabel l1 = b.parse_label(n1), l2 = b.parse_label(n2);
    auto cls = [&](int m, int n) { return IsoClass::from_parts({{l1, m}, {l2, n}}); };
    for (int m = 0; m <= 4; ++m)
      for (int n = 0; m + n <= 4; ++n)
        for (int mp = 0; m + n + mp <= 4; ++mp)
          for (int np = 0; m + n + mp + np <= 4; ++np) {
            CFElement r = alg.convolve(CFElement::of_class(cls(m, n)), CFElement::of_class(cls(mp, np)));
            IsoClass lead = cls(m + mp, n + np);
            Integer expect = binom(m + mp, m) * binom(n + np, n);
            std::ostringstream where;
            where << backend << " " << n1 << "," << n2 << " (" << m << "," << n << ")*(" << mp << "," << np << ")";
            o.require(r.evaluate(lead) == Rational(expect), where.str() + ": leading coefficient");
            o.require(lower_terms_below(r, lead, m + n + mp + np), where.str() + ": lower terms");
            o.output[where.str()] = to_string(r.evaluate(lead));
          }
  }
  return o;
}

void merge_suite(Outcome& o, const std::string& key, const SuiteReport& r) {
  o.require(r.passed(), key + ": " + std::to_string(r.violations) + " violations" +
                            (r.failures.empty() ? "" : ", first: " + r.failures[0].get<std::string>()));
  o.output[key] = r.to_json();
}

Outcome riedtmann(Env& env) {
  Outcome o;
  for (auto name : {"a2", "a3", "loop"}) {
    SuiteOptions opt;
    opt.dim = 5;
    merge_suite(o, name, verify_riedtmann(env.algebra(name), opt));
  }
  return o;
}

Outcome associativity(Env& env) {
  Outcome o;
  for (auto name : {"a2", "a3", "loop"}) {
    SuiteOptions opt;
    opt.dim = 4;
    opt.samples = 50;
    merge_suite(o, name, verify_assoc(env.algebra(name), opt));
  }
  return o;
}

Outcome lie_closure(Env& env) {
  Outcome o;
  for (auto name : {"a2", "a3", "loop"}) {
    SuiteOptions opt;
    opt.dim = 4;
    merge_suite(o, name, verify_lie_closure(env.algebra(name), opt));
  }
  auto& alg = env.algebra("a2");
  CFElement s1 = u(env, "a2", "[S1]"), s2 = u(env, "a2", "[S2]");
  CFElement serre = alg.bracket(s1, alg.bracket(s1, s2));
  o.require(serre.is_zero(), "[1_S1,[1_S1,1_S2]] = " + serre.to_text(env.backend("a2")));
  o.output["serre"] = serre.to_json(env.backend("a2"));
  return o;
}

Outcome pbw(Env& env) {
  Outcome o;
  const std::vector<std::pair<std::string, std::string>> cases = {{"a2", "{S1};{S2};{P12}"},
                                                                  {"loop", "{J1};{J2};{J3}"}};
  for (auto& [name, fams] : cases) {
    std::vector<IndecFamily> families;
    std::stringstream ss(fams);
    for (std::string tok; std::getline(ss, tok, ';');) families.push_back(parse_family(env.backend(name), tok));
    auto tr = check_iso_on_truncation(env.algebra(name), families, 3);
    o.require(tr.triangular, name + ": gamma-triangularity");
    o.require(tr.diagonal_ok, name + ": diagonal entries prod n_i!");
    o.require(tr.bijective(), name + ": bijectivity");
    o.output[name] = tr.to_json();
  }
  return o;
}

Outcome green(Env& env) {
  Outcome o;
  for (auto name : {"a2", "loop"}) {
    SuiteOptions opt;
    opt.dim = 4;
    merge_suite(o, name, verify_green(env.algebra(name), opt));
  }
  return o;
}

Outcome bialgebra(Env& env) {
  Outcome o;
  for (auto name : {"a2", "loop"}) {
    auto& alg = env.algebra(name);
    const Backend& b = env.backend(name);
    std::vector<CFElement> basis;
    for (auto& c : classes_up_to(b, 4))
      if (c.gamma() <= 2) basis.push_back(CFElement::of_class(c));
    std::size_t pairs = 0;
    for (auto& f : basis)
      for (auto& g : basis) {
        if (f.shapes().begin()->first.size() + g.shapes().begin()->first.size() > 4) continue;
        ++pairs;
        auto r = bialgebra_check(alg, f, g);
        o.require(r.equal, std::string(name) + ": " + f.to_text(b) + " , " + g.to_text(b));
      }
    o.output[std::string(name) + " pairs"] = pairs;
  }
  // Fully expanded case f = g = 1_[(1)].
  auto& alg = env.algebra("loop");
  const Backend& b = env.backend("loop");
  CFElement one = CFElement::unit(), u1 = u(env, "loop", "[J1]"), u11 = u(env, "loop", "[J1+J1]"),
            u2 = u(env, "loop", "[J2]");
  TensorElement expanded =
      (TensorElement::pure(one, u11) + TensorElement::pure(u1, u1) + TensorElement::pure(u11, one)) * Rational(2) +
      TensorElement::pure(one, u2) + TensorElement::pure(u2, one);
  auto r = bialgebra_check(alg, u1, u1);
  o.require(r.lhs == expanded, "Delta(1_(1) * 1_(1)) = " + r.lhs.to_text(b));
  o.require(r.rhs == expanded, "Delta(1_(1)) * Delta(1_(1)) = " + r.rhs.to_text(b));
  o.output["expanded"] = r.lhs.to_text(b);
  return o;
}

Outcome counit_laws(Env& env) {
  Outcome o;
  for (auto name : {"a2", "a3", "loop"}) {
    const Backend& b = env.backend(name);
    std::size_t n = 0;
    for (auto& c : classes_up_to(b, 6)) {
      if (c.gamma() > 3) continue;
      ++n;
      CFElement f = CFElement::of_class(c);
      TensorElement d = comultiply(f);
      o.require(counit_left(d) == f, std::string(name) + ": (eps x id) Delta at " + b.class_name(c));
      o.require(counit_right(d) == f, std::string(name) + ": (id x eps) Delta at " + b.class_name(c));
    }
    o.output[name] = n;
  }
  return o;
}

Outcome p1_family_calculus(Env& env) {
  Outcome o;
  o.require(chi_na(P1Set::all()) == 2, "chi(P^1) = 2");
  std::mt19937 rng(20240601);
  const std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f"};
  for (int i = 0; i < 100; ++i) {
    auto draw = [&] {
      std::set<std::string> pts;
      for (auto& p : pool)
        if (rng() % 2) pts.insert(p);
      return rng() % 2 ? P1Set::finite(pts) : P1Set::cofinite(pts);
    };
    P1Set a = draw(), c = draw();
    P1Set disjoint = c.minus(a);
    o.require(chi_na(a.unite(disjoint)) == chi_na(a) + chi_na(disjoint), "additivity, pair " + std::to_string(i));
  }
  auto& alg = env.algebra("p1");
  const Backend& b = env.backend("p1");
  CFElement o1 = u(env, "p1", "O1");
  CFElement sq = alg.convolve(o1, o1);
  o.require(sq == u(env, "p1", "2*<2 O1> + O2"), "1_O1 * 1_O1 = " + sq.to_text(b));
  auto samples = alg.sample_check(o1, o1, sq, {"p", "q", "r", "s"});
  o.require(samples.points.size() == 4, "four sample points");
  for (auto& p : samples.points) o.require(p.agrees, "sample point " + p.point);
  o.output["square"] = sq.to_json(b);
  o.output["samples"] = samples.points.size();
  return o;
}

std::vector<Criterion> criteria() {
  return {
      {1, "A2 structure constants via cmd_mul", 1, false, structure_constants_a2},
      {2, "loop-nilpotent golden Hall polynomials", 1, false, loop_golden},
      {3, "k! leading coefficient of power(O, k), k <= 4", 30, false, factorial_powers},
      {4, "binomial leading coefficients for disjoint singletons", 0, false, binomial_leading},
      {5, "gamma invariant over all triples of dim <= 5 (A2, A3, loop)", 300, true, riedtmann},
      {6, "associativity on basis triples and random elements", 0, false, associativity},
      {7, "Lie closure and the A2 Serre relation", 0, false, lie_closure},
      {8, "PBW truncation certificates at gamma <= 3", 120, false, pbw},
      {9, "Green's formula, exhaustive to dim 4", 300, false, green},
      {10, "bialgebra compatibility for gamma <= 2, dim <= 4", 0, false, bialgebra},
      {11, "counit laws for gamma <= 3", 0, false, counit_laws},
      {12, "P1 family calculus", 10, false, p1_family_calculus},
  };
}

struct PassResult {
  Outcome outcome;
  double seconds = 0;
  std::string error;
};

std::map<int, PassResult> run_pass(CacheMode mode, const fs::path& dir) {
  Env env(mode, dir);
  std::map<int, PassResult> out;
  for (auto& c : criteria()) {
    PassResult r;
    auto t0 = std::chrono::steady_clock::now();
    try {
      r.outcome = c.run(env);
    } catch (const std::exception& e) {
      r.error = e.what();
      r.outcome.ok = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "  [" << mode_name(mode) << "] criterion " << c.id << " " << r.seconds << " s\n";
    out[c.id] = std::move(r);
  }
  return out;
}

}  // namespace

int main() {
  fs::path dir = fs::temp_directory_path() / ("hallforge-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);

  auto cold = run_pass(CacheMode::Cold, dir);
  auto warm = run_pass(CacheMode::Warm, dir);
  auto none = run_pass(CacheMode::None, dir);

  int failed = 0;
  for (auto& c : criteria()) {
    const PassResult& timed = c.timed_warm ? warm[c.id] : cold[c.id];
    bool ok = true;
    std::string why;
    for (auto* p : {&cold[c.id], &warm[c.id], &none[c.id]}) {
      if (!p->error.empty()) {
        ok = false;
        why = "error: " + p->error;
        break;
      }
      if (!p->outcome.ok) {
        ok = false;
        why = p->outcome.problems.empty() ? "failed" : p->outcome.problems[0];
        break;
      }
    }
    if (ok && c.limit_s > 0 && timed.seconds >= c.limit_s) {
      ok = false;
      why = "time limit exceeded";
    }
    failed += ok ? 0 : 1;
    std::printf("%s criterion %2d: %s (%.2f s%s%s)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), timed.seconds,
                c.timed_warm ? " warm" : " cold",
                c.limit_s > 0 ? (", limit " + std::to_string(static_cast<int>(c.limit_s)) + " s").c_str() : "",
                ok ? "" : " -- ", why.c_str());
  }

  // Criterion 13: canonical outputs agree across runs and cache states.
  bool same = true;
  std::string first_diff;
  for (auto& c : criteria()) {
    std::string a = cold[c.id].outcome.output.dump(), b = warm[c.id].outcome.output.dump(),
                n = none[c.id].outcome.output.dump();
    if (a != b || b != n || a == "{}") {
      same = false;
      if (first_diff.empty()) first_diff = "criterion " + std::to_string(c.id);
    }
  }
  failed += same ? 0 : 1;
  std::printf("%s criterion 13: byte-identical outputs across cold, warm and no-cache runs%s%s\n",
              same ? "PASS" : "FAIL", same ? "" : " -- differs at ", first_diff.c_str());

  fs::remove_all(dir);
  std::printf("%d of 13 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
