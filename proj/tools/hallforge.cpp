// Command-line front end: products, coproducts, verification suites and the
// persistent Hall polynomial cache.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <map>
#include <memory>
#include <sstream>

#include "hallforge/cache.hpp"
#include "hallforge/coalgebra.hpp"
#include "hallforge/errors.hpp"
#include "hallforge/expr.hpp"
#include "hallforge/quiver.hpp"
#include "hallforge/verify.hpp"

using namespace hallforge;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kResource = 3, kParse = 4, kOther = 5 };

struct Session {
  std::string backend_path;
  int dim = 0;  // 0: library default
  int q_max = 0;
  int gamma = 0;
  std::string cache_path;
  std::string route = "auto";
  bool json = false;

  Backend backend() const { return Backend::load(backend_path); }

  Bounds bounds() const {
    Bounds b;
    if (dim > 0) b.max_dim = std::max(b.max_dim, dim);
    if (q_max > 0) b.max_q = q_max;
    if (gamma > 0) b.max_gamma = std::max(b.max_gamma, gamma);
    return b;
  }

  std::shared_ptr<Cache> cache(const Backend& b) const {
    Backend cb = Algebra::constants_backend(b);
    return cache_path.empty() ? std::make_shared<Cache>(cb) : std::make_shared<Cache>(cb, cache_path);
  }

  Algebra algebra(const Backend& b) const {
    static const std::map<std::string, Route> routes = {
        {"count", Route::Count}, {"localize", Route::Localize}, {"auto", Route::Auto}};
    return Algebra(b, bounds(), routes.at(route), cache(b));
  }
};

void emit(const Session& s, const ojson& j, const std::string& text) {
  if (s.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text << "\n";
}

ojson element_report(const std::string& cmd, const Backend& b, const std::vector<std::string>& operands,
                     const CFElement& r) {
  ojson j;
  j["command"] = cmd;
  j["backend"] = b.name();
  j["operands"] = operands;
  j["result"] = r.to_json(b);
  j["text"] = r.to_text(b);
  return j;
}

ojson cache_stats_json(const CacheStats& st) {
  ojson j;
  j["entries"] = st.entries;
  j["complete_targets"] = st.complete_targets;
  j["version"] = st.version;
  j["path"] = st.path;
  j["rebuilt"] = st.rebuilt;
  return j;
}

std::string cache_stats_text(const CacheStats& st) {
  std::ostringstream os;
  os << "entries: " << st.entries << "\ncomplete_targets: " << st.complete_targets << "\nversion: " << st.version;
  if (st.rebuilt) os << "\nrebuilt: true";
  return os.str();
}

int report_error(const Error& e) {
  ojson j;
  j["error"] = e.kind();
  j["message"] = e.what();
  int code = kOther;
  if (auto* r = dynamic_cast<const ResourceError*>(&e)) {
    j["bound"] = r->bound_name;
    j["limit"] = r->limit;
    j["requested"] = r->requested;
    code = kResource;
  } else if (auto* p = dynamic_cast<const ParseError*>(&e)) {
    j["offset"] = p->offset;
    code = kParse;
  } else if (e.kind() == "precondition" || e.kind() == "capability" || e.kind() == "backend-mismatch") {
    code = kUsage;
  }
  std::cerr << j.dump() << "\n";
  return code;
}

std::vector<IndecFamily> parse_families(const Backend& b, const std::string& list) {
  std::vector<IndecFamily> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find(';', start);
    if (end == std::string::npos) end = list.size();
    std::string tok = list.substr(start, end - start);
    if (tok.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_family(b, tok));
    start = end + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hallforge: exact degenerate Ringel-Hall algebra engine"};
  app.require_subcommand(1);
  app.fallthrough();
  Session s;
  app.add_option("--backend", s.backend_path, "backend definition (JSON file)")->check(CLI::ExistingFile);
  app.add_option("--dim", s.dim, "dimension bound")->check(CLI::PositiveNumber);
  app.add_option("--q-max", s.q_max, "largest field order sampled")->check(CLI::PositiveNumber);
  app.add_option("--gamma", s.gamma, "gamma bound")->check(CLI::PositiveNumber);
  app.add_option("--cache", s.cache_path, "persistent Hall polynomial cache file");
  app.add_option("--route", s.route, "structure constant route")->check(CLI::IsMember({"count", "localize", "auto"}));
  app.add_flag("--json", s.json, "emit JSON");

  std::string lhs, rhs, bound_text, verify_families, cache_file;
  int exponent = 0, samples = 50;
  std::uint32_t seed = SuiteOptions{}.seed;
  std::string suite, cache_cmd;

  auto* indec = app.add_subcommand("indecomposables", "list indecomposable labels");
  indec->add_option("bound", bound_text, "dimension vector bound, e.g. 2,2");
  auto* mul = app.add_subcommand("mul", "convolution product f * g");
  mul->add_option("f", lhs)->required();
  mul->add_option("g", rhs)->required();
  auto* bracket = app.add_subcommand("bracket", "commutator f * g - g * f");
  bracket->add_option("f", lhs)->required();
  bracket->add_option("g", rhs)->required();
  auto* power = app.add_subcommand("power", "k-th convolution power of 1_O");
  power->add_option("set", lhs)->required();
  power->add_option("k", exponent)->required()->check(CLI::NonNegativeNumber);
  auto* comul = app.add_subcommand("comul", "splitting comultiplication");
  comul->add_option("f", lhs)->required();
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("suite", suite)->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--samples", samples, "random samples")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--families", verify_families, "families for pbw, separated by ';'");
  auto* cache = app.add_subcommand("cache", "inspect or transfer the cache");
  cache->add_option("action", cache_cmd)->required()->check(CLI::IsMember({"stats", "export", "import", "clear"}));
  cache->add_option("file", cache_file, "export/import file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (s.backend_path.empty()) {
    std::cerr << ojson{{"error", "usage"}, {"message", "--backend is required"}}.dump() << "\n";
    return kUsage;
  }

  try {
    Backend b = s.backend();
    if (indec->parsed()) {
      std::vector<IndecLabel> labels;
      if (!bound_text.empty()) {
        DimVector bound;
        std::stringstream ss(bound_text);
        for (std::string tok; std::getline(ss, tok, ',');) {
          try {
            bound.push_back(std::stoi(tok));
          } catch (const std::exception&) {
            throw ParseError("bad bound entry '" + tok + "'");
          }
        }
        labels = b.kind() == BackendKind::DynkinQuiver ? positive_roots(b, bound)
                                                        : indecomposables(b, bound.empty() ? 0 : bound[0]);
      } else {
        labels = indecomposables(b, s.dim > 0 ? s.dim : b.kind() == BackendKind::DynkinQuiver ? 64 : 3);
      }
      ojson j;
      j["backend"] = b.name();
      j["labels"] = ojson::array();
      std::string text;
      for (auto& l : labels) {
        j["labels"].push_back({{"name", b.label_name(l)}, {"dim", l.dim}});
        text += (text.empty() ? "" : "\n") + b.label_name(l);
      }
      emit(s, j, text);
      return kOk;
    }
    if (cache->parsed()) {
      if (s.cache_path.empty()) throw PreconditionError("cache commands need --cache <path>");
      auto c = s.cache(b);
      if (cache_cmd == "export" || cache_cmd == "import") {
        if (cache_file.empty()) throw PreconditionError("cache " + cache_cmd + " needs a file argument");
        if (cache_cmd == "export")
          c->export_to(cache_file);
        else
          c->import_from(cache_file);
      } else if (cache_cmd == "clear") {
        c->clear();
      }
      emit(s, cache_stats_json(c->stats()), cache_stats_text(c->stats()));
      return kOk;
    }

    Algebra alg = s.algebra(b);
    if (mul->parsed() || bracket->parsed()) {
      CFElement f = parse_element(b, lhs), g = parse_element(b, rhs);
      CFElement r = mul->parsed() ? alg.convolve(f, g) : alg.bracket(f, g);
      emit(s, element_report(mul->parsed() ? "mul" : "bracket", b, {lhs, rhs}, r), r.to_text(b));
      return kOk;
    }
    if (power->parsed()) {
      CFElement r = alg.power(parse_set(b, lhs), exponent);
      emit(s, element_report("power", b, {lhs, std::to_string(exponent)}, r), r.to_text(b));
      return kOk;
    }
    if (comul->parsed()) {
      TensorElement t = comultiply(parse_element(b, lhs));
      ojson j;
      j["command"] = "comul";
      j["backend"] = b.name();
      j["operands"] = {lhs};
      j["result"] = t.to_json(b);
      j["text"] = t.to_text(b);
      emit(s, j, t.to_text(b));
      return kOk;
    }
    if (verify->parsed()) {
      SuiteOptions opt;
      opt.dim = s.dim;
      opt.gamma = s.gamma;
      opt.samples = samples;
      opt.seed = seed;
      if (!verify_families.empty()) opt.families = parse_families(b, verify_families);
      SuiteReport r = run_suite(alg, suite, opt);
      std::ostringstream text;
      text << suite << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.checks << " checks, " << r.violations
           << " violations)";
      for (auto& f : r.failures) text << "\n  " << f.get<std::string>();
      ojson j = r.to_json();
      j["backend"] = b.name();
      emit(s, j, text.str());
      return r.passed() ? kOk : kVerifyFailed;
    }
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << ojson{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return kOther;
  }
  return kUsage;
}
