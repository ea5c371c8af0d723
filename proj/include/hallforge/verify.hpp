#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hallforge/cf.hpp"

namespace hallforge {

/// Parameters of a verification suite; unset values take per-suite defaults.
struct SuiteOptions {
  int dim = 0;      // total dimension bound
  int gamma = 0;    // gamma bound (pbw, bialgebra)
  int samples = 50; // random samples (assoc, euler-axioms)
  std::uint32_t seed = 20240601;
  std::vector<IndecFamily> families;  // pbw; default: singleton indecomposables
};

struct SuiteReport {
  std::string suite;
  std::size_t checks = 0;
  std::size_t violations = 0;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();  // first few violations

  bool passed() const { return violations == 0 && checks > 0; }
  void check(bool ok, const std::string& what);
  nlohmann::ordered_json to_json() const;
};

const std::vector<std::string>& suite_names();

/// Runs a named suite; throws PreconditionError for unknown names.
SuiteReport run_suite(Algebra& alg, const std::string& name, SuiteOptions opt = {});

SuiteReport verify_assoc(Algebra& alg, const SuiteOptions& opt);
SuiteReport verify_lie_closure(Algebra& alg, const SuiteOptions& opt);
SuiteReport verify_riedtmann(Algebra& alg, const SuiteOptions& opt);
SuiteReport verify_pbw(Algebra& alg, const SuiteOptions& opt);
SuiteReport verify_green(Algebra& alg, const SuiteOptions& opt);
SuiteReport verify_bialgebra(Algebra& alg, const SuiteOptions& opt);
SuiteReport verify_euler_axioms(Algebra& alg, const SuiteOptions& opt);

/// (Delta x id) Delta == (id x Delta) Delta, computed as functions on triples.
bool coassociative(const CFElement& f);

}  // namespace hallforge
