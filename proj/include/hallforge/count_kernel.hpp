#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hallforge/backend.hpp"
#include "hallforge/linalg.hpp"
#include "hallforge/quiver.hpp"

namespace hallforge {

/// Resource bounds of a session. `max_work` caps the number of subspace tuples
/// a single enumeration may visit.
struct Bounds {
  int max_dim = 6;
  int max_q = 13;
  int max_gamma = 8;
  std::uint64_t max_work = 60'000'000;
};

using ClassPair = std::pair<IsoClass, IsoClass>;  // (sub, quotient)

struct SubrepHistogram {
  IsoClass target;
  int q = 0;
  std::map<ClassPair, std::uint64_t> counts;

  std::uint64_t total() const;
  std::uint64_t at(const IsoClass& sub, const IsoClass& quot) const;
};

/// Calls `visit(basis, pivots)` once per subspace of F_q^d, each given by its
/// reduced row echelon basis.
void for_each_subspace(const Field& f, int d,
                       const std::function<void(const Matrix&, const std::vector<int>&)>& visit);

/// Number of subspaces of F_q^d (all dimensions).
std::uint64_t subspace_count(int q, int d);

/// Gaussian binomial [n choose k]_q.
std::uint64_t gaussian_binomial(int n, int k, int q);

SubrepHistogram enumerate_subreps(const Backend& b, const IsoClass& target, int q,
                                  const Bounds& bounds = {});

std::uint64_t count_points(const Backend& b, const IsoClass& sub, const IsoClass& quot,
                           const IsoClass& target, int q, const Bounds& bounds = {});

}  // namespace hallforge
