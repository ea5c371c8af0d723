#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "hallforge/count_kernel.hpp"
#include "hallforge/errors.hpp"

using namespace hallforge;

namespace {

using Vec = std::vector<int>;
using Space = std::set<Vec>;

const Backend& a2() {
  static Backend b = Backend::type_a("A2", 2);
  return b;
}
const Backend& loop() {
  static Backend b = Backend::loop_nilpotent();
  return b;
}

IsoClass cls(const Backend& b, const char* s) { return b.parse_class(s); }

Vec vadd(const Field& f, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

Space span_with(const Field& f, const Space& s, const Vec& v) {
  Space out = s;
  for (int c = 1; c < f.order(); ++c) {
    Vec cv(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) cv[i] = f.mul(c, v[i]);
    for (auto& u : s) out.insert(vadd(f, u, cv));
  }
  return out;
}

// Oracle: every subspace of F_q^d as an explicit vector set, built by spans.
std::vector<Space> all_subspaces(const Field& f, int d) {
  std::vector<Vec> vectors;
  Vec v(d, 0);
  while (true) {
    vectors.push_back(v);
    int i = 0;
    while (i < d && v[i] == f.order() - 1) v[i++] = 0;
    if (i == d) break;
    ++v[i];
  }
  std::set<Space> seen{Space{Vec(d, 0)}};
  std::vector<Space> frontier{Space{Vec(d, 0)}};
  while (!frontier.empty()) {
    std::vector<Space> next;
    for (auto& s : frontier)
      for (auto& w : vectors)
        if (!s.count(w)) {
          Space t = span_with(f, s, w);
          if (seen.insert(t).second) next.push_back(t);
        }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

int log_q(std::size_t n, int q) {
  int k = 0;
  while (n > 1) {
    n /= q;
    ++k;
  }
  return k;
}

// Oracle: subrepresentations of realize_class(target) counted by sub dimension vector.
std::map<DimVector, std::uint64_t> brute_by_dim(const Backend& b, const IsoClass& target, int q) {
  MatrixRep y = realize_class(b, target, q);
  const Field& f = *y.field;
  std::vector<std::vector<Space>> choices;
  for (int d : y.dims) choices.push_back(all_subspaces(f, d));
  std::map<DimVector, std::uint64_t> out;
  std::vector<const Space*> pick(y.dims.size());
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == pick.size()) {
      for (std::size_t a = 0; a < y.ends.size(); ++a) {
        auto [s, t] = y.ends[a];
        for (auto& u : *pick[s]) {
          Vec w(y.dims[t], 0);
          for (int i = 0; i < y.dims[t]; ++i)
            for (int j = 0; j < y.dims[s]; ++j) w[i] = f.add(w[i], f.mul(y.maps[a](i, j), u[j]));
          if (!pick[t]->count(w)) return;
        }
      }
      DimVector d;
      for (auto* p : pick) d.push_back(log_q(p->size(), q));
      ++out[d];
      return;
    }
    for (auto& s : choices[v]) {
      pick[v] = &s;
      rec(v + 1);
    }
  };
  rec(0);
  return out;
}

std::map<DimVector, std::uint64_t> kernel_by_dim(const Backend& b, const SubrepHistogram& h) {
  std::map<DimVector, std::uint64_t> out;
  for (auto& [k, v] : h.counts) out[b.dim(k.first)] += v;
  return out;
}

}  // namespace

TEST(EnumerateSubreps, IntervalModuleOverF2) {
  auto h = enumerate_subreps(a2(), cls(a2(), "[P12]"), 2);
  std::map<ClassPair, std::uint64_t> expected{
      {{IsoClass{}, cls(a2(), "[P12]")}, 1},
      {{cls(a2(), "[S2]"), cls(a2(), "[S1]")}, 1},
      {{cls(a2(), "[P12]"), IsoClass{}}, 1},
  };
  EXPECT_EQ(h.counts, expected);
}

TEST(EnumerateSubreps, SimpleHasOnlyTrivialSubobjects) {
  for (int q : {2, 3, 4, 5}) {
    auto h = enumerate_subreps(a2(), cls(a2(), "[S1]"), q);
    EXPECT_EQ(h.counts.size(), 2u);
    EXPECT_EQ(h.at(IsoClass{}, cls(a2(), "[S1]")), 1u);
    EXPECT_EQ(h.at(cls(a2(), "[S1]"), IsoClass{}), 1u);
  }
}

TEST(EnumerateSubreps, LinesInTwoSemisimpleBlocks) {
  auto h = enumerate_subreps(loop(), cls(loop(), "[J1+J1]"), 3);
  EXPECT_EQ(h.at(cls(loop(), "[J1]"), cls(loop(), "[J1]")), 4u);
}

TEST(CountPoints, SpecExamples) {
  EXPECT_EQ(count_points(a2(), cls(a2(), "[S2]"), cls(a2(), "[S1]"), cls(a2(), "[P12]"), 5), 1u);
  EXPECT_EQ(count_points(a2(), cls(a2(), "[S1]"), cls(a2(), "[S2]"), cls(a2(), "[P12]"), 2), 0u);
  EXPECT_EQ(count_points(loop(), cls(loop(), "[J1]"), cls(loop(), "[J1]"), cls(loop(), "[J1+J1]"), 4), 5u);
}

TEST(EnumerateSubreps, MatchesExplicitSubspaceOracle) {
  std::vector<Backend> backends{a2(), Backend::type_a("A3", 3), Backend::type_a("A3z", 3, {false, true}), loop()};
  for (auto& b : backends)
    for (int q : {2, 3})
      for (auto& t : classes_up_to(b, 3)) {
        auto h = enumerate_subreps(b, t, q);
        EXPECT_EQ(kernel_by_dim(b, h), brute_by_dim(b, t, q)) << b.name() << " " << b.class_name(t);
      }
}

TEST(EnumerateSubreps, HistogramInvariants) {
  Backend a3 = Backend::type_a("A3", 3);
  for (auto& t : classes_up_to(a3, 4)) {
    auto h = enumerate_subreps(a3, t, 3);
    EXPECT_EQ(h.at(IsoClass{}, t), 1u);
    EXPECT_EQ(h.at(t, IsoClass{}), 1u);
    for (auto& [k, v] : h.counts) EXPECT_EQ(add(a3.dim(k.first), a3.dim(k.second)), a3.dim(t));
  }
}

TEST(EnumerateSubreps, GaussianBinomialSanity) {
  for (int m = 1; m <= 4; ++m) {
    std::vector<IndecLabel> ones(m, block_label(1));
    IsoClass target(ones);
    for (int q : {2, 3, 4}) {
      auto h = enumerate_subreps(loop(), target, q);
      std::vector<std::uint64_t> by_k(m + 1, 0);
      for (auto& [k, v] : h.counts) by_k[k.first.size()] += v;
      for (int k = 0; k <= m; ++k) EXPECT_EQ(by_k[k], gaussian_binomial(m, k, q));
    }
  }
}

TEST(EnumerateSubreps, DualityUnderOppositeOrientation) {
  // Vector-space duality sends (sub, quot) of Y to (D quot, D sub) of DY; it
  // fixes interval labels and reverses every arrow.
  std::vector<std::pair<Backend, Backend>> pairs{
      {a2(), Backend::type_a("A2op", 2, {false})},
      {Backend::type_a("A3", 3, {true, false}), Backend::type_a("A3d", 3, {false, true})},
      {Backend::type_a("A3f", 3, {true, true}), Backend::type_a("A3b", 3, {false, false})}};
  for (auto& [b, bop] : pairs)
    for (auto& t : classes_up_to(b, 4)) {
      auto h = enumerate_subreps(b, t, 2);
      auto hop = enumerate_subreps(bop, t, 2);
      EXPECT_EQ(h.total(), hop.total());
      for (auto& [k, v] : h.counts) EXPECT_EQ(hop.at(k.second, k.first), v) << b.class_name(t);
    }
}

TEST(EnumerateSubreps, ResourceBounds) {
  Bounds small;
  small.max_dim = 2;
  try {
    enumerate_subreps(loop(), cls(loop(), "[J3]"), 2, small);
    FAIL();
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.bound_name, "max_dim");
    EXPECT_EQ(e.requested, 3);
  }
  try {
    enumerate_subreps(loop(), cls(loop(), "[J1]"), 16);
    FAIL();
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.bound_name, "max_q");
  }
  EXPECT_THROW(enumerate_subreps(loop(), cls(loop(), "[J1+J1+J1+J1+J1+J1]"), 13), ResourceError);
}

TEST(Subspaces, CountsAreGaussian) {
  for (int q : {2, 3, 4})
    for (int d = 0; d <= 3; ++d) {
      std::uint64_t n = 0;
      for_each_subspace(*Field::get(q), d, [&](const Matrix&, const std::vector<int>&) { ++n; });
      EXPECT_EQ(n, subspace_count(q, d));
      EXPECT_EQ(n, all_subspaces(*Field::get(q), d).size());
    }
  EXPECT_EQ(gaussian_binomial(4, 2, 2), 35u);
}
