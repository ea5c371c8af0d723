#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "hallforge/errors.hpp"
#include "hallforge/quiver.hpp"

using namespace hallforge;

namespace {

const Backend& a2() {
  static Backend b = Backend::type_a("A2", 2);
  return b;
}

// Every matrix of the given shape over GF(q).
void for_each_matrix(const Field& f, int rows, int cols, const std::function<void(const Matrix&)>& visit) {
  Matrix m(rows, cols);
  std::size_t n = m.data.size();
  while (true) {
    visit(m);
    std::size_t i = 0;
    while (i < n && m.data[i] == f.order() - 1) m.data[i++] = 0;
    if (i == n) return;
    ++m.data[i];
  }
}

// Every tuple of per-vertex matrices (phi_v : m_v -> n_v).
void for_each_tuple(const Field& f, const MatrixRep& m, const MatrixRep& n,
                    const std::function<void(const std::vector<Matrix>&)>& visit) {
  std::vector<Matrix> phi(m.dims.size());
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == phi.size()) {
      visit(phi);
      return;
    }
    for_each_matrix(f, n.dims[v], m.dims[v], [&](const Matrix& x) {
      phi[v] = x;
      rec(v + 1);
    });
  };
  rec(0);
}

bool intertwines(const Field& f, const MatrixRep& m, const MatrixRep& n, const std::vector<Matrix>& phi) {
  for (std::size_t a = 0; a < m.ends.size(); ++a) {
    auto [s, t] = m.ends[a];
    if (!(multiply(f, phi[t], m.maps[a]) == multiply(f, n.maps[a], phi[s]))) return false;
  }
  return true;
}

// Brute-force oracle: number of homomorphisms m -> n.
long long brute_hom_count(const MatrixRep& m, const MatrixRep& n) {
  const Field& f = *m.field;
  long long count = 0;
  for_each_tuple(f, m, n, [&](const std::vector<Matrix>& phi) { count += intertwines(f, m, n, phi); });
  return count;
}

// Brute-force oracle: indecomposable iff End has exactly two idempotents.
bool brute_indecomposable(const MatrixRep& m) {
  if (m.total_dim() == 0) return false;
  const Field& f = *m.field;
  int idempotents = 0;
  for_each_tuple(f, m, m, [&](const std::vector<Matrix>& phi) {
    if (!intertwines(f, m, m, phi)) return;
    for (std::size_t v = 0; v < phi.size(); ++v)
      if (!(multiply(f, phi[v], phi[v]) == phi[v])) return;
    ++idempotents;
  });
  return idempotents == 2;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST(PositiveRoots, A2BoundTwoTwoMatchesBruteForceOverF2) {
  auto roots = positive_roots(a2(), {2, 2});
  std::vector<IndecLabel> expected{root_label({1, 0}), root_label({0, 1}), root_label({1, 1})};
  EXPECT_EQ(roots, expected);

  // Oracle: dimension vectors of indecomposable F_2-representations with dim <= (2,2).
  auto f = Field::get(2);
  std::set<DimVector> seen;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for_each_matrix(*f, b, a, [&](const Matrix& x) {
        MatrixRep m = zero_rep(a2(), {a, b}, 2);
        m.maps[0] = x;
        if (brute_indecomposable(m)) seen.insert({a, b});
      });
  std::set<DimVector> from_roots;
  for (auto& r : roots) from_roots.insert(r.dim);
  EXPECT_EQ(seen, from_roots);
}

TEST(PositiveRoots, A1HasOnlyTheSimple) {
  Backend a1 = Backend::type_a("A1", 1);
  auto roots = positive_roots(a1, {3});
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_EQ(roots[0].dim, (DimVector{1}));
}

TEST(PositiveRoots, A3UnitBoundGivesSixIntervals) {
  Backend a3 = Backend::type_a("A3", 3);
  auto roots = positive_roots(a3, {1, 1, 1});
  std::vector<IndecLabel> expected{root_label({1, 0, 0}), root_label({0, 1, 0}), root_label({0, 0, 1}),
                                   root_label({1, 1, 0}), root_label({0, 1, 1}), root_label({1, 1, 1})};
  EXPECT_EQ(roots, expected);
}

TEST(PositiveRoots, CountIsTriangularNumber) {
  for (int n = 1; n <= 6; ++n) {
    Backend b = Backend::type_a("A", n);
    EXPECT_EQ(static_cast<int>(positive_roots(b, DimVector(n, 1)).size()), n * (n + 1) / 2);
  }
}

TEST(PositiveRoots, A3IndecomposablesOverF2MatchBruteForce) {
  Backend a3 = Backend::type_a("A3", 3, {true, false});
  auto f = Field::get(2);
  std::set<DimVector> seen;
  for (int x = 0; x <= 1; ++x)
    for (int y = 0; y <= 2; ++y)
      for (int z = 0; z <= 1; ++z) {
        MatrixRep base = zero_rep(a3, {x, y, z}, 2);
        for_each_matrix(*f, base.maps[0].rows, base.maps[0].cols, [&](const Matrix& m0) {
          for_each_matrix(*f, base.maps[1].rows, base.maps[1].cols, [&](const Matrix& m1) {
            MatrixRep m = base;
            m.maps[0] = m0;
            m.maps[1] = m1;
            if (brute_indecomposable(m)) seen.insert({x, y, z});
          });
        });
      }
  std::set<DimVector> roots;
  for (auto& r : positive_roots(a3, {1, 2, 1})) roots.insert(r.dim);
  EXPECT_EQ(seen, roots);
}

TEST(PositiveRoots, RejectsNonDynkinBackends) {
  EXPECT_THROW(positive_roots(Backend::loop_nilpotent(), {3}), CapabilityError);
}

TEST(Realize, IntervalAndJordanForms) {
  MatrixRep p12 = realize(a2(), root_label({1, 1}), 2);
  EXPECT_EQ(p12.dims, (std::vector<int>{1, 1}));
  EXPECT_EQ(p12.maps[0](0, 0), 1);

  MatrixRep s1 = realize(a2(), root_label({1, 0}), 3);
  EXPECT_EQ(s1.dims, (std::vector<int>{1, 0}));
  EXPECT_EQ(s1.maps[0].rows, 0);
  EXPECT_EQ(s1.maps[0].cols, 1);

  MatrixRep j2 = realize(Backend::loop_nilpotent(), block_label(2), 2);
  Matrix expected(2, 2);
  expected(0, 1) = 1;
  EXPECT_EQ(j2.maps[0], expected);
}

TEST(Realize, ClassesAreBlockDiagonal) {
  IsoClass s1s2({root_label({1, 0}), root_label({0, 1})});
  MatrixRep m = realize_class(a2(), s1s2, 2);
  EXPECT_EQ(m.dims, (std::vector<int>{1, 1}));
  EXPECT_EQ(m.maps[0](0, 0), 0);

  MatrixRep zero = realize_class(a2(), IsoClass{}, 2);
  EXPECT_EQ(zero.total_dim(), 0);

  MatrixRep twice = realize_class(a2(), IsoClass({root_label({1, 1}), root_label({1, 1})}), 3);
  EXPECT_EQ(twice.maps[0], Matrix::identity(2));
}

TEST(HomDim, SpecExamples) {
  auto s1 = realize(a2(), root_label({1, 0}), 2);
  auto s2 = realize(a2(), root_label({0, 1}), 2);
  auto p12 = realize(a2(), root_label({1, 1}), 2);
  EXPECT_EQ(hom_dim(s1, s1), 1);
  EXPECT_EQ(hom_dim(s1, s2), 0);
  EXPECT_EQ(hom_dim(p12, s1), 1);
}

TEST(HomDim, AgreesWithBruteForceHomCount) {
  Backend loop = Backend::loop_nilpotent();
  for (int q : {2, 3}) {
    for (auto& x : classes_up_to(a2(), 3))
      for (auto& y : classes_up_to(a2(), 3)) {
        auto m = realize_class(a2(), x, q), n = realize_class(a2(), y, q);
        EXPECT_EQ(brute_hom_count(m, n), ipow(q, hom_dim(m, n)));
      }
    for (auto& x : classes_up_to(loop, 2))
      for (auto& y : classes_up_to(loop, 2)) {
        auto m = realize_class(loop, x, q), n = realize_class(loop, y, q);
        EXPECT_EQ(brute_hom_count(m, n), ipow(q, hom_dim(m, n)));
      }
  }
}

TEST(Decompose, SpecExamples) {
  EXPECT_TRUE(decompose(a2(), zero_rep(a2(), {0, 0}, 2)).is_zero());
  IsoClass p12({root_label({1, 1})});
  EXPECT_EQ(decompose(a2(), realize_class(a2(), p12, 2)), p12);
  MatrixRep m = rep_from_integers(a2(), {2, 2}, {{{1, 0}, {0, 0}}}, 2);
  EXPECT_EQ(decompose(a2(), m), IsoClass({root_label({1, 1}), root_label({1, 0}), root_label({0, 1})}));
}

TEST(Decompose, RoundTripUpToDimFive) {
  std::vector<Backend> backends{a2(), Backend::type_a("A3", 3), Backend::type_a("A3op", 3, {true, false}),
                                Backend::loop_nilpotent()};
  for (auto& b : backends)
    for (int q : {2, 3, 5})
      for (auto& c : classes_up_to(b, 5)) EXPECT_EQ(decompose(b, realize_class(b, c, q)), c) << b.class_name(c);
}

TEST(Decompose, GammaIsAdditive) {
  Backend a3 = Backend::type_a("A3", 3);
  auto cs = classes_up_to(a3, 3);
  for (auto& x : cs)
    for (auto& y : cs) EXPECT_EQ((x + y).gamma(), x.gamma() + y.gamma());
}

TEST(Decompose, FieldIndependentOnZeroOneMatrices) {
  // A2 with dims (2,2): 0/1 matrices have determinant in {-1,0,1}.
  for (int bits = 0; bits < 16; ++bits) {
    std::vector<std::vector<long long>> mat{{bits & 1, (bits >> 1) & 1}, {(bits >> 2) & 1, (bits >> 3) & 1}};
    IsoClass ref = decompose(a2(), rep_from_integers(a2(), {2, 2}, {mat}, 2));
    for (int p : {3, 5, 7}) EXPECT_EQ(decompose(a2(), rep_from_integers(a2(), {2, 2}, {mat}, p)), ref);
  }
  Backend loop = Backend::loop_nilpotent();
  for (int bits = 0; bits < 8; ++bits) {
    std::vector<std::vector<long long>> mat{{0, bits & 1, (bits >> 1) & 1}, {0, 0, (bits >> 2) & 1}, {0, 0, 0}};
    IsoClass ref = decompose(loop, rep_from_integers(loop, {3}, {mat}, 2));
    for (int p : {3, 5, 7}) EXPECT_EQ(decompose(loop, rep_from_integers(loop, {3}, {mat}, p)), ref);
  }
}

TEST(Decompose, JordanFastPathAgrees) {
  Backend loop = Backend::loop_nilpotent();
  auto f = Field::get(3);
  for_each_matrix(*f, 3, 3, [&](const Matrix& x) {
    MatrixRep m = zero_rep(loop, {3}, 3);
    m.maps[0] = x;
    Matrix cube = multiply(*f, multiply(*f, x, x), x);
    if (!is_zero(cube)) return;  // nilpotent only
    EXPECT_EQ(jordan_type(m), decompose(loop, m));
  });
}

TEST(Backend, ParsesDefinitionFiles) {
  Backend b = Backend::from_json_text(
      R"({"name":"A2","kind":"dynkin-quiver","vertices":["1","2"],"arrows":[{"id":"a","src":"1","tgt":"2"}]})");
  EXPECT_EQ(b.vertex_count(), 2u);
  EXPECT_EQ(b.class_name(IsoClass({root_label({1, 1}), root_label({1, 0})})), "[S1+P12]");
  EXPECT_EQ(b.parse_class("[S1 + 2*P12]"), IsoClass({root_label({1, 0}), root_label({1, 1}), root_label({1, 1})}));
  EXPECT_EQ(b.parse_class("[0]"), IsoClass{});
  EXPECT_EQ(b.parse_label("(1,1)"), root_label({1, 1}));
}

TEST(Backend, ReportsErrorLocations) {
  try {
    Backend::from_json_text(R"({"name":"A2", "kind": })");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset, 22u);
  }
  EXPECT_THROW(Backend::from_json_text(R"({"name":"X","kind":"dynkin-quiver","vertices":["1","2","3"],
      "arrows":[{"id":"a","src":"1","tgt":"3"},{"id":"b","src":"2","tgt":"3"}]})"),
               ParseError);
  EXPECT_THROW(Backend::from_json_text(R"({"name":"X","kind":"tree"})"), ParseError);
  EXPECT_THROW(Backend::from_json_text(R"({"name":"X","kind":"dynkin-quiver","vertices":["1","1"],"arrows":[]})"),
               ParseError);
}
