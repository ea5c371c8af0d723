#include <gtest/gtest.h>

#include "hallforge/errors.hpp"
#include "hallforge/expr.hpp"

using namespace hallforge;

namespace {

Backend a2() { return Backend::load(HALLFORGE_BACKEND_DIR "/a2.json"); }
Backend p1() { return Backend::load(HALLFORGE_BACKEND_DIR "/p1.json"); }

std::size_t offset_of(const Backend& b, const std::string& text) {
  try {
    parse_element(b, text);
  } catch (const ParseError& e) {
    return e.offset;
  }
  ADD_FAILURE() << "no parse error for " << text;
  return 0;
}

}  // namespace

TEST(Expr, Classes) {
  auto b = a2();
  EXPECT_EQ(parse_element(b, "[S1+S1+P12]"), CFElement::of_class(b.parse_class("[S1+S1+P12]")));
  EXPECT_EQ(parse_element(b, "[0]"), CFElement::unit());
  EXPECT_EQ(parse_element(b, " 3/2 * [S2] - [S1]"),
            CFElement::of_class(b.parse_class("[S2]"), Rational(3, 2)) - CFElement::of_class(b.parse_class("[S1]")));
  EXPECT_EQ(parse_element(b, "-[S1] + -2*[S1]"), CFElement::of_class(b.parse_class("[S1]"), -3));
}

TEST(Expr, Families) {
  auto b = a2();
  auto simples = CFElement::of_class(b.parse_class("[S1]")) + CFElement::of_class(b.parse_class("[S2]"));
  EXPECT_EQ(parse_element(b, "Simples"), simples);
  EXPECT_EQ(parse_element(b, "{S2,S1}"), simples);
  EXPECT_EQ(parse_set(b, "[S1] | [S2]"), parse_set(b, "Simples"));
  EXPECT_EQ(parse_element(b, "<2 Simples>"),
            CFElement::indicator(ConstructibleSet::normalize({Stratum({{parse_family(b, "Simples"), 2}})})));
  auto q = p1();
  EXPECT_EQ(parse_family(q, "O1"), IndecFamily::torsion(1, P1Set::all()));
  EXPECT_EQ(parse_family(q, "T2@*\\{x,y}"), IndecFamily::torsion(2, P1Set::cofinite({"x", "y"})));
  EXPECT_EQ(parse_family(q, "O1x"), IndecFamily::torsion(1, P1Set::cofinite({"x"})));
  EXPECT_EQ(parse_family(q, "Ox"), IndecFamily::finite({torsion_label(1, "x")}));
}

TEST(Expr, RoundTripsCanonicalText) {
  auto b = a2();
  Algebra alg(b);
  auto f = alg.convolve(parse_element(b, "Simples"), parse_element(b, "[S2] + 1/3*[P12]"));
  EXPECT_EQ(parse_element(b, f.to_text(b)), f);
  auto q = p1();
  Algebra pa(q);
  auto g = pa.convolve(parse_element(q, "O1"), parse_element(q, "O1 - [T1@x]"));
  EXPECT_EQ(parse_element(q, g.to_text(q)), g);
}

TEST(Expr, ErrorsCarryOffsets) {
  auto b = a2();
  EXPECT_EQ(offset_of(b, "[S1] + [Q7]"), 7u);
  EXPECT_EQ(offset_of(b, "[S1] +"), 6u);
  EXPECT_EQ(offset_of(b, "[S1] [S2]"), 5u);
  EXPECT_EQ(offset_of(b, "Nope"), 0u);
  EXPECT_EQ(offset_of(b, "<2 Simples"), 10u);
  EXPECT_EQ(offset_of(b, "(S1"), 1u);
  EXPECT_THROW(parse_element(b, "T1@*"), ParseError);
}
