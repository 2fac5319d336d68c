#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ptorsion/jumping.hpp"

using namespace ptorsion;

namespace {

TorsionPoint trivial(std::int64_t d) { return TorsionPoint(static_cast<std::size_t>(d)); }

LaurentPoly var_minus(std::int64_t vars, std::int64_t i) { return builtin::tm1(vars, i); }

LaurentPoly mono(std::vector<std::int64_t> e, std::int64_t c) {
  auto f = CyclotomicField::make(1);
  return LaurentPoly::monomial(f, std::move(e), Cyclotomic::rational(f, Rat(c)));
}

}  // namespace

TEST(Specialize, Circle) {
  auto c = builtin::circle();
  EXPECT_EQ(specialize(c, trivial(1)), (IntVec{1, 1}));
  EXPECT_EQ(specialize(c, {QZ(1, 3)}), (IntVec{0, 0}));
  EXPECT_THROW(specialize(c, trivial(2)), InputError);
}

TEST(Specialize, Torus) {
  auto c = builtin::torus();
  EXPECT_EQ(specialize(c, trivial(2)), (IntVec{1, 2, 1}));
  for (const auto& t : torsion_grid(2, 6)) {
    if (t == trivial(2)) continue;
    EXPECT_EQ(specialize(c, t), (IntVec{0, 0, 0}));
  }
}

TEST(Specialize, SurfaceBettiAndEuler) {
  for (std::int64_t g = 1; g <= 3; ++g) {
    auto c = builtin::surface(g);
    EXPECT_EQ(specialize(c, trivial(2 * g)), (IntVec{1, 2 * g, 1}));
    EXPECT_EQ(c.euler_characteristic(), 2 - 2 * g);
  }
}

TEST(Specialize, GaloisConjugatesAgree) {
  auto c = builtin::surface(2);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t m = 2 + static_cast<std::int64_t>(rng() % 7);
    TorsionPoint t;
    for (int i = 0; i < 4; ++i) t.emplace_back(static_cast<std::int64_t>(rng() % 3 == 0 ? 0 : rng() % m), m);
    for (std::int64_t k = 1; k < m; ++k) {
      if (std::gcd(k, m) != 1) continue;
      TorsionPoint tk;
      for (const auto& q : t) tk.push_back(k * q);
      EXPECT_EQ(specialize(c, t), specialize(c, tk));
    }
  }
}

TEST(Complex, RejectsNonComplex) {
  Matrix<LaurentPoly> d0{{var_minus(1, 0)}};
  Matrix<LaurentPoly> d1{{var_minus(1, 0)}};
  EXPECT_THROW(TwistedComplex(1, {1, 1, 1}, {d0, d1}), InputError);
}

TEST(Scan, TorusFindsOnlyTrivial) {
  auto s = scan_torsion(builtin::torus(), 1, 0, 6);
  EXPECT_EQ(s.scanned, 36);
  ASSERT_EQ(s.hits.size(), 1u);
  EXPECT_EQ(s.hits[0], trivial(2));
  EXPECT_TRUE(s.euler_invariant);
}

TEST(Scan, WedgeOfThreeCircles) {
  auto c = builtin::wedge(3);
  auto s = scan_torsion(c, 1, 2, 6);
  ASSERT_EQ(s.hits.size(), 1u);
  EXPECT_EQ(s.hits[0], trivial(3));
  EXPECT_TRUE(s.euler_invariant);
  for (const auto& e : s.entries) EXPECT_EQ(e.h[1], e.character == trivial(3) ? 3 : 2);
  EXPECT_TRUE(scan_torsion(c, 1, 3, 4).hits.empty());
}

TEST(Scan, ParallelMatchesSerial) {
  auto c = builtin::surface(2);
  auto a = scan_torsion(c, 1, 2, 3, 1);
  auto b = scan_torsion(c, 1, 2, 3, 4);
  EXPECT_EQ(a.hits, b.hits);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t k = 0; k < a.entries.size(); ++k) EXPECT_EQ(a.entries[k].h, b.entries[k].h);
}

TEST(Fitting, CircleDegreeZero) {
  auto f = fitting_locus(builtin::circle(), 0, 0);
  ASSERT_EQ(f.generators.size(), 1u);
  EXPECT_EQ(f.generators[0], var_minus(1, 0));
}

TEST(Fitting, TorusSimplifiesToIdentityIdeal) {
  auto f = fitting_locus(builtin::torus(), 1, 0);
  ASSERT_EQ(f.generators.size(), 2u);
  std::set<std::string> got{f.generators[0].str(), f.generators[1].str()};
  EXPECT_EQ(got, (std::set<std::string>{var_minus(2, 0).str(), var_minus(2, 1).str()}));
}

TEST(Fitting, ConstantAndWholeCases) {
  auto f = fitting_locus(builtin::torus(), 1, 2);
  ASSERT_EQ(f.generators.size(), 1u);
  EXPECT_TRUE(f.generators[0].is_constant());
  // h^1 > 1 on the wedge of 3 circles holds everywhere: the zero ideal.
  auto w = fitting_locus(builtin::wedge(3), 1, 1);
  EXPECT_TRUE(w.generators.empty());
  EXPECT_FALSE(w.size_limited);
  auto big = fitting_locus(builtin::wedge(7), 1, 5);
  EXPECT_TRUE(big.size_limited);
}

TEST(Fitting, LocusMatchesScan) {
  for (const auto& [c, i, j] : std::vector<std::tuple<TwistedComplex, std::int64_t, std::int64_t>>{
           {builtin::torus(), 0, 0}, {builtin::torus(), 1, 0}, {builtin::torus(), 2, 0},
           {builtin::wedge(2), 1, 1}, {builtin::wedge(3), 0, 0}, {builtin::circle(), 1, 0}}) {
    auto f = fitting_locus(c, i, j);
    ASSERT_FALSE(f.size_limited);
    auto s = scan_torsion(c, i, j, 4);
    std::set<TorsionPoint> hits(s.hits.begin(), s.hits.end());
    for (const auto& t : torsion_grid(c.vars(), 4)) {
      bool in = true;
      for (const auto& g : f.generators) in = in && g.evaluate_at_roots(t).is_zero();
      EXPECT_EQ(in, hits.count(t) == 1);
    }
  }
}

TEST(Shape, Examples) {
  auto torus = shape_check({var_minus(2, 0), var_minus(2, 1)}, 2);
  EXPECT_TRUE(torus.confirmed);
  ASSERT_EQ(torus.cosets.size(), 1u);
  EXPECT_EQ(torus.cosets[0].dim(), 0);
  EXPECT_TRUE(contains(torus.cosets[0], trivial(2)));
  auto sub = shape_check({mono({1, 1}, 1) - mono({0, 0}, 1)}, 2);
  EXPECT_TRUE(sub.confirmed);
  ASSERT_EQ(sub.cosets.size(), 1u);
  EXPECT_EQ(sub.cosets[0].dim(), 1);
  auto none = shape_check({mono({1, 0}, 1) + mono({0, 1}, 1) - mono({0, 0}, 2)}, 2);
  EXPECT_FALSE(none.confirmed);
  EXPECT_EQ(none.verdict, "shape undetermined: non-binomial generators");
}

TEST(Shape, ConfirmedCosetsMatchScan) {
  for (const auto& [c, i, j] : std::vector<std::tuple<TwistedComplex, std::int64_t, std::int64_t>>{
           {builtin::torus(), 1, 0}, {builtin::surface(2), 1, 2}, {builtin::wedge(2), 0, 0}}) {
    auto f = fitting_locus(c, i, j);
    auto sh = shape_check(f.generators, c.vars());
    ASSERT_TRUE(sh.confirmed) << sh.verdict;
    const std::int64_t m = 3;
    std::set<TorsionPoint> from_shape;
    for (const auto& co : sh.cosets)
      for (const auto& t : enumerate_torsion(co, m)) from_shape.insert(t);
    auto s = scan_torsion(c, i, j, m);
    EXPECT_EQ(from_shape, std::set<TorsionPoint>(s.hits.begin(), s.hits.end()));
  }
}
