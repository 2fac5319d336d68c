#include <gtest/gtest.h>

#include <random>

#include "ptorsion/characters.hpp"

using namespace ptorsion;

namespace {

UnramifiedScalar uel(std::int64_t p, std::int64_t f, std::int64_t n, std::int64_t prec) {
  return UnramifiedScalar::from_integer(UnramifiedField::make(p, f), Int(n), prec);
}

ContinuousCharacter pro_p_character(std::int64_t p, std::int64_t prec, std::mt19937_64& rng, std::size_t d) {
  auto field = UnramifiedField::make(p, 1);
  std::vector<UnramifiedScalar> vals;
  const std::int64_t step = p == 2 ? 4 : p;
  for (std::size_t i = 0; i < d; ++i)
    vals.push_back(uel(p, 1, 1 + step * static_cast<std::int64_t>(rng() % 1000), prec));
  return ContinuousCharacter::make(field, prec, vals);
}

std::int64_t ipow_small(std::int64_t p, std::int64_t f) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < f; ++i) r *= p;
  return r;
}

}  // namespace

TEST(FgAbGroup, SmithExamples) {
  auto g = smith_decompose({{2, 0}, {0, 3}});
  EXPECT_EQ(g.rank, 0);
  EXPECT_EQ(g.invariant_factors, (IntVec{6}));
  auto z = smith_decompose({{0, 0}});
  EXPECT_EQ(z.rank, 2);
  EXPECT_TRUE(z.invariant_factors.empty());
  auto h = smith_decompose({{2, 4}, {4, 8}});
  EXPECT_EQ(h.rank, 1);
  EXPECT_EQ(h.invariant_factors, (IntVec{2}));
  auto e = smith_decompose({}, 3);
  EXPECT_EQ(e.rank, 3);
}

TEST(FgAbGroup, OrderOfTorsionMatchesDeterminant) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    IntMat r(3, IntVec(3));
    for (auto& row : r)
      for (auto& x : row) x = static_cast<std::int64_t>(rng() % 9) - 4;
    const auto det = int_determinant(r);
    auto g = smith_decompose(r);
    if (det == 0) {
      EXPECT_GT(g.rank, 0);
      continue;
    }
    std::int64_t prod = 1;
    for (auto m : g.invariant_factors) prod *= m;
    EXPECT_EQ(prod, std::abs(det));
    EXPECT_EQ(g.rank, 0);
  }
}

TEST(Characters, PhiCoordinates) {
  auto field = UnramifiedField::make(5, 1);
  auto triv = ContinuousCharacter::trivial(field, 4, 2);
  for (const auto& c : phi_coordinates(triv, 1)) EXPECT_TRUE(c.is_zero());
  auto e = padic_exp(uel(5, 1, 5, 4), 4);
  auto chi = ContinuousCharacter::make(field, 4, {e, uel(5, 1, 1, 4)});
  auto coords = phi_coordinates(chi, 1);
  EXPECT_EQ(coords[0], uel(5, 1, 455, 4).with_abs_precision(4));
  EXPECT_TRUE(coords[1].is_zero());
  auto bad = ContinuousCharacter::make(field, 4, {uel(5, 1, 2, 4)});
  EXPECT_THROW(phi_coordinates(bad, 1), DomainError);
  auto shallow = ContinuousCharacter::make(field, 4, {uel(5, 1, 6, 4)});
  EXPECT_THROW(phi_coordinates(shallow, 2), DomainError);
}

TEST(Characters, PhiIsHomomorphismOnGroupLaw) {
  std::mt19937_64 rng(23);
  for (std::int64_t p : {3, 5, 7}) {
    for (int trial = 0; trial < 30; ++trial) {
      auto a = pro_p_character(p, 12, rng, 3);
      auto b = pro_p_character(p, 12, rng, 3);
      auto ca = phi_coordinates(a, 1), cb = phi_coordinates(b, 1), cab = phi_coordinates(a * b, 1);
      for (std::size_t i = 0; i < 3; ++i) {
        const auto one = ca[i].make(Int(1), 12);
        EXPECT_TRUE(equal_at(cab[i], (one + ca[i]) * (one + cb[i]) - one, 12));
      }
    }
  }
}

TEST(Characters, PowContractsAndComposes) {
  auto field = UnramifiedField::make(5, 1);
  auto chi = ContinuousCharacter::make(field, 10, {uel(5, 1, 6, 10)});
  auto c5 = char_pow(chi, 5);
  EXPECT_EQ((c5.free[0] - c5.free[0].one(10)).valuation(), 2);
  EXPECT_EQ(char_pow(chi, 1).free[0], chi.free[0]);
  auto twice = char_pow(char_pow(chi, 5), 5);
  EXPECT_TRUE(equal_at(twice.free[0], char_pow(chi, 25).free[0], 10));
  auto t = TorsionCharacter::make({QZ(1, 4), QZ(1, 3)}, {QZ(5, 12)}, {12});
  EXPECT_EQ(t.order(), 12);
  auto t12 = char_pow(t, 12);
  for (const auto& q : t12.free) EXPECT_TRUE(q.is_zero());
  for (const auto& q : t12.torsion) EXPECT_TRUE(q.is_zero());
}

TEST(Characters, LogExpRoundTripAndHomomorphism) {
  std::mt19937_64 rng(29);
  for (std::int64_t p : {2, 3, 5}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto a = pro_p_character(p, 15, rng, 2);
      auto b = pro_p_character(p, 15, rng, 2);
      auto la = char_log(a), lb = char_log(b), lab = char_log(a * b);
      for (std::size_t i = 0; i < 2; ++i) EXPECT_TRUE(equal_at(lab[i], la[i] + lb[i], lab[i].abs_precision()));
      auto back = char_exp(la, 15);
      for (std::size_t i = 0; i < 2; ++i)
        EXPECT_TRUE(equal_at(back.free[i], a.free[i], back.free[i].abs_precision()));
    }
  }
  auto field = UnramifiedField::make(5, 1);
  auto chi = ContinuousCharacter::make(field, 4, {padic_exp(uel(5, 1, 5, 4), 4), uel(5, 1, 1, 4)});
  auto ell = char_log(chi);
  EXPECT_TRUE(equal_at(ell[0], uel(5, 1, 5, 4), 4));
  EXPECT_TRUE(ell[1].is_zero());
}

TEST(Characters, TeichmullerDecomposition) {
  auto field = UnramifiedField::make(5, 1);
  auto chi = ContinuousCharacter::make(field, 2, {uel(5, 1, 2, 2)});
  auto [lift, pro] = decompose_teichmuller(chi);
  EXPECT_EQ(lift.free[0], uel(5, 1, 7, 2));
  EXPECT_EQ(pro.free[0], uel(5, 1, 2, 2) * uel(5, 1, 7, 2).inverse());
  EXPECT_EQ((lift * pro).free, chi.free);
  auto [lift2, pro2] = decompose_teichmuller(lift);
  EXPECT_EQ(lift2.free, lift.free);
  EXPECT_TRUE(pro2.residue_trivial());
}

TEST(Characters, TeichmullerPartHasOrderDividingUnitGroup) {
  for (std::int64_t p : {2, 3, 5, 7}) {
    for (std::int64_t f : {1, 2}) {
      if (ipow_small(p, f) > 49) continue;
      auto field = UnramifiedField::make(p, f);
      const auto q1 = field->residue_field()->unit_group_order();
      for (Int idx = 1; idx < field->residue_field()->size(); ++idx) {
        auto xi = ResidueElement::from_index(field->residue_field(), idx);
        auto x = UnramifiedScalar::from_value(field, 0, field->lift(xi), 6);
        auto chi = ContinuousCharacter::make(field, 6, {x});
        auto [lift, pro] = decompose_teichmuller(chi);
        EXPECT_TRUE(lift.pow(to_int64(q1)).free[0] == lift.free[0].one(6));
        EXPECT_TRUE(pro.residue_trivial());
        EXPECT_EQ((lift * pro).free, chi.free);
      }
    }
  }
}

TEST(Characters, DecompositionIsMultiplicative) {
  std::mt19937_64 rng(31);
  auto field = UnramifiedField::make(7, 1);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = ContinuousCharacter::make(field, 8, {uel(7, 1, 1 + static_cast<std::int64_t>(rng() % 6) + 7 * static_cast<std::int64_t>(rng() % 100), 8)});
    auto b = ContinuousCharacter::make(field, 8, {uel(7, 1, 1 + static_cast<std::int64_t>(rng() % 6) + 7 * static_cast<std::int64_t>(rng() % 100), 8)});
    auto [la, pa] = decompose_teichmuller(a);
    auto [lb, pb] = decompose_teichmuller(b);
    auto [lab, pab] = decompose_teichmuller(a * b);
    EXPECT_EQ(lab.free, (la * lb).free);
    EXPECT_EQ(pab.free, (pa * pb).free);
  }
}

TEST(Characters, EmbedTorsion) {
  auto triv = TorsionCharacter::make({QZ(0, 1), QZ(0, 1)}, {}, {});
  auto e = embed_torsion(triv, 5, 6);
  for (const auto& x : e.free) EXPECT_EQ(x, x.one(6));
  auto t3 = TorsionCharacter::make({QZ(1, 3)}, {}, {});
  auto c3 = embed_torsion(t3, 5, 6);
  EXPECT_EQ(c3.field->degree(), 2);
  EXPECT_FALSE(c3.free[0] == c3.free[0].one(6));
  EXPECT_EQ(c3.free[0].pow(3), c3.free[0].one(6));
  EXPECT_THROW(embed_torsion(TorsionCharacter::make({QZ(1, 10)}, {}, {}), 5, 6), DomainError);
}

TEST(Characters, EmbedTorsionPreservesOrderAndProducts) {
  for (std::int64_t p : {3, 5, 7}) {
    for (std::int64_t n = 1; n <= 12; ++n) {
      if (n % p == 0) continue;
      for (std::int64_t k = 0; k < n; ++k) {
        auto t = TorsionCharacter::make({QZ(k, n)}, {}, {});
        auto u = TorsionCharacter::make({QZ(1, n)}, {}, {});
        auto ct = embed_torsion(t, p, 5);
        auto cu = embed_torsion(u, p, 5);
        auto ctu = embed_torsion(t * u, p, 5, cu.field->degree());
        ASSERT_EQ(ct.field->degree() <= cu.field->degree(), true);
        auto ct_big = embed_torsion(t, p, 5, cu.field->degree());
        EXPECT_EQ(ctu.free, (ct_big * cu).free);
        // Residue order equals the character order, pro-p part trivial.
        EXPECT_EQ(ct.free[0].residue().order(), Int(t.order()));
        auto [lift, pro] = decompose_teichmuller(ct);
        EXPECT_EQ(pro.free[0], pro.free[0].one(5));
      }
    }
  }
}
