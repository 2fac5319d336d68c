#include <gtest/gtest.h>

#include <random>

#include "ptorsion/exp_log.hpp"
#include "ptorsion/scalar.hpp"

using namespace ptorsion;

namespace {

// Independent oracle: exp(x) as an exact rational partial sum, reduced mod p^n.
Int exp_oracle(std::int64_t p, const Int& x, std::int64_t n, std::int64_t terms) {
  Rat sum = 0;
  Rat term = 1;
  for (std::int64_t j = 0; j <= terms; ++j) {
    if (j > 0) term = term * Rat(x) / Rat(j);
    sum += term;
  }
  sum.canonicalize();
  const Int m = int_pow(p, n);
  return mod(sum.get_num() * inverse_mod(sum.get_den(), m), m);
}

Int representative_mod(const PadicScalar& x, std::int64_t n) {
  return mod(x.representative(), int_pow(x.prime(), n));
}

}  // namespace

TEST(PadicArith, CancellationGivesZeroToPrecision) {
  const auto x = padic_integer(5, 5, 10);
  const auto y = padic_integer(5, -5, 8);
  const auto s = x + y;
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(s.abs_precision(), 9);  // min(1 + 10, 1 + 8)
}

TEST(PadicArith, SquareOfTwo) {
  const auto x = padic_integer(5, 2, 6);
  const auto sq = x * x;
  EXPECT_EQ(sq.valuation(), 0);
  EXPECT_EQ(sq.unit(), 4);
  EXPECT_EQ(sq.rel_precision(), 6);
}

TEST(PadicArith, CancellationReducesRelativePrecision) {
  const auto x = padic_integer(3, 1, 10);
  const auto y = padic_integer(3, 8, 10);  // 1 + 8 = 9 = 3^2
  const auto s = x + y;
  EXPECT_EQ(s.valuation(), 2);
  EXPECT_EQ(s.rel_precision(), 8);
}

TEST(PadicArith, InverseOfThreeTimesUnit) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::int64_t m = 12;
    const Int k = Int(static_cast<unsigned long>(rng() % 100000));
    const auto x = padic_integer(3, 3 * (1 + 3 * k), m);
    const auto inv = x.inverse();
    EXPECT_EQ(inv.valuation(), -1);
    const Int pm = int_pow(3, m);
    EXPECT_EQ(mod(inv.unit() * (1 + 3 * k), pm), 1);
    const auto prod = x * inv;
    EXPECT_TRUE(equal_at(prod, padic_integer(3, 1, m), m));
  }
}

TEST(PadicArith, InverseOfZeroThrows) {
  EXPECT_THROW(PadicScalar::zero(PrimeField::make(5), 4).inverse(), PrecisionError);
}

TEST(PadicArith, RationalConstruction) {
  const auto x = padic_rational(5, Rat(1, 10), 5);
  EXPECT_EQ(x.valuation(), -1);
  EXPECT_EQ(x.rel_precision(), 6);
  const auto back = x * padic_integer(5, 10, 8);
  EXPECT_TRUE(equal_at(back, padic_integer(5, 1, 5), 5));
}

TEST(PadicArith, UltrametricOnRandomSamples) {
  std::mt19937_64 rng(11);
  for (std::int64_t p : {2, 3, 5, 7}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Int a = Int(static_cast<unsigned long>(rng() % 1000000 + 1));
      const Int b = Int(static_cast<unsigned long>(rng() % 1000000 + 1)) * (trial % 3 ? 1 : p);
      const auto x = padic_integer(p, a, 30);
      const auto y = padic_integer(p, b, 30);
      const auto s = x + y;
      if (!s.is_zero()) {
        EXPECT_GE(s.valuation(), std::min(x.valuation(), y.valuation()));
        if (x.valuation() != y.valuation()) {
          EXPECT_EQ(s.valuation(), std::min(x.valuation(), y.valuation()));
        }
      }
      EXPECT_EQ((x * y).valuation(), x.valuation() + y.valuation());
    }
  }
}

TEST(Teichmuller, IdentityLiftsToOne) {
  auto field = PrimeField::make(5);
  const auto w = teichmuller(field, ResidueElement(field->residue_field(), {1}), 10);
  EXPECT_TRUE(equal_at(w, padic_integer(5, 1, 10), 10));
}

TEST(Teichmuller, TwoModFiveToPrecisionTwo) {
  auto field = PrimeField::make(5);
  const auto w = teichmuller(field, ResidueElement(field->residue_field(), {2}), 2);
  EXPECT_EQ(w.unit(), 7);
  // Oracle: 7^4 = 2401 = 1 mod 25 and 7 = 2 mod 5.
  EXPECT_EQ(mod(Int(2401), Int(25)), 1);
  EXPECT_EQ(w.unit() % 5, 2);
}

TEST(Teichmuller, GeneratorOfF9HasOrderEight) {
  auto rf = ResidueField::make(3, 2);
  const auto g = residue_generator(rf);
  EXPECT_EQ(g.order(), 8);
  const auto w = teichmuller(g, 20);
  const auto one = w.one(20);
  EXPECT_TRUE(equal_at(w.pow(8), one, 20));
  EXPECT_FALSE(equal_at(w.pow(4), one, 20));
  EXPECT_TRUE(w.residue() == g);
}

TEST(Teichmuller, MultiplicativeExhaustiveSmallFields) {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {7, 1},
                                                      {2, 2}, {3, 2}, {5, 2}, {7, 2}}) {
    auto rf = ResidueField::make(p, f);
    auto field = UnramifiedField::make(p, f);
    std::vector<UnramifiedScalar> lifts;
    std::vector<ResidueElement> elems;
    for (Int n = 1; n < rf->size(); ++n) {
      elems.push_back(ResidueElement::from_index(rf, n));
      lifts.push_back(teichmuller(field, elems.back(), 8));
    }
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (std::size_t j = 0; j < elems.size(); ++j) {
        const auto prod = elems[i] * elems[j];
        const auto k = static_cast<std::size_t>(prod.index().get_si()) - 1;
        EXPECT_TRUE(equal_at(lifts[i] * lifts[j], lifts[k], 8));
      }
    }
  }
}

TEST(Teichmuller, ZeroResidueThrows) {
  auto field = PrimeField::make(5);
  EXPECT_THROW(teichmuller(field, ResidueElement(field->residue_field(), {}), 4), DomainError);
}

TEST(ResidueFieldChoice, SmallestMonicIrreducible) {
  // Over F_5, x^2 + 2 is irreducible (-2 = 3 is a non-square) and nothing smaller is.
  EXPECT_EQ(ResidueField::make(5, 2)->modulus(), (fp::Poly{2, 0, 1}));
  // Over F_2, x^2 + x + 1 is the only irreducible quadratic.
  EXPECT_EQ(ResidueField::make(2, 2)->modulus(), (fp::Poly{1, 1, 1}));
  EXPECT_EQ(ResidueField::make(7, 1)->modulus(), (fp::Poly{0, 1}));
}

TEST(PadicExp, ZeroMapsToOne) {
  const auto e = padic_exp(PadicScalar::zero(PrimeField::make(7), 10), 10);
  EXPECT_TRUE(equal_at(e, padic_integer(7, 1, 10), 10));
}

TEST(PadicExp, ExpOfFiveModFiveToTheFour) {
  const auto e = padic_exp(padic_integer(5, 5, 10), 4);
  EXPECT_EQ(e.abs_precision(), 4);
  EXPECT_EQ(representative_mod(e, 4), 456);
  EXPECT_EQ(exp_oracle(5, 5, 4, 3), 456);
}

TEST(PadicExp, MatchesRationalOracle) {
  for (std::int64_t p : {2, 3, 5, 7}) {
    const std::int64_t vmin = exp_disc_valuation(p);
    for (std::int64_t u = 1; u < 20; ++u) {
      const Int x = int_pow(p, vmin) * u;
      const auto e = padic_exp(padic_integer(p, x, 40), 15);
      EXPECT_EQ(representative_mod(e, 15), exp_oracle(p, x, 15, 80)) << p << " " << u;
    }
  }
}

TEST(PadicExp, OutsideDiscThrows) {
  EXPECT_THROW(padic_exp(padic_integer(5, 1, 10), 5), DomainError);
  EXPECT_THROW(padic_exp(padic_integer(2, 2, 10), 5), DomainError);
}

TEST(PadicExp, HomomorphismAndLogInverse) {
  std::mt19937_64 rng(3);
  for (std::int64_t p : {2, 3, 5, 7}) {
    const std::int64_t vmin = exp_disc_valuation(p);
    for (int trial = 0; trial < 40; ++trial) {
      const Int a = int_pow(p, vmin + static_cast<std::int64_t>(rng() % 3)) *
                    Int(static_cast<unsigned long>(rng() % 1000000));
      const Int b = int_pow(p, vmin) * Int(static_cast<unsigned long>(rng() % 1000000));
      const auto x = padic_integer(p, a, 30).as_exact(30);
      const auto y = padic_integer(p, b, 30).as_exact(30);
      const auto lhs = padic_exp(x + y, 30);
      const auto rhs = padic_exp(x, 30) * padic_exp(y, 30);
      EXPECT_TRUE(equal_at(lhs, rhs, 30));
      EXPECT_TRUE(equal_at(padic_log(padic_exp(x, 30), 30), x, 30));
      const auto z = padic_exp(y, 30);
      EXPECT_TRUE(equal_at(padic_exp(padic_log(z, 30), 30), z, 30));
      EXPECT_TRUE(equal_at(padic_log(z * z, 30), padic_log(z, 30) + padic_log(z, 30), 30));
    }
  }
}

TEST(PadicLog, ExampleValues) {
  EXPECT_TRUE(padic_log(padic_integer(5, 1, 10), 10).is_zero());
  const auto l = padic_log(padic_integer(5, 456, 4), 4);
  EXPECT_TRUE(equal_at(l, padic_integer(5, 5, 3), 4));
  EXPECT_THROW(padic_log(padic_integer(5, 2, 4), 4), DomainError);
  EXPECT_THROW(padic_log(padic_integer(2, 3, 4), 4), DomainError);
}

TEST(PadicExp, PrecisionSoundness) {
  for (std::int64_t p : {3, 5}) {
    for (std::int64_t u = 1; u < 30; ++u) {
      const auto x = padic_integer(p, p * u, 60).as_exact(60);
      const auto lo = padic_exp(x, 20);
      const auto hi = padic_exp(x, 40);
      EXPECT_EQ(hi.with_abs_precision(20), lo);
    }
  }
}

TEST(Unramified, ExpLogOverQ25) {
  auto field = UnramifiedField::make(5, 2);
  const std::vector<Int> c{Int(5), Int(10)};
  const auto x = UnramifiedScalar::from_value(field, 0, c, 20);
  EXPECT_EQ(x.valuation(), 1);
  const auto e = padic_exp(x, 20);
  EXPECT_TRUE(equal_at(padic_log(e, 20), x, 20));
  const auto inv = e.inverse();
  EXPECT_TRUE(equal_at(inv * e, e.one(20), 20));
}
