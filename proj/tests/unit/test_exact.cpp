#include <gtest/gtest.h>

#include <random>

#include "prebloch/factor.hpp"
#include "prebloch/text.hpp"

using namespace prebloch;

namespace {

using PF = Poly<PrimeField>;
using PQ = Poly<RationalField>;

PF fp(const char* s, std::uint64_t p) { return parse_poly(s, PrimeField(p)); }
PQ qp(const char* s) { return parse_poly(s, RationalField{}); }

PF random_poly(const PrimeField& k, int deg, std::mt19937_64& rng) {
  std::vector<Fp> c;
  for (int i = 0; i <= deg; ++i) c.push_back(k.from_index(rng()));
  return PF(k, c);
}

// Brute-force irreducibility: no monic divisor of degree 1..deg/2.
bool brute_irreducible(const PF& f) {
  const PrimeField& k = f.field();
  std::uint64_t p = k.characteristic();
  for (int e = 1; 2 * e <= f.degree(); ++e) {
    std::uint64_t count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<Fp> c;
      std::uint64_t r = idx;
      for (int i = 0; i < e; ++i) {
        c.push_back(k.from_index(r % p));
        r /= p;
      }
      c.push_back(k.one());
      if ((f % PF(k, c)).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Divmod, ExamplesMultiplyBack) {
  PF a = fp("t^3+1", 5), b = fp("t+1", 5);
  auto [q, r] = poly_divmod(a, b);
  EXPECT_EQ(q * b + r, a);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(q, fp("t^2+4*t+1", 5));

  auto [q1, r1] = poly_divmod(a, PF::one(PrimeField(5)));
  EXPECT_EQ(q1, a);
  EXPECT_TRUE(r1.is_zero());

  PF c = fp("(t+1)(t+2)", 5), d = fp("t^2+2", 5);
  auto [q2, r2] = poly_divmod(c, d);
  EXPECT_EQ(q2 * d + r2, c);
  EXPECT_LT(r2.degree(), d.degree());
  EXPECT_EQ(q2, fp("1", 5));
  EXPECT_EQ(r2, fp("3*t", 5));  // t^2+3t+2 - (t^2+2)
}

TEST(Divmod, Errors) {
  PF a = fp("t", 5);
  try {
    poly_divmod(a, PF(PrimeField(5)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDivisor);
  }
  try {
    poly_divmod(a, fp("t", 7));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FieldMismatch);
  }
}

TEST(Divmod, RandomProperty) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    PrimeField k(i % 2 ? 5 : 7);
    PF a = random_poly(k, static_cast<int>(rng() % 8), rng);
    PF b = random_poly(k, static_cast<int>(rng() % 5), rng);
    if (b.is_zero()) continue;
    auto [q, r] = poly_divmod(a, b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_LT(r.degree(), b.degree());
  }
}

TEST(Factor, Examples) {
  auto f = factor_poly(fp("t^2+1", 5));
  EXPECT_EQ(f.unit, PrimeField(5).one());
  ASSERT_EQ(f.factors.size(), 2U);
  EXPECT_EQ(f.factors[0].first.poly(), fp("t+2", 5));
  EXPECT_EQ(f.factors[1].first.poly(), fp("t+3", 5));

  auto g = factor_poly(fp("t^2+2", 5));
  ASSERT_EQ(g.factors.size(), 1U);
  EXPECT_EQ(g.factors[0].first.poly(), fp("t^2+2", 5));
  // -2 = 3 is a non-residue mod 5: no root exists
  for (long long x = 0; x < 5; ++x) EXPECT_NE((x * x + 2) % 5, 0);

  auto h = factor_poly(qp("6*t"));
  EXPECT_EQ(h.unit, 1);
  ASSERT_EQ(h.factors.size(), 3U);
  EXPECT_EQ(h.factors[0].first.poly(), qp("2"));
  EXPECT_EQ(h.factors[1].first.poly(), qp("3"));
  EXPECT_EQ(h.factors[2].first.poly(), qp("t"));
}

TEST(Factor, ZeroInput) {
  EXPECT_THROW(factor_poly(PF(PrimeField(5))), Error);
}

TEST(Factor, RandomReassemblyAndIrreducibility) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    PrimeField k(i % 3 == 0 ? 3 : (i % 3 == 1 ? 5 : 7));
    PF a = random_poly(k, 1 + static_cast<int>(rng() % 8), rng);
    if (a.is_zero()) continue;
    auto fz = factor_poly(a);
    PF prod = PF::constant(k, fz.unit);
    for (auto& [q, m] : fz.factors) {
      prod = prod * poly_pow(q.poly(), static_cast<unsigned>(m));
      EXPECT_TRUE(q.poly().is_monic());
      if (q.degree() <= 4) {
        EXPECT_TRUE(brute_irreducible(q.poly())) << to_string(q.poly());
      }
    }
    EXPECT_EQ(prod, a);
    for (std::size_t j = 1; j < fz.factors.size(); ++j) EXPECT_TRUE(fz.factors[j - 1].first < fz.factors[j].first);
  }
}

TEST(Factor, RepeatedFactorsAndPthPowers) {
  PrimeField k(3);
  PF a = poly_pow(fp("t+1", 3), 3) * poly_pow(fp("t^2+1", 3), 2) * fp("t", 3);
  auto fz = factor_poly(a);
  ASSERT_EQ(fz.factors.size(), 3U);
  EXPECT_EQ(fz.factors[0].first.poly(), fp("t", 3));
  EXPECT_EQ(fz.factors[1].second, 3);
  EXPECT_EQ(fz.factors[2].second, 2);
}

TEST(Factor, RationalsOracle) {
  // (t^2-2)(t+1/3)^2 (2t^3+t+5) * (-7/4)
  PQ a = qp("t^2-2") * poly_pow(qp("t+1/3"), 2) * qp("2*t^3+t+5") * PQ::constant(RationalField{}, mpq_class(-7, 4));
  auto fz = factor_poly(a);
  EXPECT_EQ(fz.unit, -1);
  PQ prod = PQ::constant(RationalField{}, fz.unit);
  for (auto& [q, m] : fz.factors) {
    if (q.is_constant()) {
      mpq_class v = q.poly().leading();
      for (int j = 0; j < std::abs(m); ++j) prod = prod.scaled(m > 0 ? v : 1 / v);
    } else {
      prod = prod * poly_pow(q.poly(), static_cast<unsigned>(m));
    }
  }
  EXPECT_EQ(prod, a);
  int polys = 0;
  for (auto& [q, m] : fz.factors) polys += q.is_constant() ? 0 : 1;
  EXPECT_EQ(polys, 3);
}

TEST(Factor, RationalsSplitAcrossModularFactors) {
  // t^4+1 is irreducible over Q but splits modulo every prime.
  auto fz = factor_poly(qp("t^4+1"));
  ASSERT_EQ(fz.factors.size(), 1U);
  auto g = factor_poly(qp("(t^2+t+1)(t^2-t+1)"));
  ASSERT_EQ(g.factors.size(), 2U);
  EXPECT_EQ(g.factors[0].first.poly(), qp("t^2-t+1"));
  EXPECT_EQ(g.factors[1].first.poly(), qp("t^2+t+1"));
}

TEST(Factor, RationalsBeyondBound) {
  try {
    factor_poly(qp("t^9+1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FactorizationUnsupported);
  }
  EXPECT_THROW(factor_poly(qp("t^2+10000001")), Error);
}

TEST(RatFunc, NormalizeExamples) {
  PrimeField k(5);
  auto x = rf_normalize(fp("2*t+2", 5), fp("t+1", 5));
  EXPECT_EQ(x, RatFunc<PrimeField>(fp("2", 5)));
  auto y = rf_normalize(fp("t^2", 5), fp("t", 5));
  EXPECT_EQ(y, RatFunc<PrimeField>(fp("t", 5)));
  auto z = rf_normalize(fp("t+1", 5), fp("2*t+4", 5));
  EXPECT_EQ(z.num(), fp("3*t+3", 5));
  EXPECT_EQ(z.den(), fp("t+2", 5));
  // cross-multiplication oracle
  EXPECT_EQ(z.num() * fp("2*t+4", 5), z.den() * fp("t+1", 5));
  EXPECT_EQ(rf_normalize(z.num(), z.den()), z);
  EXPECT_THROW(rf_normalize(fp("t", 5), PF(k)), Error);
}

TEST(Text, RoundTrip) {
  RationalField Q;
  for (const char* s : {"t^2+3*t+1", "1/2*t-3", "-t^3+t", "0", "7"}) EXPECT_EQ(to_string(parse_poly(s, Q)), s);
  EXPECT_EQ(to_string(parse_ratfunc("(t+1)/(t+2)", PrimeField(5))), "(t+1)/(t+2)");
  EXPECT_EQ(to_string(parse_ratfunc("2/t", PrimeField(5))), "2/t");
  EXPECT_EQ(to_string(parse_ratfunc("t^2/3", Q)), "1/3*t^2");
  EXPECT_THROW(parse_poly("t+", Q), Error);
  EXPECT_THROW(parse_poly("t)", Q), Error);
}
