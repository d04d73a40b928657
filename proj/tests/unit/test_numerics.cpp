#include <gtest/gtest.h>

#include <functional>
#include <numbers>
#include <random>

#include "prebloch/numerics/volume.hpp"
#include "prebloch/text.hpp"

using namespace prebloch;

namespace {

constexpr double kCatalan = 0.915965594177219015054603514932384110774;

Cx random_z(std::mt19937_64& rng, double r = 3.0) {
  std::uniform_real_distribution<double> u(-r, r);
  return {u(rng), u(rng)};
}

/// Im Li_2(z) + arg(1-z) log|z| straight from the power series, for |z| < 1.
double direct_bw(Cx z) {
  Cx s = 0, p = z;
  for (int n = 1; n < 4000; ++n, p *= z) s += p / static_cast<double>(n * n);
  return s.imag() + std::arg(1.0 - z) * std::log(std::abs(z));
}

/// sum (-1)^k / (2k+1)^2, averaging two partial sums of the alternating series.
long double catalan_series() {
  long double s = 0, prev = 0;
  const long n = 2000000;
  for (long k = 0; k <= n; ++k) {
    prev = s;
    long double d = 2.0L * k + 1;
    s += (k % 2 ? -1.0L : 1.0L) / (d * d);
  }
  return (s + prev) / 2;
}

Cx moebius(Cx a, Cx b, Cx c, Cx d, Cx z) { return (a * z + b) / (c * z + d); }

}  // namespace

TEST(BlochWigner, RealAxisVanishes) {
  for (double x : {-3.0, -0.5, 0.5, 0.999, 2.0, 10.0}) EXPECT_EQ(bloch_wigner(Cx(x, 0)), 0.0);
}

TEST(BlochWigner, CatalanAtI) {
  const double oracle = static_cast<double>(catalan_series());
  EXPECT_NEAR(oracle, kCatalan, 1e-14);
  EXPECT_NEAR(bloch_wigner(Cx(0, 1)), oracle, 1e-12);
}

TEST(BlochWigner, MatchesDirectSeriesInsideDisc) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    Cx z = random_z(rng, 0.8);
    if (std::abs(z) > 0.8 || std::abs(z) < 1e-3) continue;
    EXPECT_NEAR(bloch_wigner(z), direct_bw(z), 1e-12) << z;
  }
}

TEST(BlochWigner, Symmetries) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    Cx z = random_z(rng);
    if (std::abs(z) < 1e-6 || std::abs(1.0 - z) < 1e-6) continue;
    const double d = bloch_wigner(z);
    EXPECT_NEAR(d + bloch_wigner(1.0 / z), 0.0, 1e-10);
    EXPECT_NEAR(d + bloch_wigner(1.0 - z), 0.0, 1e-10);
    EXPECT_NEAR(d + bloch_wigner(std::conj(z)), 0.0, 1e-10);
    EXPECT_NEAR(d - bloch_wigner(1.0 / (1.0 - z)), 0.0, 1e-10);
  }
}

TEST(BlochWigner, RejectsPoles) {
  EXPECT_THROW(bloch_wigner(Cx(0, 0)), Error);
  EXPECT_THROW(bloch_wigner(Cx(1, 1e-14)), Error);
  EXPECT_THROW(bloch_wigner(Cx(std::nan(""), 0)), Error);
}

TEST(CrossRatio, NormalizationAndMarkers) {
  // (a-b)(c-d)/((c-b)(a-d)) at (inf, 0, 1, z) is 1 - z
  Cx z(0.3, 0.7);
  auto r = cross_ratio(CPoint::infinity(), CPoint::at(0), CPoint::at(1), CPoint::at(z));
  ASSERT_EQ(r.kind, CrossValue::Kind::Value);
  EXPECT_NEAR(std::abs(r.z - (1.0 - z)), 0.0, 1e-15);
  EXPECT_EQ(cross_ratio(CPoint::at(2), CPoint::at(2), CPoint::at(1), CPoint::at(z)).kind, CrossValue::Kind::Zero);
  EXPECT_EQ(cross_ratio(CPoint::at(2), CPoint::at(0), CPoint::at(0), CPoint::at(z)).kind, CrossValue::Kind::Infinity);
  EXPECT_THROW(cross_ratio(CPoint::infinity(), CPoint::infinity(), CPoint::at(1), CPoint::at(z)), Error);
}

TEST(CrossRatio, MoebiusInvariance) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    Cx p[4], a = random_z(rng), b = random_z(rng), c = random_z(rng), d = random_z(rng);
    for (auto& x : p) x = random_z(rng);
    auto r = cross_ratio(CPoint::at(p[0]), CPoint::at(p[1]), CPoint::at(p[2]), CPoint::at(p[3]));
    auto s = cross_ratio(CPoint::at(moebius(a, b, c, d, p[0])), CPoint::at(moebius(a, b, c, d, p[1])), CPoint::at(moebius(a, b, c, d, p[2])),
                         CPoint::at(moebius(a, b, c, d, p[3])));
    EXPECT_LE(std::abs(r.z - s.z), 1e-9 * std::max(1.0, std::abs(r.z)));
  }
}

TEST(FiveTerm, RandomTuplesVanish) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    std::array<CPoint, 5> x;
    for (auto& p : x) p = CPoint::at(random_z(rng));
    if (i % 4 == 0) x[i % 5] = CPoint::infinity();
    EXPECT_LE(std::abs(five_term_numeric(x)), 1e-9);
  }
}

TEST(FiveTerm, RealPointsAndDegenerate) {
  std::array<CPoint, 5> x{CPoint::at(-1), CPoint::at(0.5), CPoint::at(2), CPoint::at(3), CPoint::at(7)};
  EXPECT_EQ(five_term_numeric(x), 0.0);
  x[1] = CPoint::at(-1);
  EXPECT_THROW(five_term_numeric(x), Error);
}

TEST(Pslq, FindsAndRejects) {
  auto r = pslq({std::log(2.0), std::log(3.0), std::log(6.0)});
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(std::abs((*r)[0]), 1);
  EXPECT_EQ((*r)[0], (*r)[1]);
  EXPECT_EQ((*r)[2], -(*r)[0]);
  auto q = pslq({std::log(2.0), std::log(3.0), std::log(3.0) * 5 - 7 * std::log(2.0)});
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(std::abs((*q)[2]), 1);
  EXPECT_EQ((*q)[0], 7 * (*q)[2]);
  EXPECT_EQ((*q)[1], -5 * (*q)[2]);
  EXPECT_FALSE(pslq({1.0, std::numbers::pi, std::numbers::e}).has_value());
}

TEST(Dehn, ZeroCases) {
  ScissorsElt real;
  real.add(1, Cx(0.3, 0));
  EXPECT_TRUE(dehn_invariant(real).empty());
  ScissorsElt regular;
  regular.add(1, std::polar(1.0, std::numbers::pi / 3));
  EXPECT_TRUE(dehn_invariant(regular).empty());
}

TEST(Dehn, AdditiveBeforeCanonicalization) {
  ScissorsElt a, b, ab;
  a.add(2, Cx(0.2, 0.9));
  b.add(mpq_class(-1, 3), Cx(-1.5, 0.4));
  ab.add(2, Cx(0.2, 0.9));
  ab.add(mpq_class(-1, 3), Cx(-1.5, 0.4));
  DehnVec s = dehn_pairs(a);
  s += dehn_pairs(b);
  ASSERT_EQ(s.pairs.size(), dehn_pairs(ab).pairs.size());
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    EXPECT_DOUBLE_EQ(s.pairs[i].first, dehn_pairs(ab).pairs[i].first);
    EXPECT_DOUBLE_EQ(s.pairs[i].second, dehn_pairs(ab).pairs[i].second);
  }
}

TEST(Dehn, FiveTermAndSymmetry) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    std::array<Cx, 5> x;
    for (auto& p : x) p = random_z(rng);
    ScissorsElt s;
    for (int j = 0; j < 5; ++j) {
      std::array<CPoint, 4> q;
      for (int k = 0, m = 0; k < 5; ++k)
        if (k != j) q[static_cast<std::size_t>(m++)] = CPoint::at(x[static_cast<std::size_t>(k)]);
      auto r = cross_ratio(q[0], q[1], q[2], q[3]);
      s.add(j % 2 == 0 ? -1 : 1, r.z);
    }
    EXPECT_TRUE(dehn_invariant(s).empty()) << i;
    Cx z = random_z(rng);
    ScissorsElt one, other;
    one.add(1, z);
    other.add(1, 1.0 / (1.0 - z));
    EXPECT_FALSE(dehn_invariant(one).empty());
    auto c = dehn_compare(dehn_invariant(one), dehn_invariant(other));
    EXPECT_TRUE(c.equal);
    EXPECT_TRUE(c.heuristic);
  }
}

TEST(R2, SwapAntisymmetry) {
  RationalField q;
  auto f1 = factor_rational(parse_ratfunc("t", q)), f2 = factor_rational(parse_ratfunc("1-t", q)), f3 = factor_rational(parse_ratfunc("(t-2)/(t^2+1)", q));
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    Cx t = random_z(rng);
    EXPECT_NEAR(r2_eval(f1, f2, f3, t) + r2_eval(f2, f1, f3, t), 0.0, 1e-10);
    EXPECT_NEAR(r2_eval(f1, f2, f3, t) + r2_eval(f1, f3, f2, t), 0.0, 1e-10);
  }
}

TEST(R2, ConstantThirdFunction) {
  RationalField q;
  auto f = parse_ratfunc("t", q), g = parse_ratfunc("1-t", q);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    Cx t = random_z(rng);
    EXPECT_NEAR(r2_eval(f, g, parse_ratfunc("-1", q), t), 0.0, 1e-12);
    // a constant of modulus c != 1 leaves -(2/3) log|c| dlog|f1| ^ dlog|f2|
    Cx w1 = 1.0 / t, w2 = -1.0 / (1.0 - t);
    EXPECT_NEAR(r2_eval(f, g, parse_ratfunc("2", q), t), -2.0 / 3.0 * std::log(2.0) * detail::dlogabs_wedge(w1, w2), 1e-10);
  }
}

TEST(R2, FiniteDifferenceOracle) {
  using Fn = std::function<Cx(Cx)>;
  const std::array<Fn, 3> fs{[](Cx t) { return t; }, [](Cx t) { return 1.0 - t; }, [](Cx t) { return t - 2.0; }};
  const Cx t0(3, 1);
  const double h = 1e-5;
  std::array<double, 3> L{}, Lx{}, Ly{}, Ax{}, Ay{};
  for (std::size_t i = 0; i < 3; ++i) {
    const Fn& f = fs[i];
    L[i] = std::log(std::abs(f(t0)));
    Lx[i] = (std::log(std::abs(f(t0 + h))) - std::log(std::abs(f(t0 - h)))) / (2 * h);
    Ly[i] = (std::log(std::abs(f(t0 + Cx(0, h)))) - std::log(std::abs(f(t0 - Cx(0, h))))) / (2 * h);
    Ax[i] = std::arg(f(t0 + h) / f(t0 - h)) / (2 * h);
    Ay[i] = std::arg(f(t0 + Cx(0, h)) / f(t0 - Cx(0, h))) / (2 * h);
  }
  const int perms[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}, {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
  double oracle = 0;
  for (const auto& p : perms) {
    const auto i = static_cast<std::size_t>(p[0]), j = static_cast<std::size_t>(p[1]), k = static_cast<std::size_t>(p[2]);
    oracle += p[3] * (L[i] / 6 * (Lx[j] * Ly[k] - Ly[j] * Lx[k]) - L[i] / 2 * (Ax[j] * Ay[k] - Ay[j] * Ax[k]));
  }
  RationalField q;
  const double v = r2_eval(parse_ratfunc("t", q), parse_ratfunc("1-t", q), parse_ratfunc("t-2", q), t0);
  EXPECT_NEAR(v, oracle, 1e-6);
  EXPECT_GT(std::abs(v), 1e-4);
}

TEST(R2, NearSingularity) {
  RationalField q;
  try {
    r2_eval(parse_ratfunc("t", q), parse_ratfunc("1-t", q), parse_ratfunc("t-2", q), Cx(2, 1e-12));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NearSingularity);
  }
}

TEST(ComplexParse, Literals) {
  EXPECT_EQ(parse_complex("0+1i"), Cx(0, 1));
  EXPECT_EQ(parse_complex("-2.5-0.5i"), Cx(-2.5, -0.5));
  EXPECT_EQ(parse_complex("3"), Cx(3, 0));
  EXPECT_THROW(parse_complex("1+"), Error);
  EXPECT_THROW(parse_crat("t^"), Error);
  auto r = parse_crat("(t-(1+1i))/(t^2+1)");
  EXPECT_NEAR(std::abs(r.num.eval(Cx(1, 1))), 0.0, 1e-15);
}

TEST(Roots, MultiplicitiesFromClustering) {
  auto f = factor_numeric(parse_crat("(t-1)^2*(t+2i)^3/(t-0.5)"));
  EXPECT_EQ(f.total_order(), 4);
  EXPECT_EQ(f.order_at(Cx(1, 0), 1e-6), 2);
  EXPECT_EQ(f.order_at(Cx(0, -2), 1e-6), 3);
  EXPECT_EQ(f.order_at(Cx(0.5, 0), 1e-6), -1);
  // close but distinct roots stay apart
  auto h = factor_numeric(parse_crat("(t-1)*(t-1.0001)"));
  EXPECT_EQ(h.points.size(), 2U);
  EXPECT_EQ(h.order_at(Cx(1, 0), 1e-6), 1);
  RationalField q;
  auto g = factor_rational(parse_ratfunc("(t^2+1)^2*(t-3)", q));
  EXPECT_EQ(g.order_at(Cx(0, 1), 1e-9), 2);
  EXPECT_EQ(g.order_at(Cx(3, 0), 1e-9), 1);
  EXPECT_NEAR(factor_rational(parse_ratfunc("(2*t+1)^2/3", q)).lc.real(), 4.0 / 3, 1e-15);
  EXPECT_NEAR(factor_rational(parse_ratfunc("2", q)).lc.real(), 2.0, 1e-15);
}

TEST(Volume, ConstantGGivesZero) {
  VolumeOptions o;
  o.samples = 100000;
  auto r = volume_check(parse_crat("t"), parse_crat("3+2i"), o);
  EXPECT_TRUE(r.divisor.empty());
  EXPECT_EQ(r.v_sum, 0.0);
  EXPECT_NEAR(r.integral.value, 0.0, 1e-9);
}

TEST(Volume, RationalCoefficientsGiveZero) {
  RationalField q;
  VolumeOptions o;
  o.samples = 100000;
  auto r = volume_check(parse_ratfunc("t", q), parse_ratfunc("t^2+t+1", q), o);
  EXPECT_NEAR(r.v_sum, 0.0, 1e-12);
  EXPECT_NEAR(r.integral.value, 0.0, 1e-6);
  EXPECT_TRUE(r.dehn.equal);
}

TEST(Volume, CatalogueRatioIsConstant) {
  VolumeOptions o;
  o.samples = 100000;
  std::vector<double> ratios;
  for (const auto& [f, g] : volume_catalogue()) {
    auto r = volume_check(parse_crat(f), parse_crat(g), o);
    ASSERT_TRUE(r.ratio.has_value()) << f << " " << g;
    ratios.push_back(*r.ratio);
    EXPECT_TRUE(r.dehn.equal) << f << " " << g;
  }
  for (double x : ratios) EXPECT_NEAR(x / ratios.front(), 1.0, 1e-3);
}

TEST(Volume, InvalidInput) {
  EXPECT_THROW(volume_check(parse_crat("2"), parse_crat("t"), {}), Error);
  VolumeOptions o;
  o.samples = 10;
  EXPECT_THROW(volume_check(parse_crat("t"), parse_crat("t-1i"), o), Error);
}
