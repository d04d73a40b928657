#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "prebloch/error.hpp"

namespace prebloch {

using Cx = std::complex<double>;

inline void require_finite(const Cx& z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not finite");
}

namespace detail {

/// B_0..B_{n-1} from the exact recurrence, rounded once to double.
inline const std::vector<double>& bernoulli_table() {
  static const std::vector<double> table = [] {
    const int n = 64;
    std::vector<mpq_class> B(n);
    B[0] = 1;
    for (int m = 1; m < n; ++m) {
      mpq_class s = 0;
      mpz_class binom = 1;  // C(m+1, k)
      for (int k = 0; k < m; ++k) {
        s += binom * B[static_cast<std::size_t>(k)];
        binom = binom * (m + 1 - k) / (k + 1);
      }
      B[static_cast<std::size_t>(m)] = -s / (m + 1);
    }
    std::vector<double> out;
    for (auto& b : B) out.push_back(b.get_d());
    return out;
  }();
  return table;
}

/// Li_2(w) = sum B_n u^(n+1)/(n+1)! with u = -log(1-w); fine for |u| well inside 2 pi.
inline Cx li2_bernoulli(const Cx& w) {
  const auto& B = bernoulli_table();
  const Cx u = -std::log(1.0 - w);
  Cx term = u;  // u^(n+1)/(n+1)!
  Cx sum = 0;
  for (std::size_t n = 0; n < B.size(); ++n) {
    if (B[n] != 0.0) sum += B[n] * term;
    term *= u / static_cast<double>(n + 2);
    if (std::abs(term) < 1e-18) break;
  }
  return sum;
}

}  // namespace detail

/// D(z) = Im Li_2(z) + arg(1-z) log|z|, evaluated after moving z by one of the six
/// symmetries z, 1-1/z, 1/(1-z) (sign +) and 1/z, 1-z, z/(z-1) (sign -) into the region
/// |w| <= 1, Re w <= 1/2 where the Bernoulli series converges fast.
inline double bloch_wigner(const Cx& z) {
  require_finite(z, "argument");
  if (std::abs(z) < 1e-12 || std::abs(z - 1.0) < 1e-12) throw Error(ErrorCode::DegenerateParameter, "D has no value at 0 or 1");
  if (z.imag() == 0.0) return 0.0;
  const std::array<std::pair<Cx, double>, 6> images{{{z, 1.0},
                                                     {1.0 - 1.0 / z, 1.0},
                                                     {1.0 / (1.0 - z), 1.0},
                                                     {1.0 / z, -1.0},
                                                     {1.0 - z, -1.0},
                                                     {z / (z - 1.0), -1.0}}};
  std::size_t best = 0;
  double score = 1e300;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const Cx& w = images[i].first;
    if (std::abs(w) <= 1.0 + 1e-15 && w.real() <= 0.5 + 1e-15) {
      double s = std::abs(std::log(1.0 - w));
      if (s < score) {
        score = s;
        best = i;
      }
    }
  }
  const Cx w = images[best].first;
  const double sign = images[best].second;
  const double d = detail::li2_bernoulli(w).imag() + std::arg(1.0 - w) * std::log(std::abs(w));
  return sign * d;
}

/// A point of P^1(C): a finite value or infinity.
struct CPoint {
  std::optional<Cx> z;
  static CPoint at(Cx v) { return {v}; }
  static CPoint infinity() { return {std::nullopt}; }
  bool is_infinity() const { return !z.has_value(); }
};

/// Cross-ratio value with the degenerate cases kept as markers.
struct CrossValue {
  enum class Kind { Value, Zero, One, Infinity };
  Kind kind = Kind::Value;
  Cx z{};
};

/// r(a,b,c,d) = (a-b)(c-d) / ((c-b)(a-d)), with the factors containing an infinite point
/// replaced by their limit ratio. Coincidences give markers.
inline CrossValue cross_ratio(const CPoint& a, const CPoint& b, const CPoint& c, const CPoint& d) {
  int infs = 0;
  for (const CPoint* x : {&a, &b, &c, &d}) infs += x->is_infinity() ? 1 : 0;
  if (infs > 1) throw Error(ErrorCode::DegenerateConfiguration, "more than one point at infinity");
  // numerator factors (a-b), (c-d); denominator factors (c-b), (a-d); a factor containing
  // infinity is replaced by 1 in both places where it appears
  auto diff = [](const CPoint& x, const CPoint& y) -> std::optional<Cx> {
    if (x.is_infinity() || y.is_infinity()) return std::nullopt;
    return *x.z - *y.z;
  };
  std::optional<Cx> n1 = diff(a, b), n2 = diff(c, d), d1 = diff(c, b), d2 = diff(a, d);
  Cx num = n1.value_or(1.0) * n2.value_or(1.0);
  Cx den = d1.value_or(1.0) * d2.value_or(1.0);
  const double tiny = 1e-300;
  const bool num0 = std::abs(num) <= tiny, den0 = std::abs(den) <= tiny;
  if (num0 && den0) return {CrossValue::Kind::One, 1.0};
  if (num0) return {CrossValue::Kind::Zero, 0.0};
  if (den0) return {CrossValue::Kind::Infinity, 0.0};
  Cx r = num / den;
  if (r == Cx(1.0, 0.0)) return {CrossValue::Kind::One, 1.0};
  return {CrossValue::Kind::Value, r};
}

inline double bloch_wigner(const CrossValue& v) {
  if (v.kind != CrossValue::Kind::Value) return 0.0;
  if (std::abs(v.z) < 1e-12 || std::abs(v.z - 1.0) < 1e-12) return 0.0;
  return bloch_wigner(v.z);
}

/// sum_{i=1..5} (-1)^i D(r(x_1, ..., x_i omitted, ..., x_5)).
inline double five_term_numeric(const std::array<CPoint, 5>& x) {
  for (std::size_t i = 0; i < 5; ++i) {
    if (x[i].z) require_finite(*x[i].z, "point");
    for (std::size_t j = i + 1; j < 5; ++j) {
      const bool same = x[i].is_infinity() ? x[j].is_infinity() : (!x[j].is_infinity() && std::abs(*x[i].z - *x[j].z) < 1e-12);
      if (same) throw Error(ErrorCode::DegenerateConfiguration, "coincident points");
    }
  }
  double s = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    std::vector<CPoint> rest;
    for (std::size_t j = 0; j < 5; ++j)
      if (j != i) rest.push_back(x[j]);
    const double sign = (i % 2 == 0) ? -1.0 : 1.0;
    s += sign * bloch_wigner(cross_ratio(rest[0], rest[1], rest[2], rest[3]));
  }
  return s;
}

}  // namespace prebloch
