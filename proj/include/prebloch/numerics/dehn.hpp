#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "prebloch/numerics/dilog.hpp"

namespace prebloch {

struct PslqOptions {
  double tolerance = 1e-12;  // relative size of sum r_i x_i accepted as zero
  double bound = 1e6;        // largest coefficient searched for
  int max_iterations = 2000;
  double significance = 1e-6;  // bound on residual * max|r|^(n-1)
};

/// Integer relation r (not all zero, |r_i| <= bound) with |sum r_i x_i| <= tolerance * max|x_i|,
/// found by the PSLQ iteration in long double. Heuristic: floats cannot certify
/// that no relation exists, only that none was found below the bound.
inline std::optional<std::vector<long long>> pslq(const std::vector<double>& xin, const PslqOptions& opt = {}) {
  using R = long double;
  const std::size_t n = xin.size();
  if (n < 2) return std::nullopt;
  R scale = 0;
  for (double v : xin) scale = std::max(scale, std::fabs(static_cast<R>(v)));
  if (scale == 0) return std::nullopt;
  std::vector<R> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = xin[i] / scale;
  // a zero entry is itself a relation
  for (std::size_t i = 0; i < n; ++i)
    if (std::fabs(x[i]) < opt.tolerance) {
      std::vector<long long> r(n, 0);
      r[i] = 1;
      return r;
    }
  auto verify = [&](const std::vector<long long>& r) {
    R s = 0, mx = 0, mag = 0;
    for (std::size_t i = 0; i < n; ++i) {
      s += static_cast<R>(r[i]) * x[i];
      mag += std::fabs(static_cast<R>(r[i]) * x[i]);
      mx = std::max(mx, std::fabs(static_cast<R>(r[i])));
    }
    // inputs are doubles: nothing below their rounding is meaningful
    s = std::fabs(s) + mag * static_cast<R>(std::numeric_limits<double>::epsilon());
    // a random n-vector has relations of size N with residual near N^-(n-1); only relations
    // far better than that are believed
    return mx > 0 && mx <= opt.bound && std::fabs(s) <= opt.tolerance &&
           std::fabs(s) * std::pow(mx, static_cast<R>(n - 1)) <= opt.significance;
  };

  const R gamma = std::sqrt(R(4) / R(3)) + R(0.01);
  std::vector<R> s(n);
  {
    R acc = 0;
    for (std::size_t k = n; k-- > 0;) {
      acc += x[k] * x[k];
      s[k] = std::sqrt(acc);
    }
  }
  std::vector<R> y(n);
  const R s0 = s[0];
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = x[i] / s0;
    s[i] /= s0;
  }
  std::vector<std::vector<R>> H(n, std::vector<R>(n - 1, 0));
  for (std::size_t j = 0; j + 1 < n; ++j) {
    H[j][j] = s[j + 1] / s[j];
    for (std::size_t i = j + 1; i < n; ++i) H[i][j] = -y[i] * y[j] / (s[j] * s[j + 1]);
  }
  std::vector<std::vector<R>> A(n, std::vector<R>(n, 0)), B(n, std::vector<R>(n, 0));
  for (std::size_t i = 0; i < n; ++i) A[i][i] = B[i][i] = 1;

  auto reduce = [&](std::size_t from) {
    for (std::size_t i = from; i < n; ++i)
      for (std::size_t jj = std::min(i, n - 1); jj-- > 0;) {
        if (H[jj][jj] == 0) continue;
        const R t = std::round(H[i][jj] / H[jj][jj]);
        if (t == 0) continue;
        y[jj] += t * y[i];
        for (std::size_t k = 0; k <= jj; ++k) H[i][k] -= t * H[jj][k];
        for (std::size_t k = 0; k < n; ++k) {
          A[i][k] -= t * A[jj][k];
          B[k][jj] += t * B[k][i];
        }
      }
  };
  reduce(1);

  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    std::size_t m = 0;
    R best = -1, gp = gamma;
    for (std::size_t i = 0; i + 1 < n; ++i, gp *= gamma) {
      const R v = gp * std::fabs(H[i][i]);
      if (v > best) {
        best = v;
        m = i;
      }
    }
    std::swap(y[m], y[m + 1]);
    std::swap(A[m], A[m + 1]);
    std::swap(H[m], H[m + 1]);
    for (std::size_t k = 0; k < n; ++k) std::swap(B[k][m], B[k][m + 1]);
    if (m + 2 < n) {
      const R t0 = std::hypot(H[m][m], H[m][m + 1]);
      const R t1 = H[m][m] / t0, t2 = H[m][m + 1] / t0;
      for (std::size_t i = m; i < n; ++i) {
        const R t3 = H[i][m], t4 = H[i][m + 1];
        H[i][m] = t1 * t3 + t2 * t4;
        H[i][m + 1] = -t2 * t3 + t1 * t4;
      }
    }
    reduce(m + 1);

    for (std::size_t j = 0; j < n; ++j) {
      if (std::fabs(y[j]) > opt.tolerance) continue;
      std::vector<long long> r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = std::llround(B[i][j]);
      if (verify(r)) return r;
    }
    // any relation has norm at least 1/max|H_jj|
    R hmax = 0;
    for (std::size_t j = 0; j + 1 < n; ++j) hmax = std::max(hmax, std::fabs(H[j][j]));
    if (hmax == 0 || 1 / hmax > opt.bound) return std::nullopt;
    bool blown = false;
    for (const auto& row : B)
      for (R v : row) blown = blown || std::fabs(v) > 1e15L;
    if (blown) return std::nullopt;
  }
  return std::nullopt;
}

// ---- scissors classes and Dehn invariants -----------------------------------------

/// [z] for an ideal tetrahedron; z is kept as given.
struct IdealTetra {
  Cx z;
  explicit IdealTetra(Cx v) : z(v) {
    require_finite(v, "tetrahedron parameter");
    if (std::abs(v) < 1e-12 || std::abs(v - 1.0) < 1e-12) throw Error(ErrorCode::DegenerateParameter, "tetrahedron parameter 0 or 1");
  }
};

struct ScissorsElt {
  std::vector<std::pair<mpq_class, IdealTetra>> terms;

  void add(const mpq_class& c, Cx z) {
    if (sgn(c) != 0) terms.emplace_back(c, IdealTetra(z));
  }
  double volume_sum() const {
    double s = 0;
    for (const auto& [c, t] : terms) s += c.get_d() * bloch_wigner(t.z);
    return s;
  }
};

/// Sum of length (x) angle in R (x)_Z R/2piZ, which after (x) Q is R (x)_Q R/Q pi.
struct DehnVec {
  std::vector<std::pair<double, double>> pairs;

  DehnVec& operator+=(const DehnVec& o) {
    pairs.insert(pairs.end(), o.pairs.begin(), o.pairs.end());
    return *this;
  }
  DehnVec operator-() const {
    DehnVec r = *this;
    for (auto& pr : r.pairs) pr.first = -pr.first;
    return r;
  }
  bool empty() const { return pairs.empty(); }
};

/// p(z (x) w) := (log|z|, arg w) - (log|w|, arg z).
inline DehnVec p_map(const Cx& z, const Cx& w, double coeff = 1.0) {
  DehnVec d;
  d.pairs.emplace_back(coeff * std::log(std::abs(z)), std::arg(w));
  d.pairs.emplace_back(-coeff * std::log(std::abs(w)), std::arg(z));
  return d;
}

/// Uncanonicalized pairs of sum c [z], from p(z (x) (1-z)).
inline DehnVec dehn_pairs(const ScissorsElt& s) {
  DehnVec d;
  for (const auto& [c, t] : s.terms) d += p_map(t.z, 1.0 - t.z, c.get_d());
  return d;
}

namespace detail {

/// Expresses v over the Q-span of basis via one integer relation; nullopt if independent.
inline std::optional<std::vector<mpq_class>> rational_coordinates(const std::vector<double>& basis, double v, const PslqOptions& opt) {
  std::vector<double> x = basis;
  x.push_back(v);
  auto rel = pslq(x, opt);
  if (!rel || rel->back() == 0) return std::nullopt;
  std::vector<mpq_class> q;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    mpq_class c(static_cast<long>(-(*rel)[i]), static_cast<long>(rel->back()));
    c.canonicalize();
    q.push_back(c);
  }
  return q;
}

}  // namespace detail

/// Minimal pair list: lengths are rewritten over a Q-basis found greedily by PSLQ, the angle
/// attached to each basis length is reduced modulo Q pi, and the surviving angles are in turn
/// rewritten over a Q-basis (mod pi). Zero lengths and angles in Q pi drop out.
inline DehnVec canonicalize(const DehnVec& d, const PslqOptions& opt = {}) {
  const double tiny = 1e-12;
  std::vector<double> lbasis;
  std::vector<std::vector<std::pair<mpq_class, double>>> attached;  // per basis length: (q, angle)
  for (const auto& [l, a] : d.pairs) {
    if (std::fabs(l) < tiny) continue;
    std::optional<std::vector<mpq_class>> q;
    if (!lbasis.empty()) q = detail::rational_coordinates(lbasis, l, opt);
    if (!q) {
      lbasis.push_back(l);
      attached.push_back({{mpq_class(1), a}});
      continue;
    }
    for (std::size_t j = 0; j < lbasis.size(); ++j)
      if (sgn((*q)[j]) != 0) attached[j].emplace_back((*q)[j], a);
  }
  // beta_j = sum q a, combined in double; rational multipliers have small denominators
  std::vector<double> beta(lbasis.size(), 0.0);
  for (std::size_t j = 0; j < lbasis.size(); ++j)
    for (const auto& [q, a] : attached[j]) beta[j] += q.get_d() * a;

  // each surviving angle carries its length as exact coordinates over lbasis
  std::vector<double> abasis{std::numbers::pi};
  std::vector<std::vector<mpq_class>> lcoord{std::vector<mpq_class>(lbasis.size())};
  for (std::size_t j = 0; j < lbasis.size(); ++j) {
    auto q = detail::rational_coordinates(abasis, beta[j], opt);
    if (!q) {
      abasis.push_back(beta[j]);
      lcoord.emplace_back(lbasis.size());
      lcoord.back()[j] = 1;
      continue;
    }
    for (std::size_t k = 1; k < abasis.size(); ++k) lcoord[k][j] += (*q)[k];
  }
  DehnVec out;
  for (std::size_t k = 1; k < abasis.size(); ++k) {
    double len = 0;
    bool zero = true;
    for (std::size_t j = 0; j < lbasis.size(); ++j) {
      zero = zero && sgn(lcoord[k][j]) == 0;
      len += lcoord[k][j].get_d() * lbasis[j];
    }
    if (!zero) out.pairs.emplace_back(len, abasis[k]);
  }
  return out;
}

inline DehnVec dehn_invariant(const ScissorsElt& s, const PslqOptions& opt = {}) { return canonicalize(dehn_pairs(s), opt); }

struct DehnComparison {
  bool equal = false;
  bool heuristic = true;
  DehnVec difference;
};

inline DehnComparison dehn_compare(const DehnVec& a, const DehnVec& b, const PslqOptions& opt = {}) {
  DehnVec diff = a;
  diff += -b;
  DehnComparison c;
  c.difference = canonicalize(diff, opt);
  c.equal = c.difference.empty();
  return c;
}

}  // namespace prebloch
