#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "prebloch/factor.hpp"
#include "prebloch/numerics/dilog.hpp"
#include "prebloch/ratfunc.hpp"

namespace prebloch {

/// Complex polynomial, ascending coefficients, no trailing zeros.
struct CPoly {
  std::vector<Cx> c;

  CPoly() = default;
  explicit CPoly(std::vector<Cx> coeffs) : c(std::move(coeffs)) { trim(); }
  static CPoly constant(Cx v) { return CPoly({v}); }
  static CPoly t() { return CPoly({0.0, 1.0}); }

  void trim() {
    double mx = 0;
    for (const auto& v : c) mx = std::max(mx, std::abs(v));
    while (!c.empty() && std::abs(c.back()) <= 1e-14 * mx) c.pop_back();
    if (mx == 0) c.clear();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  Cx leading() const { return c.empty() ? Cx(0) : c.back(); }
  Cx eval(Cx z) const {
    Cx r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * z + c[i];
    return r;
  }
  Cx eval_derivative(Cx z) const {
    Cx r = 0;
    for (std::size_t i = c.size(); i-- > 1;) r = r * z + static_cast<double>(i) * c[i];
    return r;
  }

  friend CPoly operator+(const CPoly& a, const CPoly& b) {
    std::vector<Cx> r(std::max(a.c.size(), b.c.size()), 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return CPoly(r);
  }
  friend CPoly operator-(const CPoly& a) {
    CPoly r = a;
    for (auto& v : r.c) v = -v;
    return r;
  }
  friend CPoly operator-(const CPoly& a, const CPoly& b) { return a + (-b); }
  friend CPoly operator*(const CPoly& a, const CPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Cx> r(a.c.size() + b.c.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return CPoly(r);
  }
};

/// Complex rational function num/den, not necessarily reduced.
struct CRat {
  CPoly num = CPoly::constant(0.0), den = CPoly::constant(1.0);

  static CRat constant(Cx v) { return {CPoly::constant(v), CPoly::constant(1.0)}; }
  friend CRat operator+(const CRat& a, const CRat& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend CRat operator-(const CRat& a, const CRat& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend CRat operator*(const CRat& a, const CRat& b) { return {a.num * b.num, a.den * b.den}; }
  friend CRat operator/(const CRat& a, const CRat& b) {
    if (b.num.is_zero()) throw Error(ErrorCode::ZeroDivisor, "division by the zero function");
    return {a.num * b.den, a.den * b.num};
  }
};

inline CPoly to_cpoly(const Poly<RationalField>& p) {
  std::vector<Cx> c;
  for (const auto& v : p.coeffs()) c.emplace_back(v.get_d(), 0.0);
  return CPoly(c);
}

inline CRat to_crat(const RatFunc<RationalField>& x) { return {to_cpoly(x.num()), to_cpoly(x.den())}; }

// ---- parsing -----------------------------------------------------------------------

namespace detail {

/// Rational expressions in t with complex literals: 2, 0.5, 3i, i, (1+2i)*t^2 - t/(t-1i).
class CRatParser {
 public:
  explicit CRatParser(std::string s) : s_(std::move(s)) {}

  CRat parse() {
    CRat r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  std::string s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError, what + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  CRat expr() {
    CRat r = term();
    for (;;) {
      if (eat('+')) r = r + term();
      else if (eat('-')) r = r - term();
      else return r;
    }
  }
  CRat term() {
    CRat r = unary();
    for (;;) {
      if (eat('*')) r = r * unary();
      else if (eat('/')) r = r / unary();
      else return r;
    }
  }
  CRat unary() {
    if (eat('-')) return CRat::constant(0.0) - unary();
    if (eat('+')) return unary();
    return power();
  }
  CRat power() {
    CRat base = atom();
    if (!eat('^')) return base;
    skip();
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    const int e = std::stoi(s_.substr(start, pos_ - start));
    if (e > 64) fail("exponent too large");
    CRat r = CRat::constant(1.0);
    for (int i = 0; i < e; ++i) r = r * base;
    return neg ? CRat::constant(1.0) / r : r;
  }
  CRat atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      CRat r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (ch == 't') {
      ++pos_;
      return {CPoly::t(), CPoly::constant(1.0)};
    }
    if (ch == 'i') {
      ++pos_;
      return CRat::constant({0.0, 1.0});
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(s_.substr(pos_), &used);
      } catch (const std::exception&) {
        fail("malformed number");
      }
      pos_ += used;
      if (pos_ < s_.size() && s_[pos_] == 'i') {
        ++pos_;
        return CRat::constant({0.0, v});
      }
      return CRat::constant({v, 0.0});
    }
    fail(std::string("unexpected '") + ch + "'");
  }
};

}  // namespace detail

inline CRat parse_crat(const std::string& text) { return detail::CRatParser(text).parse(); }

/// A complex number literal such as 0.3+0.8i, -i or 2 (a constant expression).
inline Cx parse_complex(const std::string& text) {
  CRat r = parse_crat(text);
  if (r.num.degree() > 0 || r.den.degree() > 0) throw Error(ErrorCode::SyntaxError, "expected a complex constant, got \"" + text + "\"");
  if (r.den.is_zero() || r.num.is_zero()) {
    if (r.den.is_zero()) throw Error(ErrorCode::ZeroDivisor, "constant has zero denominator");
    return 0.0;
  }
  Cx v = r.num.c[0] / r.den.c[0];
  require_finite(v, "complex literal");
  return v;
}

// ---- roots and factored form -------------------------------------------------------

/// Companion-matrix eigenvalues, each polished by one Newton step.
inline std::vector<Cx> poly_roots(const CPoly& p) {
  const int n = p.degree();
  if (n < 1) return {};
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -p.c[static_cast<std::size_t>(i)] / p.leading();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NonConvergence, "companion eigenvalues did not converge");
  std::vector<Cx> roots;
  for (int i = 0; i < n; ++i) {
    Cx z = es.eigenvalues()(i);
    const Cx d = p.eval_derivative(z);
    if (std::abs(d) > 1e-300) {
      const Cx step = p.eval(z) / d;
      if (std::isfinite(step.real()) && std::isfinite(step.imag()) && std::abs(step) < 1e-3 * (1 + std::abs(z))) z -= step;
    }
    roots.push_back(z);
  }
  return roots;
}

/// lc * prod (z - r)^m; negative m are poles.
struct FactoredRat {
  Cx lc = 1.0;
  std::vector<std::pair<Cx, int>> points;

  int total_order() const {
    int s = 0;
    for (const auto& [r, m] : points) s += m;
    return s;
  }
  bool is_constant() const { return points.empty(); }

  /// Order at z (0 when z is not within tol of a zero or pole).
  int order_at(Cx z, double tol) const {
    int s = 0;
    for (const auto& [r, m] : points)
      if (std::abs(r - z) <= tol) s += m;
    return s;
  }
  /// Leading coefficient of the expansion at z in the uniformizer (t - z).
  Cx unit_at(Cx z, double tol) const {
    Cx u = lc;
    for (const auto& [r, m] : points)
      if (std::abs(r - z) > tol) u *= std::pow(z - r, m);
    return u;
  }
  Cx eval(Cx z) const { return unit_at(z, -1.0); }
  double log_abs(Cx z) const {
    double s = std::log(std::abs(lc));
    for (const auto& [r, m] : points) s += m * std::log(std::abs(z - r));
    return s;
  }
  /// f'/f.
  Cx log_derivative(Cx z) const {
    Cx s = 0;
    for (const auto& [r, m] : points) s += static_cast<double>(m) / (z - r);
    return s;
  }
  double distance_to_support(Cx z) const {
    double d = 1e300;
    for (const auto& [r, m] : points) d = std::min(d, std::abs(z - r));
    return d;
  }

  /// The same function in the chart s = 1/t at infinity.
  FactoredRat at_infinity() const {
    FactoredRat g;
    g.lc = lc;
    int M = 0;
    for (const auto& [r, m] : points) {
      M += m;
      if (std::abs(r) == 0.0) continue;
      g.lc *= std::pow(-r, m);
      g.points.emplace_back(1.0 / r, m);
    }
    if (M != 0) g.points.emplace_back(0.0, -M);
    return g;
  }
};

namespace detail {

/// Groups roots closer than tol (multiple roots split into clusters of that size); each group
/// is replaced by its mean and its summed order. Zero orders drop out.
inline std::vector<std::pair<Cx, int>> cluster(std::vector<std::pair<Cx, int>> pts, double tol) {
  std::vector<std::pair<Cx, int>> out;
  std::vector<bool> used(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    Cx sum = pts[i].first;
    int n = 1, order = pts[i].second;
    used[i] = true;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (used[j] || std::abs(pts[j].first - pts[i].first) > tol * (1 + std::abs(pts[i].first))) continue;
      used[j] = true;
      sum += pts[j].first;
      ++n;
      order += pts[j].second;
    }
    if (order != 0) out.emplace_back(sum / static_cast<double>(n), order);
  }
  return out;
}

}  // namespace detail

/// Distinct points closer than this (relative) are treated as one point.
inline constexpr double kRootClusterTolerance = 1e-8;

namespace detail {

/// Taylor coefficients of p at c, and for each the size of rounding noise in computing it.
inline void taylor_at(const CPoly& p, Cx c, std::vector<Cx>& a, std::vector<double>& noise) {
  using L = std::complex<long double>;
  const std::size_t n = p.c.size();
  std::vector<L> b(p.c.begin(), p.c.end());
  std::vector<long double> mag(n);
  for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(b[i]);
  const L cl(c);
  const long double ac = std::abs(cl);
  a.assign(n, 0.0);
  noise.assign(n, 0.0);
  // repeated synthetic division; mag tracks the same recurrence on absolute values
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = n - 1; i > j; --i) {
      b[i - 1] += cl * b[i];
      mag[i - 1] += ac * mag[i];
    }
    a[j] = Cx(b[j]);
    noise[j] = static_cast<double>(mag[j]);
  }
}

/// Whether p has a root of multiplicity exactly m at c, up to rounding: the Taylor
/// coefficients below order m are at noise level (deflation by (t-c)^m leaves no remainder).
inline bool is_multiple_root(const CPoly& p, Cx& c, int m) {
  std::vector<Cx> a;
  std::vector<double> noise;
  const auto k = static_cast<std::size_t>(m);
  // c is a simple root of the (m-1)th derivative; Newton there first
  for (int it = 0; it < 3; ++it) {
    taylor_at(p, c, a, noise);
    if (k >= a.size() || a[k] == Cx(0)) break;
    c -= a[k - 1] / (static_cast<double>(m) * a[k]);
  }
  taylor_at(p, c, a, noise);
  for (int j = 0; j < m; ++j)
    if (std::abs(a[static_cast<std::size_t>(j)]) > 1e4 * std::numeric_limits<double>::epsilon() * noise[static_cast<std::size_t>(j)]) return false;
  return true;
}

}  // namespace detail

/// Roots with multiplicities. A multiple root comes back from the eigenvalue solver as a ring
/// of radius about eps^(1/m); nearby roots are grouped loosely and a group is accepted as one
/// root when the deflation test passes at its centroid, else split at kRootClusterTolerance.
inline std::vector<std::pair<Cx, int>> roots_with_multiplicity(const CPoly& p) {
  const auto roots = poly_roots(p);
  std::vector<std::pair<Cx, int>> out;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    // single-linkage group at radius 1e-3 (relative)
    std::vector<std::size_t> group{i};
    used[i] = true;
    for (std::size_t g = 0; g < group.size(); ++g)
      for (std::size_t j = 0; j < roots.size(); ++j)
        if (!used[j] && std::abs(roots[j] - roots[group[g]]) <= 1e-3 * (1 + std::abs(roots[group[g]]))) {
          used[j] = true;
          group.push_back(j);
        }
    Cx c = 0;
    for (std::size_t g : group) c += roots[g];
    c /= static_cast<double>(group.size());
    if (group.size() == 1 || detail::is_multiple_root(p, c, static_cast<int>(group.size()))) {
      out.emplace_back(c, static_cast<int>(group.size()));
      continue;
    }
    std::vector<std::pair<Cx, int>> pts;
    for (std::size_t g : group) pts.emplace_back(roots[g], 1);
    for (const auto& q : detail::cluster(pts, kRootClusterTolerance)) out.push_back(q);
  }
  return out;
}

/// Numeric factored form: roots of numerator and denominator with multiplicity, common
/// points cancelled.
inline FactoredRat factor_numeric(const CRat& x) {
  if (x.num.is_zero()) throw Error(ErrorCode::ZeroElement, "the zero function has no factored form");
  if (x.den.is_zero()) throw Error(ErrorCode::ZeroDivisor, "zero denominator");
  FactoredRat f;
  f.lc = x.num.leading() / x.den.leading();
  std::vector<std::pair<Cx, int>> pts = roots_with_multiplicity(x.num);
  for (const auto& [r, m] : roots_with_multiplicity(x.den)) pts.emplace_back(r, -m);
  f.points = detail::cluster(pts, kRootClusterTolerance);
  return f;
}

/// Exact multiplicities from the factorization over Q; only simple roots are found
/// numerically. The content (constant factors and leading coefficients) goes into lc.
inline FactoredRat factor_rational(const RatFunc<RationalField>& x) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroElement, "the zero function has no factored form");
  FactoredRat f;
  f.lc = 1.0;
  for (int side : {1, -1}) {
    const auto& p = side == 1 ? x.num() : x.den();
    auto fac = factor_poly(p);
    mpq_class content = fac.unit;
    for (const auto& [q, m] : fac.factors) {
      mpq_class lead = q.poly().leading();
      for (int i = 0; i < std::abs(m); ++i) {
        if (m > 0) content *= lead;
        else content /= lead;
      }
      for (const Cx& r : poly_roots(to_cpoly(q.poly()))) f.points.emplace_back(r, side * m);
    }
    f.lc = side == 1 ? f.lc * content.get_d() : f.lc / content.get_d();
  }
  return f;
}

inline FactoredRat one_minus(const CRat& x) { return factor_numeric({x.den - x.num, x.den}); }

}  // namespace prebloch
