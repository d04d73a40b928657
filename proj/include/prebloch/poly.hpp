#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "prebloch/error.hpp"
#include "prebloch/field.hpp"

namespace prebloch {

/// Dense univariate polynomial in t over a field, ascending coefficients.
/// The zero polynomial has no coefficients and degree -1 (standing in for -infinity).
template <Field F>
class Poly {
 public:
  using Elem = typename F::value_type;

  explicit Poly(F field = F{}) : field_(std::move(field)) {}
  Poly(F field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }

  static Poly constant(const F& field, const Elem& c) { return Poly(field, {c}); }
  static Poly monomial(const F& field, const Elem& c, int k) {
    std::vector<Elem> v(static_cast<std::size_t>(k) + 1, field.zero());
    v.back() = c;
    return Poly(field, std::move(v));
  }
  static Poly t(const F& field) { return monomial(field, field.one(), 1); }
  static Poly one(const F& field) { return constant(field, field.one()); }

  const F& field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && F::is_one(c_[0]); }
  bool is_monic() const { return !c_.empty() && F::is_one(c_.back()); }
  Elem leading() const { return c_.empty() ? field_.zero() : c_.back(); }
  Elem coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : field_.zero();
  }

  Poly monic() const {
    if (c_.empty()) return *this;
    return scaled(inverse(c_.back()));
  }
  Poly scaled(const Elem& s) const {
    std::vector<Elem> v = c_;
    for (auto& x : v) x = x * s;
    return Poly(field_, std::move(v));
  }

  Elem eval(const Elem& x) const {
    Elem r = field_.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly(field_);
    std::vector<Elem> v;
    v.reserve(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) v.push_back(c_[k] * field_.from_int(static_cast<long long>(k)));
    return Poly(field_, std::move(v));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    check_same(a, b);
    std::vector<Elem> v(std::max(a.c_.size(), b.c_.size()), a.field_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] = v[i] + b.c_[i];
    return Poly(a.field_, std::move(v));
  }
  friend Poly operator-(const Poly& a) {
    std::vector<Elem> v = a.c_;
    for (auto& x : v) x = -x;
    return Poly(a.field_, std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.field_);
    std::vector<Elem> v(a.c_.size() + b.c_.size() - 1, a.field_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (F::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(a.field_, std::move(v));
  }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

  /// Total order used for map keys of polynomial-valued data: degree first,
  /// then coefficients from the leading term down.
  friend std::strong_ordering compare(const Poly& a, const Poly& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (int k = a.degree(); k >= 0; --k) {
      if (auto c = F::compare(a.c_[static_cast<std::size_t>(k)], b.c_[static_cast<std::size_t>(k)]); c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(c_.size());
    for (const auto& x : c_) h = (h ^ F::hash(x)) * 1099511628211ULL;
    return h;
  }

 private:
  static void check_same(const Poly& a, const Poly& b) {
    if (!(a.field_ == b.field_)) throw Error(ErrorCode::FieldMismatch, a.field_.name() + " vs " + b.field_.name());
  }
  void trim() {
    while (!c_.empty() && F::is_zero(c_.back())) c_.pop_back();
  }

  F field_;
  std::vector<Elem> c_;
};

template <Field F>
struct DivMod {
  Poly<F> quotient;
  Poly<F> remainder;
};

/// Euclidean division: a = q*b + r with deg r < deg b.
template <Field F>
DivMod<F> poly_divmod(const Poly<F>& a, const Poly<F>& b) {
  if (!(a.field() == b.field())) throw Error(ErrorCode::FieldMismatch, a.field().name() + " vs " + b.field().name());
  if (b.is_zero()) throw Error(ErrorCode::ZeroDivisor, "division by the zero polynomial");
  const F& k = a.field();
  using Elem = typename F::value_type;
  std::vector<Elem> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {Poly<F>(k), a};
  std::vector<Elem> q(static_cast<std::size_t>(a.degree() - db + 1), k.zero());
  Elem inv_lead = inverse(b.leading());
  for (int i = a.degree(); i >= db; --i) {
    const Elem& top = r[static_cast<std::size_t>(i)];
    if (F::is_zero(top)) continue;
    Elem factor = top * inv_lead;
    q[static_cast<std::size_t>(i - db)] = factor;
    for (int j = 0; j <= db; ++j) {
      auto idx = static_cast<std::size_t>(i - db + j);
      r[idx] = r[idx] - factor * b.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly<F>(k, std::move(q)), Poly<F>(k, std::move(r))};
}

template <Field F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) {
  return poly_divmod(a, b).remainder;
}

template <Field F>
Poly<F> operator/(const Poly<F>& a, const Poly<F>& b) {
  return poly_divmod(a, b).quotient;
}

/// Monic gcd; gcd(0, 0) = 0.
template <Field F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    Poly<F> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Extended gcd: s*a + u*b = g with g monic.
template <Field F>
struct ExtGcd {
  Poly<F> g, s, u;
};

template <Field F>
ExtGcd<F> poly_ext_gcd(const Poly<F>& a, const Poly<F>& b) {
  const F& k = a.field();
  Poly<F> r0 = a, r1 = b;
  Poly<F> s0 = Poly<F>::one(k), s1(k);
  Poly<F> u0(k), u1 = Poly<F>::one(k);
  while (!r1.is_zero()) {
    auto [q, r] = poly_divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<F> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly<F> u2 = u0 - q * u1;
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (r0.is_zero()) return {r0, s0, u0};
  auto inv = inverse(r0.leading());
  return {r0.scaled(inv), s0.scaled(inv), u0.scaled(inv)};
}

/// Inverse of a modulo m (gcd must be 1).
template <Field F>
Poly<F> poly_inverse_mod(const Poly<F>& a, const Poly<F>& m) {
  auto eg = poly_ext_gcd(a % m, m);
  if (!eg.g.is_one()) throw Error(ErrorCode::NotAUnitModF, "polynomial is not invertible modulo the given modulus");
  return eg.s % m;
}

/// base^e mod m, for a 64-bit exponent.
template <Field F>
Poly<F> poly_powmod(Poly<F> base, std::uint64_t e, const Poly<F>& m) {
  Poly<F> r = Poly<F>::one(m.field()) % m;
  base = base % m;
  while (e > 0) {
    if (e & 1U) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1U;
  }
  return r;
}

template <Field F>
Poly<F> poly_pow(const Poly<F>& base, unsigned e) {
  Poly<F> r = Poly<F>::one(base.field());
  for (unsigned i = 0; i < e; ++i) r = r * base;
  return r;
}

}  // namespace prebloch
