#pragma once

#include <utility>

#include "prebloch/poly.hpp"

namespace prebloch {

/// Element of F(t) in canonical form: gcd(num, den) = 1, den monic.
/// Zero is 0/1.
template <Field F>
class RatFunc {
 public:
  using Elem = typename F::value_type;

  explicit RatFunc(F field = F{}) : num_(field), den_(Poly<F>::one(field)) {}
  RatFunc(const Poly<F>& p) : num_(p), den_(Poly<F>::one(p.field())) {}  // NOLINT: polynomials embed in F(t)

  static RatFunc constant(const F& field, const Elem& c) { return RatFunc(Poly<F>::constant(field, c)); }
  static RatFunc one(const F& field) { return RatFunc(Poly<F>::one(field)); }

  const F& field() const { return num_.field(); }
  const Poly<F>& num() const { return num_; }
  const Poly<F>& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return rf_normalize(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return rf_normalize(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw Error(ErrorCode::ZeroDivisor, "division by the zero rational function");
    return rf_normalize(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  friend std::strong_ordering compare(const RatFunc& a, const RatFunc& b) {
    if (auto c = compare(a.num_, b.num_); c != 0) return c;
    return compare(a.den_, b.den_);
  }

  RatFunc inverse() const {
    if (is_zero()) throw Error(ErrorCode::ZeroDivisor, "inverse of zero rational function");
    return rf_normalize(den_, num_);
  }

  /// 1 - x
  RatFunc one_minus() const { return rf_normalize(den_ - num_, den_); }

  template <Field G>
  friend RatFunc<G> rf_normalize(const Poly<G>& num, const Poly<G>& den);

 private:
  Poly<F> num_;
  Poly<F> den_;
};

/// Canonical form of num/den.
template <Field F>
RatFunc<F> rf_normalize(const Poly<F>& num, const Poly<F>& den) {
  if (den.is_zero()) throw Error(ErrorCode::ZeroDivisor, "zero denominator");
  RatFunc<F> r(num.field());
  if (num.is_zero()) return r;
  Poly<F> g = poly_gcd(num, den);
  Poly<F> n = num / g;
  Poly<F> d = den / g;
  auto inv = inverse(d.leading());
  r.num_ = n.scaled(inv);
  r.den_ = d.scaled(inv);
  return r;
}

/// Valuation of a nonzero polynomial at the monic irreducible P.
template <Field F>
int poly_valuation(Poly<F> a, const Poly<F>& P) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroElement, "valuation of zero");
  int v = 0;
  for (;;) {
    auto [q, r] = poly_divmod(a, P);
    if (!r.is_zero()) return v;
    a = std::move(q);
    ++v;
  }
}

template <Field F>
int valuation(const RatFunc<F>& x, const Poly<F>& P) {
  return poly_valuation(x.num(), P) - poly_valuation(x.den(), P);
}

/// Valuation at infinity, with uniformizer 1/t.
template <Field F>
int valuation_at_infinity(const RatFunc<F>& x) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroElement, "valuation of zero");
  return x.den().degree() - x.num().degree();
}

/// Image of an element integral at P in F[t]/(P), as the reduced representative.
template <Field F>
Poly<F> reduce_mod(const RatFunc<F>& x, const Poly<F>& P) {
  Poly<F> d = x.den() % P;
  if (d.is_zero()) throw Error(ErrorCode::NotAUnitModF, "rational function has a pole at the place");
  return (x.num() * poly_inverse_mod(d, P)) % P;
}

}  // namespace prebloch
