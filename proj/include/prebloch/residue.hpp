#pragma once

#include <optional>
#include <set>
#include <vector>

#include "prebloch/bloch.hpp"

namespace prebloch {

/// A closed point of P^1: a monic irreducible P, or infinity (uniformizer 1/t).
template <Field F>
class Place {
 public:
  static Place finite(const Irreducible<F>& P) { return Place(P); }
  static Place infinity() { return Place(); }

  bool is_infinity() const { return !P_.has_value(); }
  const Irreducible<F>& irreducible() const { return *P_; }
  const Poly<F>& poly() const { return P_->poly(); }
  /// Degree of the residue field over F.
  int degree() const { return is_infinity() ? 1 : P_->degree(); }

  friend bool operator==(const Place& a, const Place& b) { return a.P_ == b.P_; }

 private:
  Place() = default;
  explicit Place(Irreducible<F> P) : P_(std::move(P)) {}
  std::optional<Irreducible<F>> P_;
};

template <Field F>
int valuation(const Place<F>& v, const RatFunc<F>& x) {
  return v.is_infinity() ? valuation_at_infinity(x) : valuation(x, v.poly());
}

/// Residue class of an element with valuation 0: the reduced polynomial mod P,
/// or at infinity the constant lc(num)/lc(den).
template <Field F>
Poly<F> residue_class(const Place<F>& v, const RatFunc<F>& x) {
  if (v.is_infinity()) {
    if (valuation_at_infinity(x) != 0) throw Error(ErrorCode::NotAUnitModF, "element is not a unit at infinity");
    return Poly<F>::constant(x.field(), x.num().leading() * inverse(x.den().leading()));
  }
  return reduce_mod(x, v.poly());
}

namespace detail {

/// Whether Lambda^k of the residue field multiplicative group (x) Q is representable here.
template <Field F>
bool residue_wedge_vanishes(const Place<F>& v, int k) {
  if (k == 0) return false;
  if constexpr (F::is_prime_field) {
    return true;  // finite residue field: its multiplicative group is torsion
  } else {
    if (v.degree() > 1)
      throw Error(ErrorCode::Unsupported, "exterior powers over a number-field residue field");
    return false;
  }
}

/// Letters of a residue-field element of Q (degree-1 place or infinity) as a wedge of arity 1.
template <Field F>
WedgeElt<F> residue_letter(const Poly<F>& c) {
  return WedgeElt<F>::from_multvec(MultVec<F>::of(RatFunc<F>(c)));
}

/// Lambda-level residue of one normal-form monomial.
template <Field F>
WedgeElt<F> monomial_residue(const Place<F>& v, const Monomial<F>& m, const F& k) {
  const int n = static_cast<int>(m.size());
  WedgeElt<F> zero(k, n - 1);
  if (n == 0) return WedgeElt<F>(k, 0);
  if (!v.is_infinity()) {
    std::size_t pos = m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i].poly() == v.poly()) pos = i;
    if (pos == m.size()) return zero;
    mpq_class sign = pos % 2 == 0 ? 1 : -1;
    if (residue_wedge_vanishes(v, n - 1)) return zero;
    WedgeElt<F> acc = WedgeElt<F>::scalar(k, sign);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == pos) continue;
      acc = wedge(acc, residue_letter<F>(reduce_mod(RatFunc<F>(m[i].poly()), v.poly())));
    }
    return acc;
  }
  // Letter q of degree e is (1/t)^(-e) times a unit with residue lc(q) = 1 for monic q,
  // or q itself for a rational prime.
  if (residue_wedge_vanishes(v, n - 1)) {
    if (n != 1) return zero;
  }
  WedgeElt<F> out = zero;
  for (std::size_t j = 0; j < m.size(); ++j) {
    int e = m[j].degree();
    if (e == 0) continue;
    bool others_constant = true;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != j && m[i].degree() > 0) others_constant = false;
    if (!others_constant) continue;
    mpq_class c = mpq_class(-e) * (j % 2 == 0 ? 1 : -1);
    WedgeElt<F> acc = WedgeElt<F>::scalar(k, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != j) acc = wedge(acc, residue_letter<F>(m[i].poly()));
    out += acc;
  }
  return out;
}

}  // namespace detail

/// Residue of x in Lambda^(n-1) of the residue field (x) Q.
template <Field F>
WedgeElt<F> residue(const Place<F>& v, const WedgeElt<F>& x) {
  WedgeElt<F> out(x.field(), x.arity() - 1);
  for (const auto& [m, c] : x.terms()) out += c * detail::monomial_residue(v, m, x.field());
  return out;
}

/// Residue of a tensor: zero on terms {x} (x) w with v(x) != 0, otherwise {x mod v} (x) residue(w).
/// Bloch arguments over the residue field are stored as reduced polynomials.
template <Field F>
TensorElt<F> residue(const Place<F>& v, const TensorElt<F>& x) {
  const F& k = x.field();
  TensorElt<F> out(k, x.arity() - 1);
  if (x.arity() == 0) return TensorElt<F>(k, 0);
  for (const auto& [key, c] : x.terms()) {
    const auto& [g, m] = key;
    BlochGen<F> gbar = BlochGen<F>::marker(Marker::One);
    if (g.is_marker()) {
      if (g.which() != Marker::One) continue;
    } else {
      if (valuation(v, g.value()) != 0) continue;
      gbar = BlochGen<F>::point(RatFunc<F>(residue_class(v, g.value())));
    }
    WedgeElt<F> w = detail::monomial_residue(v, m, k);
    for (const auto& [mm, cc] : w.terms()) out.add({gbar, mm}, c * cc);
  }
  return out;
}

/// delta on the residue side, in Lambda^n of the residue field (x) Q.
template <Field F>
WedgeElt<F> residue_delta(const Place<F>& v, const TensorElt<F>& y) {
  if (detail::residue_wedge_vanishes(v, y.arity() + 2)) return WedgeElt<F>(y.field(), y.arity() + 2);
  return delta_n(y);
}

// ---- integral symbols -------------------------------------------------------

/// Integral reduction of a P-unit whose irreducible factors all have degree < deg P.
template <Field F>
Poly<F> specialize(const Irreducible<F>& P, const RatFunc<F>& x) {
  if (x.is_zero()) throw Error(ErrorCode::NotAUnit, "zero has no specialization");
  for (const Poly<F>* part : {&x.num(), &x.den()}) {
    if (part->degree() < P.degree()) continue;
    for (const auto& [q, mult] : factor_poly(*part).factors)
      if (q.degree() >= P.degree()) throw Error(ErrorCode::NotInFiltration, "letter of degree >= deg P");
  }
  return reduce_mod(x, P.poly());
}

/// Formal specialization s_P(x) = residue_P(P ^ x) in the residue field multiplicative group (x) Q.
template <Field F>
WedgeElt<F> specialization(const Irreducible<F>& P, const MultVec<F>& x) {
  for (const auto& [q, c] : x.terms())
    if (q.degree() >= P.degree()) throw Error(ErrorCode::NotInFiltration, "letter of degree >= deg P");
  WedgeElt<F> w = wedge(WedgeElt<F>::from_multvec(MultVec<F>::letter(P, x.field())), WedgeElt<F>::from_multvec(x));
  return residue(Place<F>::finite(P), w);
}

namespace detail {

template <Field F>
Poly<F> residue_pow(const Poly<F>& x, long long e, const Place<F>& v) {
  const F& k = x.field();
  if (v.is_infinity()) {
    auto c = x.leading();
    auto base = e < 0 ? inverse(c) : c;
    auto r = k.one();
    for (long long i = 0; i < (e < 0 ? -e : e); ++i) r = r * base;
    return Poly<F>::constant(k, r);
  }
  Poly<F> base = e < 0 ? poly_inverse_mod(x, v.poly()) : x;
  return poly_powmod(base, static_cast<std::uint64_t>(e < 0 ? -e : e), v.poly());
}

/// x = u * pi^v(x); returns the residue class of u.
template <Field F>
Poly<F> unit_part_residue(const Place<F>& v, const RatFunc<F>& x, int val) {
  const F& k = x.field();
  if (v.is_infinity()) return Poly<F>::constant(k, x.num().leading() * inverse(x.den().leading()));
  Poly<F> pw = poly_pow(v.poly(), static_cast<unsigned>(val < 0 ? -val : val));
  RatFunc<F> u = val >= 0 ? x / RatFunc<F>(pw) : x * RatFunc<F>(pw);
  return reduce_mod(u, v.poly());
}

}  // namespace detail

/// Tame symbol (-1)^(v(f) v(g)) f^v(g) / g^v(f) at a place, as a residue-field element.
template <Field F>
Poly<F> tame_symbol(const Place<F>& v, const RatFunc<F>& f, const RatFunc<F>& g) {
  if (f.is_zero() || g.is_zero()) throw Error(ErrorCode::NotAUnit, "tame symbol of zero");
  int a = valuation(v, f), b = valuation(v, g);
  Poly<F> uf = detail::unit_part_residue(v, f, a);
  Poly<F> ug = detail::unit_part_residue(v, g, b);
  Poly<F> val = detail::residue_pow(uf, b, v);
  Poly<F> den = detail::residue_pow(ug, a, v);
  Poly<F> r = v.is_infinity() ? val * Poly<F>::constant(f.field(), inverse(den.leading()))
                              : (val * poly_inverse_mod(den, v.poly())) % v.poly();
  if ((static_cast<long long>(a) * b) % 2 != 0) r = -r;
  return r;
}

/// Norm from F_p[t]/(P) down to F_p.
inline Fp residue_norm(const Place<PrimeField>& v, const Poly<PrimeField>& x) {
  if (v.is_infinity()) return x.leading();
  const std::uint64_t p = x.field().characteristic();
  std::uint64_t q = 1;
  for (int i = 0; i < v.degree(); ++i) q *= p;
  Poly<PrimeField> n = poly_powmod(x, (q - 1) / (p - 1), v.poly());
  return n.coeff(0);
}

struct ReciprocityReport {
  bool holds = false;
  Fp product;
  std::vector<std::pair<Place<PrimeField>, Poly<PrimeField>>> symbols;
};

/// Every place where f or g has a zero or pole, in total order, then infinity.
template <Field F>
std::vector<Place<F>> support_places(const std::vector<RatFunc<F>>& xs) {
  std::set<Irreducible<F>> found;
  for (const auto& x : xs)
    for (const Poly<F>* part : {&x.num(), &x.den()})
      for (const auto& [q, m] : factor_poly(*part).factors)
        if (q.degree() >= 1) found.insert(q);
  std::vector<Place<F>> out;
  for (const auto& q : found) out.push_back(Place<F>::finite(q));
  out.push_back(Place<F>::infinity());
  return out;
}

/// Product over all places of the norms of the tame symbols of (f, g).
inline ReciprocityReport weil_reciprocity(const RatFunc<PrimeField>& f, const RatFunc<PrimeField>& g) {
  ReciprocityReport rep;
  rep.product = f.field().one();
  for (const auto& v : support_places<PrimeField>({f, g})) {
    Poly<PrimeField> s = tame_symbol(v, f, g);
    rep.product = rep.product * residue_norm(v, s);
    rep.symbols.emplace_back(v, s);
  }
  rep.holds = PrimeField::is_one(rep.product);
  return rep;
}

}  // namespace prebloch
