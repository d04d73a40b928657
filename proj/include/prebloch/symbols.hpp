#pragma once

#include <utility>

#include "prebloch/linalg.hpp"
#include "prebloch/residue.hpp"

namespace prebloch {

/// Division symbol x_f(a, b) = a b / r with a, b replaced by their reductions mod f
/// and r = a b mod f.
template <Field F>
RatFunc<F> x_f_symbol(const Irreducible<F>& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> ar = a % f.poly(), br = b % f.poly();
  if (ar.is_zero() || br.is_zero()) throw Error(ErrorCode::NotAUnitModF, "argument vanishes modulo f");
  Poly<F> ab = ar * br;
  return rf_normalize(ab, ab % f.poly());
}

template <Field F>
struct ThuePair {
  Poly<F> A, B;
};

/// Degree bounds (deg A, deg B) for a modulus of degree d.
inline std::pair<int, int> thue_bounds(int d) {
  int k = d / 2;
  return d % 2 == 1 ? std::pair{k, k} : std::pair{k - 1, k};
}

/// Polynomial Thue lemma: A = R B mod P with small A, B. B is the monic solution of
/// least degree, found from the kernel of the map B -> (high coefficients of R B mod P).
template <Field F>
ThuePair<F> thue_representative(const Irreducible<F>& P, const Poly<F>& R) {
  const F& k = P.poly().field();
  const int d = P.degree();
  Poly<F> r = R % P.poly();
  if (r.is_zero()) return {Poly<F>(k), Poly<F>::one(k)};
  auto [ka, kb] = thue_bounds(d);
  // column j: R t^j mod P
  std::vector<Poly<F>> cols;
  for (int j = 0; j <= kb; ++j) cols.push_back((r * Poly<F>::monomial(k, k.one(), j)) % P.poly());
  for (int j = 0; j <= kb; ++j) {
    const int rows = d - 1 - ka;
    DenseMatrix<F> m(k, static_cast<std::size_t>(std::max(rows, 0)), static_cast<std::size_t>(j + 1));
    for (int i = 0; i < rows; ++i)
      for (int c = 0; c <= j; ++c) m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(c)) = cols[static_cast<std::size_t>(c)].coeff(ka + 1 + i);
    for (const auto& v : m.nullspace()) {
      if (F::is_zero(v.back())) continue;
      auto inv = inverse(v.back());
      std::vector<typename F::value_type> bc;
      for (const auto& x : v) bc.push_back(x * inv);
      Poly<F> B(k, bc);
      Poly<F> A = (r * B) % P.poly();
      return {A, B};
    }
  }
  throw Error(ErrorCode::NonConvergence, "no Thue representative within the degree bounds");
}

/// Thue pair with the roles of the bounds exchanged: deg A <= k and deg B <= k - 1 for even
/// d = 2k (identical bounds for odd d). Obtained from the representative of R^(-1).
template <Field F>
ThuePair<F> thue_representative_swapped(const Irreducible<F>& P, const Poly<F>& R) {
  const F& k = P.poly().field();
  Poly<F> r = R % P.poly();
  if (r.is_zero()) return {Poly<F>(k), Poly<F>::one(k)};
  auto inv = thue_representative(P, poly_inverse_mod(r, P.poly()));
  return {inv.B, inv.A};
}

/// The special case H(u, P) = {u}_2 of the projection used for Lemma 4: u is built from
/// letters of degree < deg P, P divides 1 - u exactly once, and (1 - u)/P also has only
/// letters of degree < deg P.
template <Field F>
BlochElt<F> project_H(const RatFunc<F>& u, const Irreducible<F>& P) {
  auto low = [&](const RatFunc<F>& x) {
    for (const Poly<F>* part : {&x.num(), &x.den()})
      for (const auto& [q, m] : factor_poly(*part).factors)
        if (q.degree() >= P.degree()) return false;
    return true;
  };
  if (u.is_zero() || !low(u)) throw Error(ErrorCode::OutsideSpecialCase, "u has a letter of degree >= deg P");
  RatFunc<F> w = u.one_minus();
  if (w.is_zero() || valuation(w, P.poly()) != 1) throw Error(ErrorCode::OutsideSpecialCase, "P must divide 1 - u exactly once");
  if (!low(w / RatFunc<F>(P.poly()))) throw Error(ErrorCode::OutsideSpecialCase, "(1 - u)/P has a letter of degree >= deg P");
  return BlochElt<F>::of(u);
}

/// H(F1, P) + H(F2, P) - H(F1 F2 mod P, P) = H(F1 F2 / (F1 F2 mod P), P).
template <Field F>
BlochElt<F> project_H_bilinear(const Poly<F>& F1, const Poly<F>& F2, const Irreducible<F>& P) {
  Poly<F> a = F1 % P.poly(), b = F2 % P.poly();
  if (a.is_zero() || b.is_zero()) throw Error(ErrorCode::OutsideSpecialCase, "argument vanishes modulo P");
  Poly<F> ab = a * b;
  return project_H(rf_normalize(ab, ab % P.poly()), P);
}

}  // namespace prebloch
