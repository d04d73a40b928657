#pragma once

#include <vector>

#include "prebloch/symbols.hpp"

namespace prebloch {

template <Field F>
struct Lemma1Generator {
  enum class Kind { Division, Ratio };
  Kind kind;
  Poly<F> modulus;  // f for {x_f(a,b)}; unused for ratios
  Poly<F> first;    // a, or g
  Poly<F> second;   // b, or h
  RatFunc<F> value;
  mpq_class coeff;
};

template <Field F>
struct Lemma1Level {
  int degree;        // delta_2-degree before this level
  int degree_after;  // delta_2-degree after subtracting this level's generators (-1 for zero)
  std::size_t generators;
};

template <Field F>
struct Lemma1Decomposition {
  std::vector<Lemma1Generator<F>> generators;
  std::vector<Lemma1Level<F>> levels;
  BlochElt<F> remainder;  // X minus the generators (minus the generators alone for wedge input)
  WedgeElt<F> residual;   // input wedge minus delta_2 of the generators; lies in L_0
};

namespace detail {

template <Field F>
class Lemma1Builder {
 public:
  Lemma1Builder(const BlochElt<F>& X) : k_(X.field()), W_(delta2(X)), out_{{}, {}, X, W_} {}
  Lemma1Builder(const WedgeElt<F>& W) : k_(W.field()), W_(W), out_{{}, {}, BlochElt<F>(k_), W} {
    if (W.arity() != 2) throw Error(ErrorCode::ShapeMismatch, "expected an element of the second exterior power");
  }

  Lemma1Decomposition<F> run() {
    int d = max_letter_degree(W_);
    while (d >= 1) {
      std::size_t before = out_.generators.size();
      ratio_step(d);
      division_step(d);
      int after = max_letter_degree(W_);
      out_.levels.push_back({d, after, out_.generators.size() - before});
      if (after >= d) throw Error(ErrorCode::NotInKernel, "degree did not drop at level " + std::to_string(d));
      d = after;
    }
    out_.residual = W_;
    return std::move(out_);
  }

 private:
  void subtract(typename Lemma1Generator<F>::Kind kind, const Poly<F>& f, const Poly<F>& a, const Poly<F>& b,
                const RatFunc<F>& value, const mpq_class& c) {
    BlochElt<F> g = BlochElt<F>::of(value, c);
    WedgeElt<F> dg = delta2(g);
    if (value.is_one() || value.is_zero()) return;
    out_.generators.push_back({kind, f, a, b, value, c});
    out_.remainder -= g;
    W_ -= dg;
  }

  void add_division(const Irreducible<F>& P, const Poly<F>& a, const Poly<F>& b, const mpq_class& c) {
    RatFunc<F> x = x_f_symbol(P, a, b);
    if (x.is_one()) return;
    subtract(Lemma1Generator<F>::Kind::Division, P.poly(), a % P.poly(), b % P.poly(), x, c);
  }

  // Monomials A ^ B with both letters of degree d: subtract c {B/A}.
  void ratio_step(int d) {
    std::vector<std::pair<Monomial<F>, mpq_class>> todo;
    for (auto it = W_.terms().rbegin(); it != W_.terms().rend(); ++it) {
      const auto& [m, c] = *it;
      if (m[0].degree() == d && m[1].degree() == d) todo.emplace_back(m, c);
    }
    for (const auto& [m, c] : todo) {
      const Poly<F>& A = m[0].poly();
      const Poly<F>& B = m[1].poly();
      subtract(Lemma1Generator<F>::Kind::Ratio, Poly<F>(k_), B, A, rf_normalize(B, A), c);
    }
  }

  // Remaining degree-d monomials are P ^ C with deg C < d; rewrite each P ^ U through division symbols.
  void division_step(int d) {
    std::map<Irreducible<F>, std::vector<std::pair<Irreducible<F>, mpq_class>>> parts;
    for (const auto& [m, c] : W_.terms())
      if (m[0].degree() == d) parts[m[0]].emplace_back(m[1], c);
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) eliminate(it->first, it->second);
  }

  void eliminate(const Irreducible<F>& P, const std::vector<std::pair<Irreducible<F>, mpq_class>>& U) {
    const Poly<F>& mod = P.poly();
    mpz_class D = 1;
    for (const auto& [C, e] : U) D = lcm(D, e.get_den());
    const mpq_class scale = mpq_class(1) / mpq_class(D);
    // chain products of the numerator and denominator letters
    Poly<F> s_num = Poly<F>::one(k_), s_den = Poly<F>::one(k_);
    for (const auto& [C, e] : U) {
      mpq_class n = e * D;
      bool neg = sgn(n) < 0;
      mpz_class count = abs(n.get_num());
      Poly<F>& s = neg ? s_den : s_num;
      for (mpz_class j = 0; j < count; ++j) {
        add_division(P, s, C.poly(), neg ? scale : mpq_class(-scale));
        s = (s * C.poly()) % mod;
      }
    }
    // P ^ s_num - P ^ s_den = P ^ w + delta_2{x_P(w, s_den)} modulo lower degree
    Poly<F> w = (s_num * poly_inverse_mod(s_den, mod)) % mod;
    add_division(P, w, s_den, scale);
    if (w.degree() <= 0 && is_torsion_constant(w)) return;
    // m (P ^ w) = -sum_{k<m} delta_2{x_P(w^k, w)} once w^m is torsion
    std::vector<Poly<F>> powers{w};
    const int limit = order_limit(P);
    while (true) {
      Poly<F> next = (powers.back() * w) % mod;
      if (next.degree() <= 0 && is_torsion_constant(next)) break;
      powers.push_back(next);
      if (static_cast<int>(powers.size()) > limit) {
        throw Error(ErrorCode::NotInKernel, "residue at the place is not torsion: " + std::to_string(powers.size()));
      }
    }
    const mpq_class m = static_cast<long>(powers.size() + 1);
    for (const auto& wk : powers) add_division(P, wk, w, -scale / m);
  }

  bool is_torsion_constant(const Poly<F>& c) const {
    if constexpr (F::is_prime_field) {
      return true;
    } else {
      return c.degree() == 0 && abs(c.leading()) == 1;
    }
  }

  int order_limit(const Irreducible<F>& P) const {
    if constexpr (F::is_prime_field) {
      std::uint64_t q = 1;
      for (int i = 0; i < P.degree(); ++i) q *= k_.characteristic();
      return static_cast<int>((q - 1) / (k_.characteristic() - 1)) + 1;
    } else {
      return 64;
    }
  }

  F k_;
  WedgeElt<F> W_;
  Lemma1Decomposition<F> out_;
};

}  // namespace detail

/// Decomposes X into generators {x_f(a,b)}_2 and {g/h}_2, degree by degree, following the
/// two subtraction steps: first monomials A ^ B of two top-degree letters, then the parts
/// P ^ U through chains of division symbols. The remainder has delta_2-image in L_0.
template <Field F>
Lemma1Decomposition<F> lemma1_decompose(const BlochElt<F>& X) {
  return detail::Lemma1Builder<F>(X).run();
}

/// Same procedure for an arbitrary element of the second exterior power; fails with
/// NotInKernel when some top-degree residue is not torsion.
template <Field F>
Lemma1Decomposition<F> lemma1_decompose(const WedgeElt<F>& W) {
  return detail::Lemma1Builder<F>(W).run();
}

}  // namespace prebloch
