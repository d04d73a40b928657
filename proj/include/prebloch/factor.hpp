#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "prebloch/poly.hpp"

namespace prebloch {

/// A certified irreducible letter: a monic irreducible polynomial of degree >= 1,
/// or (over Q only) a positive rational prime stored as a constant polynomial.
/// Comparison is the total order used by every normal form in the library:
/// degree first, then coefficients from the leading term down.
template <Field F>
class Irreducible {
 public:
  /// Trusts the caller; only factorization routines and tests construct these.
  static Irreducible certified(Poly<F> p) { return Irreducible(std::move(p)); }

  const Poly<F>& poly() const { return p_; }
  int degree() const { return p_.degree(); }
  bool is_constant() const { return p_.degree() == 0; }

  friend std::strong_ordering operator<=>(const Irreducible& a, const Irreducible& b) { return compare(a.p_, b.p_); }
  friend bool operator==(const Irreducible& a, const Irreducible& b) { return a.p_ == b.p_; }

 private:
  explicit Irreducible(Poly<F> p) : p_(std::move(p)) {}
  Poly<F> p_;
};

template <Field F>
struct Factorization {
  typename F::value_type unit;
  std::vector<std::pair<Irreducible<F>, int>> factors;  // sorted ascending by total order
};

/// Bounds for factorization over Q.
struct RationalFactorLimits {
  int max_degree = 8;
  long long max_coefficient = 1000000;
};

namespace detail {

template <Field F>
void merge_factor(std::vector<std::pair<Irreducible<F>, int>>& out, const Poly<F>& p, int mult) {
  for (auto& [q, m] : out) {
    if (q.poly() == p) {
      m += mult;
      return;
    }
  }
  out.emplace_back(Irreducible<F>::certified(p), mult);
}

template <Field F>
void sort_factors(std::vector<std::pair<Irreducible<F>, int>>& v) {
  std::erase_if(v, [](const auto& e) { return e.second == 0; });
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
}

// ---- finite fields -------------------------------------------------------

/// Square-free decomposition of a monic polynomial over F_p.
inline std::vector<std::pair<Poly<PrimeField>, int>> squarefree_fp(const Poly<PrimeField>& f) {
  using P = Poly<PrimeField>;
  const PrimeField& k = f.field();
  std::vector<std::pair<P, int>> out;
  if (f.degree() < 1) return out;
  P c = poly_gcd(f, f.derivative());
  P w = f / c;
  int i = 1;
  while (!w.is_one()) {
    P y = poly_gcd(w, c);
    P fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i);
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one()) {
    // c is a p-th power: take the root coefficientwise (Frobenius is the identity on F_p).
    std::uint64_t p = k.characteristic();
    std::vector<Fp> root;
    for (std::size_t j = 0; j < c.coeffs().size(); j += p) root.push_back(c.coeffs()[j]);
    for (auto& [g, m] : squarefree_fp(P(k, std::move(root)).monic())) out.emplace_back(g, m * static_cast<int>(p));
  }
  return out;
}

/// Distinct-degree factorization of a monic square-free polynomial.
inline std::vector<std::pair<Poly<PrimeField>, int>> distinct_degree_fp(Poly<PrimeField> f) {
  using P = Poly<PrimeField>;
  const PrimeField k = f.field();
  const std::uint64_t p = k.characteristic();
  std::vector<std::pair<P, int>> out;
  P x = P::t(k);
  P h = x % f;
  for (int i = 1; f.degree() >= 2 * i; ++i) {
    h = poly_powmod(h, p, f);
    P g = poly_gcd(f, h - x);
    if (!g.is_one()) {
      out.emplace_back(g, i);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), f.degree());
  return out;
}

/// Equal-degree splitting (odd p): every factor of f has degree e.
inline void equal_degree_fp(const Poly<PrimeField>& f, int e, std::mt19937_64& rng, std::vector<Poly<PrimeField>>& out) {
  using P = Poly<PrimeField>;
  if (f.degree() == e) {
    out.push_back(f.monic());
    return;
  }
  const PrimeField k = f.field();
  const std::uint64_t p = k.characteristic();
  for (;;) {
    std::vector<Fp> rc;
    for (int j = 0; j < f.degree(); ++j) rc.push_back(k.from_index(rng()));
    P r(k, std::move(rc));
    if (r.degree() < 1) continue;
    // r^((p^e - 1)/2) = (r * r^p * ... * r^(p^(e-1)))^((p-1)/2)
    P frob = r % f;
    P norm = frob;
    for (int j = 1; j < e; ++j) {
      frob = poly_powmod(frob, p, f);
      norm = (norm * frob) % f;
    }
    P u = poly_powmod(norm, (p - 1) / 2, f);
    P g = poly_gcd(f, u - P::one(k));
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_fp(g, e, rng, out);
      equal_degree_fp(f / g, e, rng, out);
      return;
    }
  }
}

/// Monic irreducible factors of a monic square-free polynomial over F_p.
inline std::vector<Poly<PrimeField>> split_squarefree_fp(const Poly<PrimeField>& f) {
  std::mt19937_64 rng(f.hash());
  std::vector<Poly<PrimeField>> out;
  for (auto& [g, e] : distinct_degree_fp(f)) equal_degree_fp(g, e, rng, out);
  return out;
}

// ---- integers ------------------------------------------------------------

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

inline std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto step = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = gcd_u64(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

inline void factor_u64(std::uint64_t n, std::map<std::uint64_t, int>& out) {
  if (n < 2) return;
  for (std::uint64_t q = 2; q < 1000 && q * q <= n; ++q) {
    while (n % q == 0) {
      ++out[q];
      n /= q;
    }
  }
  if (n < 2) return;
  if (is_prime_u64(n)) {
    ++out[n];
    return;
  }
  std::uint64_t d = pollard_rho(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

inline std::map<std::uint64_t, int> factor_integer(const mpz_class& n) {
  mpz_class a = abs(n);
  if (!a.fits_ulong_p()) throw Error(ErrorCode::FactorizationUnsupported, "integer content exceeds 64 bits");
  std::map<std::uint64_t, int> out;
  factor_u64(a.get_ui(), out);
  return out;
}

// ---- rationals -----------------------------------------------------------

using ZPoly = std::vector<mpz_class>;

/// Primitive integer polynomial with positive leading coefficient, proportional to f.
inline ZPoly primitive_integer(const Poly<RationalField>& f) {
  mpz_class l = 1;
  for (const auto& c : f.coeffs()) l = lcm(l, c.get_den());
  ZPoly z;
  mpz_class g = 0;
  for (const auto& c : f.coeffs()) {
    mpz_class v = c.get_num() * (l / c.get_den());
    z.push_back(v);
    g = gcd(g, v);
  }
  if (z.back() < 0) g = -g;
  for (auto& v : z) v /= g;
  return z;
}

inline Poly<RationalField> to_monic_q(const ZPoly& z) {
  std::vector<mpq_class> v;
  for (const auto& c : z) v.emplace_back(c);
  return Poly<RationalField>(RationalField{}, std::move(v)).monic();
}

/// Exact division over Z; returns false if b does not divide a.
inline bool zpoly_divides(const ZPoly& a, const ZPoly& b, ZPoly& q) {
  ZPoly r = a;
  int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
  if (da < db) return false;
  q.assign(static_cast<std::size_t>(da - db + 1), mpz_class(0));
  for (int i = da; i >= db; --i) {
    mpz_class& top = r[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return false;
    mpz_class f = top / b.back();
    q[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b[static_cast<std::size_t>(j)];
  }
  for (int i = 0; i < db; ++i)
    if (r[static_cast<std::size_t>(i)] != 0) return false;
  return true;
}

inline std::vector<std::uint64_t> large_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> v;
    for (std::uint64_t n = (1ULL << 61) - 1; v.size() < 8; n -= 2)
      if (is_prime_u64(n)) v.push_back(n);
    return v;
  }();
  return primes;
}

/// Irreducible factors over Z of a primitive square-free integer polynomial whose
/// coefficients respect the configured bounds, via factorization modulo a 61-bit
/// prime and recombination of the symmetric lifts.
inline std::vector<ZPoly> factor_squarefree_z(const ZPoly& h) {
  if (h.size() <= 2) return {h};
  for (std::uint64_t p : large_primes()) {
    PrimeField k = PrimeField::large(p);
    std::vector<Fp> hc;
    for (const auto& c : h) hc.push_back(k.from_integer(c));
    Poly<PrimeField> hp(k, hc);
    if (hp.degree() != static_cast<int>(h.size()) - 1) continue;
    if (!poly_gcd(hp, hp.derivative()).is_one()) continue;
    std::vector<Poly<PrimeField>> mod_factors = split_squarefree_fp(hp.monic());
    std::sort(mod_factors.begin(), mod_factors.end(), [](const auto& a, const auto& b) { return compare(a, b) < 0; });

    const mpz_class P(std::to_string(p));
    const mpz_class half = P / 2;
    std::vector<ZPoly> found;
    ZPoly f = h;
    std::size_t s = 1;
    while (2 * s <= mod_factors.size()) {
      bool progress = false;
      std::vector<std::size_t> idx(s);
      std::iota(idx.begin(), idx.end(), 0);
      for (;;) {
        Poly<PrimeField> prod = Poly<PrimeField>::constant(k, k.from_integer(f.back()));
        for (auto i : idx) prod = prod * mod_factors[i];
        ZPoly g;
        for (const auto& c : prod.coeffs()) {
          mpz_class v(std::to_string(c.v));
          if (v > half) v -= P;
          g.push_back(v);
        }
        mpz_class cont = 0;
        for (const auto& c : g) cont = gcd(cont, c);
        for (auto& c : g) c /= cont;
        if (g.back() < 0)
          for (auto& c : g) c = -c;
        ZPoly q;
        if (zpoly_divides(f, g, q)) {
          found.push_back(g);
          f = q;
          for (auto it = idx.rbegin(); it != idx.rend(); ++it)
            mod_factors.erase(mod_factors.begin() + static_cast<std::ptrdiff_t>(*it));
          progress = true;
          break;
        }
        // next combination
        std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(s) - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == mod_factors.size() - s + static_cast<std::size_t>(pos)) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (std::size_t j = static_cast<std::size_t>(pos) + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
      }
      if (!progress) ++s;
    }
    if (f.size() > 1) found.push_back(f);
    return found;
  }
  throw Error(ErrorCode::FactorizationUnsupported, "no suitable modular prime found");
}

}  // namespace detail

/// Factorization over F_p. The constant part goes into `unit`.
inline Factorization<PrimeField> factor_poly(const Poly<PrimeField>& a) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroDivisor, "factorization of the zero polynomial");
  Factorization<PrimeField> out{a.leading(), {}};
  for (auto& [s, m] : detail::squarefree_fp(a.monic()))
    for (auto& g : detail::split_squarefree_fp(s)) detail::merge_factor(out.factors, g, m);
  detail::sort_factors(out.factors);
  return out;
}

/// Factorization over Q: a = unit * prod(prime^e) * prod(monic irreducible^m),
/// unit = +-1, prime exponents negative for primes of the denominator content.
inline Factorization<RationalField> factor_poly(const Poly<RationalField>& a, RationalFactorLimits limits = {}) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroDivisor, "factorization of the zero polynomial");
  Factorization<RationalField> out{mpq_class(sgn(a.leading())), {}};
  RationalField Q;
  mpq_class lc = abs(a.leading());
  for (auto [q, e] : detail::factor_integer(lc.get_num()))
    detail::merge_factor(out.factors, Poly<RationalField>::constant(Q, mpq_class(mpz_class(std::to_string(q)))), e);
  for (auto [q, e] : detail::factor_integer(lc.get_den()))
    detail::merge_factor(out.factors, Poly<RationalField>::constant(Q, mpq_class(mpz_class(std::to_string(q)))), -e);
  if (a.degree() >= 1) {
    if (a.degree() > limits.max_degree)
      throw Error(ErrorCode::FactorizationUnsupported, "degree " + std::to_string(a.degree()) + " exceeds the supported bound");
    for (const auto& c : detail::primitive_integer(a)) {
      if (abs(c) > mpz_class(std::to_string(limits.max_coefficient)))
        throw Error(ErrorCode::FactorizationUnsupported, "coefficient " + c.get_str() + " exceeds the supported bound");
    }
    // Yun's square-free decomposition in characteristic 0.
    using P = Poly<RationalField>;
    P f = a.monic();
    P b = f.derivative();
    P c = poly_gcd(f, b);
    P w = f / c;
    P y = b / c;
    P z = y - w.derivative();
    for (int i = 1; w.degree() > 0; ++i) {
      P g = poly_gcd(w, z);
      w = w / g;
      y = z / g;
      z = y - w.derivative();
      if (g.degree() > 0) {
        if (g.degree() == 1) {
          detail::merge_factor(out.factors, g.monic(), i);
        } else {
          for (const auto& h : detail::factor_squarefree_z(detail::primitive_integer(g)))
            detail::merge_factor(out.factors, detail::to_monic_q(h), i);
        }
      }
    }
  }
  detail::sort_factors(out.factors);
  return out;
}

template <Field F>
bool is_irreducible(const Poly<F>& a) {
  if (a.degree() < 1) return false;
  auto fz = factor_poly(a);
  return fz.factors.size() == 1 && fz.factors[0].second == 1;
}

/// Certifies P as a monic irreducible of degree >= 1.
template <Field F>
Irreducible<F> make_irreducible(const Poly<F>& p) {
  if (p.degree() < 1 || !p.is_monic() || !is_irreducible(p))
    throw Error(ErrorCode::InvalidArgument, "polynomial is not monic irreducible of positive degree");
  return Irreducible<F>::certified(p);
}

}  // namespace prebloch
