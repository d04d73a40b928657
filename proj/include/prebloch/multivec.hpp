#pragma once

#include <map>
#include <utility>
#include <vector>

#include "prebloch/factor.hpp"
#include "prebloch/formal_sum.hpp"
#include "prebloch/ratfunc.hpp"

namespace prebloch {

namespace detail {

template <Field F>
struct PolyKeyLess {
  bool operator()(const std::pair<std::uint64_t, Poly<F>>& a, const std::pair<std::uint64_t, Poly<F>>& b) const {
    if (a.first != b.first) return a.first < b.first;
    return compare(a.second, b.second) < 0;
  }
};

/// Factorization of a nonzero polynomial with the scalar part removed, memoized per thread.
/// Over F_p constants are dropped; over Q the sign is dropped and prime content kept.
template <Field F>
const std::vector<std::pair<Irreducible<F>, int>>& letter_factors(const Poly<F>& p) {
  using Key = std::pair<std::uint64_t, Poly<F>>;
  thread_local std::map<Key, std::vector<std::pair<Irreducible<F>, int>>, PolyKeyLess<F>> cache;
  Key key{p.field().characteristic(), p};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (cache.size() > 200000) cache.clear();
  auto fz = factor_poly(p);
  std::vector<std::pair<Irreducible<F>, int>> kept;
  for (auto& [q, m] : fz.factors) {
    if constexpr (F::is_prime_field) {
      if (q.degree() == 0) continue;
    }
    kept.emplace_back(q, m);
  }
  return cache.emplace(std::move(key), std::move(kept)).first->second;
}

}  // namespace detail

/// Element of F(t)^* (x) Q, written additively: a map from irreducible letters to exponents.
/// Over F_p no degree-0 letter ever appears; over Q degree-0 letters are rational primes.
template <Field F>
class MultVec {
 public:
  explicit MultVec(F field = F{}) : field_(std::move(field)) {}

  /// Image of a nonzero rational function.
  static MultVec of(const RatFunc<F>& x) {
    if (x.is_zero()) throw Error(ErrorCode::NotAUnit, "zero is not an element of the multiplicative group");
    MultVec v(x.field());
    for (const auto& [q, m] : detail::letter_factors(x.num())) v.sum_.add(q, mpq_class(m));
    if (!x.den().is_one())
      for (const auto& [q, m] : detail::letter_factors(x.den())) v.sum_.add(q, mpq_class(-m));
    return v;
  }
  static MultVec letter(const Irreducible<F>& q, const F& field) {
    MultVec v(field);
    v.sum_.add(q, mpq_class(1));
    return v;
  }

  const F& field() const { return field_; }
  const auto& terms() const { return sum_.terms(); }
  bool is_zero() const { return sum_.is_zero(); }

  /// Largest letter degree; -1 for the zero vector.
  int degree() const { return sum_.is_zero() ? -1 : std::prev(sum_.terms().end())->first.degree(); }

  friend MultVec operator+(MultVec a, const MultVec& b) {
    a.sum_ += b.sum_;
    return a;
  }
  friend MultVec operator-(MultVec a, const MultVec& b) {
    a.sum_ -= b.sum_;
    return a;
  }
  friend MultVec operator*(const mpq_class& s, MultVec a) {
    a.sum_ *= s;
    return a;
  }
  friend bool operator==(const MultVec& a, const MultVec& b) { return a.sum_ == b.sum_; }

 private:
  F field_;
  FormalSum<Irreducible<F>> sum_;
};

}  // namespace prebloch
