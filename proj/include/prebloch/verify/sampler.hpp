#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "prebloch/factor.hpp"
#include "prebloch/verify/certificate.hpp"

namespace prebloch {

inline constexpr int kMaxResamples = 100;
inline constexpr int kIrreducibleAttempts = 5000;

/// Per-trial stream: depends only on (seed, suite, trial), so any trial can be replayed alone.
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::string_view suite, std::uint64_t trial) {
  std::uint32_t tag = 2166136261U;
  for (char ch : suite) tag = (tag ^ static_cast<unsigned char>(ch)) * 16777619U;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32), tag};
  return std::mt19937_64(seq);
}

/// Random instances over F_p (uniform coefficients) or Q (integer coefficients in [-3, 3]).
template <Field F>
class Sampler {
 public:
  Sampler(F field, std::mt19937_64& rng) : k_(std::move(field)), rng_(rng) {}

  const F& field() const { return k_; }
  std::mt19937_64& rng() { return rng_; }

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
      std::uint64_t r = rng_();
      if (r < limit) return r % n;
    }
  }
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool chance(int num, int den) { return below(static_cast<std::uint64_t>(den)) < static_cast<std::uint64_t>(num); }

  typename F::value_type element() {
    if constexpr (F::is_prime_field) {
      return k_.from_index(below(k_.characteristic()));
    } else {
      return k_.from_int(between(-3, 3));
    }
  }
  typename F::value_type nonzero_element() {
    for (;;) {
      auto c = element();
      if (!F::is_zero(c)) return c;
    }
  }

  /// Uniform over polynomials of degree <= maxdeg (the zero polynomial included).
  Poly<F> poly(int maxdeg) {
    std::vector<typename F::value_type> c;
    for (int i = 0; i <= maxdeg; ++i) c.push_back(element());
    return Poly<F>(k_, c);
  }
  Poly<F> nonzero_poly(int maxdeg) {
    for (int i = 0; i < kMaxResamples; ++i) {
      Poly<F> p = poly(maxdeg);
      if (!p.is_zero()) return p;
    }
    throw Error(ErrorCode::ResampleExhausted, "no nonzero polynomial after " + std::to_string(kMaxResamples) + " attempts");
  }
  Poly<F> monic(int deg) { return poly(deg - 1) + Poly<F>::monomial(k_, k_.one(), deg); }

  Irreducible<F> irreducible(int deg) {
    for (int i = 0; i < kIrreducibleAttempts; ++i) {
      Poly<F> f = monic(deg);
      if (is_irreducible(f)) return Irreducible<F>::certified(f);
    }
    throw Error(ErrorCode::ResampleExhausted, "no irreducible polynomial of degree " + std::to_string(deg));
  }

  /// Degree <= maxdeg and nonzero modulo P; rejected draws are recorded on the certificate.
  Poly<F> nonzero_mod(const Irreducible<F>& P, int maxdeg, Certificate& cert) {
    for (int i = 0; i < kMaxResamples; ++i) {
      Poly<F> a = poly(maxdeg);
      if (!(a % P.poly()).is_zero()) return a;
      ++cert.resamples;
      cert.resample_reasons.push_back("argument vanishes modulo P");
    }
    throw Error(ErrorCode::ResampleExhausted, "argument vanishes modulo P in " + std::to_string(kMaxResamples) + " draws");
  }

  /// Nonzero rational function with numerator and denominator of degree <= maxdeg.
  RatFunc<F> ratfunc(int maxdeg) {
    Poly<F> n = nonzero_poly(maxdeg), d = nonzero_poly(maxdeg);
    return rf_normalize(n, d);
  }

 private:
  F k_;
  std::mt19937_64& rng_;
};

}  // namespace prebloch
