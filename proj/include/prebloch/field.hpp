#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <compare>
#include <ostream>
#include <string>

#include "prebloch/error.hpp"

namespace prebloch {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1U) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1U;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the base set is exact for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Element of a prime field. Carries its modulus; both operands of a binary
/// operation must share it.
struct Fp {
  std::uint64_t v = 0;
  std::uint64_t p = 0;

  friend bool operator==(const Fp& a, const Fp& b) { return a.v == b.v && a.p == b.p; }

  friend Fp operator+(Fp a, const Fp& b) {
    a.v += b.v;
    if (a.v >= a.p) a.v -= a.p;
    return a;
  }
  friend Fp operator-(Fp a, const Fp& b) {
    a.v = a.v >= b.v ? a.v - b.v : a.v + a.p - b.v;
    return a;
  }
  friend Fp operator-(Fp a) {
    if (a.v != 0) a.v = a.p - a.v;
    return a;
  }
  friend Fp operator*(Fp a, const Fp& b) {
    a.v = detail::mulmod(a.v, b.v, a.p);
    return a;
  }
  friend Fp inverse(const Fp& a) {
    if (a.v == 0) throw Error(ErrorCode::ZeroDivisor, "inverse of 0 in F_" + std::to_string(a.p));
    return Fp{detail::powmod(a.v, a.p - 2, a.p), a.p};
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * inverse(b); }
  Fp& operator+=(const Fp& b) { return *this = *this + b; }
  Fp& operator-=(const Fp& b) { return *this = *this - b; }
  Fp& operator*=(const Fp& b) { return *this = *this * b; }
};

inline mpq_class inverse(const mpq_class& a) {
  if (sgn(a) == 0) throw Error(ErrorCode::ZeroDivisor, "inverse of 0 in Q");
  return mpq_class(1) / a;
}

/// F_p for an odd prime p. The public constructor enforces p < 2^31; the
/// internal `large` factory admits word-size primes used by the Q factorizer.
class PrimeField {
 public:
  using value_type = Fp;
  static constexpr bool is_prime_field = true;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (1ULL << 31)) throw Error(ErrorCode::InvalidArgument, "prime must be below 2^31");
    validate();
  }

  static PrimeField large(std::uint64_t p) {
    PrimeField f;
    f.p_ = p;
    if (p >= (1ULL << 62)) throw Error(ErrorCode::InvalidArgument, "modulus too large");
    f.validate();
    return f;
  }

  std::uint64_t characteristic() const { return p_; }

  Fp zero() const { return Fp{0, p_}; }
  Fp one() const { return Fp{1, p_}; }
  Fp from_int(long long x) const {
    long long m = static_cast<long long>(p_);
    long long r = x % m;
    if (r < 0) r += m;
    return Fp{static_cast<std::uint64_t>(r), p_};
  }
  Fp from_integer(const mpz_class& z) const {
    return Fp{static_cast<std::uint64_t>(mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p_))), p_};
  }
  Fp from_rational(const mpq_class& q) const {
    Fp den = from_integer(q.get_den());
    if (den.v == 0) throw Error(ErrorCode::ZeroDivisor, "denominator divisible by p");
    return from_integer(q.get_num()) / den;
  }
  Fp from_index(std::uint64_t i) const { return Fp{i % p_, p_}; }

  static bool is_zero(const Fp& a) { return a.v == 0; }
  static bool is_one(const Fp& a) { return a.v == 1; }
  /// Canonical ordering by representative 0..p-1.
  static std::strong_ordering compare(const Fp& a, const Fp& b) { return a.v <=> b.v; }
  static std::string to_string(const Fp& a) { return std::to_string(a.v); }
  static std::uint64_t hash(const Fp& a) { return a.v; }

  std::string name() const { return "F_" + std::to_string(p_); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  PrimeField() = default;
  void validate() const {
    if (p_ < 3 || !is_prime_u64(p_)) {
      throw Error(ErrorCode::InvalidArgument, "modulus " + std::to_string(p_) + " is not an odd prime");
    }
  }
  std::uint64_t p_ = 3;
};

/// The field Q with GMP rationals.
class RationalField {
 public:
  using value_type = mpq_class;
  static constexpr bool is_prime_field = false;

  std::uint64_t characteristic() const { return 0; }
  mpq_class zero() const { return mpq_class(0); }
  mpq_class one() const { return mpq_class(1); }
  mpq_class from_int(long long x) const { return mpq_class(mpz_class(std::to_string(x))); }
  mpq_class from_integer(const mpz_class& z) const { return mpq_class(z); }
  mpq_class from_rational(const mpq_class& q) const { return q; }

  static bool is_zero(const mpq_class& a) { return sgn(a) == 0; }
  static bool is_one(const mpq_class& a) { return a == 1; }
  /// Ordered by (numerator, denominator) pairs.
  static std::strong_ordering compare(const mpq_class& a, const mpq_class& b) {
    int c = cmp(a.get_num(), b.get_num());
    if (c == 0) c = cmp(a.get_den(), b.get_den());
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  static std::string to_string(const mpq_class& a) { return a.get_str(); }
  static std::uint64_t hash(const mpq_class& a) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char ch : a.get_str()) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
    return h;
  }
  std::string name() const { return "Q"; }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

template <class F>
concept Field = requires(const F& f, const typename F::value_type& a) {
  { f.zero() } -> std::convertible_to<typename F::value_type>;
  { f.one() } -> std::convertible_to<typename F::value_type>;
  { F::is_zero(a) } -> std::convertible_to<bool>;
  { F::compare(a, a) } -> std::convertible_to<std::strong_ordering>;
  { f.name() } -> std::convertible_to<std::string>;
};

}  // namespace prebloch
