#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "prebloch/wedge.hpp"

namespace prebloch {

enum class Marker { Zero, One, Infinity };

/// Generator {x}_2 of Q[P^1(F(t))]. The points 0, 1 and infinity are always markers.
template <Field F>
class BlochGen {
 public:
  static BlochGen marker(Marker m) { return BlochGen(m); }
  static BlochGen infinity() { return BlochGen(Marker::Infinity); }
  /// Canonical generator for a rational function: 0 and 1 become markers.
  static BlochGen point(const RatFunc<F>& x) {
    if (x.is_zero()) return BlochGen(Marker::Zero);
    if (x.is_one()) return BlochGen(Marker::One);
    return BlochGen(x);
  }

  bool is_marker() const { return !x_.has_value(); }
  Marker which() const { return m_; }
  const RatFunc<F>& value() const { return *x_; }

  friend std::strong_ordering operator<=>(const BlochGen& a, const BlochGen& b) {
    if (a.is_marker() != b.is_marker()) return a.is_marker() ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.is_marker()) return static_cast<int>(a.m_) <=> static_cast<int>(b.m_);
    return compare(*a.x_, *b.x_);
  }
  friend bool operator==(const BlochGen& a, const BlochGen& b) { return (a <=> b) == 0; }

 private:
  explicit BlochGen(Marker m) : m_(m) {}
  explicit BlochGen(RatFunc<F> x) : m_(Marker::Zero), x_(std::move(x)) {}
  Marker m_;
  std::optional<RatFunc<F>> x_;
};

/// Formal Q-combination of generators {x}_2. Equality is formal equality of
/// term maps; equality modulo the five-term relations is not decided.
template <Field F>
class BlochElt {
 public:
  explicit BlochElt(F field = F{}) : field_(std::move(field)) {}

  static BlochElt gen(const BlochGen<F>& g, const F& field, const mpq_class& c = 1) {
    BlochElt b(field);
    b.sum_.add(g, c);
    return b;
  }
  static BlochElt of(const RatFunc<F>& x, const mpq_class& c = 1) { return gen(BlochGen<F>::point(x), x.field(), c); }

  const F& field() const { return field_; }
  const auto& terms() const { return sum_.terms(); }
  bool is_zero() const { return sum_.is_zero(); }
  void add(const BlochGen<F>& g, const mpq_class& c) { sum_.add(g, c); }

  friend BlochElt operator+(BlochElt a, const BlochElt& b) {
    a.sum_ += b.sum_;
    return a;
  }
  friend BlochElt operator-(BlochElt a, const BlochElt& b) {
    a.sum_ -= b.sum_;
    return a;
  }
  friend BlochElt operator-(BlochElt a) {
    a.sum_ *= mpq_class(-1);
    return a;
  }
  friend BlochElt operator*(const mpq_class& s, BlochElt a) {
    a.sum_ *= s;
    return a;
  }
  BlochElt& operator+=(const BlochElt& b) {
    sum_ += b.sum_;
    return *this;
  }
  BlochElt& operator-=(const BlochElt& b) {
    sum_ -= b.sum_;
    return *this;
  }
  friend bool operator==(const BlochElt& a, const BlochElt& b) { return a.sum_ == b.sum_; }

 private:
  F field_;
  FormalSum<BlochGen<F>> sum_;
};

/// Formal element of B_2 (x) Lambda^m with the wedge part in monomial normal form.
/// The quotient by {x}_2 (x) x ^ ... is not applied; see a_relation.
template <Field F>
class TensorElt {
 public:
  using Key = std::pair<BlochGen<F>, Monomial<F>>;

  explicit TensorElt(F field = F{}, int arity = 0) : field_(std::move(field)), arity_(arity) {}

  /// {x}_2 (x) w.
  static TensorElt make(const BlochGen<F>& g, const WedgeElt<F>& w, const mpq_class& c = 1) {
    TensorElt t(w.field(), w.arity());
    for (const auto& [m, k] : w.terms()) t.sum_.add({g, m}, c * k);
    return t;
  }
  /// {x}_2 (x) l_1 ^ ... ^ l_m for letters given as rational functions.
  static TensorElt make(const RatFunc<F>& x, const std::vector<RatFunc<F>>& letters, const mpq_class& c = 1) {
    WedgeElt<F> w = letters.empty() ? WedgeElt<F>::scalar(x.field(), 1) : wedge_normalize(letters);
    return make(BlochGen<F>::point(x), w, c);
  }
  static TensorElt from_bloch(const BlochElt<F>& b) {
    TensorElt t(b.field(), 0);
    for (const auto& [g, c] : b.terms()) t.sum_.add({g, {}}, c);
    return t;
  }

  const F& field() const { return field_; }
  int arity() const { return arity_; }
  const auto& terms() const { return sum_.terms(); }
  bool is_zero() const { return sum_.is_zero(); }
  void add(const Key& k, const mpq_class& c) { sum_.add(k, c); }

  friend TensorElt operator+(TensorElt a, const TensorElt& b) {
    check(a, b);
    a.sum_ += b.sum_;
    return a;
  }
  friend TensorElt operator-(TensorElt a, const TensorElt& b) {
    check(a, b);
    a.sum_ -= b.sum_;
    return a;
  }
  friend TensorElt operator*(const mpq_class& s, TensorElt a) {
    a.sum_ *= s;
    return a;
  }
  TensorElt& operator+=(const TensorElt& b) {
    check(*this, b);
    sum_ += b.sum_;
    return *this;
  }
  TensorElt& operator-=(const TensorElt& b) {
    check(*this, b);
    sum_ -= b.sum_;
    return *this;
  }
  friend bool operator==(const TensorElt& a, const TensorElt& b) { return a.arity_ == b.arity_ && a.sum_ == b.sum_; }

  /// The Bloch part of an arity-0 element.
  BlochElt<F> to_bloch() const {
    if (arity_ != 0) throw Error(ErrorCode::ShapeMismatch, "tensor of positive arity is not a Bloch element");
    BlochElt<F> b(field_);
    for (const auto& [k, c] : terms()) b.add(k.first, c);
    return b;
  }

 private:
  static void check(const TensorElt& a, const TensorElt& b) {
    if (a.arity_ != b.arity_ && !a.is_zero() && !b.is_zero())
      throw Error(ErrorCode::ShapeMismatch, "tensor arities " + std::to_string(a.arity_) + " and " + std::to_string(b.arity_));
  }

  F field_;
  int arity_;
  FormalSum<Key> sum_;
};

/// Steinberg element x ^ (1 - x) of a generator; markers map to 0.
template <Field F>
WedgeElt<F> steinberg(const BlochGen<F>& g, const F& field) {
  if (g.is_marker()) return WedgeElt<F>(field, 2);
  return wedge_normalize<F>({g.value(), g.value().one_minus()}, 2);
}

template <Field F>
WedgeElt<F> delta2(const BlochElt<F>& b) {
  WedgeElt<F> out(b.field(), 2);
  for (const auto& [g, c] : b.terms()) out += c * steinberg(g, b.field());
  return out;
}

/// delta_n({x}_2 (x) w) = x ^ (1 - x) ^ w.
template <Field F>
WedgeElt<F> delta_n(const TensorElt<F>& x) {
  WedgeElt<F> out(x.field(), x.arity() + 2);
  std::map<BlochGen<F>, WedgeElt<F>> cache;
  for (const auto& [k, c] : x.terms()) {
    auto it = cache.find(k.first);
    if (it == cache.end()) it = cache.emplace(k.first, steinberg(k.first, x.field())).first;
    for (const auto& [m, s] : it->second.terms()) {
      Monomial<F> full = m;
      full.insert(full.end(), k.second.begin(), k.second.end());
      out.add_unsorted(std::move(full), c * s);
    }
  }
  return out;
}

/// The relation {x}_2 (x) x ^ w_1 ^ ... generating the kernel of the projection to the ^_a quotient.
template <Field F>
TensorElt<F> a_relation(const RatFunc<F>& x, const std::vector<RatFunc<F>>& w) {
  std::vector<RatFunc<F>> letters{x};
  letters.insert(letters.end(), w.begin(), w.end());
  return TensorElt<F>::make(x, letters);
}

// ---- points of P^1(F(t)) and the five-term relation -----------------------

namespace detail {

template <Field F>
std::pair<RatFunc<F>, RatFunc<F>> homogeneous(const BlochGen<F>& g, const F& k) {
  RatFunc<F> one = RatFunc<F>::one(k), zero(k);
  if (!g.is_marker()) return {g.value(), one};
  switch (g.which()) {
    case Marker::Zero: return {zero, one};
    case Marker::One: return {one, one};
    default: return {one, zero};
  }
}

template <Field F>
BlochGen<F> from_homogeneous(const RatFunc<F>& a, const RatFunc<F>& b) {
  if (b.is_zero()) return BlochGen<F>::infinity();
  return BlochGen<F>::point(a / b);
}

}  // namespace detail

/// Cross-ratio (a-b)(c-d)/((c-b)(a-d)) of four points of P^1(F(t)), with infinity handled
/// projectively. An indeterminate 0/0 (three coinciding points) is sent to {1}.
template <Field F>
BlochGen<F> cross_ratio(const BlochGen<F>& a, const BlochGen<F>& b, const BlochGen<F>& c, const BlochGen<F>& d,
                        const F& k) {
  auto [a0, a1] = detail::homogeneous(a, k);
  auto [b0, b1] = detail::homogeneous(b, k);
  auto [c0, c1] = detail::homogeneous(c, k);
  auto [d0, d1] = detail::homogeneous(d, k);
  auto det = [](const RatFunc<F>& x0, const RatFunc<F>& x1, const RatFunc<F>& y0, const RatFunc<F>& y1) {
    return x0 * y1 - x1 * y0;
  };
  RatFunc<F> num = det(a0, a1, b0, b1) * det(c0, c1, d0, d1);
  RatFunc<F> den = det(c0, c1, b0, b1) * det(a0, a1, d0, d1);
  if (num.is_zero() && den.is_zero()) return BlochGen<F>::marker(Marker::One);
  return detail::from_homogeneous(num, den);
}

/// A five-term relation together with the data that witnesses it.
template <Field F>
class FiveTermInstance {
 public:
  enum class Kind { CrossRatio, Orbit };

  /// Arguments r(x_1, ..., x_i omitted, ..., x_5) with signs (-1)^i.
  static FiveTermInstance from_points(const std::array<BlochGen<F>, 5>& x, const F& k) {
    FiveTermInstance w(k, Kind::CrossRatio);
    for (int i = 0; i < 5; ++i) {
      std::vector<BlochGen<F>> rest;
      for (int j = 0; j < 5; ++j)
        if (j != i) rest.push_back(x[static_cast<std::size_t>(j)]);
      w.args_[static_cast<std::size_t>(i)] = cross_ratio(rest[0], rest[1], rest[2], rest[3], k);
      w.signs_[static_cast<std::size_t>(i)] = (i % 2 == 0) ? -1 : 1;
    }
    return w;
  }

  /// Orbit R_{i+1} = (1 - R_i) / R_{i-1} started at (R_1, R_2); verifies R_6 = R_1, R_7 = R_2.
  static FiveTermInstance from_orbit(const BlochGen<F>& r1, const BlochGen<F>& r2, const F& k) {
    FiveTermInstance w(k, Kind::Orbit);
    std::vector<std::pair<RatFunc<F>, RatFunc<F>>> h{detail::homogeneous(r1, k), detail::homogeneous(r2, k)};
    for (int i = 2; i < 7; ++i) {
      const auto& [p0, p1] = h[static_cast<std::size_t>(i - 2)];
      const auto& [c0, c1] = h[static_cast<std::size_t>(i - 1)];
      RatFunc<F> a = (c1 - c0) * p1;
      RatFunc<F> b = c1 * p0;
      if (a.is_zero() && b.is_zero()) throw Error(ErrorCode::NotAFiveTerm, "orbit recursion is indeterminate");
      h.emplace_back(a, b);
    }
    std::vector<BlochGen<F>> pts;
    for (const auto& [a, b] : h) pts.push_back(detail::from_homogeneous(a, b));
    if (!(pts[5] == pts[0]) || !(pts[6] == pts[1]))
      throw Error(ErrorCode::NotAFiveTerm, "orbit does not close up with period 5");
    for (std::size_t i = 0; i < 5; ++i) {
      w.args_[i] = pts[i];
      w.signs_[i] = 1;
    }
    return w;
  }

  Kind kind() const { return kind_; }
  const std::array<BlochGen<F>, 5>& arguments() const { return args_; }
  const std::array<int, 5>& signs() const { return signs_; }

 private:
  FiveTermInstance(const F& k, Kind kind)
      : field_(k), kind_(kind), args_(filled(k)), signs_{} {}
  static std::array<BlochGen<F>, 5> filled(const F&) {
    auto z = BlochGen<F>::marker(Marker::Zero);
    return {z, z, z, z, z};
  }

  F field_;
  Kind kind_;
  std::array<BlochGen<F>, 5> args_;
  std::array<int, 5> signs_;
};

template <Field F>
BlochElt<F> five_term(const FiveTermInstance<F>& w, const F& k) {
  BlochElt<F> out(k);
  for (std::size_t i = 0; i < 5; ++i) out.add(w.arguments()[i], mpq_class(w.signs()[i]));
  return out;
}

}  // namespace prebloch
