#pragma once

#include <map>
#include <utility>
#include <vector>

#include "prebloch/multivec.hpp"

namespace prebloch {

/// Strictly descending tuple of letters: a basis monomial of the exterior power.
template <Field F>
using Monomial = std::vector<Irreducible<F>>;

namespace detail {

/// Sorts into strictly descending order; returns the permutation sign, or 0 on a repeated letter.
template <class T>
int sort_descending(std::vector<T>& v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i) {
    for (std::size_t j = i; j > 0; --j) {
      if (v[j - 1] < v[j]) {
        std::swap(v[j - 1], v[j]);
        sign = -sign;
      } else {
        break;
      }
    }
  }
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] == v[i]) return 0;
  return sign;
}

}  // namespace detail

/// Element of the n-th exterior power of F(t)^* (x) Q in monomial normal form.
/// Arity 0 is allowed and represents a plain rational number.
template <Field F>
class WedgeElt {
 public:
  using Term = Monomial<F>;

  explicit WedgeElt(F field = F{}, int arity = 0) : field_(std::move(field)), arity_(arity) {}

  static WedgeElt scalar(const F& field, const mpq_class& c) {
    WedgeElt w(field, 0);
    w.sum_.add({}, c);
    return w;
  }
  /// c * (l_1 ^ ... ^ l_n) for letters in any order.
  static WedgeElt monomial(const F& field, Term letters, const mpq_class& c = 1) {
    WedgeElt w(field, static_cast<int>(letters.size()));
    int s = detail::sort_descending(letters);
    if (s != 0) w.sum_.add(letters, s * c);
    return w;
  }
  static WedgeElt from_multvec(const MultVec<F>& v) {
    WedgeElt w(v.field(), 1);
    for (const auto& [q, c] : v.terms()) w.sum_.add({q}, c);
    return w;
  }

  const F& field() const { return field_; }
  int arity() const { return arity_; }
  const auto& terms() const { return sum_.terms(); }
  bool is_zero() const { return sum_.is_zero(); }

  /// Adds c times a monomial that is already strictly descending.
  void add_sorted(const Term& m, const mpq_class& c) { sum_.add(m, c); }
  /// Adds c times the wedge of letters in arbitrary order.
  void add_unsorted(Term m, const mpq_class& c) {
    int s = detail::sort_descending(m);
    if (s != 0) sum_.add(m, s * c);
  }

  friend WedgeElt operator+(WedgeElt a, const WedgeElt& b) {
    check(a, b);
    a.sum_ += b.sum_;
    return a;
  }
  friend WedgeElt operator-(WedgeElt a, const WedgeElt& b) {
    check(a, b);
    a.sum_ -= b.sum_;
    return a;
  }
  friend WedgeElt operator-(WedgeElt a) {
    a.sum_ *= mpq_class(-1);
    return a;
  }
  friend WedgeElt operator*(const mpq_class& s, WedgeElt a) {
    a.sum_ *= s;
    return a;
  }
  WedgeElt& operator+=(const WedgeElt& b) {
    check(*this, b);
    sum_ += b.sum_;
    return *this;
  }
  WedgeElt& operator-=(const WedgeElt& b) {
    check(*this, b);
    sum_ -= b.sum_;
    return *this;
  }
  friend bool operator==(const WedgeElt& a, const WedgeElt& b) { return a.arity_ == b.arity_ && a.sum_ == b.sum_; }

  friend WedgeElt wedge(const WedgeElt& a, const WedgeElt& b) {
    WedgeElt r(a.field_, a.arity_ + b.arity_);
    for (const auto& [ma, ca] : a.terms()) {
      for (const auto& [mb, cb] : b.terms()) {
        Term m = ma;
        m.insert(m.end(), mb.begin(), mb.end());
        r.add_unsorted(std::move(m), ca * cb);
      }
    }
    return r;
  }

 private:
  static void check(const WedgeElt& a, const WedgeElt& b) {
    if (a.arity_ != b.arity_ && !a.is_zero() && !b.is_zero())
      throw Error(ErrorCode::ShapeMismatch, "wedge arities " + std::to_string(a.arity_) + " and " + std::to_string(b.arity_));
  }

  F field_;
  int arity_;
  FormalSum<Term> sum_;
};

/// Multilinear expansion of l_1 ^ ... ^ l_n into monomial normal form.
template <Field F>
WedgeElt<F> wedge_normalize(const std::vector<RatFunc<F>>& letters, int arity) {
  if (static_cast<int>(letters.size()) != arity)
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(arity) + " letters");
  if (letters.empty()) throw Error(ErrorCode::ShapeMismatch, "at least one letter required");
  WedgeElt<F> acc = WedgeElt<F>::from_multvec(MultVec<F>::of(letters[0]));
  for (std::size_t i = 1; i < letters.size(); ++i) {
    if (!(letters[i].field() == letters[0].field())) throw Error(ErrorCode::FieldMismatch, "letters over different fields");
    acc = wedge(acc, WedgeElt<F>::from_multvec(MultVec<F>::of(letters[i])));
  }
  return acc;
}

template <Field F>
WedgeElt<F> wedge_normalize(const std::vector<RatFunc<F>>& letters) {
  return wedge_normalize(letters, static_cast<int>(letters.size()));
}

/// Largest letter degree among all monomials; -1 for zero (or for arity-0 scalars).
template <Field F>
int max_letter_degree(const WedgeElt<F>& x) {
  int d = -1;
  for (const auto& [m, c] : x.terms())
    if (!m.empty()) d = std::max(d, m.front().degree());
  return d;
}

template <Field F>
struct DegreeInfo {
  int d = 0;
  bool in_L1 = false;
  std::map<Irreducible<F>, WedgeElt<F>> components;
};

/// Degree of a nonzero element, whether it lies in L^1_d, and its L_P components.
template <Field F>
DegreeInfo<F> wedge_degree(const WedgeElt<F>& x) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroElement, "degree of the zero element is undefined");
  DegreeInfo<F> info;
  info.d = std::max(0, max_letter_degree(x));
  info.in_L1 = true;
  for (const auto& [m, c] : x.terms()) {
    int top = 0;
    for (const auto& l : m) top += l.degree() == info.d ? 1 : 0;
    if (top > 1) info.in_L1 = false;
    if (top == 1) {
      const Irreducible<F>& P = *std::find_if(m.begin(), m.end(), [&](const auto& l) { return l.degree() == info.d; });
      auto it = info.components.try_emplace(P, x.field(), x.arity()).first;
      it->second.add_sorted(m, c);
    }
  }
  return info;
}

/// Membership in L_d: every letter of every monomial has degree at most d. L_{-1} = 0.
template <Field F>
bool in_L(const WedgeElt<F>& x, int d) {
  if (x.is_zero()) return true;
  if (d < 0) return false;
  return max_letter_degree(x) <= d;
}

/// Membership in L^1_d, classified per monomial: letters of degree at most d,
/// at most one of them of degree exactly d.
template <Field F>
bool in_L1(const WedgeElt<F>& x, int d) {
  if (!in_L(x, d)) return false;
  for (const auto& [m, c] : x.terms()) {
    int top = 0;
    for (const auto& l : m) top += l.degree() == d ? 1 : 0;
    if (top > 1) return false;
  }
  return true;
}

}  // namespace prebloch
