#pragma once

#include <gmpxx.h>

#include <map>
#include <utility>

namespace prebloch {

/// Finite Q-linear combination of keys; zero coefficients are never stored.
template <class Key>
class FormalSum {
 public:
  using Map = std::map<Key, mpq_class>;

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const Key& k, const mpq_class& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (inserted) {
      it->second.canonicalize();
    } else {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  mpq_class coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? mpq_class(0) : it->second;
  }

  FormalSum& operator+=(const FormalSum& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  FormalSum& operator-=(const FormalSum& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  FormalSum& operator*=(const mpq_class& s) {
    if (sgn(s) == 0) {
      terms_.clear();
    } else {
      for (auto& [k, c] : terms_) c *= s;
    }
    return *this;
  }

  friend bool operator==(const FormalSum& a, const FormalSum& b) { return a.terms_ == b.terms_; }

 private:
  Map terms_;
};

}  // namespace prebloch
