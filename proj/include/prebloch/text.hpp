#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "prebloch/ratfunc.hpp"

namespace prebloch {

template <Field F>
std::string to_string(const Poly<F>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    auto c = p.coeff(k);
    if (F::is_zero(c)) continue;
    std::string cs = F::to_string(c);
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs.erase(0, 1);
    if (neg)
      out += '-';
    else if (!out.empty())
      out += '+';
    std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    if (k == 0)
      out += cs;
    else if (cs == "1")
      out += mono;
    else
      out += cs + "*" + mono;
  }
  return out;
}

template <Field F>
std::string to_string(const RatFunc<F>& x) {
  std::string n = to_string(x.num());
  if (x.is_polynomial()) return n;
  auto wrap = [](const std::string& s) {
    bool compound = s.find_first_of("+/", 0) != std::string::npos || s.find('-', 1) != std::string::npos;
    return compound ? "(" + s + ")" : s;
  };
  return wrap(n) + "/" + wrap(to_string(x.den()));
}

namespace detail {

/// Recursive-descent reader for polynomial and rational-function text.
///   rf     := pexpr ['/' pexpr]
///   pexpr  := ['+'|'-'] pterm (('+'|'-') pterm)*
///   pterm  := pfactor (['*'] pfactor)*        juxtaposition allowed before '(' and 't'
///   pfactor:= patom ['^' integer]
///   patom  := integer ['/' integer] | 't' | '(' pexpr ')'
/// A '/' after an integer literal starts a rational coefficient only when a digit follows.
template <Field F>
class PolyReader {
 public:
  PolyReader(std::string_view s, std::size_t& pos, const F& field) : s_(s), pos_(pos), k_(field) {}

  Poly<F> pexpr() {
    skip();
    Poly<F> acc(k_);
    bool first = true;
    for (;;) {
      skip();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
      } else if (!first) {
        break;
      }
      Poly<F> term = pterm();
      acc = sign > 0 ? acc + term : acc - term;
      first = false;
    }
    return acc;
  }

  RatFunc<F> rf() {
    Poly<F> n = pexpr();
    skip();
    if (peek() == '/') {
      ++pos_;
      Poly<F> d = pexpr();
      if (d.is_zero()) fail("zero denominator");
      return rf_normalize(n, d);
    }
    return RatFunc<F>(n);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError, what + " at position " + std::to_string(pos_));
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

 private:
  Poly<F> pterm() {
    Poly<F> acc = pfactor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * pfactor();
      } else if (c == '(' || c == 't') {
        acc = acc * pfactor();
      } else {
        return acc;
      }
    }
  }

  Poly<F> pfactor() {
    Poly<F> base = patom();
    if (peek() == '^') {
      ++pos_;
      skip();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
      std::string e = digits();
      if (e.size() > 4) fail("exponent too large");
      base = poly_pow(base, static_cast<unsigned>(std::stoul(e)));
    }
    return base;
  }

  Poly<F> patom() {
    char c = peek();
    if (c == 't') {
      ++pos_;
      return Poly<F>::t(k_);
    }
    if (c == '(') {
      ++pos_;
      Poly<F> inner = pexpr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      std::size_t save = pos_;
      if (peek() == '/') {
        ++pos_;
        skip();
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          std::string den = digits();
          mpz_class zn(num), zd(den);
          if (zd == 0) fail("zero denominator in coefficient");
          mpq_class q(zn, zd);
          q.canonicalize();
          return Poly<F>::constant(k_, k_.from_rational(q));
        }
        pos_ = save;
      }
      return Poly<F>::constant(k_, k_.from_integer(mpz_class(num)));
    }
    fail(c == '\0' ? std::string("unexpected end of input") : std::string("unexpected character '") + c + "'");
  }

  std::string digits() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }

  char get() {
    skip();
    return s_[pos_++];
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string_view s_;
  std::size_t& pos_;
  const F& k_;
};

}  // namespace detail

template <Field F>
Poly<F> parse_poly(std::string_view text, const F& field) {
  std::size_t pos = 0;
  detail::PolyReader<F> r(text, pos, field);
  Poly<F> p = r.pexpr();
  if (r.peek() != '\0') r.fail("trailing input");
  return p;
}

template <Field F>
RatFunc<F> parse_ratfunc(std::string_view text, const F& field) {
  std::size_t pos = 0;
  detail::PolyReader<F> r(text, pos, field);
  RatFunc<F> x = r.rf();
  if (r.peek() != '\0') r.fail("trailing input");
  return x;
}

}  // namespace prebloch
