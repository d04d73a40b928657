#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "prebloch/bloch.hpp"
#include "prebloch/text.hpp"

namespace prebloch {

template <Field F>
using Expr = std::variant<BlochElt<F>, TensorElt<F>, WedgeElt<F>>;

// ---- printing ---------------------------------------------------------------------

template <Field F>
std::string to_string(const BlochGen<F>& g) {
  if (!g.is_marker()) return to_string(g.value());
  switch (g.which()) {
    case Marker::Zero: return "0";
    case Marker::One: return "1";
    case Marker::Infinity: return "inf";
  }
  return "inf";
}

template <Field F>
std::string to_string(const Monomial<F>& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? ", " : "") + to_string(m[i].poly());
  return s;
}

namespace detail {

/// Appends c * atom to out in the form the expression reader accepts.
inline void append_term(std::string& out, const mpq_class& c, const std::string& atom) {
  const bool neg = sgn(c) < 0;
  mpq_class a = abs(c);
  if (out.empty())
    out += neg ? "-" : "";
  else
    out += neg ? " - " : " + ";
  if (a != 1) out += a.get_str() + "*";
  out += atom;
}

}  // namespace detail

template <Field F>
std::string to_string(const WedgeElt<F>& w) {
  std::string out;
  for (const auto& [m, c] : w.terms()) detail::append_term(out, c, "W[" + to_string<F>(m) + "]");
  return out.empty() ? "0" : out;
}

template <Field F>
std::string to_string(const BlochElt<F>& b) {
  std::string out;
  for (const auto& [g, c] : b.terms()) detail::append_term(out, c, "B{" + to_string(g) + "}");
  return out.empty() ? "0" : out;
}

template <Field F>
std::string to_string(const TensorElt<F>& x) {
  std::string out;
  for (const auto& [key, c] : x.terms()) {
    std::string letters = to_string<F>(key.second);
    detail::append_term(out, c, "T(B{" + to_string(key.first) + "}; " + letters + ")");
  }
  return out.empty() ? "0" : out;
}

template <Field F>
std::string to_string(const Expr<F>& e) {
  return std::visit([](const auto& v) { return to_string(v); }, e);
}

template <Field F>
std::string expr_kind(const Expr<F>& e) {
  switch (e.index()) {
    case 0: return "bloch";
    case 1: return "tensor";
    default: return "wedge";
  }
}

template <Field F>
int expr_arity(const Expr<F>& e) {
  if (e.index() == 0) return 0;
  if (e.index() == 1) return std::get<1>(e).arity();
  return std::get<2>(e).arity();
}

// ---- parsing ----------------------------------------------------------------------

namespace detail {

/// expr := ['-'] term (('+'|'-') term)*
/// term := [rat '*'] atom
/// atom := 'W[' rf {',' rf} ']' | 'B{' pt '}' | 'T(' 'B{' pt '}' ';' rf {',' rf} ')'
/// pt   := rf | 'inf'
/// A leading sign, 'inf', 'W[]', an empty letter list after ';' and a bare '0' are accepted
/// so that every printed element reads back.
template <Field F>
class ExprReader {
 public:
  ExprReader(std::string_view s, const F& k) : s_(s), k_(k), rf_(s, pos_, k) {}

  Expr<F> run() {
    if (peek() == '0') {
      ++pos_;
      if (peek() == '\0') return WedgeElt<F>(k_, 0);  // printed zero; its arity is not recorded
      pos_ = 0;
    }
    std::optional<Expr<F>> acc;
    int sign = 1;
    if (peek() == '-' || peek() == '+') sign = s_[pos_++] == '-' ? -1 : 1;
    for (;;) {
      std::size_t at = pos_;
      Expr<F> t = term(mpq_class(sign));
      if (!acc) {
        acc = std::move(t);
      } else {
        if (acc->index() != t.index()) fail_at(at, "cannot mix Bloch, tensor and wedge terms");
        if (expr_arity<F>(*acc) != expr_arity<F>(t))
          throw Error(ErrorCode::ShapeMismatch, "arity " + std::to_string(expr_arity<F>(t)) + " term at position " + std::to_string(at) +
                                                    " in an arity " + std::to_string(expr_arity<F>(*acc)) + " sum");
        std::visit([&t](auto& a) { a += std::get<std::decay_t<decltype(a)>>(t); }, *acc);
      }
      char c = peek();
      if (c == '\0') break;
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      sign = s_[pos_++] == '-' ? -1 : 1;
    }
    return *acc;
  }

 private:
  Expr<F> term(mpq_class c) {
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c *= rational();
      expect('*');
    }
    char a = peek();
    if (a == 'W') {
      ++pos_;
      expect('[');
      std::vector<RatFunc<F>> letters;
      if (peek() != ']') letters = letter_list();
      expect(']');
      WedgeElt<F> w = letters.empty() ? WedgeElt<F>::scalar(k_, 1) : wedge_normalize(letters);
      return c * w;
    }
    if (a == 'B') {
      BlochGen<F> g = bloch_arg();
      return BlochElt<F>::gen(g, k_, c);
    }
    if (a == 'T') {
      ++pos_;
      expect('(');
      BlochGen<F> g = bloch_arg();
      expect(';');
      std::vector<RatFunc<F>> letters;
      if (peek() != ')') letters = letter_list();
      expect(')');
      WedgeElt<F> w = letters.empty() ? WedgeElt<F>::scalar(k_, 1) : wedge_normalize(letters);
      return TensorElt<F>::make(g, w, c);
    }
    fail(a == '\0' ? "unexpected end of input" : std::string("expected W[, B{ or T( but found '") + a + "'");
  }

  BlochGen<F> bloch_arg() {
    expect('B');
    expect('{');
    BlochGen<F> g = BlochGen<F>::infinity();
    if (s_.substr(pos_, 3) == "inf") {
      pos_ += 3;
    } else {
      RatFunc<F> x = rf_.rf();
      g = BlochGen<F>::point(x);
    }
    expect('}');
    return g;
  }

  std::vector<RatFunc<F>> letter_list() {
    std::vector<RatFunc<F>> out{rf_.rf()};
    while (peek() == ',') {
      ++pos_;
      out.push_back(rf_.rf());
    }
    return out;
  }

  mpq_class rational() {
    mpz_class n(digits());
    if (peek() == '/') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator");
      mpz_class d(digits());
      if (d == 0) fail("zero denominator");
      mpq_class q(n, d);
      q.canonicalize();
      return q;
    }
    return mpq_class(n);
  }

  std::string digits() {
    peek();
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) { fail_at(pos_, what); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& what) {
    throw Error(ErrorCode::SyntaxError, what + " at position " + std::to_string(at));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  const F& k_;
  PolyReader<F> rf_;
};

}  // namespace detail

/// Parses a Bloch, tensor or wedge expression; the result is in normal form.
template <Field F>
Expr<F> parse_expr(std::string_view text, const F& field) {
  return detail::ExprReader<F>(text, field).run();
}

}  // namespace prebloch
