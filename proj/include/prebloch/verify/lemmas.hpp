#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "prebloch/symbols.hpp"
#include "prebloch/text.hpp"
#include "prebloch/verify/sampler.hpp"

namespace prebloch {

struct SuiteConfig {
  std::uint64_t p = 5;  // 0 selects the rationals
  int deg_min = 2;
  int deg_max = 2;
  std::uint64_t trials = 10;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;  // numeric suites only
  bool timing = false;
  unsigned threads = 1;  // trials run concurrently; output does not depend on this

  void validate() const {
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
    if (deg_min < 1 || deg_max < deg_min) throw Error(ErrorCode::InvalidArgument, "degree range must satisfy 1 <= min <= max");
    if (p != 0 && (!is_prime_u64(p) || p >= (1ULL << 31))) throw Error(ErrorCode::InvalidArgument, "p must be a prime below 2^31");
  }
};

namespace detail {

template <Field F>
Certificate start_certificate(const char* statement, const F& k, const SuiteConfig& cfg, std::uint64_t trial) {
  Certificate c;
  c.statement = statement;
  c.trial = trial;
  c.field = k.name();
  c.seed = cfg.seed;
  return c;
}

template <Field F>
int pick_degree(Sampler<F>& s, const SuiteConfig& cfg) {
  return s.between(cfg.deg_min, cfg.deg_max);
}

template <Field F>
std::string str(const Poly<F>& p) { return to_string(p); }
template <Field F>
std::string str(const RatFunc<F>& x) { return to_string(x); }
template <Field F>
std::string str(const BlochGen<F>& g) {
  if (!g.is_marker()) return to_string(g.value());
  switch (g.which()) {
    case Marker::Zero: return "0";
    case Marker::One: return "1";
    case Marker::Infinity: return "inf";
  }
  return "?";
}

template <Field F>
json degree_witness(const WedgeElt<F>& w) {
  json j;
  j["zero"] = w.is_zero();
  j["max_letter_degree"] = max_letter_degree(w);
  j["monomials"] = w.terms().size();
  return j;
}

/// {num/den}_2 for polynomials that may vanish: 0/0 has no value in P^1 and is sent to
/// the marker 1 (delta_2 of every marker is 0, so only formal equality sees the choice).
template <Field F>
BlochElt<F> bloch_ratio(const Poly<F>& num, const Poly<F>& den, const mpq_class& c = 1) {
  const F& k = num.field();
  if (num.is_zero() && den.is_zero()) return BlochElt<F>::gen(BlochGen<F>::marker(Marker::One), k, c);
  if (den.is_zero()) return BlochElt<F>::gen(BlochGen<F>::infinity(), k, c);
  return BlochElt<F>::of(rf_normalize(num, den), c);
}

/// Largest degree of an irreducible factor of numerator or denominator.
template <Field F>
int max_factor_degree(const RatFunc<F>& x) {
  int d = 0;
  for (const Poly<F>* part : {&x.num(), &x.den()})
    for (const auto& [q, m] : factor_poly(*part).factors) d = std::max(d, q.degree());
  return d;
}

}  // namespace detail

/// r_1..r_7 of the orbit r_{i+1} = (1 - r_i)/r_{i-1} in F[t]/(P); empty if it hits 0.
template <Field F>
std::vector<Poly<F>> residue_orbit(const Irreducible<F>& P, const Poly<F>& r1, const Poly<F>& r2) {
  const Poly<F>& m = P.poly();
  std::vector<Poly<F>> r{r1 % m, r2 % m};
  const Poly<F> one = Poly<F>::one(m.field());
  while (r.size() < 7) {
    const Poly<F>& prev = r[r.size() - 2];
    if (prev.is_zero()) return {};
    r.push_back(((one - r.back()) * poly_inverse_mod(prev, m)) % m);
  }
  return r;
}

/// Recognizes an arity-0 element over F[t]/(P) as c times a single five-term orbit
/// sum {R_1} + ... + {R_5}. Returns the orbit on success.
template <Field F>
std::optional<std::array<Poly<F>, 5>> recognize_orbit(const BlochElt<F>& x, const Irreducible<F>& P) {
  std::vector<std::pair<Poly<F>, mpq_class>> support;
  for (const auto& [g, c] : x.terms()) {
    if (g.is_marker() || !g.value().is_polynomial()) return std::nullopt;
    support.emplace_back(g.value().num(), c);
  }
  const F& k = P.poly().field();
  for (const auto& [a, c] : support) {
    for (const auto& [b, c2] : support) {
      auto r = residue_orbit(P, a, b);
      if (r.empty() || r[5] != r[0] || r[6] != r[1]) continue;
      BlochElt<F> sum(k);
      bool ok = true;
      for (int i = 0; i < 5; ++i) {
        const Poly<F>& ri = r[static_cast<std::size_t>(i)];
        if (ri.is_zero() || ri.is_one()) ok = false;
        sum.add(BlochGen<F>::point(RatFunc<F>(ri)), 1);
      }
      if (!ok) continue;
      // orbit members may repeat (fixed points), so scale by the multiplicity of R_1
      mpq_class mult = 0;
      for (const auto& [g, e] : sum.terms())
        if (!g.is_marker() && g.value() == RatFunc<F>(r[0])) mult = e;
      if (mpq_class(c / mult) * sum == x) return std::array<Poly<F>, 5>{r[0], r[1], r[2], r[3], r[4]};
    }
  }
  return std::nullopt;
}

// ---- Lemma 2 -----------------------------------------------------------------

template <Field F>
struct Lemma2Terms {
  BlochElt<F> lhs;
  BlochElt<F> rhs;
  std::array<BlochElt<F>, 4> rhs_terms;
};

/// The four-term combination and the explicit right side from its proof. The G's are
/// reduced mod P first.
template <Field F>
Lemma2Terms<F> lemma2_terms(const Irreducible<F>& P, const Poly<F>& G1_, const Poly<F>& G2_, const Poly<F>& G3_) {
  const Poly<F>& m = P.poly();
  const F& k = m.field();
  Poly<F> G1 = G1_ % m, G2 = G2_ % m, G3 = G3_ % m;
  Lemma2Terms<F> out{BlochElt<F>(k), BlochElt<F>(k), {BlochElt<F>(k), BlochElt<F>(k), BlochElt<F>(k), BlochElt<F>(k)}};
  out.lhs += BlochElt<F>::of(x_f_symbol(P, G1, G2));
  out.lhs -= BlochElt<F>::of(x_f_symbol(P, G1 * G3, G2));
  out.lhs -= BlochElt<F>::of(x_f_symbol(P, G1, G3));
  out.lhs += BlochElt<F>::of(x_f_symbol(P, G1 * G2, G3));

  auto [Q12, R12] = poly_divmod(G1 * G2, m);
  auto [Q13, R13] = poly_divmod(G1 * G3, m);
  auto [Q123, R123] = poly_divmod(R12 * G3, m);
  auto [Q132, R132] = poly_divmod(R13 * G2, m);
  out.rhs_terms[0] = detail::bloch_ratio(Q12 * R13, Q132 * G1);
  out.rhs_terms[1] = detail::bloch_ratio(Q12 * R132, R12 * Q132, -1);
  out.rhs_terms[2] = detail::bloch_ratio(Q13 * R123, R13 * Q123);
  out.rhs_terms[3] = detail::bloch_ratio(Q13 * R12, G1 * Q123, -1);
  for (const auto& t : out.rhs_terms) out.rhs += t;
  return out;
}

template <Field F>
void lemma2_checks(const Irreducible<F>& P, const Poly<F>& G1, const Poly<F>& G2, const Poly<F>& G3, Certificate& cert) {
  const int d = P.degree();
  auto t = lemma2_terms(P, G1, G2, G3);
  WedgeElt<F> dl = delta2(t.lhs);
  cert.add("A:delta2-degree", "max letter degree of delta_2(E) <= d-1", in_L(dl, d - 1), detail::degree_witness(dl));

  WedgeElt<F> diff = delta2(t.lhs - t.rhs);
  json w;
  w["rhs"] = json::array();
  for (const auto& term : t.rhs_terms)
    for (const auto& [g, c] : term.terms()) w["rhs"].push_back({{"coeff", c.get_str()}, {"value", detail::str(g)}});
  w["difference"] = detail::degree_witness(diff);
  cert.add("B:proof-identity", "delta_2(E - four-term right side) == 0", diff.is_zero(), w);

  bool terms_ok = true;
  json tw = json::array();
  for (const auto& term : t.rhs_terms) {
    WedgeElt<F> dt = delta2(term);
    terms_ok = terms_ok && in_L(dt, d - 1);
    tw.push_back(max_letter_degree(dt));
  }
  cert.add("B:right-side-terms", "each right-side term has delta_2-degree <= d-1", terms_ok, {{"degrees", tw}});
}

template <Field F>
Certificate lemma2_trial(const F& k, const SuiteConfig& cfg, std::uint64_t trial) {
  Certificate cert = detail::start_certificate("lemma2", k, cfg, trial);
  auto rng = trial_rng(cfg.seed, "lemma2", trial);
  Sampler<F> s(k, rng);
  const int d = detail::pick_degree(s, cfg);
  auto P = s.irreducible(d);
  Poly<F> G1 = s.nonzero_mod(P, d - 1, cert), G2 = s.nonzero_mod(P, d - 1, cert), G3 = s.nonzero_mod(P, d - 1, cert);
  cert.instance = {{"P", detail::str(P.poly())}, {"d", d}, {"G1", detail::str(G1)}, {"G2", detail::str(G2)}, {"G3", detail::str(G3)}};
  lemma2_checks(P, G1, G2, G3, cert);
  return cert;
}

// ---- Lemma 3 -----------------------------------------------------------------

/// {a}(x)b + {b}(x)a - ({(1-a)/(1-b)} + sign {(1-a)b/((1-b)a)}) (x) a/b. The five-term
/// relation {a} - {b} + {b/a} - {(1-a)b/((1-b)a)} + {(1-a)/(1-b)} = 0 gives sign = -1;
/// sign = +1 is the printed form, kept for comparison.
template <Field F>
TensorElt<F> step1_combination(const RatFunc<F>& a, const RatFunc<F>& b, int sign = -1) {
  if (a.is_zero() || b.is_zero()) throw Error(ErrorCode::NotAUnit, "step-1 arguments must be nonzero");
  TensorElt<F> out = TensorElt<F>::make(a, {b}) + TensorElt<F>::make(b, {a});
  if (a == b) return out;  // (1-a)/(1-b) = 1 and a/b = 1
  RatFunc<F> oa = a.one_minus(), ob = b.one_minus();
  BlochGen<F> u1 = ob.is_zero() ? BlochGen<F>::infinity() : BlochGen<F>::point(oa / ob);
  BlochGen<F> u2 = ob.is_zero() ? BlochGen<F>::infinity() : BlochGen<F>::point(oa * b / (ob * a));
  WedgeElt<F> ab = wedge_normalize<F>({a / b}, 1);
  out -= TensorElt<F>::make(u1, ab);
  out -= TensorElt<F>::make(u2, ab, sign);
  return out;
}

template <Field F>
TensorElt<F> lemma3_S(const Irreducible<F>& P, const Poly<F>& F1, const Poly<F>& F2, const Poly<F>& G1, const Poly<F>& G2) {
  RatFunc<F> a = x_f_symbol(P, F1, F2), b = x_f_symbol(P, G1, G2);
  return TensorElt<F>::make(a, {b}) + TensorElt<F>::make(b, {a});
}

template <Field F>
void lemma3_checks(const Irreducible<F>& P, const Poly<F>& F1, const Poly<F>& F2, const Poly<F>& G1, const Poly<F>& G2,
                   Certificate& cert) {
  const int d = P.degree();
  const Poly<F>& m = P.poly();
  RatFunc<F> a = x_f_symbol(P, F1, F2), b = x_f_symbol(P, G1, G2);
  TensorElt<F> S = lemma3_S(P, F1, F2, G1, G2);

  WedgeElt<F> dS = delta_n(S);
  cert.add("A:delta3-filtration", "delta_3(S) has every letter of degree <= d-1", in_L(dS, d - 1), detail::degree_witness(dS), true);

  // places of degree >= d among all letters that occur (arguments, their complements, tensor letters)
  std::set<Irreducible<F>> high;
  for (const RatFunc<F>& x : {a, b, a.one_minus(), b.one_minus()}) {
    if (x.is_zero()) continue;
    for (const Poly<F>* part : {&x.num(), &x.den()})
      for (const auto& [q, e] : factor_poly(*part).factors)
        if (q.degree() >= d) high.insert(q);
  }
  bool recog = true;
  json rw = json::array();
  for (const auto& Q : high) {
    BlochElt<F> r = residue(Place<F>::finite(Q), S).to_bloch();
    json e{{"place", detail::str(Q.poly())}};
    if (r.is_zero()) {
      e["residue"] = "0";
    } else if (auto orb = recognize_orbit(r, Q)) {
      e["residue"] = "five-term orbit";
      e["orbit"] = json::array();
      for (const auto& x : *orb) e["orbit"].push_back(detail::str(x));
    } else {
      e["residue"] = "unrecognized";
      recog = false;
    }
    rw.push_back(e);
  }
  cert.add("B:residue-recognition", "residue of S at each place of degree >= d is 0 or a five-term orbit", recog, {{"places", rw}},
           true);

  WedgeElt<F> d1 = delta_n(step1_combination(a, b));
  const bool printed = delta_n(step1_combination(a, b, +1)).is_zero();
  cert.add("C:step1-identity", "delta_3 of the step-1 combination for (a, b) == 0", d1.is_zero(),
           {{"a", detail::str(a)}, {"b", detail::str(b)}, {"delta", detail::degree_witness(d1)}, {"printed_sign_vanishes", printed}});

  // step 3 rests on x_P(F1,G1) x_P(F1G1,G2) = x_P(G1,G2) x_P(G1G2,F1) as rational functions
  RatFunc<F> left = x_f_symbol(P, F1, G1) * x_f_symbol(P, F1 * G1, G2);
  RatFunc<F> right = x_f_symbol(P, G1, G2) * x_f_symbol(P, G1 * G2, F1);
  cert.add("D:step3-cocycle", "x_P(F1,G1) x_P(F1G1,G2) == x_P(G1,G2) x_P(G1G2,F1)", left == right,
           {{"left", detail::str(left)}, {"right", detail::str(right)}});

  // step 2 case: the step-1 right side is built from generators of B_{d-1} (x) F(t)_{d-1}
  const bool step2 = (F1 % m) == (G1 % m) || ((F1 * F2) % m) == ((G1 * G2) % m);
  if (step2 && !a.is_one() && !b.is_one() && a != b) {
    RatFunc<F> oa = a.one_minus(), ob = b.one_minus();
    std::vector<RatFunc<F>> args{oa / ob, oa * b / (ob * a)};
    bool ok = detail::max_factor_degree(a / b) <= d - 1;
    json aw = json::array();
    for (const auto& u : args) {
      WedgeElt<F> du = delta2(BlochElt<F>::of(u));
      ok = ok && in_L(du, d - 1);
      aw.push_back({{"argument", detail::str(u)}, {"delta2_degree", max_letter_degree(du)}});
    }
    cert.add("step2-membership", "step-1 right side lies in B_{d-1} (x) F(t)_{d-1}", ok, {{"terms", aw}});
  }
}

template <Field F>
Certificate lemma3_trial(const F& k, const SuiteConfig& cfg, std::uint64_t trial) {
  Certificate cert = detail::start_certificate("lemma3", k, cfg, trial);
  auto rng = trial_rng(cfg.seed, "lemma3", trial);
  Sampler<F> s(k, rng);
  const int d = detail::pick_degree(s, cfg);
  auto P = s.irreducible(d);
  Poly<F> F1 = s.nonzero_mod(P, d - 1, cert), F2 = s.nonzero_mod(P, d - 1, cert);
  Poly<F> G1 = s.chance(1, 4) ? F1 : s.nonzero_mod(P, d - 1, cert);
  Poly<F> G2 = s.nonzero_mod(P, d - 1, cert);
  cert.instance = {{"P", detail::str(P.poly())}, {"d", d},           {"F1", detail::str(F1)},
                   {"F2", detail::str(F2)},      {"G1", detail::str(G1)}, {"G2", detail::str(G2)}};
  lemma3_checks(P, F1, F2, G1, G2, cert);
  return cert;
}

// ---- Lemma 4 -----------------------------------------------------------------

template <Field F>
struct Lemma4Instance {
  std::array<Poly<F>, 5> R;
  TensorElt<F> E;
};

/// sum {R_i} (x) P + sum {x_P(R_{i-1}, R_{i+1})} (x) R_i for an orbit R_1..R_5 in F[t]/(P).
template <Field F>
TensorElt<F> lemma4_E(const Irreducible<F>& P, const std::array<Poly<F>, 5>& R) {
  const F& k = P.poly().field();
  TensorElt<F> E(k, 1);
  for (int i = 0; i < 5; ++i) {
    const Poly<F>& Ri = R[static_cast<std::size_t>(i)];
    const Poly<F>& prev = R[static_cast<std::size_t>((i + 4) % 5)];
    const Poly<F>& next = R[static_cast<std::size_t>((i + 1) % 5)];
    E += TensorElt<F>::make(RatFunc<F>(Ri), {RatFunc<F>(P.poly())});
    E += TensorElt<F>::make(x_f_symbol(P, prev, next), {RatFunc<F>(Ri)});
  }
  return E;
}

/// Thue lifts X_1, X_2 of R_1, R_2 and the recursion X_{i+1} = (1 - X_i)/X_{i-1}. For even d
/// both lifts use the exchanged bounds (deg A <= k, deg B <= k-1), which keeps the
/// numerators of X_4 and X_5 below degree d.
template <Field F>
json lemma4_thue_table(const Irreducible<F>& P, const std::array<Poly<F>, 5>& R, bool& ok) {
  const int d = P.degree();
  const bool even = d % 2 == 0;
  auto [ka, kb] = thue_bounds(d);
  if (even) std::swap(ka, kb);
  json out;
  ok = true;
  std::vector<RatFunc<F>> X;
  json lifts = json::array();
  for (int i = 0; i < 2; ++i) {
    const Poly<F>& Ri = R[static_cast<std::size_t>(i)];
    ThuePair<F> tp = even ? thue_representative_swapped(P, Ri) : thue_representative(P, Ri);
    bool congruent = ((tp.A - Ri * tp.B) % P.poly()).is_zero();
    bool bounded = tp.A.degree() <= ka && tp.B.degree() <= kb && !tp.B.is_zero();
    ok = ok && congruent && bounded;
    lifts.push_back({{"A", detail::str(tp.A)}, {"B", detail::str(tp.B)}, {"congruent", congruent}, {"bounded", bounded}});
    if (tp.B.is_zero() || tp.A.is_zero()) {
      ok = false;
      return out;
    }
    X.push_back(rf_normalize(tp.A, tp.B));
  }
  out["bounds"] = {ka, kb};
  out["lifts"] = lifts;
  try {
    while (X.size() < 7) X.push_back(X.back().one_minus() / X[X.size() - 2]);
  } catch (const Error& e) {
    ok = false;
    out["error"] = e.what();
    return out;
  }
  const bool periodic = X[5] == X[0] && X[6] == X[1];
  ok = ok && periodic;
  out["periodic"] = periodic;
  json rows = json::array();
  for (int i = 0; i < 5; ++i) {
    const RatFunc<F>& x = X[static_cast<std::size_t>(i)];
    RatFunc<F> ox = x.one_minus();
    bool lifts_R = false;
    try {
      lifts_R = reduce_mod(x, P.poly()) == R[static_cast<std::size_t>(i)] % P.poly();
    } catch (const Error&) {
      lifts_R = false;
    }
    int dx = detail::max_factor_degree(x), dox = ox.is_zero() ? -1 : detail::max_factor_degree(ox);
    bool row_ok = lifts_R && dx <= d - 1 && !ox.is_zero() && dox <= d - 1;
    ok = ok && row_ok;
    rows.push_back({{"i", i + 1}, {"X", detail::str(x)}, {"letters_X", dx}, {"letters_1-X", dox}, {"reduces_to_R", lifts_R}});
  }
  out["table"] = rows;
  return out;
}

template <Field F>
void lemma4_checks(const Irreducible<F>& P, const Poly<F>& R1, const Poly<F>& R2, Certificate& cert) {
  const int d = P.degree();
  const F& k = P.poly().field();
  auto r = residue_orbit(P, R1, R2);
  const bool periodic = !r.empty() && r[5] == r[0] && r[6] == r[1];
  json ow = json::array();
  for (const auto& x : r) ow.push_back(detail::str(x));
  cert.add("A:period-5", "R_6 == R_1 and R_7 == R_2 in F[t]/(P)", periodic, {{"orbit", ow}});
  if (!periodic) return;
  std::array<Poly<F>, 5> R{r[0], r[1], r[2], r[3], r[4]};
  TensorElt<F> E = lemma4_E(P, R);

  WedgeElt<F> dE = delta_n(E);
  cert.add("B:delta3-filtration", "delta_3(E) has every letter of degree <= d-1", in_L(dE, d - 1), detail::degree_witness(dE), true);

  BlochElt<F> res = residue(Place<F>::finite(P), E).to_bloch();
  BlochElt<F> expect(k);
  for (const auto& x : R) expect.add(BlochGen<F>::point(RatFunc<F>(x)), 1);
  auto orb = recognize_orbit(res, P);
  json cw;
  cw["matches_sum_R"] = res == expect;
  cw["recognized"] = orb.has_value();
  cert.add("C:residue-orbit", "residue_P(E) == sum {R_i} and is a five-term orbit", res == expect && orb.has_value(), cw, true);

  bool ok = false;
  json tw = lemma4_thue_table(P, R, ok);
  cert.add("D:thue-lifts", "Thue lifts: congruence, degree bounds, period 5, letters of X_i and 1-X_i <= d-1", ok, tw);
}

template <Field F>
Certificate lemma4_trial(const F& k, const SuiteConfig& cfg, std::uint64_t trial) {
  Certificate cert = detail::start_certificate("lemma4", k, cfg, trial);
  auto rng = trial_rng(cfg.seed, "lemma4", trial);
  Sampler<F> s(k, rng);
  const int d = detail::pick_degree(s, cfg);
  auto P = s.irreducible(d);
  for (int attempt = 0;; ++attempt) {
    if (attempt >= kMaxResamples) throw Error(ErrorCode::ResampleExhausted, "no nondegenerate orbit");
    Poly<F> R1 = s.nonzero_mod(P, d - 1, cert), R2 = s.nonzero_mod(P, d - 1, cert);
    auto r = residue_orbit(P, R1, R2);
    bool degenerate = r.empty();
    for (const auto& x : r) degenerate = degenerate || x.is_zero() || x.is_one();
    if (degenerate) {
      ++cert.resamples;
      cert.resample_reasons.push_back("orbit meets 0 or 1");
      continue;
    }
    cert.instance = {{"P", detail::str(P.poly())}, {"d", d}, {"R1", detail::str(R1)}, {"R2", detail::str(R2)}};
    lemma4_checks(P, R1, R2, cert);
    return cert;
  }
}

// ---- T_f relations -------------------------------------------------------------

/// T_f(a, b, u_1..u_n) as x_f(a,b) ^ f ^ u_1 ^ ... ^ u_n.
template <Field F>
WedgeElt<F> T_f(const Irreducible<F>& f, const Poly<F>& a, const Poly<F>& b, const std::vector<Poly<F>>& us) {
  std::vector<RatFunc<F>> letters{x_f_symbol(f, a, b), RatFunc<F>(f.poly())};
  for (const auto& u : us) letters.push_back(RatFunc<F>(u));
  return wedge_normalize(letters, static_cast<int>(letters.size()));
}

template <Field F>
Certificate tf_trial(const F& k, const SuiteConfig& cfg, std::uint64_t trial) {
  Certificate cert = detail::start_certificate("tf", k, cfg, trial);
  auto rng = trial_rng(cfg.seed, "tf", trial);
  Sampler<F> s(k, rng);
  const int d = detail::pick_degree(s, cfg);
  auto f = s.irreducible(d);
  const Poly<F>& m = f.poly();
  Poly<F> a = s.nonzero_mod(f, d - 1, cert), b = s.nonzero_mod(f, d - 1, cert);
  Poly<F> c = s.nonzero_mod(f, d - 1, cert), e = s.nonzero_mod(f, d - 1, cert);
  std::vector<Poly<F>> us;
  if (d >= 2) {
    while (us.size() < 2) {
      Poly<F> u = s.irreducible(s.between(1, d - 1)).poly();
      if (us.empty() || us[0] != u) us.push_back(u);
    }
  } else if constexpr (!F::is_prime_field) {
    us = {Poly<F>::constant(k, k.from_int(2)), Poly<F>::constant(k, k.from_int(3))};
  }
  json uj = json::array();
  for (const auto& u : us) uj.push_back(detail::str(u));
  cert.instance = {{"f", detail::str(m)}, {"d", d}, {"a", detail::str(a)}, {"b", detail::str(b)},
                   {"c", detail::str(c)}, {"e", detail::str(e)}, {"u", uj}};

  // R1: deg a1 + deg b1 < d
  const int da = s.between(0, d - 1);
  Poly<F> a1 = s.nonzero_mod(f, da, cert), b1 = s.nonzero_mod(f, d - 1 - da, cert);
  WedgeElt<F> t1 = T_f(f, a1, b1, us);
  cert.add("R1", "T_f(a,b,u) == 0 when deg a + deg b < d", t1.is_zero(), {{"a", detail::str(a1)}, {"b", detail::str(b1)}});

  WedgeElt<F> tab = T_f(f, a, b, us);
  bool sym = tab == T_f(f, b, a, us);
  bool anti = true;
  if (us.size() >= 2) {
    std::vector<Poly<F>> sw = us;
    std::swap(sw[0], sw[1]);
    anti = T_f(f, a, b, sw) == mpq_class(-1) * tab;
  }
  cert.add("R2", "T_f symmetric in (a,b), antisymmetric in the u's", sym && anti, {{"symmetric", sym}, {"antisymmetric", anti}});

  WedgeElt<F> r3 = tab + T_f(f, (a * b) % m, c, us) - T_f(f, a, c, us) - T_f(f, (a * c) % m, b, us);
  cert.add("R3", "T(a,b) + T(ab,c) - T(a,c) - T(ac,b) == 0", r3.is_zero(), detail::degree_witness(r3));

  auto with = [&](const Poly<F>& first) {
    std::vector<Poly<F>> v{first};
    v.insert(v.end(), us.begin(), us.end());
    return v;
  };
  WedgeElt<F> r4 = T_f(f, a, b, with(c)) + T_f(f, a, b, with(e)) - T_f(f, a, b, with((c * e) % m)) + T_f(f, c, e, with(a)) +
                   T_f(f, c, e, with(b)) - T_f(f, c, e, with((a * b) % m));
  json w4 = detail::degree_witness(r4);
  cert.add("R4", "R4 combination lies in L_{d-1}", in_L(r4, d - 1), w4);
  return cert;
}

}  // namespace prebloch
