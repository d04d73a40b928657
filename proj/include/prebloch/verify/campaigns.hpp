#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prebloch/lemma1.hpp"
#include "prebloch/verify/lemmas.hpp"

namespace prebloch {

// ---- Thue ----------------------------------------------------------------------

namespace detail {

/// Least degree of a nonzero B with deg B <= kb and deg(R B mod P) <= ka, by enumerating
/// every B over F_p. -1 if none exists.
inline int thue_brute_force(const Irreducible<PrimeField>& P, const Poly<PrimeField>& R, int ka, int kb) {
  const PrimeField& k = P.poly().field();
  const std::uint64_t p = k.characteristic();
  std::uint64_t total = 1;
  for (int i = 0; i <= kb; ++i) total *= p;
  int best = -1;
  for (std::uint64_t code = 1; code < total; ++code) {
    std::vector<Fp> c;
    for (std::uint64_t x = code; x > 0; x /= p) c.push_back(k.from_index(x % p));
    Poly<PrimeField> B(k, c);
    if ((R * B % P.poly()).degree() <= ka && (best < 0 || B.degree() < best)) best = B.degree();
  }
  return best;
}

inline bool brute_force_feasible(std::uint64_t p, int kb) {
  double n = 1;
  for (int i = 0; i <= kb; ++i) n *= static_cast<double>(p);
  return n <= 2e5;
}

}  // namespace detail

/// Congruence, degree bounds and (when small enough) agreement with exhaustive search.
inline json thue_check_one(const Irreducible<PrimeField>& P, const Poly<PrimeField>& R, bool& ok) {
  const int d = P.degree();
  auto [ka, kb] = thue_bounds(d);
  ThuePair<PrimeField> tp = thue_representative(P, R);
  const bool congruent = ((tp.A - R * tp.B) % P.poly()).is_zero();
  const bool bounded = tp.A.degree() <= ka && tp.B.degree() <= kb && !(tp.B % P.poly()).is_zero();
  ThuePair<PrimeField> sw = thue_representative_swapped(P, R);
  const bool sw_ok = ((sw.A - R * sw.B) % P.poly()).is_zero() && sw.A.degree() <= kb && sw.B.degree() <= ka;
  json w{{"R", to_string(R)}, {"A", to_string(tp.A)}, {"B", to_string(tp.B)}, {"congruent", congruent}, {"bounded", bounded},
         {"swapped_ok", sw_ok}};
  ok = congruent && bounded && sw_ok;
  if (detail::brute_force_feasible(P.poly().field().characteristic(), kb)) {
    int best = detail::thue_brute_force(P, R % P.poly(), ka, kb);
    // existence agrees, and the returned B has the least possible degree
    const bool agree = best >= 0 && best == tp.B.degree();
    w["brute_force_min_deg_B"] = best;
    ok = ok && agree;
  }
  return w;
}

inline Certificate thue_trial(const PrimeField& k, const SuiteConfig& cfg, std::uint64_t trial) {
  Certificate cert = detail::start_certificate("thue", k, cfg, trial);
  auto rng = trial_rng(cfg.seed, "thue", trial);
  Sampler<PrimeField> s(k, rng);
  const int d = detail::pick_degree(s, cfg);
  auto P = s.irreducible(d);
  Poly<PrimeField> R = s.nonzero_mod(P, d - 1, cert);
  cert.instance = {{"P", to_string(P.poly())}, {"d", d}, {"R", to_string(R)}};
  bool ok = false;
  json w = thue_check_one(P, R, ok);
  cert.add("thue", "A == R B mod P within the degree bounds; minimal B agrees with exhaustive search", ok, w);
  return cert;
}

/// Every monic irreducible P of degree d in [deg_min, deg_max] and every nonzero residue
/// class; one certificate per P.
inline std::vector<Certificate> thue_exhaustive(const PrimeField& k, const SuiteConfig& cfg) {
  std::vector<Certificate> out;
  const std::uint64_t p = k.characteristic();
  std::uint64_t index = 0;
  for (int d = cfg.deg_min; d <= cfg.deg_max; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    auto poly_of = [&](std::uint64_t code, int len) {
      std::vector<Fp> c;
      for (int i = 0; i < len; ++i, code /= p) c.push_back(k.from_index(code % p));
      return Poly<PrimeField>(k, c);
    };
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly<PrimeField> f = poly_of(code, d) + Poly<PrimeField>::monomial(k, k.one(), d);
      if (!is_irreducible(f)) continue;
      auto P = Irreducible<PrimeField>::certified(f);
      Certificate cert = detail::start_certificate("thue-exhaustive", k, cfg, index++);
      cert.instance = {{"P", to_string(f)}, {"d", d}, {"residues", count - 1}};
      json failures = json::array();
      std::size_t passed = 0;
      for (std::uint64_t r = 1; r < count; ++r) {
        bool ok = false;
        json w = thue_check_one(P, poly_of(r, d), ok);
        if (ok) {
          ++passed;
        } else {
          failures.push_back(w);
        }
      }
      cert.add("thue-all-residues", "every nonzero residue: congruence, bounds, exhaustive-search agreement", failures.empty(),
               {{"passed", passed}, {"failures", failures}});
      out.push_back(std::move(cert));
    }
  }
  return out;
}

// ---- reciprocity ---------------------------------------------------------------

inline Certificate reciprocity_trial(const PrimeField& k, const SuiteConfig& cfg, std::uint64_t trial) {
  Certificate cert = detail::start_certificate("reciprocity", k, cfg, trial);
  auto rng = trial_rng(cfg.seed, "reciprocity", trial);
  Sampler<PrimeField> s(k, rng);
  RatFunc<PrimeField> f = s.ratfunc(cfg.deg_max), g = s.ratfunc(cfg.deg_max);
  cert.instance = {{"f", to_string(f)}, {"g", to_string(g)}, {"max_degree", cfg.deg_max}};
  auto rep = weil_reciprocity(f, g);
  json sy = json::array();
  for (const auto& [v, sym] : rep.symbols)
    sy.push_back({{"place", v.is_infinity() ? std::string("inf") : to_string(v.poly())}, {"symbol", to_string(sym)}});
  cert.add("norm-product", "product over all places of Norm(tame symbol of (f, g)) == 1", rep.holds,
           {{"product", PrimeField::to_string(rep.product)}, {"symbols", sy}});
  RatFunc<PrimeField> of = f.one_minus();
  if (!of.is_zero()) {
    auto st = weil_reciprocity(f, of);
    bool all_one = true;
    for (const auto& [v, sym] : st.symbols) all_one = all_one && sym.is_one();
    cert.add("steinberg", "every tame symbol of (f, 1-f) == 1", all_one && st.holds);
  }
  return cert;
}

// ---- chain map -----------------------------------------------------------------

namespace detail {

/// A random nonzero rational function in which the place polynomial appears with a random
/// exponent in [-1, 2], so residues at the place are frequently nontrivial.
template <Field F>
RatFunc<F> random_near(Sampler<F>& s, const std::optional<Irreducible<F>>& P, int maxdeg) {
  RatFunc<F> x = s.ratfunc(maxdeg);
  if constexpr (!F::is_prime_field) {
    if (s.chance(1, 2)) x = x * RatFunc<F>::constant(s.field(), s.field().from_int(s.between(1, 12)));
  }
  if (P && s.chance(2, 3)) {
    int e = s.between(-1, 2);
    RatFunc<F> pe = RatFunc<F>(poly_pow(P->poly(), static_cast<unsigned>(e < 0 ? -e : e)));
    x = e < 0 ? x / pe : x * pe;
  }
  return x;
}

}  // namespace detail

template <Field F>
Certificate chainmap_trial(const F& k, const SuiteConfig& cfg, std::uint64_t trial) {
  Certificate cert = detail::start_certificate("chainmap", k, cfg, trial);
  auto rng = trial_rng(cfg.seed, "chainmap", trial);
  Sampler<F> s(k, rng);
  // places: finite of degree in range (degree 1 over Q, where the residue field is Q), or infinity
  std::optional<Irreducible<F>> P;
  if (!s.chance(1, 5)) {
    int d = F::is_prime_field ? detail::pick_degree(s, cfg) : 1;
    P = s.irreducible(d);
  }
  Place<F> v = P ? Place<F>::finite(*P) : Place<F>::infinity();
  const int arity = s.between(0, 1);
  TensorElt<F> T(k, arity);
  json terms = json::array();
  const int nterms = s.between(1, 3);
  for (int i = 0; i < nterms; ++i) {
    RatFunc<F> x = detail::random_near(s, P, 2);
    std::vector<RatFunc<F>> letters;
    for (int j = 0; j < arity; ++j) letters.push_back(detail::random_near(s, P, 2));
    const long c = s.between(1, 3) * (s.chance(1, 2) ? 1 : -1);
    T += TensorElt<F>::make(x, letters, c);
    json l = json::array();
    for (const auto& y : letters) l.push_back(to_string(y));
    terms.push_back({{"coeff", c}, {"x", to_string(x)}, {"letters", l}});
  }
  cert.instance = {{"place", P ? to_string(P->poly()) : std::string("inf")}, {"arity", arity}, {"terms", terms}};
  // B_2 itself has no residue, so at arity 0 the left side is the zero of Lambda^1
  WedgeElt<F> left = arity == 0 ? WedgeElt<F>(k, 1) : residue_delta(v, residue(v, T));
  WedgeElt<F> right = residue(v, delta_n(T));
  cert.add("chain-map", "residue(delta(T)) == delta(residue(T))", left == right,
           {{"nontrivial", !right.is_zero()}, {"left", detail::degree_witness(left)}, {"right", detail::degree_witness(right)}});
  return cert;
}

// ---- division-symbol cocycle -----------------------------------------------------

template <Field F>
Certificate cocycle_trial(const F& k, const SuiteConfig& cfg, std::uint64_t trial) {
  Certificate cert = detail::start_certificate("cocycle", k, cfg, trial);
  auto rng = trial_rng(cfg.seed, "cocycle", trial);
  Sampler<F> s(k, rng);
  const int d = detail::pick_degree(s, cfg);
  auto f = s.irreducible(d);
  // arguments may exceed the modulus degree; the symbol reduces them first
  Poly<F> a = s.nonzero_mod(f, d + 1, cert), b = s.nonzero_mod(f, d + 1, cert), c = s.nonzero_mod(f, d + 1, cert);
  cert.instance = {{"f", to_string(f.poly())}, {"a", to_string(a)}, {"b", to_string(b)}, {"c", to_string(c)}};
  RatFunc<F> l = x_f_symbol(f, a, b) * x_f_symbol(f, a * b, c);
  RatFunc<F> r1 = x_f_symbol(f, a, c) * x_f_symbol(f, a * c, b);
  RatFunc<F> r2 = x_f_symbol(f, b, c) * x_f_symbol(f, a, b * c);
  cert.add("cocycle", "x(a,b) x(ab,c) == x(a,c) x(ac,b) == x(b,c) x(a,bc)", l == r1 && l == r2,
           {{"value", to_string(l)}});
  cert.add("symmetry", "x(a,b) == x(b,a)", x_f_symbol(f, a, b) == x_f_symbol(f, b, a));
  RatFunc<F> x = x_f_symbol(f, a, b);
  const bool unit = valuation(x, f.poly()) == 0 && reduce_mod(x, f.poly()).is_one();
  cert.add("unit-at-f", "x(a,b) is a unit at f with reduction 1", unit);
  return cert;
}

// ---- five-term relation ----------------------------------------------------------

template <Field F>
Certificate fiveterm_trial(const F& k, const SuiteConfig& cfg, std::uint64_t trial) {
  Certificate cert = detail::start_certificate("fiveterm", k, cfg, trial);
  auto rng = trial_rng(cfg.seed, "fiveterm", trial);
  Sampler<F> s(k, rng);
  const bool orbit = s.chance(1, 2);
  for (int attempt = 0;; ++attempt) {
    if (attempt >= kMaxResamples) throw Error(ErrorCode::ResampleExhausted, "no nondegenerate five-term instance");
    try {
      std::optional<FiveTermInstance<F>> w;
      json pts = json::array();
      if (orbit) {
        RatFunc<F> a = s.ratfunc(cfg.deg_max), b = s.ratfunc(cfg.deg_max);
        pts = {to_string(a), to_string(b)};
        w = FiveTermInstance<F>::from_orbit(BlochGen<F>::point(a), BlochGen<F>::point(b), k);
      } else {
        std::array<BlochGen<F>, 5> x{BlochGen<F>::infinity(), BlochGen<F>::infinity(), BlochGen<F>::infinity(),
                                     BlochGen<F>::infinity(), BlochGen<F>::infinity()};
        for (int i = 0; i < 5; ++i) {
          if (i == 0 && s.chance(1, 3)) continue;
          RatFunc<F> y = s.chance(1, 2) ? RatFunc<F>::constant(k, s.element()) : RatFunc<F>(s.poly(cfg.deg_max));
          x[static_cast<std::size_t>(i)] = BlochGen<F>::point(y);
          pts.push_back(to_string(y));
        }
        for (int i = 0; i < 5; ++i)
          for (int j = i + 1; j < 5; ++j)
            if (x[static_cast<std::size_t>(i)] == x[static_cast<std::size_t>(j)])
              throw Error(ErrorCode::DegenerateConfiguration, "coincident points");
        w = FiveTermInstance<F>::from_points(x, k);
      }
      BlochElt<F> b = five_term(*w, k);
      json args = json::array();
      for (const auto& g : w->arguments()) args.push_back(detail::str(g));
      cert.instance = {{"kind", orbit ? "orbit" : "cross-ratio"}, {"input", pts}, {"arguments", args}};
      WedgeElt<F> dw = delta2(b);
      cert.add("delta2-vanishes", "delta_2 of the five-term combination == 0", dw.is_zero(), detail::degree_witness(dw));
      return cert;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotAFiveTerm && e.code() != ErrorCode::DegenerateConfiguration) throw;
      ++cert.resamples;
      cert.resample_reasons.push_back(error_name(e.code()).data());
    }
  }
}

// ---- Lemma 1 ---------------------------------------------------------------------

template <Field F>
Certificate lemma1_trial(const F& k, const SuiteConfig& cfg, std::uint64_t trial) {
  Certificate cert = detail::start_certificate("lemma1", k, cfg, trial);
  auto rng = trial_rng(cfg.seed, "lemma1", trial);
  Sampler<F> s(k, rng);
  // over Q an instance can push the decomposition past the factorization bounds; such
  // instances are redrawn from the same stream and the redraw is recorded
  BlochElt<F> X(k);
  std::optional<Lemma1Decomposition<F>> found;
  for (int attempt = 0; !found; ++attempt) {
    if (attempt >= kMaxResamples) throw Error(ErrorCode::ResampleExhausted, "no instance within factorization bounds");
    X = BlochElt<F>(k);
    json terms = json::array();
    const int n = s.between(1, 4);
    for (int i = 0; i < n; ++i) {
      const int d = detail::pick_degree(s, cfg);
      RatFunc<F> x = RatFunc<F>::one(k);
      if (s.chance(1, 2)) {
        auto f = s.irreducible(d);
        x = x_f_symbol(f, s.nonzero_mod(f, d - 1, cert), s.nonzero_mod(f, d - 1, cert));
      } else {
        x = rf_normalize(s.monic(d), s.monic(d));
      }
      mpq_class c(s.between(-3, 3), s.between(1, 2));
      c.canonicalize();
      if (x.is_one() || sgn(c) == 0) continue;
      X += BlochElt<F>::of(x, c);
      terms.push_back({{"coeff", c.get_str()}, {"x", to_string(x)}});
    }
    cert.instance = {{"terms", terms}};
    try {
      found = lemma1_decompose(X);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::FactorizationUnsupported) throw;
      ++cert.resamples;
      cert.resample_reasons.push_back(e.what());
    }
  }
  const auto& dec = *found;
  BlochElt<F> sum(k);
  bool symbols_ok = true;
  for (const auto& g : dec.generators) {
    sum += BlochElt<F>::of(g.value, g.coeff);
    if (g.kind == Lemma1Generator<F>::Kind::Division)
      symbols_ok = symbols_ok && g.value == x_f_symbol(Irreducible<F>::certified(g.modulus), g.first, g.second);
    else
      symbols_ok = symbols_ok && g.first.degree() == g.second.degree();
  }
  cert.add("reassembly", "sum of generators + remainder == X", sum + dec.remainder == X, {{"generators", dec.generators.size()}});
  cert.add("generators", "division generators equal x_f(a,b); ratio generators have equal degrees", symbols_ok);
  WedgeElt<F> dr = delta2(dec.remainder);
  cert.add("remainder-degree", "delta_2(remainder) lies in L_0", in_L(dr, 0), detail::degree_witness(dr));
  bool drops = true;
  json lv = json::array();
  for (const auto& l : dec.levels) {
    drops = drops && l.degree_after < l.degree;
    lv.push_back({l.degree, l.degree_after});
  }
  cert.add("levels", "degree strictly drops at every level", drops, {{"levels", lv}});
  return cert;
}

}  // namespace prebloch
