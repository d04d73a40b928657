#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "prebloch/numerics/dilog.hpp"
#include "prebloch/verify/campaigns.hpp"

namespace prebloch {

// ---- numeric five-term campaign ----------------------------------------------------

namespace detail {

inline Cx moebius(const Cx& a, const Cx& b, const Cx& c, const Cx& d, const Cx& z) { return (a * z + b) / (c * z + d); }

inline CPoint moebius(const Cx& a, const Cx& b, const Cx& c, const Cx& d, const CPoint& x) {
  if (x.is_infinity()) return std::abs(c) < 1e-300 ? CPoint::infinity() : CPoint::at(a / c);
  const Cx den = c * *x.z + d;
  if (std::abs(den) < 1e-300) return CPoint::infinity();
  return CPoint::at((a * *x.z + b) / den);
}

inline json point_json(const CPoint& x) {
  if (x.is_infinity()) return "inf";
  return json::array({x.z->real(), x.z->imag()});
}

}  // namespace detail

/// Random points in the box [-3,3]^2 (one of them at infinity a fifth of the time); the sum
/// must vanish, and must agree with the sum for a random Moebius image of the tuple.
inline Certificate fiveterm_numeric_trial(const SuiteConfig& cfg, std::uint64_t trial) {
  Certificate cert;
  cert.statement = "fiveterm-numeric";
  cert.trial = trial;
  cert.field = "C";
  cert.seed = cfg.seed;
  auto rng = trial_rng(cfg.seed, "fiveterm-numeric", trial);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::array<CPoint, 5> x;
  for (;;) {
    for (auto& p : x) p = CPoint::at({u(rng), u(rng)});
    if (std::uniform_int_distribution<int>(0, 4)(rng) == 0) x[std::uniform_int_distribution<std::size_t>(0, 4)(rng)] = CPoint::infinity();
    bool separated = true;
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j)
        if (!x[i].is_infinity() && !x[j].is_infinity() && std::abs(*x[i].z - *x[j].z) < 1e-3) separated = false;
    if (separated) break;
    ++cert.resamples;
    cert.resample_reasons.push_back("points closer than 1e-3");
    if (cert.resamples >= kMaxResamples) throw Error(ErrorCode::ResampleExhausted, "no separated five-tuple");
  }
  Cx a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)}, d{u(rng), u(rng)};
  if (std::abs(a * d - b * c) < 1e-3) d += 1.0;
  std::array<CPoint, 5> y;
  for (std::size_t i = 0; i < 5; ++i) y[i] = detail::moebius(a, b, c, d, x[i]);
  json pts = json::array();
  for (const auto& p : x) pts.push_back(detail::point_json(p));
  cert.instance = {{"points", pts}, {"moebius", {{a.real(), a.imag()}, {b.real(), b.imag()}, {c.real(), c.imag()}, {d.real(), d.imag()}}}};
  const double s = five_term_numeric(x);
  cert.add("five-term-sum", "|sum (-1)^i D(r(...))| <= tolerance", std::abs(s) <= cfg.tolerance, {{"sum", s}, {"tolerance", cfg.tolerance}});
  const double sy = five_term_numeric(y);
  cert.add("moebius-image", "|sum(x) - sum(M x)| <= tolerance", std::abs(s - sy) <= cfg.tolerance, {{"image_sum", sy}});
  return cert;
}

// ---- suite registry ----------------------------------------------------------------

/// Suites run by "all". The exhaustive Thue enumeration and the numeric campaign are only
/// run when named.
inline const std::vector<std::string>& default_suites() {
  static const std::vector<std::string> ids{"lemma2", "lemma3", "lemma4", "tf", "lemma1", "thue", "reciprocity", "chainmap", "cocycle", "fiveterm"};
  return ids;
}

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v = default_suites();
    v.push_back("thue-exhaustive");
    v.push_back("fiveterm-numeric");
    return v;
  }();
  return ids;
}

inline bool suite_needs_prime_field(const std::string& id) { return id == "thue" || id == "thue-exhaustive" || id == "reciprocity"; }

namespace detail {

using TrialFn = std::function<Certificate(std::uint64_t)>;

template <Field F>
TrialFn trial_function(const std::string& id, const F& k, const SuiteConfig& cfg) {
  if (id == "lemma2") return [k, cfg](std::uint64_t t) { return lemma2_trial(k, cfg, t); };
  if (id == "lemma3") return [k, cfg](std::uint64_t t) { return lemma3_trial(k, cfg, t); };
  if (id == "lemma4") return [k, cfg](std::uint64_t t) { return lemma4_trial(k, cfg, t); };
  if (id == "tf") return [k, cfg](std::uint64_t t) { return tf_trial(k, cfg, t); };
  if (id == "lemma1") return [k, cfg](std::uint64_t t) { return lemma1_trial(k, cfg, t); };
  if (id == "chainmap") return [k, cfg](std::uint64_t t) { return chainmap_trial(k, cfg, t); };
  if (id == "cocycle") return [k, cfg](std::uint64_t t) { return cocycle_trial(k, cfg, t); };
  if (id == "fiveterm") return [k, cfg](std::uint64_t t) { return fiveterm_trial(k, cfg, t); };
  if (id == "fiveterm-numeric") return [cfg](std::uint64_t t) { return fiveterm_numeric_trial(cfg, t); };
  if constexpr (F::is_prime_field) {
    if (id == "thue") return [k, cfg](std::uint64_t t) { return thue_trial(k, cfg, t); };
    if (id == "reciprocity") return [k, cfg](std::uint64_t t) { return reciprocity_trial(k, cfg, t); };
  }
  throw Error(ErrorCode::UnknownSuite, id);
}

/// An exception inside a trial becomes a failed certificate, so the report stays complete.
inline Certificate guarded(const std::string& id, const std::string& field, const SuiteConfig& cfg, std::uint64_t trial, const TrialFn& fn) {
  try {
    return fn(trial);
  } catch (const Error& e) {
    Certificate c;
    c.statement = id;
    c.trial = trial;
    c.field = field;
    c.seed = cfg.seed;
    c.add("completed", "trial ran to completion", false, {{"error", std::string(error_name(e.code()))}, {"message", e.what()}});
    return c;
  }
}

inline std::vector<Certificate> run_trials(const std::string& id, const std::string& field, const SuiteConfig& cfg, const TrialFn& fn) {
  std::vector<Certificate> out(cfg.trials);
  const unsigned nthreads = std::max(1U, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.trials)));
  if (nthreads == 1) {
    for (std::uint64_t t = 0; t < cfg.trials; ++t) out[t] = guarded(id, field, cfg, t, fn);
    return out;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < nthreads; ++i)
    pool.emplace_back([&] {
      for (std::uint64_t t = next++; t < cfg.trials; t = next++) out[t] = guarded(id, field, cfg, t, fn);
    });
  for (auto& th : pool) th.join();
  return out;
}

template <Field F>
void run_one(const std::string& id, const F& k, const SuiteConfig& cfg, Report& r) {
  std::vector<Certificate> certs;
  if (id == "thue-exhaustive") {
    if constexpr (F::is_prime_field) {
      certs = thue_exhaustive(k, cfg);
    }
  } else {
    certs = run_trials(id, id == "fiveterm-numeric" ? std::string("C") : k.name(), cfg, trial_function(id, k, cfg));
  }
  for (auto& c : certs) r.certificates.push_back(std::move(c));
}

inline std::vector<std::string> expand_suites(const std::vector<std::string>& which, bool prime_field) {
  std::vector<std::string> ids;
  auto push = [&ids](const std::string& s) {
    if (std::find(ids.begin(), ids.end(), s) == ids.end()) ids.push_back(s);
  };
  if (which.empty()) throw Error(ErrorCode::InvalidArgument, "no suite selected");
  for (const auto& w : which) {
    if (w == "all") {
      for (const auto& s : default_suites())
        if (prime_field || !suite_needs_prime_field(s)) push(s);
      continue;
    }
    if (std::find(known_suites().begin(), known_suites().end(), w) == known_suites().end()) throw Error(ErrorCode::UnknownSuite, w);
    if (!prime_field && suite_needs_prime_field(w)) throw Error(ErrorCode::Unsupported, w + " runs over prime fields only");
    push(w);
  }
  // canonical order, so the same set always yields the same report
  std::vector<std::string> ordered;
  for (const auto& s : known_suites())
    if (std::find(ids.begin(), ids.end(), s) != ids.end()) ordered.push_back(s);
  return ordered;
}

}  // namespace detail

/// Runs the named suites ("all" expands to the default set). Certificates are ordered by
/// suite, then trial; elapsed time is only recorded when cfg.timing is set, so reports for
/// equal inputs serialize to equal bytes.
inline Report run_suite(const SuiteConfig& cfg, const std::vector<std::string>& which) {
  cfg.validate();
  const auto ids = detail::expand_suites(which, cfg.p != 0);
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.seed = cfg.seed;
  r.trials = cfg.trials;
  for (std::size_t i = 0; i < ids.size(); ++i) r.suite += (i ? "," : "") + ids[i];
  if (cfg.p != 0) {
    PrimeField k(cfg.p);
    r.field = k.name();
    for (const auto& id : ids) detail::run_one(id, k, cfg, r);
  } else {
    RationalField k;
    r.field = k.name();
    for (const auto& id : ids) detail::run_one(id, k, cfg, r);
  }
  if (cfg.timing)
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Re-runs one trial of one suite; the certificate equals the one in the full report.
inline Certificate replay_trial(const SuiteConfig& cfg, const std::string& id, std::uint64_t trial) {
  cfg.validate();
  if (id == "thue-exhaustive" || id == "all") throw Error(ErrorCode::InvalidArgument, id + " has no individual trials");
  detail::expand_suites({id}, cfg.p != 0);
  if (cfg.p != 0) {
    PrimeField k(cfg.p);
    return detail::guarded(id, id == "fiveterm-numeric" ? "C" : k.name(), cfg, trial, detail::trial_function(id, k, cfg));
  }
  RationalField k;
  return detail::guarded(id, id == "fiveterm-numeric" ? "C" : k.name(), cfg, trial, detail::trial_function(id, k, cfg));
}

}  // namespace prebloch
