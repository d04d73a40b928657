// One line per acceptance criterion; exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "prebloch/cli.hpp"

using namespace prebloch;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

SuiteConfig cfg(std::uint64_t p, int dmin, int dmax, std::uint64_t trials, std::uint64_t seed) {
  SuiteConfig c;
  c.p = p;
  c.deg_min = dmin;
  c.deg_max = dmax;
  c.trials = trials;
  c.seed = seed;
  c.threads = std::max(1U, std::thread::hardware_concurrency());
  return c;
}

/// Number of certificates whose check `name` passed, and how many carry it at all.
std::pair<std::size_t, std::size_t> count_check(const Report& r, const std::string& name) {
  std::size_t ok = 0, seen = 0;
  for (const auto& c : r.certificates)
    for (const auto& ch : c.checks)
      if (ch.name == name) {
        ++seen;
        ok += ch.passed ? 1 : 0;
      }
  return {ok, seen};
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int n, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", seconds_since(t0));
  std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title << "  [" << o.detail << "; " << buf << "]" << std::endl;
  if (!o.pass) ++failures;
}

std::string frac(std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); }

/// sum (-1)^k/(2k+1)^2 with the two last partial sums averaged.
long double catalan_series() {
  long double s = 0, prev = 0;
  for (long k = 0; k <= 4000000; ++k) {
    prev = s;
    const long double d = 2.0L * k + 1;
    s += (k % 2 ? -1.0L : 1.0L) / (d * d);
  }
  return (s + prev) / 2;
}

std::string run_command(const std::vector<std::string>& args, int& status) {
  std::ostringstream out, err;
  status = run_cli(args, out, err);
  return out.str();
}

}  // namespace

int main() {
  // criteria 1 and 2 share their instances
  std::vector<Report> lemma2;
  double lemma2_seconds = 0;
  {
    const auto t0 = Clock::now();
    for (std::uint64_t p : {5ULL, 7ULL})
      for (int d : {2, 3}) lemma2.push_back(run_suite(cfg(p, d, d, 200, 2024), {"lemma2"}));
    lemma2_seconds = seconds_since(t0);
  }

  report(1, "Lemma 2 exact membership, 200 per (p,d), p in {5,7}, d in {2,3}", [&] {
    std::size_t ok = 0, n = 0;
    for (const auto& r : lemma2) {
      auto [a, b] = count_check(r, "A:delta2-degree");
      ok += a;
      n += b;
    }
    bool pass = n == 800 && ok == n && lemma2_seconds <= 60;
    return Outcome{pass, frac(ok, n) + " instances with delta_2-degree <= d-1, campaign " + std::to_string(lemma2_seconds) + " s (limit 60)"};
  });

  report(2, "Lemma 2 proof identity on the same instances", [&] {
    std::size_t ok = 0, n = 0;
    for (const auto& r : lemma2) {
      auto [a, b] = count_check(r, "B:proof-identity");
      ok += a;
      n += b;
    }
    return Outcome{n == 800 && ok == n, frac(ok, n) + " with delta_2(E - right side) == 0"};
  });

  report(3, "Lemma 3 certificates, 200 per p in {5,7}, d = 2", [&] {
    const auto t0 = Clock::now();
    std::size_t a_ok = 0, c_ok = 0, all_ok = 0, n = 0;
    for (std::uint64_t p : {5ULL, 7ULL}) {
      Report r = run_suite(cfg(p, 2, 2, 200, 2025), {"lemma3"});
      a_ok += count_check(r, "A:delta3-filtration").first;
      c_ok += count_check(r, "C:step1-identity").first;
      all_ok += r.passed();
      n += r.certificates.size();
    }
    const double s = seconds_since(t0);
    return Outcome{n == 400 && a_ok == n && c_ok == n && all_ok == n && s <= 120,
                   "filtration " + frac(a_ok, n) + ", step-1 identity " + frac(c_ok, n) + ", all checks " + frac(all_ok, n)};
  });

  report(4, "Lemma 4 certificates, 100 orbits per (p,d), p in {5,7}, d in {2,3}", [&] {
    const auto t0 = Clock::now();
    std::size_t ok = 0, n = 0;
    for (std::uint64_t p : {5ULL, 7ULL})
      for (int d : {2, 3}) {
        Report r = run_suite(cfg(p, d, d, 100, 2026), {"lemma4"});
        ok += r.passed();
        n += r.certificates.size();
      }
    const double s = seconds_since(t0);
    return Outcome{n == 400 && ok == n && s <= 120, frac(ok, n) + " orbits: period 5, filtration, residue recognized as orbit, Thue lift bounds"};
  });

  report(5, "Thue lemma exhaustive over F_3, d in {2,3,4}", [&] {
    const auto t0 = Clock::now();
    Report r = run_suite(cfg(3, 2, 4, 1, 0), {"thue-exhaustive"});
    const double s = seconds_since(t0);
    return Outcome{!r.certificates.empty() && r.all_passed() && s <= 60,
                   frac(r.passed(), r.certificates.size()) + " irreducibles, every nonzero class checked against brute force"};
  });

  report(6, "Weil reciprocity, 300 random (f,g) per p in {3,5,7}, degree <= 4", [&] {
    std::size_t ok = 0, n = 0;
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
      Report r = run_suite(cfg(p, 1, 4, 300, 2027), {"reciprocity"});
      ok += count_check(r, "norm-product").first;
      n += r.certificates.size();
    }
    return Outcome{n == 900 && ok == n, frac(ok, n) + " norm products equal to 1"};
  });

  report(7, "Chain map and x_f cocycle, 500 trials each", [&] {
    Report cm = run_suite(cfg(5, 1, 3, 500, 2028), {"chainmap"});
    Report cmq = run_suite(cfg(0, 1, 2, 500, 2028), {"chainmap"});
    Report co = run_suite(cfg(5, 2, 3, 500, 2028), {"cocycle"});
    std::size_t nontrivial = 0;
    for (const auto& c : cmq.certificates)
      for (const auto& ch : c.checks)
        if (ch.name == "chain-map" && ch.witness.value("nontrivial", false)) ++nontrivial;
    const bool pass = cm.all_passed() && cmq.all_passed() && co.all_passed() && cm.certificates.size() == 500 && co.certificates.size() == 500;
    return Outcome{pass, "chain map F_5 " + frac(cm.passed(), cm.certificates.size()) + ", Q " + frac(cmq.passed(), cmq.certificates.size()) + " (" +
                             std::to_string(nontrivial) + " with nonzero sides), cocycle " + frac(co.passed(), co.certificates.size())};
  });

  report(8, "Numeric five-term on 1000 tuples and D(i) against Catalan", [&] {
    SuiteConfig c = cfg(5, 2, 2, 1000, 2029);
    c.tolerance = 1e-9;
    Report r = run_suite(c, {"fiveterm-numeric"});
    double worst = 0;
    for (const auto& cert : r.certificates)
      for (const auto& ch : cert.checks)
        if (ch.name == "five-term-sum" && ch.witness.contains("sum")) worst = std::max(worst, std::fabs(ch.witness["sum"].get<double>()));
    const double oracle = static_cast<double>(catalan_series());
    const double err = std::fabs(bloch_wigner(Cx(0, 1)) - oracle);
    std::ostringstream s;
    s << frac(r.passed(), r.certificates.size()) << " tuples, max |sum| " << worst << ", |D(i) - series| " << err;
    return Outcome{r.certificates.size() == 1000 && r.all_passed() && worst <= 1e-9 && err <= 1e-10, s.str()};
  });

  report(9, "Volume cross-check on the 5 catalogued pairs at 1e6 samples", [&] {
    const auto t0 = Clock::now();
    VolumeOptions o;
    o.samples = 1000000;
    std::vector<double> ratios;
    bool dehn = true;
    for (const auto& [f, g] : volume_catalogue()) {
      VolumeReport r = volume_check(parse_crat(f), parse_crat(g), o);
      ratios.push_back(r.ratio ? *r.ratio : std::nan(""));
      dehn = dehn && r.dehn.equal;
    }
    double dev = 0;
    for (double x : ratios) dev = std::max(dev, std::isfinite(x) ? std::fabs(x / ratios.front() - 1) : INFINITY);
    const double s = seconds_since(t0);
    std::ostringstream d;
    d << "constant " << ratios.front() << ", max relative deviation " << dev << ", Dehn sides " << (dehn ? "equal" : "differ") << " (heuristic)";
    return Outcome{dev <= 0.01 && dehn && s <= 600, d.str()};
  });

  report(10, "Determinism of verification reports", [&] {
    const std::vector<std::vector<std::string>> cmds{
        {"verify", "all", "--p", "5", "--deg", "2-3", "--trials", "20", "--seed", "7", "--json"},
        {"verify", "all", "--rationals", "--deg", "1-2", "--trials", "10", "--seed", "7", "--json"},
        {"verify", "thue-exhaustive", "--p", "3", "--deg", "2-3", "--json"},
        {"verify", "fiveterm-numeric", "--trials", "50", "--seed", "7", "--json"},
    };
    std::size_t same = 0;
    for (auto args : cmds) {
      int s1 = 0, s2 = 0, s3 = 0;
      const std::string a = run_command(args, s1), b = run_command(args, s2);
      args.push_back("--threads");
      args.push_back("4");
      const std::string c = run_command(args, s3);
      if (s1 == 0 && s2 == 0 && s3 == 0 && a == b && a == c && !a.empty()) ++same;
    }
    return Outcome{same == cmds.size(), frac(same, cmds.size()) + " commands byte-identical across repeated runs and thread counts"};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
