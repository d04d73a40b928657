#pragma once

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prebloch/expr.hpp"
#include "prebloch/lemma1.hpp"
#include "prebloch/numerics/volume.hpp"
#include "prebloch/verify/suite.hpp"

namespace prebloch {

namespace cli {

enum Exit : int { Pass = 0, VerificationFailure = 1, Usage = 2, Computation = 3 };

/// Bad input is a usage error; anything raised once computation is under way is not.
inline int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnknownSuite:
    case ErrorCode::Unsupported:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::FieldMismatch:
      return Usage;
    default:
      return Computation;
  }
}

struct Options {
  std::uint64_t p = 0;
  bool rationals = false;
  std::uint64_t seed = 0;
  bool json = false;
  std::uint64_t trials = 10;
  std::string deg = "2";
  double tolerance = 1e-9;
  unsigned threads = 1;
  bool timing = false;
  std::vector<std::string> suites;
  std::int64_t replay = -1;
  std::string expr, place, modulus, value, a, b, f, g, z;
  bool catalogue = false;
  std::uint64_t samples = 1000000;
  double epsilon = 1e-9;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  std::uint64_t prime() const { return o_.rationals ? 0 : (o_.p == 0 ? 5 : o_.p); }

  SuiteConfig suite_config() const {
    SuiteConfig c;
    c.p = prime();
    c.seed = o_.seed;
    c.trials = o_.trials;
    c.tolerance = o_.tolerance;
    c.threads = o_.threads;
    c.timing = o_.timing;
    const auto dash = o_.deg.find('-');
    try {
      std::size_t used = 0;
      c.deg_min = std::stoi(o_.deg.substr(0, dash), &used);
      if (used != (dash == std::string::npos ? o_.deg.size() : dash)) throw std::invalid_argument("deg");
      c.deg_max = c.deg_min;
      if (dash != std::string::npos) {
        std::string hi = o_.deg.substr(dash + 1);
        c.deg_max = std::stoi(hi, &used);
        if (used != hi.size()) throw std::invalid_argument("deg");
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidArgument, "--deg expects d or dmin-dmax, got '" + o_.deg + "'");
    }
    c.validate();
    return c;
  }

  template <class Fn>
  int with_field(Fn&& fn) {
    const std::uint64_t p = prime();
    if (p == 0) return fn(RationalField{});
    SuiteConfig c;
    c.p = p;
    c.validate();
    return fn(PrimeField(p));
  }

  // ---- verify ----

  int verify() {
    const SuiteConfig cfg = suite_config();
    if (o_.replay >= 0) {
      if (o_.suites.size() != 1) throw Error(ErrorCode::InvalidArgument, "--replay needs exactly one suite");
      Certificate c = replay_trial(cfg, o_.suites[0], static_cast<std::uint64_t>(o_.replay));
      if (o_.json)
        out_ << to_json(c).dump(2) << "\n";
      else
        print_certificate(c);
      return c.verdict() ? Pass : VerificationFailure;
    }
    Report r = run_suite(cfg, o_.suites);
    if (o_.json) {
      out_ << to_json(r).dump(2) << "\n";
    } else {
      std::vector<std::string> ids;
      for (const auto& c : r.certificates)
        if (std::find(ids.begin(), ids.end(), c.statement) == ids.end()) ids.push_back(c.statement);
      for (const auto& id : ids) {
        std::size_t n = 0, ok = 0;
        for (const auto& c : r.certificates)
          if (c.statement == id) {
            ++n;
            ok += c.verdict() ? 1 : 0;
          }
        out_ << id << " over " << r.field << ": " << ok << "/" << n << " passed\n";
      }
      for (const auto& c : r.certificates)
        if (!c.verdict()) {
          out_ << "  failed: " << c.statement << " trial " << c.trial << " (";
          bool first = true;
          for (const auto& ch : c.checks)
            if (!ch.passed) {
              out_ << (first ? "" : ", ") << ch.name;
              first = false;
            }
          out_ << ")\n";
        }
      if (r.elapsed_ms) out_ << "elapsed: " << *r.elapsed_ms << " ms\n";
      out_ << (r.all_passed() ? "PASS" : "FAIL") << " " << r.passed() << "/" << r.certificates.size() << "\n";
    }
    return r.all_passed() ? Pass : VerificationFailure;
  }

  void print_certificate(const Certificate& c) {
    out_ << c.statement << " trial " << c.trial << " over " << c.field << ": " << (c.verdict() ? "pass" : "FAIL") << "\n";
    out_ << "  instance: " << c.instance.dump() << "\n";
    for (const auto& ch : c.checks) out_ << "  " << (ch.passed ? "ok   " : "FAIL ") << ch.name << ": " << ch.observable << "\n";
  }

  // ---- expressions ----

  template <Field F>
  Expr<F> expr(const F& k) {
    if (o_.expr.empty()) throw Error(ErrorCode::InvalidArgument, "--expr is required");
    return parse_expr(o_.expr, k);
  }

  template <Field F>
  int parse(const F& k) {
    Expr<F> e = expr(k);
    std::string delta;
    if (e.index() == 0) delta = to_string(delta2(std::get<0>(e)));
    if (e.index() == 1) delta = to_string(delta_n(std::get<1>(e)));
    if (o_.json) {
      nlohmann::json j{{"field", k.name()}, {"kind", expr_kind<F>(e)}, {"arity", expr_arity<F>(e)}, {"normal_form", to_string<F>(e)}};
      j["delta"] = delta.empty() ? nlohmann::json(nullptr) : nlohmann::json(delta);
      out_ << j.dump(2) << "\n";
    } else {
      out_ << to_string<F>(e) << "\n";
      out_ << "kind: " << expr_kind<F>(e) << ", arity " << expr_arity<F>(e) << ", field " << k.name() << "\n";
      if (!delta.empty()) out_ << "delta: " << delta << "\n";
    }
    return Pass;
  }

  template <Field F>
  Place<F> place(const F& k) {
    if (o_.place.empty()) throw Error(ErrorCode::InvalidArgument, "--place is required");
    if (o_.place == "inf") return Place<F>::infinity();
    return Place<F>::finite(irreducible(o_.place, k, "--place"));
  }

  /// A polynomial argument made monic and certified irreducible.
  template <Field F>
  Irreducible<F> irreducible(const std::string& text, const F& k, const char* what) {
    Poly<F> P = parse_poly(text, k);
    if (P.degree() < 1) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must have positive degree");
    P = P * Poly<F>::constant(k, inverse(P.leading()));
    if (!is_irreducible(P)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " " + to_string(P) + " is not irreducible over " + k.name());
    return make_irreducible(P);
  }

  template <Field F>
  int residue_cmd(const F& k) {
    Expr<F> e = expr(k);
    Place<F> v = place(k);
    std::string r;
    if (e.index() == 0) throw Error(ErrorCode::InvalidArgument, "a Bloch element has no residue; give a tensor T(...) or a wedge W[...]");
    if (e.index() == 1) {
      if (std::get<1>(e).arity() == 0) throw Error(ErrorCode::InvalidArgument, "tensor of arity 0 has no residue");
      r = to_string(residue(v, std::get<1>(e)));
    } else {
      if (std::get<2>(e).arity() == 0) throw Error(ErrorCode::InvalidArgument, "wedge of arity 0 has no residue");
      r = to_string(residue(v, std::get<2>(e)));
    }
    const std::string pl = v.is_infinity() ? "inf" : to_string(v.poly());
    if (o_.json)
      out_ << nlohmann::json{{"field", k.name()}, {"place", pl}, {"residue", r}}.dump(2) << "\n";
    else
      out_ << r << "\n";
    return Pass;
  }

  template <Field F>
  int reduce(const F& k) {
    Expr<F> e = expr(k);
    Lemma1Decomposition<F> dec = [&] {
      if (e.index() == 0) return lemma1_decompose(std::get<0>(e));
      if (e.index() == 2 && std::get<2>(e).arity() == 2) return lemma1_decompose(std::get<2>(e));
      throw Error(ErrorCode::InvalidArgument, "reduce takes a Bloch element or a wedge of arity 2");
    }();
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : dec.generators) {
      nlohmann::json j;
      if (g.kind == Lemma1Generator<F>::Kind::Division) {
        j = {{"kind", "division"}, {"f", to_string(g.modulus)}, {"a", to_string(g.first)}, {"b", to_string(g.second)}};
      } else {
        j = {{"kind", "ratio"}, {"g", to_string(g.first)}, {"h", to_string(g.second)}};
      }
      j["value"] = to_string(g.value);
      j["coeff"] = g.coeff.get_str();
      gens.push_back(j);
    }
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& l : dec.levels) levels.push_back({{"degree", l.degree}, {"degree_after", l.degree_after}, {"generators", l.generators}});
    const std::string rem = to_string(dec.remainder), res = to_string(dec.residual);
    if (o_.json) {
      out_ << nlohmann::json{{"field", k.name()}, {"generators", gens}, {"levels", levels}, {"remainder", rem}, {"residual", res},
                             {"residual_max_letter_degree", max_letter_degree(dec.residual)}}
                  .dump(2)
           << "\n";
      return Pass;
    }
    for (const auto& l : dec.levels) out_ << "degree " << l.degree << " -> " << l.degree_after << " using " << l.generators << " generators\n";
    for (const auto& g : gens) {
      if (g["kind"] == "division")
        out_ << "  " << g["coeff"].get<std::string>() << " * {x_f(a,b)}  f=" << g["f"].get<std::string>() << "  a=" << g["a"].get<std::string>()
             << "  b=" << g["b"].get<std::string>();
      else
        out_ << "  " << g["coeff"].get<std::string>() << " * {g/h}  g=" << g["g"].get<std::string>() << "  h=" << g["h"].get<std::string>();
      out_ << "  value=" << g["value"].get<std::string>() << "\n";
    }
    out_ << "remainder: " << rem << "\n";
    out_ << "residual: " << res << "\n";
    return Pass;
  }

  template <Field F>
  int thue(const F& k) {
    if (o_.modulus.empty() || o_.value.empty()) throw Error(ErrorCode::InvalidArgument, "--modulus and --value are required");
    Irreducible<F> P = irreducible(o_.modulus, k, "--modulus");
    Poly<F> R = parse_poly(o_.value, k);
    if ((R % P.poly()).is_zero()) throw Error(ErrorCode::InvalidArgument, "--value must be nonzero modulo the modulus");
    ThuePair<F> t = thue_representative(P, R);
    if (o_.json)
      out_ << nlohmann::json{{"field", k.name()}, {"modulus", to_string(P.poly())}, {"A", to_string(t.A)}, {"B", to_string(t.B)}}.dump(2) << "\n";
    else
      out_ << "A=" << to_string(t.A) << ", B=" << to_string(t.B) << "\n";
    return Pass;
  }

  template <Field F>
  int symbol(const F& k) {
    if (!o_.a.empty() || !o_.b.empty()) {
      if (o_.modulus.empty() || o_.a.empty() || o_.b.empty()) throw Error(ErrorCode::InvalidArgument, "x_f symbol needs --modulus, --a and --b");
      Irreducible<F> P = irreducible(o_.modulus, k, "--modulus");
      RatFunc<F> x = x_f_symbol(P, parse_poly(o_.a, k), parse_poly(o_.b, k));
      if (o_.json)
        out_ << nlohmann::json{{"field", k.name()}, {"kind", "division"}, {"value", to_string(x)}}.dump(2) << "\n";
      else
        out_ << to_string(x) << "\n";
      return Pass;
    }
    if (o_.f.empty() || o_.g.empty()) throw Error(ErrorCode::InvalidArgument, "symbol needs --modulus/--a/--b or --place/--f/--g");
    Place<F> v = place(k);
    Poly<F> s = tame_symbol(v, parse_ratfunc(o_.f, k), parse_ratfunc(o_.g, k));
    if (o_.json)
      out_ << nlohmann::json{{"field", k.name()}, {"kind", "tame"}, {"place", o_.place}, {"value", to_string(s)}}.dump(2) << "\n";
    else
      out_ << to_string(s) << "\n";
    return Pass;
  }

  int reciprocity() {
    if (prime() == 0) throw Error(ErrorCode::Unsupported, "reciprocity is checked over prime fields only");
    if (o_.f.empty() || o_.g.empty()) throw Error(ErrorCode::InvalidArgument, "--f and --g are required");
    PrimeField k(prime());
    suite_config();
    ReciprocityReport r = weil_reciprocity(parse_ratfunc(o_.f, k), parse_ratfunc(o_.g, k));
    if (o_.json) {
      nlohmann::json syms = nlohmann::json::array();
      for (const auto& [v, s] : r.symbols)
        syms.push_back({{"place", v.is_infinity() ? std::string("inf") : to_string(v.poly())}, {"symbol", to_string(s)}, {"norm", PrimeField::to_string(residue_norm(v, s))}});
      out_ << nlohmann::json{{"field", k.name()}, {"holds", r.holds}, {"product", PrimeField::to_string(r.product)}, {"symbols", syms}}.dump(2) << "\n";
    } else {
      for (const auto& [v, s] : r.symbols)
        out_ << "  " << (v.is_infinity() ? std::string("inf") : to_string(v.poly())) << ": " << to_string(s) << " (norm " << PrimeField::to_string(residue_norm(v, s)) << ")\n";
      out_ << "product of norms: " << PrimeField::to_string(r.product) << "\n" << (r.holds ? "PASS" : "FAIL") << "\n";
    }
    return r.holds ? Pass : VerificationFailure;
  }

  // ---- numerics ----

  int dilog() {
    if (o_.z.empty()) throw Error(ErrorCode::InvalidArgument, "--z is required");
    const Cx z = parse_complex(o_.z);
    const double d = bloch_wigner(z);
    if (o_.json) {
      out_ << nlohmann::json{{"z", to_json(z)}, {"D", d}}.dump(2) << "\n";
    } else {
      std::ostringstream s;
      s << std::setprecision(15) << d;
      out_ << s.str() << "\n";
    }
    return Pass;
  }

  VolumeOptions volume_options() const {
    VolumeOptions v;
    v.samples = o_.samples;
    v.epsilon = o_.epsilon;
    return v;
  }

  VolumeReport volume_pair(const std::string& f, const std::string& g) {
    if (o_.rationals) {
      RationalField q;
      return volume_check(parse_ratfunc(f, q), parse_ratfunc(g, q), volume_options());
    }
    return volume_check(parse_crat(f), parse_crat(g), volume_options());
  }

  int volume() {
    if (o_.catalogue) return volume_catalogue_cmd();
    if (o_.f.empty() || o_.g.empty()) throw Error(ErrorCode::InvalidArgument, "--f and --g (or --catalogue) are required");
    VolumeReport r = volume_pair(o_.f, o_.g);
    if (o_.json) {
      out_ << to_json(r).dump(2) << "\n";
    } else {
      print_volume(r);
    }
    return Pass;
  }

  void print_volume(const VolumeReport& r) {
    std::ostringstream s;
    s << std::setprecision(12);
    for (const auto& t : r.divisor) {
      s << "  ord " << t.order << " at ";
      if (t.point.is_infinity())
        s << "inf";
      else
        s << t.point.z->real() << (t.point.z->imag() < 0 ? "" : "+") << t.point.z->imag() << "i";
      s << "  D(f) = " << t.d_value << "\n";
    }
    s << "V_sum = " << r.v_sum << "\n";
    s << "integral = " << r.integral.value << " (error estimate " << r.integral.error << ", " << r.integral.evaluations << " evaluations)\n";
    if (r.ratio)
      s << "ratio = " << *r.ratio << "\n";
    else
      s << "ratio = undefined (V_sum = 0)\n";
    s << "dehn: " << (r.dehn.equal ? "equal" : "different") << " (heuristic)\n";
    out_ << s.str();
  }

  /// The first pair calibrates the constant; every ratio must agree with it to 1%.
  int volume_catalogue_cmd() {
    nlohmann::json pairs = nlohmann::json::array();
    std::vector<double> ratios;
    bool dehn_ok = true;
    std::ostringstream s;
    s << std::setprecision(12);
    for (const auto& [f, g] : volume_catalogue()) {
      VolumeReport r = volume_check(parse_crat(f), parse_crat(g), volume_options());
      nlohmann::json j = to_json(r);
      j["f"] = f;
      j["g"] = g;
      pairs.push_back(j);
      ratios.push_back(r.ratio ? *r.ratio : std::nan(""));
      dehn_ok = dehn_ok && r.dehn.equal;
      s << "f=" << f << "  g=" << g << "  V_sum=" << r.v_sum << "  integral=" << r.integral.value << "  ratio="
        << (r.ratio ? std::to_string(*r.ratio) : std::string("undefined")) << "  dehn=" << (r.dehn.equal ? "equal" : "different") << "\n";
    }
    const double c = ratios.front();
    double dev = 0;
    for (double x : ratios) dev = std::max(dev, std::isfinite(x) ? std::fabs(x - c) / std::fabs(c) : INFINITY);
    const bool ok = std::isfinite(dev) && dev <= 0.01 && dehn_ok;
    if (o_.json) {
      out_ << nlohmann::json{{"pairs", pairs}, {"constant", c}, {"max_relative_deviation", dev}, {"dehn_equal", dehn_ok}, {"pass", ok}}.dump(2) << "\n";
    } else {
      s << "constant = " << c << ", max relative deviation = " << dev << "\n" << (ok ? "PASS" : "FAIL") << "\n";
      out_ << s.str();
    }
    return ok ? Pass : VerificationFailure;
  }

 private:
  const Options& o_;
  std::ostream& out_;
};

}  // namespace cli

/// Runs one command line (args excludes the program name). Output goes to out; usage
/// text and diagnostics to err, or as a JSON error object on out under --json.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli;
  Options o;
  CLI::App app{"pre-Bloch group verification toolkit", "prebloch"};
  app.fallthrough();
  app.require_subcommand(1);
  auto* fp = app.add_option("--p", o.p, "prime field F_p (default 5)");
  auto* fq = app.add_flag("--rationals", o.rationals, "work over Q");
  fp->excludes(fq);
  app.add_option("--seed", o.seed, "random seed");
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_option("--trials", o.trials, "trials per suite");
  app.add_option("--deg", o.deg, "degree d or range dmin-dmax");
  app.add_option("--tolerance", o.tolerance, "numeric tolerance");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("suites", o.suites, "suite ids, or all")->required();
  verify->add_option("--threads", o.threads, "worker threads");
  verify->add_flag("--timing", o.timing, "record elapsed time");
  verify->add_option("--replay", o.replay, "re-run a single trial");

  auto* parse = app.add_subcommand("parse", "normal form of an expression");
  parse->add_option("--expr,expr", o.expr, "expression")->required();

  auto* residue = app.add_subcommand("residue", "residue of a tensor or wedge at a place");
  residue->add_option("--expr,expr", o.expr, "expression")->required();
  residue->add_option("--place", o.place, "irreducible polynomial or inf")->required();

  auto* reduce = app.add_subcommand("reduce", "degree-by-degree decomposition of a Bloch element");
  reduce->add_option("--expr,expr", o.expr, "expression")->required();

  auto* thue = app.add_subcommand("thue", "small representative A/B of a residue class");
  thue->add_option("--modulus", o.modulus, "irreducible modulus")->required();
  thue->add_option("--value", o.value, "residue class")->required();

  auto* symbol = app.add_subcommand("symbol", "division symbol x_f(a,b) or tame symbol at a place");
  symbol->add_option("--modulus", o.modulus, "irreducible f");
  symbol->add_option("--a", o.a, "polynomial a");
  symbol->add_option("--b", o.b, "polynomial b");
  symbol->add_option("--place", o.place, "place for the tame symbol");
  symbol->add_option("--f", o.f, "first function");
  symbol->add_option("--g", o.g, "second function");

  auto* recip = app.add_subcommand("reciprocity", "norm product of tame symbols over all places");
  recip->add_option("--f", o.f, "first function")->required();
  recip->add_option("--g", o.g, "second function")->required();

  auto* dilog = app.add_subcommand("dilog", "Bloch-Wigner dilogarithm");
  dilog->add_option("--z", o.z, "complex number a+bi")->required();

  auto* volume = app.add_subcommand("volume", "integral of r_2 against sum ord D(f)");
  volume->add_option("--f", o.f, "rational function of t");
  volume->add_option("--g", o.g, "rational function of t");
  volume->add_flag("--catalogue", o.catalogue, "run the catalogued pairs");
  volume->add_option("--samples", o.samples, "integrand evaluation budget");
  volume->add_option("--epsilon", o.epsilon, "singularity exclusion radius");

  // the usage error object needs --json even when parsing fails
  const bool json_requested = std::find(args.begin(), args.end(), "--json") != args.end();
  auto fail = [&](const std::string& code, const std::string& msg, int status) {
    if (json_requested)
      out << nlohmann::json{{"error", {{"code", code}, {"message", msg}, {"exit", status}}}}.dump(2) << "\n";
    else
      err << "error: " << msg << "\n";
    return status;
  };

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    return fail("UsageError", e.what(), Usage);
  }

  try {
    Runner r(o, out);
    if (*verify) return r.verify();
    if (*parse) return r.with_field([&](const auto& k) { return r.parse(k); });
    if (*residue) return r.with_field([&](const auto& k) { return r.residue_cmd(k); });
    if (*reduce) return r.with_field([&](const auto& k) { return r.reduce(k); });
    if (*thue) return r.with_field([&](const auto& k) { return r.thue(k); });
    if (*symbol) return r.with_field([&](const auto& k) { return r.symbol(k); });
    if (*recip) return r.reciprocity();
    if (*dilog) return r.dilog();
    if (*volume) return r.volume();
  } catch (const Error& e) {
    return fail(std::string(error_name(e.code())), e.what(), exit_code(e.code()));
  } catch (const std::exception& e) {
    return fail("Internal", e.what(), Computation);
  }
  return fail("UsageError", "no command", Usage);
}

}  // namespace prebloch
