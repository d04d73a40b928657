#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "prebloch/numerics/crat.hpp"
#include "prebloch/numerics/dehn.hpp"

namespace prebloch {

// ---- the r_2 form -------------------------------------------------------------------

namespace detail {

/// Coefficients of dx^dy in d log|f| ^ d log|g| and d arg f ^ d arg g, from w = f'/f, v = g'/g:
/// d log f = w dz gives d log|f| = a dx - b dy and d arg f = b dx + a dy for w = a + ib.
inline double dlogabs_wedge(Cx w, Cx v) { return w.real() * (-v.imag()) - (-w.imag()) * v.real(); }
inline double darg_wedge(Cx w, Cx v) { return w.imag() * v.real() - w.real() * v.imag(); }

/// Alt_3 over all six orderings of (1/6 log|f1| dlog|f2|^dlog|f3| - 1/2 log|f1| darg f2^darg f3).
inline double r2_alt(const std::array<double, 3>& logabs, const std::array<Cx, 3>& w) {
  static const std::array<std::array<int, 4>, 6> perms{{{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}, {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}}};
  double s = 0;
  for (const auto& p : perms) {
    const auto i = static_cast<std::size_t>(p[0]), j = static_cast<std::size_t>(p[1]), k = static_cast<std::size_t>(p[2]);
    s += p[3] * (logabs[i] * dlogabs_wedge(w[j], w[k]) / 6.0 - logabs[i] * darg_wedge(w[j], w[k]) / 2.0);
  }
  return s;
}

}  // namespace detail

/// Coefficient of dx^dy of r_2(f1,f2,f3) at t; derivatives come from the factored forms.
inline double r2_eval(const FactoredRat& f1, const FactoredRat& f2, const FactoredRat& f3, Cx t, double epsilon = 1e-9) {
  require_finite(t, "evaluation point");
  for (const FactoredRat* f : {&f1, &f2, &f3})
    if (f->distance_to_support(t) < epsilon) throw Error(ErrorCode::NearSingularity, "point within epsilon of a zero or pole");
  return detail::r2_alt({f1.log_abs(t), f2.log_abs(t), f3.log_abs(t)}, {f1.log_derivative(t), f2.log_derivative(t), f3.log_derivative(t)});
}

inline double r2_eval(const RatFunc<RationalField>& f1, const RatFunc<RationalField>& f2, const RatFunc<RationalField>& f3, Cx t,
                      double epsilon = 1e-9) {
  return r2_eval(factor_rational(f1), factor_rational(f2), factor_rational(f3), t, epsilon);
}

// ---- adaptive cubature on the unit disc --------------------------------------------

namespace detail {

// Gauss-Kronrod 7/15 on [-1,1]: Kronrod nodes (odd index = Gauss node), Kronrod and Gauss weights.
inline constexpr std::array<double, 8> kGKNodes{0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                                0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                                0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                                0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKWeights{0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                                 0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                                 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                                 0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGWeights{0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                                 0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule1D {
  std::array<double, 15> x{}, wk{}, wg{};  // wg is zero off the Gauss nodes
};

inline const Rule1D& gk15() {
  static const Rule1D r = [] {
    Rule1D q;
    for (std::size_t i = 0; i < 7; ++i) {
      q.x[i] = -kGKNodes[i];
      q.x[14 - i] = kGKNodes[i];
      q.wk[i] = q.wk[14 - i] = kKWeights[i];
      q.wg[i] = q.wg[14 - i] = (i % 2 == 1) ? kGWeights[i / 2] : 0.0;
    }
    q.x[7] = 0.0;
    q.wk[7] = kKWeights[7];
    q.wg[7] = kGWeights[3];
    return q;
  }();
  return r;
}

struct Cell {
  double r0, r1, a0, a1;
  double value = 0, error = 0;
  bool operator<(const Cell& o) const { return error < o.error; }
};

}  // namespace detail

struct CubatureResult {
  double value = 0;
  double error = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t cells = 0;
};

/// Integral of h(t) dx dy over |t| <= 1 in polar coordinates, by tensor Gauss-Kronrod cells
/// refined where the Kronrod-Gauss difference is largest, until the evaluation budget is spent
/// or the estimated error drops below abs_tol. Deterministic.
template <class Fn>
CubatureResult integrate_disc(const Fn& h, std::uint64_t budget, double abs_tol = 1e-12) {
  const auto& q = detail::gk15();
  CubatureResult res;
  auto eval_cell = [&](detail::Cell& c) {
    const double hr = (c.r1 - c.r0) / 2, mr = (c.r1 + c.r0) / 2, ha = (c.a1 - c.a0) / 2, ma = (c.a1 + c.a0) / 2;
    double k = 0, g = 0;
    for (std::size_t i = 0; i < 15; ++i) {
      const double r = mr + hr * q.x[i];
      double rowk = 0, rowg = 0;
      for (std::size_t j = 0; j < 15; ++j) {
        const double a = ma + ha * q.x[j];
        const double v = h(std::polar(r, a)) * r;
        rowk += q.wk[j] * v;
        rowg += q.wg[j] * v;
      }
      k += q.wk[i] * rowk;
      g += q.wg[i] * rowg;
    }
    res.evaluations += 225;
    c.value = k * hr * ha;
    c.error = std::abs(k - g) * hr * ha;
  };
  std::priority_queue<detail::Cell> heap;
  const int nr = 4, na = 8;
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < na; ++j) {
      detail::Cell c{static_cast<double>(i) / nr, static_cast<double>(i + 1) / nr, 2 * std::numbers::pi * j / na,
                     2 * std::numbers::pi * (j + 1) / na};
      eval_cell(c);
      heap.push(c);
    }
  double total_err = 0;
  {
    auto copy = heap;
    for (; !copy.empty(); copy.pop()) total_err += copy.top().error;
  }
  while (res.evaluations + 4 * 225 <= budget && total_err > abs_tol) {
    detail::Cell c = heap.top();
    heap.pop();
    total_err -= c.error;
    const double rm = (c.r0 + c.r1) / 2, am = (c.a0 + c.a1) / 2;
    for (auto [r0, r1] : {std::pair{c.r0, rm}, std::pair{rm, c.r1}})
      for (auto [a0, a1] : {std::pair{c.a0, am}, std::pair{am, c.a1}}) {
        detail::Cell d{r0, r1, a0, a1};
        eval_cell(d);
        total_err += d.error;
        heap.push(d);
      }
  }
  // final sum in a fixed order for reproducibility
  std::vector<detail::Cell> cells;
  while (!heap.empty()) {
    cells.push_back(heap.top());
    heap.pop();
  }
  std::sort(cells.begin(), cells.end(), [](const detail::Cell& a, const detail::Cell& b) {
    return std::tie(a.r0, a.a0, a.r1, a.a1) < std::tie(b.r0, b.a0, b.r1, b.a1);
  });
  for (const auto& c : cells) {
    res.value += c.value;
    res.error += c.error;
  }
  res.cells = cells.size();
  return res;
}

/// Integral of r_2(f1,f2,f3) over P^1(C): the disc |t| <= 1 plus the disc |s| < 1 in s = 1/t.
/// Points within epsilon of a zero or pole are excised.
inline CubatureResult integrate_r2(const FactoredRat& f1, const FactoredRat& f2, const FactoredRat& f3, std::uint64_t budget,
                                   double epsilon) {
  CubatureResult total;
  const std::array<FactoredRat, 3> inner{f1, f2, f3};
  const std::array<FactoredRat, 3> outer{f1.at_infinity(), f2.at_infinity(), f3.at_infinity()};
  for (const auto* fs : {&inner, &outer}) {
    auto h = [&](Cx t) {
      for (const auto& f : *fs)
        if (f.distance_to_support(t) < epsilon) return 0.0;
      return r2_eval((*fs)[0], (*fs)[1], (*fs)[2], t, 0.0);
    };
    auto part = integrate_disc(h, budget / 2);
    total.value += part.value;
    total.error += part.error;
    total.evaluations += part.evaluations;
    total.cells += part.cells;
  }
  if (!std::isfinite(total.value) || !std::isfinite(total.error))
    throw Error(ErrorCode::NonConvergence, "integral is not finite (error estimate " + std::to_string(total.error) + ")");
  return total;
}

// ---- the volume cross-check ---------------------------------------------------------

struct VolumeOptions {
  std::uint64_t samples = 1000000;  // evaluation budget for the integral
  double epsilon = 1e-9;            // singularity exclusion radius
  double point_tolerance = 1e-7;    // two numeric points closer than this are the same point
};

struct DivisorTerm {
  CPoint point;
  int order = 0;
  CrossValue f_value;
  double d_value = 0;
};

struct VolumeReport {
  std::vector<DivisorTerm> divisor;  // of g, with f evaluated there
  ScissorsElt scissors;              // sum ord_P(g) [f(P)], marker values dropped
  double v_sum = 0;
  CubatureResult integral;
  std::optional<double> ratio;  // integral / v_sum
  DehnComparison dehn;
  DehnVec dehn_volume_side, dehn_residue_side;
};

namespace detail {

/// Value of f at a point of P^1, with 0, 1, infinity reported as markers.
inline CrossValue value_at(const FactoredRat& f, const FactoredRat& one_minus_f, const CPoint& p, double tol) {
  if (p.is_infinity()) {
    const int v = -f.total_order();
    if (v > 0) return {CrossValue::Kind::Zero, 0.0};
    if (v < 0) return {CrossValue::Kind::Infinity, 0.0};
    if (one_minus_f.total_order() != 0) return {CrossValue::Kind::One, 1.0};
    return {CrossValue::Kind::Value, f.lc};
  }
  const int v = f.order_at(*p.z, tol);
  if (v > 0) return {CrossValue::Kind::Zero, 0.0};
  if (v < 0) return {CrossValue::Kind::Infinity, 0.0};
  if (one_minus_f.order_at(*p.z, tol) > 0) return {CrossValue::Kind::One, 1.0};
  return {CrossValue::Kind::Value, f.unit_at(*p.z, tol)};
}

inline int order_at(const FactoredRat& f, const CPoint& p, double tol) { return p.is_infinity() ? -f.total_order() : f.order_at(*p.z, tol); }
inline Cx unit_at(const FactoredRat& f, const CPoint& p, double tol) { return p.is_infinity() ? f.lc : f.unit_at(*p.z, tol); }

/// p applied to the residue of x ^ y ^ z at P: a uy^uz - b ux^uz + c ux^uy for orders a, b, c.
inline DehnVec residue_dehn(const std::array<const FactoredRat*, 3>& fs, const CPoint& p, double tol) {
  std::array<int, 3> v{};
  std::array<Cx, 3> u{};
  for (std::size_t i = 0; i < 3; ++i) {
    v[i] = order_at(*fs[i], p, tol);
    u[i] = unit_at(*fs[i], p, tol);
  }
  DehnVec d;
  if (v[0]) d += p_map(u[1], u[2], v[0]);
  if (v[1]) d += p_map(u[0], u[2], -v[1]);
  if (v[2]) d += p_map(u[0], u[1], v[2]);
  return d;
}

}  // namespace detail

/// Compares sum ord_P(g) D(f(P)) with the integral of r_2(f, 1-f, g) over P^1, and the Dehn
/// invariant of sum ord_P(g) [f(P)] with p applied to the residues of f ^ (1-f) ^ g.
inline VolumeReport volume_check(const FactoredRat& f, const FactoredRat& one_minus_f, const FactoredRat& g, const VolumeOptions& opt = {}) {
  if (f.is_constant()) throw Error(ErrorCode::InvalidArgument, "f must be non-constant");
  if (opt.samples < 2 * 32 * 225) throw Error(ErrorCode::InvalidArgument, "samples must be at least " + std::to_string(2 * 32 * 225));
  if (!(opt.epsilon > 0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  VolumeReport rep;
  const double tol = opt.point_tolerance;
  std::vector<CPoint> gpoints;
  for (const auto& [r, m] : g.points) gpoints.push_back(CPoint::at(r));
  if (g.total_order() != 0) gpoints.push_back(CPoint::infinity());
  for (const auto& p : gpoints) {
    DivisorTerm t;
    t.point = p;
    t.order = detail::order_at(g, p, tol);
    t.f_value = detail::value_at(f, one_minus_f, p, tol);
    t.d_value = bloch_wigner(t.f_value);
    if (t.f_value.kind == CrossValue::Kind::Value && std::abs(t.f_value.z) > 1e-12 && std::abs(t.f_value.z - 1.0) > 1e-12)
      rep.scissors.add(t.order, t.f_value.z);
    rep.v_sum += t.order * t.d_value;
    rep.divisor.push_back(t);
  }
  rep.integral = integrate_r2(f, one_minus_f, g, opt.samples, opt.epsilon);
  if (std::abs(rep.v_sum) > 1e-12) rep.ratio = rep.integral.value / rep.v_sum;

  // Dehn side: every point where one of f, 1-f, g has a zero or pole
  std::vector<CPoint> support{CPoint::infinity()};
  for (const FactoredRat* h : {&f, &one_minus_f, &g})
    for (const auto& [r, m] : h->points) {
      bool seen = false;
      for (const auto& s : support) seen = seen || (!s.is_infinity() && std::abs(*s.z - r) <= tol);
      if (!seen) support.push_back(CPoint::at(r));
    }
  DehnVec res;
  for (const auto& p : support) res += detail::residue_dehn({&f, &one_minus_f, &g}, p, tol);
  rep.dehn_volume_side = dehn_invariant(rep.scissors);
  rep.dehn_residue_side = canonicalize(res);
  rep.dehn = dehn_compare(rep.dehn_volume_side, rep.dehn_residue_side);
  return rep;
}

inline VolumeReport volume_check(const CRat& f, const CRat& g, const VolumeOptions& opt = {}) {
  return volume_check(factor_numeric(f), one_minus(f), factor_numeric(g), opt);
}

inline VolumeReport volume_check(const RatFunc<RationalField>& f, const RatFunc<RationalField>& g, const VolumeOptions& opt = {}) {
  if (f.is_zero() || g.is_zero()) throw Error(ErrorCode::ZeroElement, "f and g must be nonzero");
  RatFunc<RationalField> omf = RatFunc<RationalField>::one(f.field()) - f;
  if (omf.is_zero()) throw Error(ErrorCode::ZeroElement, "1 - f must be nonzero");
  return volume_check(factor_rational(f), factor_rational(omf), factor_rational(g), opt);
}

// ---- catalogue ----------------------------------------------------------------------

struct CataloguePair {
  std::string f, g;
};

/// Pairs with complex coefficients: for coefficients in R the divisor of g is closed under
/// conjugation and sum ord_P(g) D(f(P)) vanishes identically.
inline const std::vector<CataloguePair>& volume_catalogue() {
  static const std::vector<CataloguePair> pairs{
      {"t", "t-(0.3+0.8i)"},
      {"t", "(t-(0.3+0.8i))/(t-(-0.6+0.5i))"},
      {"t^2", "t-(0.7+0.6i)"},
      {"(t-(1+1i))/(t-(-0.5+0.2i))", "t-(0.4-0.9i)"},
      {"(2+1i)*t", "(t-(0.2+0.3i))*(t-(-0.8-0.4i))"},
  };
  return pairs;
}

// ---- serialization ------------------------------------------------------------------

inline nlohmann::json to_json(const Cx& z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline nlohmann::json to_json(const CPoint& p) { return p.is_infinity() ? nlohmann::json("inf") : to_json(*p.z); }

inline nlohmann::json to_json(const CrossValue& v) {
  switch (v.kind) {
    case CrossValue::Kind::Zero: return "0";
    case CrossValue::Kind::One: return "1";
    case CrossValue::Kind::Infinity: return "inf";
    case CrossValue::Kind::Value: break;
  }
  return to_json(v.z);
}

inline nlohmann::json to_json(const DehnVec& d) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [l, a] : d.pairs) j.push_back({{"length", l}, {"angle", a}});
  return j;
}

inline nlohmann::json to_json(const VolumeReport& r) {
  nlohmann::json j;
  j["divisor"] = nlohmann::json::array();
  for (const auto& t : r.divisor) j["divisor"].push_back({{"point", to_json(t.point)}, {"order", t.order}, {"f", to_json(t.f_value)}, {"D", t.d_value}});
  j["v_sum"] = r.v_sum;
  j["integral"] = r.integral.value;
  j["integral_error_estimate"] = r.integral.error;
  j["evaluations"] = r.integral.evaluations;
  j["ratio"] = r.ratio ? nlohmann::json(*r.ratio) : nlohmann::json(nullptr);
  j["dehn"] = {{"equal", r.dehn.equal},
               {"heuristic", r.dehn.heuristic},
               {"volume_side", to_json(r.dehn_volume_side)},
               {"residue_side", to_json(r.dehn_residue_side)}};
  return j;
}

}  // namespace prebloch
