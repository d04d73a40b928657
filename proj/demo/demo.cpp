// Walk through the main objects once: symbols over F_5, a residue, a Thue pair, the
// dilogarithm, and one volume cross-check.
#include <iomanip>
#include <iostream>

#include "prebloch/expr.hpp"
#include "prebloch/numerics/volume.hpp"
#include "prebloch/residue.hpp"
#include "prebloch/symbols.hpp"

using namespace prebloch;

int main() {
  PrimeField k(5);

  auto x = parse_expr("B{t} - 2*B{(t+1)/(t+2)}", k);
  const auto& b = std::get<BlochElt<PrimeField>>(x);
  std::cout << "X            = " << to_string(b) << "\n";
  std::cout << "delta_2(X)   = " << to_string(delta2(b)) << "\n";

  auto y = std::get<TensorElt<PrimeField>>(parse_expr("T(B{t+3}; t^2+2)", k));
  auto P = make_irreducible(parse_poly("t^2+2", k));
  std::cout << "Y            = " << to_string(y) << "\n";
  std::cout << "res_P(Y)     = " << to_string(residue(Place<PrimeField>::finite(P), y)) << "   (P = t^2+2)\n";

  PrimeField k3(3);
  auto Q = make_irreducible(parse_poly("t^2+1", k3));
  auto ab = thue_representative(Q, parse_poly("t", k3));
  std::cout << "t mod t^2+1 over F_3 = A/B with A=" << to_string(ab.A) << ", B=" << to_string(ab.B) << "\n";

  std::cout << std::setprecision(15);
  std::cout << "D(i)         = " << bloch_wigner(Cx(0, 1)) << "\n";
  std::array<CPoint, 5> pts{CPoint::at({0.1, 0.2}), CPoint::at({-1, 2}), CPoint::at({2, -0.5}), CPoint::at({0.7, 0.7}), CPoint::infinity()};
  std::cout << "five-term    = " << five_term_numeric(pts) << "\n";

  VolumeOptions opt;
  opt.samples = 200000;
  auto r = volume_check(parse_crat("t"), parse_crat("t-(0.3+0.8i)"), opt);
  std::cout << "f = t, g = t-(0.3+0.8i): sum ord D(f) = " << r.v_sum << ", integral of r_2 = " << r.integral.value
            << ", ratio = " << (r.ratio ? *r.ratio : 0.0) << ", Dehn sides " << (r.dehn.equal ? "agree" : "differ") << "\n";
}
