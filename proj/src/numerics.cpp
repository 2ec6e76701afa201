#include "uppe/numerics.hpp"

#include <array>
#include <boost/math/quadrature/gauss.hpp>

namespace uppe {

namespace {

// Σ_{k≥0} x^k/(k + p)! by Horner; used below |x| = 1/2 where the closed
// forms lose digits to cancellation.
std::complex<double> phi_series(std::complex<double> x, int p) {
  constexpr int terms = 24;
  std::complex<double> acc = 0.0;
  for (int k = terms; k >= 0; --k) {
    double f = 1.0;
    for (int j = 2; j <= k + p; ++j) f *= j;
    acc = acc * x + 1.0 / f;
  }
  return acc;
}

}  // namespace

std::complex<double> phi1(std::complex<double> x) {
  if (std::abs(x) < 0.5) return phi_series(x, 1);
  return (std::exp(x) - 1.0) / x;
}

std::complex<double> phi2(std::complex<double> x) {
  if (std::abs(x) < 0.5) return phi_series(x, 2);
  return (std::exp(x) - 1.0 - x) / (x * x);
}

namespace {

constexpr unsigned kGaussPoints = 40;
using Gauss = boost::math::quadrature::gauss<double, kGaussPoints>;

// Expand the symmetric half-rule boost stores into the full rule on [-1, 1].
const QuadratureRule& reference_rule() {
  static const QuadratureRule rule = [] {
    QuadratureRule r;
    const auto& a = Gauss::abscissa();
    const auto& w = Gauss::weights();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) {
        r.nodes.push_back(0.0);
        r.weights.push_back(w[i]);
        continue;
      }
      r.nodes.push_back(-a[i]);
      r.weights.push_back(w[i]);
      r.nodes.push_back(a[i]);
      r.weights.push_back(w[i]);
    }
    return r;
  }();
  return rule;
}

// ∫ over the pyramid with apex at the origin and base the face x = a of the
// box [0,a]×[0,b]×[0,c], after the Duffy substitution y = (b/a)xu, z = (c/a)xv.
double pyramid_inverse_distance(double a, double b, double c) {
  const auto& rule = reference_rule();
  CompensatedSum s;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = 0.5 * (rule.nodes[i] + 1.0);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double v = 0.5 * (rule.nodes[j] + 1.0);
      const double bu = b * u / a;
      const double cv = c * v / a;
      s.add(0.25 * rule.weights[i] * rule.weights[j] / std::sqrt(1.0 + bu * bu + cv * cv));
    }
  }
  return 0.5 * b * c * s.value();
}

}  // namespace

QuadratureRule gauss_legendre(double a, double b) {
  const auto& ref = reference_rule();
  QuadratureRule r;
  r.nodes.resize(ref.nodes.size());
  r.weights.resize(ref.nodes.size());
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
    r.nodes[i] = mid + half * ref.nodes[i];
    r.weights[i] = half * ref.weights[i];
  }
  return r;
}

double mean_inverse_distance_box(double hx, double hy, double hz) {
  // One octant split into three pyramids, one per far face.
  const double octant = pyramid_inverse_distance(hx, hy, hz) + pyramid_inverse_distance(hy, hz, hx) +
                        pyramid_inverse_distance(hz, hx, hy);
  return octant / (hx * hy * hz);
}

}  // namespace uppe
