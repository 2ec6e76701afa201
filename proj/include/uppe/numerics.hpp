#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace uppe {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_, im_;
};

/// Unit-mass Gaussian density with standard deviation sigma.
inline double gaussian(double x, double sigma) {
  const double u = x / sigma;
  return std::exp(-0.5 * u * u) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// (e^x − 1)/x, accurate near x = 0.
std::complex<double> phi1(std::complex<double> x);

/// (e^x − 1 − x)/x² = ∫_0^1 (1 − v)e^{xv} dv, accurate near x = 0.
std::complex<double> phi2(std::complex<double> x);

/// Gauss–Legendre nodes and weights mapped to [a, b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(double a, double b);

/// Mean of 1/|ρ| over the box [−hx, hx]×[−hy, hy]×[−hz, hz].
double mean_inverse_distance_box(double hx, double hy, double hz);

}  // namespace uppe
