#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "uppe/beta_z.hpp"
#include "uppe/numerics.hpp"
#include "uppe/transform.hpp"
#include "uppe/verification.hpp"

using namespace uppe;

namespace {

Field random_field(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  Field f(g, all_physical);
  for (auto& v : f.values()) v = cplx(n(rng), n(rng));
  return f;
}

std::size_t peak_bin(const Field& f) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (std::abs(f.values()[i]) > std::abs(f.values()[best])) best = i;
  return best;
}

}  // namespace

// Oracles first: the direct sum is the reference for every transform test.

TEST_CASE("forward transform matches the direct sum on 4^4") {
  const auto g = make_grid({4, 4, 4, 4}, {0.7, 1.1, 0.9, 0.3});
  const Field f = random_field(g, 1);
  CHECK(relative_l2(forward_transform(f, AxisSet::all()), brute_force_dft(f, AxisSet::all())) <= 1e-12);

  SUBCASE("space only") {
    CHECK(relative_l2(forward_transform(f, AxisSet::space()), brute_force_dft(f, AxisSet::space())) <= 1e-12);
  }
  SUBCASE("time only") {
    const AxisSet t{Axis::t};
    CHECK(relative_l2(forward_transform(f, t), brute_force_dft(f, t)) <= 1e-12);
  }
  SUBCASE("inverse") {
    const Field s = brute_force_dft(f, AxisSet::all());
    CHECK(relative_l2(inverse_transform(s, AxisSet::all()), brute_force_idft(s, AxisSet::all())) <= 1e-12);
  }
}

TEST_CASE("direct sum: delta at the origin transforms to a constant") {
  const auto g = make_grid({4, 4, 4, 4}, {0.5, 1.0, 2.0, 0.25});
  Field f(g, all_physical);
  f(2, 2, 2, 2) = 1.0;
  const Field s = brute_force_dft(f, AxisSet::all());
  for (const auto& v : s.values()) CHECK(std::abs(v - cplx(g.cell_measure(), 0.0)) <= 1e-15);
}

TEST_CASE("direct sum is linear") {
  const auto g = make_grid({4, 2, 2, 4}, {1.0, 1.0, 1.0, 1.0});
  const Field a = random_field(g, 2), b = random_field(g, 3);
  const cplx alpha(0.3, -1.2), beta(2.0, 0.5);
  const Field lhs = brute_force_dft(alpha * a + beta * b, AxisSet::all());
  const Field rhs = alpha * brute_force_dft(a, AxisSet::all()) + beta * brute_force_dft(b, AxisSet::all());
  CHECK(relative_l2(lhs, rhs) <= 1e-14);
}

TEST_CASE("direct sum refuses large fields") {
  const auto g = make_grid({8, 8, 8, 16}, {1.0, 1.0, 1.0, 1.0});
  CHECK_THROWS_AS(brute_force_dft(Field(g, all_physical), AxisSet::all()), std::invalid_argument);
}

TEST_CASE("grid conventions") {
  const auto g = make_grid({8, 8, 8, 16}, {0.5, 0.5, 0.25, 0.1});
  CHECK(g.coord(Axis::x, 4) == 0.0);
  CHECK(g.coord(Axis::x, 0) == -2.0);
  CHECK(g.spectral_step(Axis::t) == doctest::Approx(2.0 * std::numbers::pi / 1.6));
  CHECK(bin_sign(0, 8) == -1);  // Nyquist counts as negative
  CHECK(bin_sign(4, 8) == 0);
  CHECK(bin_sign(5, 8) == 1);
  CHECK_THROWS_WITH_AS(make_grid({15, 8, 8, 8}, {1, 1, 1, 1}), doctest::Contains("counts must be even"),
                       std::invalid_argument);
  CHECK_THROWS_AS(make_grid({8, 8, 8, 8}, {1, 0, 1, 1}), std::invalid_argument);
}

TEST_CASE("plane waves land on their bins") {
  const auto g = make_grid({4, 4, 16, 16}, {1.0, 1.0, 0.5, 0.25});
  const double k0 = 3 * g.spectral_step(Axis::z);
  const double w0 = 2 * g.spectral_step(Axis::t);

  SUBCASE("exp(+i k0 z) peaks at +k0") {
    Field f(g, all_physical);
    for (std::size_t ix = 0; ix < 4; ++ix)
      for (std::size_t iy = 0; iy < 4; ++iy)
        for (std::size_t iz = 0; iz < 16; ++iz)
          for (std::size_t it = 0; it < 16; ++it) f(ix, iy, iz, it) = std::polar(1.0, k0 * g.coord(Axis::z, iz));
    CHECK(peak_bin(forward_transform(f, AxisSet::all())) == g.index(2, 2, 8 + 3, 8));
  }
  SUBCASE("exp(-i w0 t) peaks at +w0") {
    Field f(g, all_physical);
    for (std::size_t ix = 0; ix < 4; ++ix)
      for (std::size_t iy = 0; iy < 4; ++iy)
        for (std::size_t iz = 0; iz < 16; ++iz)
          for (std::size_t it = 0; it < 16; ++it) f(ix, iy, iz, it) = std::polar(1.0, -w0 * g.coord(Axis::t, it));
    CHECK(peak_bin(forward_transform(f, AxisSet::all())) == g.index(2, 2, 8, 8 + 2));
  }
  SUBCASE("exp(+i w0 t) peaks at -w0") {
    Field f(g, all_physical);
    for (std::size_t ix = 0; ix < 4; ++ix)
      for (std::size_t iy = 0; iy < 4; ++iy)
        for (std::size_t iz = 0; iz < 16; ++iz)
          for (std::size_t it = 0; it < 16; ++it) f(ix, iy, iz, it) = std::polar(1.0, w0 * g.coord(Axis::t, it));
    CHECK(peak_bin(forward_transform(f, AxisSet::all())) == g.index(2, 2, 8, 8 - 2));
  }
}

TEST_CASE("round trip and Plancherel") {
  const auto g = make_grid({16, 16, 16, 32}, {1.0, 0.8, 0.5, 0.47});
  const Field f = random_field(g, 4);
  const Field s = forward_transform(f, AxisSet::all());
  CHECK(relative_l2(inverse_transform(s, AxisSet::all()), f) <= 1e-13);
  CHECK(std::abs(l2_norm(s) - l2_norm(f)) / l2_norm(f) <= 1e-10);
  CHECK(s.rep() == all_spectral);
}

TEST_CASE("transform contracts") {
  const auto g = make_grid({4, 4, 4, 4}, {1.0, 1.0, 1.0, 1.0});
  const Field f(g, all_physical);
  CHECK_THROWS_AS(inverse_transform(f, AxisSet::all()), ContractError);
  const Field s = forward_transform(f, AxisSet::space());
  CHECK_THROWS_AS(forward_transform(s, AxisSet::space()), ContractError);
}

TEST_CASE("serial and parallel transforms are bit-identical") {
  const auto g = make_grid({8, 8, 8, 16}, {1.0, 1.0, 1.0, 0.5});
  const Field f = random_field(g, 5);
  CHECK(forward_transform(f, AxisSet::all(), Exec::serial).values() ==
        forward_transform(f, AxisSet::all(), Exec::parallel).values());
}

TEST_CASE("phi functions") {
  // Series reference Σ x^k/(k+p)!, summed to convergence in long double.
  auto series = [](cplx x, int p) {
    std::complex<long double> term = 1.0L, sum = 0.0L;
    long double fact = 1.0L;
    for (int k = 1; k <= p; ++k) fact *= k;
    term /= fact;
    for (int k = 0; k < 60; ++k) {
      sum += term;
      term *= std::complex<long double>(x) / static_cast<long double>(k + p + 1);
    }
    return cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
  };
  for (cplx x : {cplx(0.0, 0.0), cplx(1e-9, 0.0), cplx(0.0, 0.3), cplx(-0.45, 0.2), cplx(0.0, 2.0), cplx(-3.0, 1.0)}) {
    CHECK(std::abs(phi1(x) - series(x, 1)) <= 1e-14 * std::abs(series(x, 1)));
    CHECK(std::abs(phi2(x) - series(x, 2)) <= 1e-14 * std::abs(series(x, 2)));
  }
  CHECK(phi1(0.0) == cplx(1.0, 0.0));
  CHECK(phi2(0.0) == cplx(0.5, 0.0));
}

TEST_CASE("quadrature helpers") {
  const auto rule = gauss_legendre(-1.0, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 7);
  CHECK(s == doctest::Approx((std::pow(2.0, 8) - 1.0) / 8.0).epsilon(1e-14));

  // Mean of 1/|r| over a box, reference values by pyramid decomposition.
  CHECK(mean_inverse_distance_box(0.5, 0.5, 0.5) == doctest::Approx(2.3800773639795535).epsilon(1e-12));
  CHECK(mean_inverse_distance_box(0.5, 1.0, 0.25) == doctest::Approx(2.0589073828094625).epsilon(1e-12));
  CHECK(mean_inverse_distance_box(1.0, 1.0, 1.0) == doctest::Approx(2.3800773639795535 / 2.0).epsilon(1e-12));
}

TEST_CASE("beta_z table") {
  const auto g = make_grid({8, 8, 4, 16}, {1.0, 1.0, 1.0, 0.47});
  const double eps = 1e-6 * g.spectral_step(Axis::t);
  const BetaZTable decay(g, BranchPolicy::evanescent_decay, eps);
  const BetaZTable zero(g, BranchPolicy::evanescent_zero, eps);
  std::size_t propagating = 0, evanescent = 0;
  for (std::size_t ix = 0; ix < 8; ++ix)
    for (std::size_t iy = 0; iy < 8; ++iy)
      for (std::size_t it = 0; it < 16; ++it) {
        const std::size_t i = decay.index(ix, iy, it);
        if (decay.singular(i)) continue;
        const double kx = g.freq(Axis::x, ix), ky = g.freq(Axis::y, iy), w = g.freq(Axis::t, it);
        const double s2 = w * w - kx * kx - ky * ky;
        const cplx b = decay.value(i);
        CHECK(std::abs(b * b - s2) <= 1e-12 * std::max(1.0, std::abs(s2)));
        if (s2 > 0.0) {
          ++propagating;
          CHECK(b.real() > 0.0);
          CHECK(zero.active(i));
        } else {
          ++evanescent;
          CHECK(b.imag() > 0.0);  // e^{iβz} decays for z > 0
          CHECK(decay.active(i));
          CHECK_FALSE(zero.active(i));
        }
      }
  CHECK(propagating > 0);
  CHECK(evanescent > 0);
  CHECK(decay.singular_count() >= 1);  // k⊥ = ω = 0
}
