#include <doctest.h>

#include <cmath>
#include <memory>

#include "uppe/green.hpp"
#include "uppe/numerics.hpp"
#include "uppe/propagator.hpp"
#include "uppe/transform.hpp"

using namespace uppe;

namespace {

const GridSpec kGrid = make_grid({8, 8, 16, 16}, {1.0, 1.0, 0.5, 0.47});

PropagatorSpec spec_for(const GridSpec& g, std::size_t substeps) {
  return {g, BranchPolicy::evanescent_decay, 1e-6 * g.spectral_step(Axis::t) / g.c, g.step(Axis::z) / substeps};
}

Field pulse(const GridSpec& g) {
  SourceSpec s;
  s.width = {1.5, 1.5, 1.0, 1.0};
  s.center = {0.0, 0.0, -1.5, 0.0};
  return sample_source(s, g);
}

Field roll_t(const Field& f, std::size_t by) {
  const auto& g = f.grid();
  Field r(g, f.rep());
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz)
        for (std::size_t it = 0; it < g.n[3]; ++it) r(ix, iy, iz, (it + by) % g.n[3]) = f(ix, iy, iz, it);
  return r;
}

// Envelope-modulated field exp(−|x − c|²/2σ²)·carrier(z, t), c at the origin.
template <class Carrier>
Field modulated(const GridSpec& g, double sigma, Carrier carrier) {
  Field f(g, all_physical);
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz)
        for (std::size_t it = 0; it < g.n[3]; ++it) {
          const double x = g.coord(Axis::x, ix), y = g.coord(Axis::y, iy);
          const double z = g.coord(Axis::z, iz), t = g.coord(Axis::t, it);
          const double r2 = x * x + y * y + z * z + t * t;
          f(ix, iy, iz, it) = std::exp(-0.5 * r2 / (sigma * sigma)) * carrier(z, t);
        }
  return f;
}

}  // namespace

TEST_CASE("march step spec") {
  CHECK(spec_for(kGrid, 4).substeps() == 4);
  PropagatorSpec bad = spec_for(kGrid, 1);
  bad.dz = 0.3;
  CHECK_THROWS_AS(Propagator{bad}, std::invalid_argument);
  bad.dz = 0.0;
  CHECK_THROWS_AS(Propagator{bad}, std::invalid_argument);
}

TEST_CASE("single step against closed forms") {
  const Propagator p(spec_for(kGrid, 1));
  const auto& b = p.beta();
  const double dz = 0.25;
  const cplx i(0.0, 1.0);

  SUBCASE("free step is a phase on propagating bins and a decay on evanescent ones") {
    SpectralSlice e(b.size()), q(b.size(), 0.0);
    for (std::size_t j = 0; j < e.size(); ++j) e[j] = cplx(1.0 + 0.01 * j, -0.5);
    const SpectralSlice e0 = e;
    p.step(e, q, dz);
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (!b.active(j)) {
        CHECK(e[j] == 0.0);
        continue;
      }
      const cplx bz = b.value(j);
      CHECK(std::abs(std::abs(e[j]) - std::abs(e0[j]) * std::exp(-bz.imag() * dz)) <= 1e-14 * std::abs(e0[j]));
    }
  }
  SUBCASE("constant source from rest") {
    SpectralSlice e(b.size(), 0.0), q(b.size());
    for (std::size_t j = 0; j < q.size(); ++j) q[j] = cplx(0.3, 0.1 * (j % 7));
    p.step(e, q, dz);
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (!b.active(j)) continue;
      const cplx bz = b.value(j);
      // (e^{iβ dz} − 1)/(iβ) · Q/(2iβ)
      const cplx expect = (std::exp(i * bz * dz) - 1.0) / (i * bz) * q[j] / (2.0 * i * bz);
      CHECK(std::abs(e[j] - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
    }
  }
  SUBCASE("size mismatch") {
    SpectralSlice e(3), q(3);
    CHECK_THROWS_AS(p.step(e, q, dz), std::invalid_argument);
  }
}

TEST_CASE("zero source gives zero field") {
  const Propagator p(spec_for(kGrid, 2));
  const Field zero(kGrid, all_physical);
  CHECK(l2_norm(p.march(zero).field) == 0.0);
  CHECK(l2_norm(p.solve_convolution(zero).field) == 0.0);
}

TEST_CASE("march converges to the convolution at first order in dz") {
  const Field q = pulse(kGrid);
  const Field ref = Propagator(spec_for(kGrid, 1)).solve_convolution(q).field;
  double err[3];
  std::size_t i = 0;
  for (std::size_t m : {2u, 4u, 8u}) err[i++] = relative_l2(Propagator(spec_for(kGrid, m)).march(q).field, ref);
  MESSAGE("march errors ", err[0], " ", err[1], " ", err[2]);
  CHECK(err[2] < err[1]);
  CHECK(err[1] < err[0]);
  CHECK(err[1] / err[2] >= 1.5);
  CHECK(err[1] / err[2] <= 3.0);
}

TEST_CASE("solutions commute with time shifts") {
  const Propagator p(spec_for(kGrid, 2));
  const Field q = pulse(kGrid);
  CHECK(relative_l2(p.march(roll_t(q, 3)).field, roll_t(p.march(q).field, 3)) <= 1e-13);
  CHECK(relative_l2(p.solve_convolution(roll_t(q, 5)).field, roll_t(p.solve_convolution(q).field, 5)) <= 1e-13);
}

TEST_CASE("periodic convolution wraps the z line") {
  const Propagator p(spec_for(kGrid, 1));
  const Field q = pulse(kGrid);
  const Field lin = p.solve_convolution(q, ConvolutionMode::linear).field;
  const Field per = p.solve_convolution(q, ConvolutionMode::periodic).field;
  CHECK(relative_l2(per, lin) > 0.0);
  CHECK(relative_l2(per, lin) < 1.0);
}

TEST_CASE("point-sample convolution of the planar mollifier is the UPPE Green's function") {
  const auto g = make_grid({8, 8, 8, 16}, {1.0, 1.0, 1.0, 0.47});
  GreenSpec gs = default_green_spec(g);
  gs.mollifier_sigma_r = 2.0;
  gs.mollifier_sigma_t = 1.0;
  const Field green = uppe_green(gs).field;
  const Propagator p({g, gs.branch_policy, gs.light_line_epsilon, g.step(Axis::z)});
  const auto solved = p.solve_convolution(mollified_delta(g, gs.planar()), ConvolutionMode::linear, ZRule::point_samples);
  CHECK(relative_l2(solved.field, green) <= 1e-10);
}

TEST_CASE("source direction report") {
  const auto g = make_grid({4, 4, 32, 32}, {1.0, 1.0, 0.5, 0.5});
  const double k0 = 8 * g.spectral_step(Axis::z), w0 = 8 * g.spectral_step(Axis::t);
  const double sigma = 2.0;

  SUBCASE("forward packet") {
    const auto r = source_direction_report(modulated(g, sigma, [&](double z, double t) {
      return std::polar(1.0, k0 * z - w0 * t);
    }));
    CHECK(r.p00 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.forward == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.backward <= 1e-6);
  }
  SUBCASE("real symmetric pulse") {
    const auto r = source_direction_report(modulated(g, sigma, [&](double z, double t) {
      return cplx(std::cos(k0 * z - w0 * t), 0.0);
    }));
    CHECK(r.p00 == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.p11 == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.forward == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("standing wave") {
    const auto r = source_direction_report(modulated(g, sigma, [&](double z, double t) {
      return cplx(std::cos(k0 * z) * std::cos(w0 * t), 0.0);
    }));
    for (double f : {r.p00, r.p01, r.p10, r.p11}) CHECK(f == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(r.forward == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.backward == doctest::Approx(0.5).epsilon(1e-6));
  }
}

TEST_CASE("sampled sources") {
  SourceSpec s;
  s.width = {1.0, 1.0, 1.0, 1.0};
  const Field f = sample_source(s, kGrid);
  double mass = 0.0;
  for (const auto& v : f.values()) mass += v.real();
  CHECK(mass * kGrid.cell_measure() == doctest::Approx(1.0).epsilon(1e-3));

  s.center = {100.0, 0.0, 0.0, 0.0};
  s.width = {0.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(sample_source(s, kGrid), std::invalid_argument);

  SourceSpec c;
  c.kind = SourceKind::custom_grid;
  CHECK_THROWS_AS(sample_source(c, kGrid), std::invalid_argument);
  c.custom = std::make_shared<const Field>(f);
  c.amplitude = 2.0;
  CHECK(relative_l2(sample_source(c, kGrid), 2.0 * f) == 0.0);

  CHECK(source_kind_from_string("gaussian_pulse") == SourceKind::gaussian_pulse);
  CHECK_THROWS_AS(source_kind_from_string("laser"), std::invalid_argument);
}

TEST_CASE("serial and parallel propagation are bit-identical") {
  const Propagator p(spec_for(kGrid, 2));
  const Field q = pulse(kGrid);
  CHECK(p.march(q, Exec::serial).field.values() == p.march(q, Exec::parallel).field.values());
  CHECK(p.solve_convolution(q, ConvolutionMode::linear, ZRule::linear_source, Exec::serial).field.values() ==
        p.solve_convolution(q, ConvolutionMode::linear, ZRule::linear_source, Exec::parallel).field.values());
}
