#include <doctest.h>

#include <cmath>

#include "uppe/green.hpp"
#include "uppe/projectors.hpp"
#include "uppe/transform.hpp"

using namespace uppe;

namespace {

GreenSpec small_spec() {
  const auto g = make_grid({16, 16, 16, 32}, {1.0, 1.0, 1.0, 0.47});
  GreenSpec s = default_green_spec(g);
  s.mollifier_sigma_r = 2.0;
  s.mollifier_sigma_t = 1.0;
  return s;
}

// t → −t on a centered grid maps bin j to n − j (j ≥ 1).
double time_reflection_mismatch(const Field& a, const Field& b) {
  const auto& g = a.grid();
  const std::size_t nt = g.n[3];
  double m = 0.0, peak = 0.0;
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz)
        for (std::size_t it = 1; it < nt; ++it) {
          m = std::max(m, std::abs(a(ix, iy, iz, it) - b(ix, iy, iz, nt - it)));
          peak = std::max(peak, std::abs(a(ix, iy, iz, it)));
        }
  return m / peak;
}

std::size_t radial_peak(const Field& f, std::size_t it) {
  const auto& g = f.grid();
  const std::size_t o = g.origin(Axis::x);
  std::size_t best = o;
  for (std::size_t ix = o; ix < g.n[0]; ++ix)
    if (std::abs(f(ix, o, o, it)) > std::abs(f(best, o, o, it))) best = ix;
  return best - o;
}

}  // namespace

TEST_CASE("mollifier and spec validation") {
  const auto s = small_spec();
  const Field d = mollified_delta(s.grid, s.isotropic());
  double mass = 0.0;
  for (const auto& v : d.values()) mass += v.real();
  // Spatial box spans ±4σ per axis: ∏ erf(4/√2) ≈ 0.99981.
  CHECK(mass * s.grid.cell_measure() == doctest::Approx(1.0).epsilon(5e-4));

  const Field p = mollified_delta(s.grid, s.planar());
  const std::size_t o = s.grid.origin(Axis::z);
  CHECK(std::abs(p(8, 8, o + 1, 16)) == 0.0);
  CHECK(p(8, 8, o, 16).real() > 0.0);

  GreenSpec bad = s;
  bad.mollifier_sigma_r = 1.5;  // below two steps
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.mollifier_sigma_r = 0.0;
  CHECK_NOTHROW(bad.validate());
  CHECK(default_green_spec(s.grid).light_line_epsilon ==
        doctest::Approx(1e-6 * s.grid.spectral_step(Axis::t) / s.grid.c));
}

TEST_CASE("wave Green's function in (k, t)") {
  auto s = small_spec();
  s.mollifier_sigma_r = 0.0;
  s.mollifier_sigma_t = 0.0;
  const Mollifier none;
  const Field kt = forward_transform(wave_green_spectral(+1, s, none), AxisSet::space());
  const auto& g = s.grid;
  const std::size_t o = g.origin(Axis::x), t0 = g.origin(Axis::t);
  for (std::size_t ix = 0; ix < 16; ++ix) CHECK(std::abs(kt(ix, 3, 5, t0)) <= 1e-12);  // sin(0) = 0
  for (std::size_t it = 0; it < 32; ++it) {
    const double t = g.coord(Axis::t, it);
    const double expect = t > 0.0 ? -g.c * g.c * t : 0.0;  // k → 0 limit
    CHECK(std::abs(kt(o, o, o, it) - expect) <= 1e-12 * (1.0 + std::abs(expect)));
  }
  // A generic bin: −c·Θ(t)·sin(ckt)/k.
  const double kx = g.freq(Axis::x, 10), ky = g.freq(Axis::y, 5), kz = g.freq(Axis::z, 12);
  const double k = std::sqrt(kx * kx + ky * ky + kz * kz);
  for (std::size_t it = t0 + 1; it < 32; ++it) {
    const double t = g.coord(Axis::t, it);
    CHECK(std::abs(kt(10, 5, 12, it) + g.c * std::sin(g.c * k * t) / k) <= 1e-12);
  }
}

TEST_CASE("analytic wave Green's function") {
  const auto g = make_grid({24, 24, 24, 48}, {1.0, 1.0, 1.0, 0.25});
  GreenSpec s = default_green_spec(g);
  s.mollifier_sigma_r = 2.0;
  s.mollifier_sigma_t = 0.5;
  const Field plus = wave_green_analytic(+1, s);
  const Field minus = wave_green_analytic(-1, s);

  CHECK(time_reflection_mismatch(minus, plus) == 0.0);
  CHECK(relative_l2(wave_green_spectral(+1, s), plus) <= 0.02);

  double peak = 0.0;
  for (const auto& v : plus.values()) peak = std::max(peak, std::abs(v));
  // t = −6 on the origin cell: 12 σ_t before the cone.
  CHECK(std::abs(plus(12, 12, 12, 0)) <= 1e-12 * peak);
}

TEST_CASE("mollified shell peaks near r = ct") {
  const auto g = make_grid({24, 24, 24, 48}, {1.0, 1.0, 1.0, 0.5});
  GreenSpec s = default_green_spec(g);
  s.mollifier_sigma_r = 2.0;
  s.mollifier_sigma_t = 1.0;
  const Field plus = wave_green_analytic(+1, s);
  const Field spectral = wave_green_spectral(+1, s);
  for (std::size_t it : {36u, 40u, 44u}) {
    const double r = g.c * g.coord(Axis::t, it);
    // The 1/r envelope pulls the smeared peak inward by about σ²/r.
    CHECK(std::abs(static_cast<double>(radial_peak(plus, it)) - r) <= 1.0);
    CHECK(std::abs(static_cast<double>(radial_peak(spectral, it)) - r) <= 1.0);
  }
}

TEST_CASE("uppe_green matches its defining spectral formula") {
  const auto s = small_spec();
  const auto& g = s.grid;
  const auto green = uppe_green(s);
  const Field& E = green.field;

  // Θ(z)·F⁻¹_{k⊥,ω}[e^{iβz}/(2iβ)·S], S the z-integrated planar mollifier.
  const BetaZTable beta(g, s.branch_policy, s.light_line_epsilon);
  Field q = forward_transform(mollified_delta(g, s.planar()), AxisSet::transverse_time());
  Field ungated(g, RepTags{Rep::spectral, Rep::spectral, Rep::physical, Rep::spectral});
  const cplx i(0.0, 1.0);
  const std::size_t o = g.origin(Axis::z);
  for (std::size_t ix = 0; ix < 16; ++ix)
    for (std::size_t iy = 0; iy < 16; ++iy)
      for (std::size_t it = 0; it < 32; ++it) {
        const std::size_t b = beta.index(ix, iy, it);
        if (!beta.active(b)) continue;
        const cplx bz = beta.value(b);
        for (std::size_t iz = 0; iz < 16; ++iz)
          ungated(ix, iy, iz, it) =
              std::exp(i * bz * std::abs(g.coord(Axis::z, iz))) / (2.0 * i * bz) * q(ix, iy, o, it) * g.step(Axis::z);
      }
  const Field full = inverse_transform(ungated, AxisSet::transverse_time());

  double above = 0.0, half = 0.0, below = 0.0, peak = 0.0;
  for (std::size_t ix = 0; ix < 16; ++ix)
    for (std::size_t iy = 0; iy < 16; ++iy)
      for (std::size_t iz = 0; iz < 16; ++iz)
        for (std::size_t it = 0; it < 32; ++it) {
          const cplx e = E(ix, iy, iz, it), f = full(ix, iy, iz, it);
          peak = std::max(peak, std::abs(f));
          if (iz > o) above = std::max(above, std::abs(e - f));
          if (iz == o) half = std::max(half, std::abs(e - 0.5 * f));
          if (iz < o) below = std::max(below, std::abs(e));
        }
  CHECK(below == 0.0);
  CHECK(above <= 1e-13 * peak);
  CHECK(half <= 1e-13 * peak);
  CHECK(green.excluded_mass > 0.0);
  CHECK(green.excluded_mass < 0.1);
}

TEST_CASE("uppe_green extends to t < 0 at z > 0") {
  const auto st = causality_stats(uppe_green(small_spec()).field);
  CHECK(st.energy_pm > 0.1 * st.total);
  CHECK(st.energy_mp == 0.0);
  CHECK(st.energy_mm == 0.0);
}

TEST_CASE("split and paraxial Green's functions") {
  const auto s = small_spec();
  const auto& g = s.grid;
  const auto pair = uppe_green_split(s);

  CHECK(time_reflection_mismatch(pair.e_plus, pair.e_minus) <= 1e-13);

  auto kz_nonpositive_mass = [&](const Field& f, bool include_zero) {
    const Field k = forward_transform(f, AxisSet::space());
    double bad = 0.0, all = 0.0;
    for (std::size_t ix = 0; ix < 16; ++ix)
      for (std::size_t iy = 0; iy < 16; ++iy)
        for (std::size_t iz = 0; iz < 16; ++iz)
          for (std::size_t it = 0; it < 32; ++it) {
            const double e = std::norm(k(ix, iy, iz, it));
            all += e;
            const int sz = bin_sign(iz, 16);
            if (sz < 0 || (include_zero && sz == 0)) bad += e;
          }
    return std::sqrt(bad / all);
  };
  CHECK(kz_nonpositive_mass(pair.e_plus, false) <= 1e-14);
  CHECK(kz_nonpositive_mass(pair.e_minus, false) <= 1e-14);
  const auto par = paraxial_green_split(s, s.planar());
  CHECK(kz_nonpositive_mass(par.e_plus, true) <= 1e-14);

  const Field gated = paraxial_green(s);
  double below = 0.0;
  for (std::size_t ix = 0; ix < 16; ++ix)
    for (std::size_t iy = 0; iy < 16; ++iy)
      for (std::size_t iz = 0; iz < g.origin(Axis::z); ++iz)
        for (std::size_t it = 0; it < 32; ++it) below = std::max(below, std::abs(gated(ix, iy, iz, it)));
  CHECK(below == 0.0);
}

TEST_CASE("UPPE Green's function identity variants") {
  const auto r = theorem1_residual(small_spec());
  // Frequency-split form: retarded continuation for ω > 0, advanced for ω < 0.
  CHECK(r.frequency_split <= 1e-8);
  CHECK(r.without_projection > 0.1);
  CHECK(r.without_gate > 0.1);
  CHECK(r.excluded_mass > 0.0);
}

TEST_CASE("paraxial identity per mode") {
  const auto g = make_grid({16, 16, 16, 64}, {1.0, 1.0, 0.5, 6.0 / 64});
  GreenSpec s = default_green_spec(g);
  s.mollifier_sigma_r = 4.0;
  s.mollifier_sigma_t = 1.0;
  const auto r = theorem2_residual(s);
  CHECK(r.spectral() <= 1e-10);
  CHECK(r.sign_swap == 0.0);
  CHECK(r.physical() <= 0.05);
}

TEST_CASE("frequency-lattice wave Green's function") {
  const auto s = small_spec();
  const Field plus = wave_green_frequency(+1, s);
  const Field minus = wave_green_frequency(-1, s);
  CHECK(plus.rep(Axis::z) == Rep::physical);
  CHECK(plus.rep(Axis::t) == Rep::spectral);
  // Even in z.
  const auto& g = s.grid;
  double odd = 0.0;
  for (std::size_t iz = 1; iz < 16; ++iz) odd = std::max(odd, std::abs(plus(3, 4, iz, 20) - plus(3, 4, 16 - iz, 20)));
  CHECK(odd <= 1e-15);
  CHECK_THROWS_AS(wave_green_frequency(0, s), std::invalid_argument);
  CHECK(relative_l2(plus, minus) > 0.1);
  (void)g;
}

TEST_CASE("serial and parallel Green's constructions are bit-identical") {
  const auto s = small_spec();
  CHECK(uppe_green(s, Exec::serial).field.values() == uppe_green(s, Exec::parallel).field.values());
  CHECK(wave_green_spectral(-1, s, Exec::serial).values() == wave_green_spectral(-1, s, Exec::parallel).values());
}
