#include <doctest.h>

#include <random>

#include "uppe/projectors.hpp"
#include "uppe/transform.hpp"

using namespace uppe;

namespace {

const GridSpec kGrid = make_grid({4, 4, 8, 16}, {1.0, 1.0, 0.5, 0.25});

Field random_field(const GridSpec& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  Field f(g, all_physical);
  for (auto& v : f.values()) v = cplx(n(rng), n(rng));
  return f;
}

// Random field with no mass on the k_z = 0 or ω = 0 bins.
Field off_axis_field(const GridSpec& g, unsigned seed) {
  Field s = forward_transform(random_field(g, seed), AxisSet::all());
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz)
        for (std::size_t it = 0; it < g.n[3]; ++it)
          if (bin_sign(iz, g.n[2]) == 0 || bin_sign(it, g.n[3]) == 0) s(ix, iy, iz, it) = 0.0;
  return inverse_transform(s, AxisSet::all());
}

Field plane_wave(const GridSpec& g, int jz, int jt) {
  const double kz = jz * g.spectral_step(Axis::z);
  const double w = jt * g.spectral_step(Axis::t);
  Field f(g, all_physical);
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz)
        for (std::size_t it = 0; it < g.n[3]; ++it)
          f(ix, iy, iz, it) = std::polar(1.0, kz * g.coord(Axis::z, iz) - w * g.coord(Axis::t, it));
  return f;
}

}  // namespace

TEST_CASE("heaviside convention") {
  CHECK(heaviside(-3.0) == 0.0);
  CHECK(heaviside(0.0) == 0.5);
  CHECK(heaviside(2.0) == 1.0);
}

TEST_CASE("mask weights") {
  const auto p00 = make_mask(ProjectorKind::P00, kGrid);
  const std::size_t z0 = 4, t0 = 8;
  CHECK(p00.weight(z0 + 1, t0 + 1) == 1.0);
  CHECK(p00.weight(z0, t0 + 1) == 0.5);
  CHECK(p00.weight(z0 + 1, t0) == 0.5);
  CHECK(p00.weight(z0, t0) == 0.25);
  CHECK(p00.weight(z0 - 1, t0 + 1) == 0.0);
  CHECK(make_mask(ProjectorKind::Pplus, kGrid).weight(z0 - 2, t0 - 3) == 1.0);
  CHECK(make_mask(ProjectorKind::Pzplus, kGrid).weight(z0 - 2, t0 + 3) == 1.0);  // Θ(ω)
  CHECK(make_mask(ProjectorKind::Identity, kGrid).weight(z0, t0) == 1.0);

  for (auto k : {ProjectorKind::P00, ProjectorKind::P01, ProjectorKind::P10, ProjectorKind::P11}) {
    const auto m = make_mask(k, kGrid);
    for (std::size_t iz = 0; iz < 8; ++iz)
      for (std::size_t it = 0; it < 16; ++it) {
        const int axes = (bin_sign(iz, 8) == 0) + (bin_sign(it, 16) == 0);
        const double w = m.weight(iz, it);
        if (axes == 0) CHECK((w == 0.0 || w == 1.0));
        if (axes == 1) CHECK((w == 0.0 || w == 0.5));
        if (axes == 2) CHECK(w == 0.25);
      }
  }
}

TEST_CASE("partition of unity is exact at every bin") {
  const auto pp = make_mask(ProjectorKind::Pplus, kGrid), pm = make_mask(ProjectorKind::Pminus, kGrid);
  const auto zp = make_mask(ProjectorKind::Pzplus, kGrid), zm = make_mask(ProjectorKind::Pzminus, kGrid);
  for (std::size_t iz = 0; iz < 8; ++iz)
    for (std::size_t it = 0; it < 16; ++it) {
      CHECK(pp.weight(iz, it) + pm.weight(iz, it) == 1.0);
      CHECK(zp.weight(iz, it) + zm.weight(iz, it) == 1.0);
    }
}

TEST_CASE("field-level projector algebra") {
  const Field u = random_field(kGrid, 1);
  const auto pplus = make_mask(ProjectorKind::Pplus, kGrid);
  const auto pminus = make_mask(ProjectorKind::Pminus, kGrid);
  CHECK(relative_l2(apply(pplus, u) + apply(pminus, u), u) <= 1e-13);

  SUBCASE("off-axis idempotence and orthogonality") {
    const Field v = off_axis_field(kGrid, 2);
    const auto p00 = make_mask(ProjectorKind::P00, kGrid);
    const auto p01 = make_mask(ProjectorKind::P01, kGrid);
    const Field once = apply(p00, v);
    CHECK(relative_l2(apply(p00, once), once) <= 1e-13);
    CHECK(l2_norm(apply(p01, once)) <= 1e-13 * l2_norm(v));
  }
  SUBCASE("axis bins compose to 1/4, not 1/2") {
    const Field w = plane_wave(kGrid, 0, 3);  // k_z = 0, ω > 0
    const auto p00 = make_mask(ProjectorKind::P00, kGrid);
    const Field once = apply(p00, w);
    CHECK(relative_l2(once, 0.5 * w) <= 1e-13);
    CHECK(relative_l2(apply(p00, once), 0.25 * w) <= 1e-13);
  }
  SUBCASE("forward plane wave is kept by P+") {
    const Field w = plane_wave(kGrid, 2, 3);
    CHECK(relative_l2(apply(pplus, w), w) <= 1e-13);
    CHECK(l2_norm(apply(pminus, w)) <= 1e-13 * l2_norm(w));
  }
}

TEST_CASE("decompose") {
  const Field fwd = plane_wave(kGrid, 2, 3), bwd = plane_wave(kGrid, -1, 2);
  const auto d = decompose(fwd + bwd);
  CHECK(relative_l2(d.forward, fwd) <= 1e-13);
  CHECK(relative_l2(d.backward, bwd) <= 1e-13);
  const Field u = random_field(kGrid, 3);
  const auto r = decompose(u);
  CHECK(relative_l2(r.forward + r.backward, u) <= 1e-13);
}

TEST_CASE("projection commutes with a spectral convolution") {
  const Field u = random_field(kGrid, 4), v = random_field(kGrid, 5);
  auto convolve = [](const Field& a, const Field& b) {
    Field s = forward_transform(a, AxisSet::all());
    const Field t = forward_transform(b, AxisSet::all());
    for (std::size_t i = 0; i < s.size(); ++i) s.values()[i] *= t.values()[i];
    return inverse_transform(s, AxisSet::all());
  };
  for (auto k : {ProjectorKind::P00, ProjectorKind::Pplus, ProjectorKind::Pzminus}) {
    const auto m = make_mask(k, kGrid);
    const Field lhs = apply(m, convolve(u, v));
    CHECK(relative_l2(lhs, convolve(apply(m, u), v)) <= 1e-12);
  }
}

TEST_CASE("apply restores representations and keeps x, y untouched") {
  const Field u = forward_transform(random_field(kGrid, 6), AxisSet{Axis::x, Axis::t});
  const Field p = apply(make_mask(ProjectorKind::P10, kGrid), u);
  CHECK(p.rep() == u.rep());
}

TEST_CASE("causality stats") {
  Field f(kGrid, all_physical);
  for (std::size_t ix = 0; ix < 4; ++ix)
    for (std::size_t iy = 0; iy < 4; ++iy)
      for (std::size_t iz = 5; iz < 8; ++iz)
        for (std::size_t it = 9; it < 16; ++it) f(ix, iy, iz, it) = 1.0;
  const auto s = causality_stats(f);
  CHECK(s.energy_pm == 0.0);
  CHECK(s.energy_mp == 0.0);
  CHECK(s.energy_mm == 0.0);
  CHECK(s.energy_pp == doctest::Approx(s.total));
  CHECK(s.total == doctest::Approx(l2_norm(f) * l2_norm(f)));
}

TEST_CASE("projector names round-trip") {
  for (auto k : {ProjectorKind::P00, ProjectorKind::P01, ProjectorKind::P10, ProjectorKind::P11, ProjectorKind::Pplus,
                 ProjectorKind::Pminus, ProjectorKind::Pzplus, ProjectorKind::Pzminus, ProjectorKind::Identity})
    CHECK(projector_kind_from_string(to_string(k)) == k);
}

TEST_CASE("serial and parallel apply are bit-identical") {
  const Field u = random_field(kGrid, 7);
  const auto m = make_mask(ProjectorKind::P11, kGrid);
  CHECK(apply(m, u, Exec::serial).values() == apply(m, u, Exec::parallel).values());
}
