#include "uppe/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "uppe/numerics.hpp"

namespace uppe {

namespace {

Field direct_transform(const Field& f, AxisSet axes, bool inverse) {
  const auto& g = f.grid();
  if (g.size() > kBruteForceLimit)
    throw std::invalid_argument("brute-force transform is limited to " + std::to_string(kBruteForceLimit) +
                                " samples");
  for (Axis a : all_axes) {
    if (!axes.contains(a)) continue;
    const Rep want = inverse ? Rep::spectral : Rep::physical;
    if (f.rep(a) != want)
      throw ContractError(std::string("brute-force transform: axis ") + axis_name(a) + " is in the wrong representation");
  }

  // Phase per axis: spatial e^{∓ikx}, temporal e^{±iωt}; inverse flips both.
  std::array<double, 4> sign{};
  std::array<double, 4> weight{};
  for (Axis a : all_axes) {
    const int i = axis_index(a);
    if (!axes.contains(a)) continue;
    const double forward_sign = a == Axis::t ? 1.0 : -1.0;
    sign[i] = inverse ? -forward_sign : forward_sign;
    weight[i] = inverse ? g.spectral_step(a) / (2.0 * std::numbers::pi) : g.step(a);
  }

  Field out(g, f.rep());
  for (Axis a : all_axes)
    if (axes.contains(a)) out.set_rep(a, inverse ? Rep::physical : Rep::spectral);

  auto in_coord = [&](Axis a, std::size_t j) { return inverse ? g.freq(a, j) : g.coord(a, j); };
  auto out_coord = [&](Axis a, std::size_t j) { return inverse ? g.coord(a, j) : g.freq(a, j); };

  const auto& n = g.n;
  for (std::size_t o0 = 0; o0 < n[0]; ++o0)
    for (std::size_t o1 = 0; o1 < n[1]; ++o1)
      for (std::size_t o2 = 0; o2 < n[2]; ++o2)
        for (std::size_t o3 = 0; o3 < n[3]; ++o3) {
          const std::array<std::size_t, 4> o{o0, o1, o2, o3};
          CompensatedComplexSum acc;
          for (std::size_t i0 = 0; i0 < n[0]; ++i0)
            for (std::size_t i1 = 0; i1 < n[1]; ++i1)
              for (std::size_t i2 = 0; i2 < n[2]; ++i2)
                for (std::size_t i3 = 0; i3 < n[3]; ++i3) {
                  const std::array<std::size_t, 4> in{i0, i1, i2, i3};
                  bool keep = true;
                  double phase = 0.0;
                  double w = 1.0;
                  for (Axis a : all_axes) {
                    const int k = axis_index(a);
                    if (axes.contains(a)) {
                      phase += sign[k] * in_coord(a, in[k]) * out_coord(a, o[k]);
                      w *= weight[k];
                    } else if (in[k] != o[k]) {
                      keep = false;
                      break;
                    }
                  }
                  if (!keep) continue;
                  acc.add(w * f(i0, i1, i2, i3) * std::polar(1.0, phase));
                }
          out(o0, o1, o2, o3) = acc.value();
        }
  return out;
}

}  // namespace

Field brute_force_dft(const Field& f, AxisSet axes) { return direct_transform(f, axes, false); }

Field brute_force_idft(const Field& f, AxisSet axes) { return direct_transform(f, axes, true); }

std::vector<cplx> retarded_quadrature(const Field& source, std::span<const Event> targets, double negligible,
                                      Exec exec) {
  const auto& g = source.grid();
  if (source.rep() != all_physical) throw ContractError("retarded_quadrature needs a fully physical source");
  if (g.size() > kQuadratureLimit)
    throw std::invalid_argument("retarded quadrature is limited to 16^3 x 32 source samples");
  const double dx = g.d[0], dy = g.d[1], dz = g.d[2], dt = g.d[3];
  const double dv = dx * dy * dz;
  const double c = g.c;
  const double t0 = g.coord(Axis::t, 0);
  const std::size_t nt = g.n[3];
  const double self_mean = mean_inverse_distance_box(0.5 * dx, 0.5 * dy, 0.5 * dz);

  // Source points that matter.
  struct Cell {
    std::size_t ix, iy, iz;
  };
  double peak = 0.0;
  for (const auto& v : source.values()) peak = std::max(peak, std::abs(v));
  std::vector<Cell> cells;
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz) {
        double m = 0.0;
        for (std::size_t it = 0; it < nt; ++it) m = std::max(m, std::abs(source(ix, iy, iz, it)));
        if (m > negligible * peak) cells.push_back({ix, iy, iz});
      }

  // Q(cell, τ) with linear interpolation in τ, zero outside the window.
  auto sample = [&](const Cell& s, double tau) -> cplx {
    const double u = (tau - t0) / dt;
    if (u < 0.0 || u > static_cast<double>(nt - 1)) return 0.0;
    const auto j = static_cast<std::size_t>(std::floor(u));
    if (j + 1 >= nt) return source(s.ix, s.iy, s.iz, nt - 1);
    const double f = u - static_cast<double>(j);
    return (1.0 - f) * source(s.ix, s.iy, s.iz, j) + f * source(s.ix, s.iy, s.iz, j + 1);
  };

  std::vector<cplx> out(targets.size());
  const long long nt_targets = static_cast<long long>(targets.size());
#pragma omp parallel for if (exec == Exec::parallel) schedule(dynamic)
  for (long long k = 0; k < nt_targets; ++k) {
    const auto& ev = targets[static_cast<std::size_t>(k)];
    const double x = ev[0], y = ev[1], z = ev[2], t = ev[3];
    const double self_tol = 1e-9 * std::min({dx, dy, dz});
    CompensatedComplexSum acc;
    for (const auto& s : cells) {
      const double rx = x - g.coord(Axis::x, s.ix), ry = y - g.coord(Axis::y, s.iy), rz = z - g.coord(Axis::z, s.iz);
      const double r = std::sqrt(rx * rx + ry * ry + rz * rz);
      if (r < self_tol) {
        acc.add(sample(s, t) * self_mean);
        continue;
      }
      acc.add(sample(s, t - r / c) / r);
    }
    out[static_cast<std::size_t>(k)] = -dv / (4.0 * std::numbers::pi) * acc.value();
  }
  return out;
}

}  // namespace uppe
