#include "uppe/projectors.hpp"

#include <stdexcept>

#include "uppe/numerics.hpp"
#include "uppe/transform.hpp"

namespace uppe {

const char* to_string(ProjectorKind k) {
  switch (k) {
    case ProjectorKind::P00: return "P00";
    case ProjectorKind::P01: return "P01";
    case ProjectorKind::P10: return "P10";
    case ProjectorKind::P11: return "P11";
    case ProjectorKind::Pplus: return "Pplus";
    case ProjectorKind::Pminus: return "Pminus";
    case ProjectorKind::Pzplus: return "Pzplus";
    case ProjectorKind::Pzminus: return "Pzminus";
    case ProjectorKind::Identity: return "Identity";
  }
  return "?";
}

ProjectorKind projector_kind_from_string(const std::string& s) {
  for (auto k : {ProjectorKind::P00, ProjectorKind::P01, ProjectorKind::P10, ProjectorKind::P11,
                 ProjectorKind::Pplus, ProjectorKind::Pminus, ProjectorKind::Pzplus, ProjectorKind::Pzminus,
                 ProjectorKind::Identity})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown projector '" + s + "'");
}

ProjectorMask::ProjectorMask(ProjectorKind kind, const GridSpec& grid, std::vector<double> weights)
    : kind_(kind), grid_(grid), weights_(std::move(weights)) {
  if (weights_.size() != grid_.n[2] * grid_.n[3]) throw std::invalid_argument("mask size mismatch");
}

namespace {

double quadrant(int l, int m, double theta_omega_pos, double theta_omega_neg, double theta_kz_pos,
                double theta_kz_neg) {
  const double w = l == 0 ? theta_omega_pos : theta_omega_neg;
  const double k = m == 0 ? theta_kz_pos : theta_kz_neg;
  return w * k;
}

}  // namespace

ProjectorMask make_mask(ProjectorKind kind, const GridSpec& grid) {
  const std::size_t nz = grid.n[2], nt = grid.n[3];
  std::vector<double> w(nz * nt);
  for (std::size_t iz = 0; iz < nz; ++iz) {
    // Θ(k_z) and Θ(−k_z) per bin; both are 1/2 on the k_z = 0 bin.
    const double kp = heaviside_bin(iz, nz);
    const double km = heaviside(-static_cast<double>(bin_sign(iz, nz)));
    for (std::size_t it = 0; it < nt; ++it) {
      const double op = heaviside_bin(it, nt);
      const double om = heaviside(-static_cast<double>(bin_sign(it, nt)));
      auto P = [&](int l, int m) { return quadrant(l, m, op, om, kp, km); };
      double v = 0.0;
      switch (kind) {
        case ProjectorKind::P00: v = P(0, 0); break;
        case ProjectorKind::P01: v = P(0, 1); break;
        case ProjectorKind::P10: v = P(1, 0); break;
        case ProjectorKind::P11: v = P(1, 1); break;
        case ProjectorKind::Pplus: v = P(0, 0) + P(1, 1); break;
        case ProjectorKind::Pminus: v = P(0, 1) + P(1, 0); break;
        case ProjectorKind::Pzplus: v = P(0, 0) + P(0, 1); break;
        case ProjectorKind::Pzminus: v = P(1, 0) + P(1, 1); break;
        case ProjectorKind::Identity: v = 1.0; break;
      }
      w[iz * nt + it] = v;
    }
  }
  return ProjectorMask(kind, grid, std::move(w));
}

Field apply(const ProjectorMask& mask, const Field& f, Exec exec) {
  if (!(mask.grid() == f.grid())) throw ContractError("mask and field live on different grids");
  AxisSet to_transform;
  for (Axis a : {Axis::z, Axis::t})
    if (f.rep(a) == Rep::physical) to_transform = to_transform.with(a);

  Field out = f;
  if (!to_transform.empty()) forward_transform_inplace(out, to_transform, exec);

  const auto& g = f.grid();
  const std::size_t nz = g.n[2], nt = g.n[3];
  const long long planes = static_cast<long long>(g.n[0] * g.n[1]);
  auto data = out.data();
  const auto& w = mask.weights();
#pragma omp parallel for if (exec == Exec::parallel) schedule(static)
  for (long long p = 0; p < planes; ++p) {
    cplx* base = data.data() + static_cast<std::size_t>(p) * nz * nt;
    for (std::size_t i = 0; i < nz * nt; ++i) base[i] *= w[i];
  }

  if (!to_transform.empty()) inverse_transform_inplace(out, to_transform, exec);
  return out;
}

Decomposition decompose(const Field& f, Exec exec) {
  return {apply(make_mask(ProjectorKind::Pplus, f.grid()), f, exec),
          apply(make_mask(ProjectorKind::Pminus, f.grid()), f, exec)};
}

CausalityStats causality_stats(const Field& f) {
  if (f.rep() != all_physical) throw ContractError("causality_stats needs a fully physical field");
  const auto& g = f.grid();
  CompensatedSum pp, pm, mp, mm, total;
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz) {
        const int sz = bin_sign(iz, g.n[2]);
        for (std::size_t it = 0; it < g.n[3]; ++it) {
          const int st = bin_sign(it, g.n[3]);
          const double e = std::norm(f(ix, iy, iz, it));
          total.add(e);
          if (sz > 0 && st > 0) pp.add(e);
          else if (sz > 0 && st < 0) pm.add(e);
          else if (sz < 0 && st > 0) mp.add(e);
          else if (sz < 0 && st < 0) mm.add(e);
        }
      }
  const double m = f.measure();
  return {pp.value() * m, pm.value() * m, mp.value() * m, mm.value() * m, total.value() * m};
}

}  // namespace uppe
