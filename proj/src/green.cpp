#include "uppe/green.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "uppe/numerics.hpp"
#include "uppe/projectors.hpp"
#include "uppe/transform.hpp"

namespace uppe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr RepTags kSpaceSpectral{Rep::spectral, Rep::spectral, Rep::spectral, Rep::physical};

std::vector<double> axis_freqs(const GridSpec& g, Axis a) {
  std::vector<double> k(g.count(a));
  for (std::size_t j = 0; j < k.size(); ++j) k[j] = g.freq(a, j);
  return k;
}

// Fills a (k, t) field from value(kx, ky, kz, |k|, t, iz) and returns it still
// spectral in space.
Field fill_kt(const GridSpec& g, Exec exec,
              const std::function<cplx(double, double, double, double, double, std::size_t)>& value) {
  Field f(g, kSpaceSpectral);
  const auto kx = axis_freqs(g, Axis::x), ky = axis_freqs(g, Axis::y), kz = axis_freqs(g, Axis::z);
  std::vector<double> t(g.n[3]);
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = g.coord(Axis::t, j);
  auto data = f.data();
  const long long nx = static_cast<long long>(g.n[0]);
#pragma omp parallel for if (exec == Exec::parallel) schedule(static)
  for (long long ix = 0; ix < nx; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz) {
        const double a = kx[ix], b = ky[iy], cz = kz[iz];
        const double k = std::sqrt(a * a + b * b + cz * cz);
        cplx* row = data.data() + g.index(static_cast<std::size_t>(ix), iy, iz, 0);
        for (std::size_t it = 0; it < t.size(); ++it) row[it] = value(a, b, cz, k, t[it], iz);
      }
  return f;
}

// T(k, t) = ∫_0^∞ s(τ)·g_σ(t − τ) dτ with s(τ) = sin(ckτ)/k (cτ at k = 0):
// the temporal mollification of the causal half of the retarded kernel.
double causal_sine_smoothed(double k, double t, double c, double sigma) {
  auto s = [&](double tau) { return k > 0.0 ? std::sin(c * k * tau) / k : c * tau; };
  if (sigma <= 0.0) return t > 0.0 ? s(t) : 0.0;
  const double lo = std::max(0.0, t - 8.0 * sigma);
  const double hi = t + 8.0 * sigma;
  if (hi <= 0.0) return 0.0;
  double width = 2.0 * sigma;
  if (k > 0.0) width = std::min(width, kPi / (c * k));
  const auto panels = static_cast<std::size_t>(std::ceil((hi - lo) / width));
  static const QuadratureRule ref = gauss_legendre(-1.0, 1.0);
  const double h = (hi - lo) / static_cast<double>(panels);
  CompensatedSum acc;
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = lo + static_cast<double>(p) * h;
    const double mid = a + 0.5 * h;
    for (std::size_t q = 0; q < ref.nodes.size(); ++q) {
      const double tau = mid + 0.5 * h * ref.nodes[q];
      acc.add(0.5 * h * ref.weights[q] * s(tau) * gaussian(t - tau, sigma));
    }
  }
  return acc.value();
}

// Sampled 1D factor of the mollifier along one axis: a Gaussian, or 1/d on the
// origin bin.
std::vector<double> mollifier_profile(const GridSpec& g, Axis a, double sigma) {
  std::vector<double> p(g.count(a), 0.0);
  if (sigma <= 0.0) {
    p[g.origin(a)] = 1.0 / g.step(a);
    return p;
  }
  for (std::size_t j = 0; j < p.size(); ++j) p[j] = gaussian(g.coord(a, j), sigma);
  return p;
}

Field to_physical(Field f, Exec exec) {
  inverse_transform_inplace(f, AxisSet::space(), exec);
  return f;
}

double relative_norm(double num2, double den2) { return den2 > 0.0 ? std::sqrt(num2 / den2) : 0.0; }

}  // namespace

double Mollifier::spatial_damping(double kx, double ky, double kz) const {
  const double e = kx * kx * sigma[0] * sigma[0] + ky * ky * sigma[1] * sigma[1] + kz * kz * sigma[2] * sigma[2];
  return std::exp(-0.5 * e);
}

void GreenSpec::validate() const {
  if (!(mollifier_sigma_r >= 0.0) || !(mollifier_sigma_t >= 0.0))
    throw std::invalid_argument("mollifier widths must be >= 0");
  const double dr = std::max({grid.d[0], grid.d[1], grid.d[2]});
  const double slack = 1.0 - 1e-12;
  if (mollifier_sigma_r > 0.0 && mollifier_sigma_r < 2.0 * dr * slack)
    throw std::invalid_argument("mollifier sigma_r = " + std::to_string(mollifier_sigma_r) +
                                " is below two spatial steps (" + std::to_string(2.0 * dr) + ")");
  if (mollifier_sigma_t > 0.0 && mollifier_sigma_t < 2.0 * grid.d[3] * slack)
    throw std::invalid_argument("mollifier sigma_t = " + std::to_string(mollifier_sigma_t) +
                                " is below two time steps (" + std::to_string(2.0 * grid.d[3]) + ")");
  if (!(light_line_epsilon >= 0.0)) throw std::invalid_argument("light-line epsilon must be >= 0");
}

Mollifier GreenSpec::isotropic() const {
  return {{mollifier_sigma_r, mollifier_sigma_r, mollifier_sigma_r, mollifier_sigma_t}};
}

Mollifier GreenSpec::planar() const { return {{mollifier_sigma_r, mollifier_sigma_r, 0.0, mollifier_sigma_t}}; }

GreenSpec default_green_spec(const GridSpec& grid) {
  GreenSpec s;
  s.grid = grid;
  s.mollifier_sigma_r = 2.0 * std::max({grid.d[0], grid.d[1], grid.d[2]});
  s.mollifier_sigma_t = 2.0 * grid.d[3];
  s.light_line_epsilon = 1e-6 * grid.spectral_step(Axis::t) / grid.c;
  return s;
}

Field mollified_delta(const GridSpec& g, const Mollifier& m) {
  std::array<std::vector<double>, 4> p;
  for (Axis a : all_axes) p[axis_index(a)] = mollifier_profile(g, a, m.sigma_of(a));
  Field f(g, all_physical);
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz) {
        const double s = p[0][ix] * p[1][iy] * p[2][iz];
        for (std::size_t it = 0; it < g.n[3]; ++it) f(ix, iy, iz, it) = s * p[3][it];
      }
  return f;
}

void gate_z(Field& f) {
  if (f.rep(Axis::z) != Rep::physical) throw ContractError("gate_z needs physical z");
  const auto& g = f.grid();
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz) {
        const double w = heaviside_bin(iz, g.n[2]);
        if (w == 1.0) continue;
        for (std::size_t it = 0; it < g.n[3]; ++it) f(ix, iy, iz, it) *= w;
      }
}

Field wave_green_spectral(int sign, const GreenSpec& spec, const Mollifier& m, Exec exec) {
  spec.validate();
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  const auto& g = spec.grid;
  const double c = g.c;
  const double sigma_t = m.sigma_of(Axis::t);

  // T depends on |k| only; tabulate it once per distinct |k|.
  std::map<double, std::vector<double>> table;
  {
    const auto kx = axis_freqs(g, Axis::x), ky = axis_freqs(g, Axis::y), kz = axis_freqs(g, Axis::z);
    for (double a : kx)
      for (double b : ky)
        for (double cz : kz) table.emplace(std::sqrt(a * a + b * b + cz * cz), std::vector<double>{});
    std::vector<std::map<double, std::vector<double>>::iterator> slots;
    for (auto it = table.begin(); it != table.end(); ++it) slots.push_back(it);
    const long long ns = static_cast<long long>(slots.size());
#pragma omp parallel for if (exec == Exec::parallel) schedule(dynamic)
    for (long long s = 0; s < ns; ++s) {
      auto& row = slots[s]->second;
      row.resize(g.n[3]);
      for (std::size_t it = 0; it < g.n[3]; ++it)
        row[it] = causal_sine_smoothed(slots[s]->first, sign * g.coord(Axis::t, it), c, sigma_t);
    }
  }
  Field f(g, kSpaceSpectral);
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz) {
        const double a = g.freq(Axis::x, ix), b = g.freq(Axis::y, iy), cz = g.freq(Axis::z, iz);
        const auto& row = table.at(std::sqrt(a * a + b * b + cz * cz));
        const double damp = -c * m.spatial_damping(a, b, cz);
        for (std::size_t it = 0; it < g.n[3]; ++it) f(ix, iy, iz, it) = damp * row[it];
      }
  return to_physical(std::move(f), exec);
}

Field wave_green_analytic(int sign, const GreenSpec& spec) {
  spec.validate();
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (spec.mollifier_sigma_r <= 0.0 || spec.mollifier_sigma_t <= 0.0)
    throw std::invalid_argument("wave_green_analytic needs both mollifier widths > 0");
  const auto& g = spec.grid;
  const double c = g.c;
  const double a = spec.mollifier_sigma_r / c;
  const double b = spec.mollifier_sigma_t;
  const double s = std::sqrt(a * a + b * b);
  const double v = a * b / s;

  // B(ρ) = g_s(t − ρ/c)Φ(m₊/v) − g_s(t + ρ/c)Φ(m₋/v); E = −B(r)/(4πr).
  auto B = [&](double rho, double t) {
    const double mu = rho / c;
    const double m1 = (mu * b * b + t * a * a) / (s * s);
    const double m2 = (-mu * b * b + t * a * a) / (s * s);
    return gaussian(t - mu, s) * normal_cdf(m1 / v) - gaussian(t + mu, s) * normal_cdf(m2 / v);
  };
  const double h = 1e-4 * c * s;  // B is odd in ρ, so B(h)/h is the r → 0 limit to O(h²)

  Field f(g, all_physical);
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz) {
        const double x = g.coord(Axis::x, ix), y = g.coord(Axis::y, iy), z = g.coord(Axis::z, iz);
        const double r = std::sqrt(x * x + y * y + z * z);
        for (std::size_t it = 0; it < g.n[3]; ++it) {
          const double t = sign * g.coord(Axis::t, it);
          const double ratio = r > 0.0 ? B(r, t) / r : B(h, t) / h;
          f(ix, iy, iz, it) = -ratio / (4.0 * kPi);
        }
      }
  return f;
}

namespace {

enum class Continuation { table, retarded, advanced };

// e^{iβ|z|}/(2iβ)·S(k⊥, ω) on the (k⊥, z, ω) lattice, ungated, with S the
// z-integrated spectrum of the planar mollifier. `table` takes β from the
// branch table (dropping its inactive bins); `retarded`/`advanced` take the
// continuation ω ± i0, i.e. β = ±sign(ω)|β| on propagating bins.
GreenField transverse_green(const GreenSpec& spec, Continuation cont, Exec exec) {
  spec.validate();
  const auto& g = spec.grid;
  const BetaZTable beta(g, spec.branch_policy, spec.light_line_epsilon);

  Field q = mollified_delta(g, spec.planar());
  forward_transform_inplace(q, AxisSet::transverse_time(), exec);
  const double excluded = excluded_spectral_mass(beta, q);

  const std::size_t iz0 = g.origin(Axis::z);
  const double dz = g.step(Axis::z);
  Field out(g, RepTags{Rep::spectral, Rep::spectral, Rep::physical, Rep::spectral});
  const long long nx = static_cast<long long>(g.n[0]);
#pragma omp parallel for if (exec == Exec::parallel) schedule(static)
  for (long long ix = 0; ix < nx; ++ix) {
    const auto uix = static_cast<std::size_t>(ix);
    const double kx = g.freq(Axis::x, uix);
    for (std::size_t iy = 0; iy < g.n[1]; ++iy) {
      const double ky = g.freq(Axis::y, iy);
      for (std::size_t it = 0; it < g.n[3]; ++it) {
        const std::size_t bi = beta.index(uix, iy, it);
        if (beta.singular(bi)) continue;
        cplx bz;
        if (cont == Continuation::table) {
          if (!beta.active(bi)) continue;
          bz = beta.value(bi);
        } else {
          const double omega = g.freq(Axis::t, it);
          const double s2 = omega * omega / (g.c * g.c) - kx * kx - ky * ky;
          const double dir = (cont == Continuation::retarded ? 1.0 : -1.0) * (omega >= 0.0 ? 1.0 : -1.0);
          bz = s2 >= 0.0 ? cplx(dir * std::sqrt(s2), 0.0) : cplx(0.0, std::sqrt(-s2));
        }
        const cplx src = q(uix, iy, iz0, it) * dz;
        for (std::size_t iz = 0; iz < g.n[2]; ++iz) {
          const double z = std::abs(g.coord(Axis::z, iz));
          out(uix, iy, iz, it) = std::exp(kI * bz * z) / (2.0 * kI * bz) * src;
        }
      }
    }
  }
  return {std::move(out), excluded};
}

}  // namespace

Field wave_green_frequency(int sign, const GreenSpec& spec, Exec exec) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  return transverse_green(spec, sign > 0 ? Continuation::retarded : Continuation::advanced, exec).field;
}

GreenField uppe_green(const GreenSpec& spec, Exec exec) {
  auto r = transverse_green(spec, Continuation::table, exec);
  gate_z(r.field);
  inverse_transform_inplace(r.field, AxisSet::transverse_time(), exec);
  return r;
}

namespace {

// E_± (or E_p± when paraxial) in the (k, t) representation.
Field split_kt(const GridSpec& g, const Mollifier& m, int sign, bool paraxial, Exec exec) {
  const double c = g.c;
  const double st = m.sigma_of(Axis::t);
  return fill_kt(g, exec, [&](double kx, double ky, double kz, double k, double t, std::size_t iz) -> cplx {
    if (k == 0.0) return 0.0;
    const double theta = heaviside_bin(iz, g.n[2]);
    if (theta == 0.0) return 0.0;
    const double shape = paraxial ? kz / (k * k) : 1.0 / k;
    const double damp = m.spatial_damping(kx, ky, kz) * std::exp(-0.5 * c * c * k * k * st * st);
    return -0.5 * kI * c * theta * shape * damp * std::exp(-kI * static_cast<double>(sign) * c * k * t);
  });
}

GreenPair split_pair(const GreenSpec& spec, const Mollifier& m, Exec exec, bool paraxial) {
  spec.validate();
  return {to_physical(split_kt(spec.grid, m, +1, paraxial, exec), exec),
          to_physical(split_kt(spec.grid, m, -1, paraxial, exec), exec), 1};
}

}  // namespace

GreenPair uppe_green_split(const GreenSpec& spec, const Mollifier& m, Exec exec) {
  return split_pair(spec, m, exec, false);
}

GreenPair paraxial_green_split(const GreenSpec& spec, const Mollifier& m, Exec exec) {
  return split_pair(spec, m, exec, true);
}

Field paraxial_green(const GreenSpec& spec, const Mollifier& m, Exec exec) {
  auto pair = paraxial_green_split(spec, m, exec);
  Field f = std::move(pair.e_plus);
  f += pair.e_minus;
  gate_z(f);
  return f;
}

Theorem1Report theorem1_residual(const GreenSpec& spec, Exec exec) {
  const auto& g = spec.grid;
  auto green = transverse_green(spec, Continuation::table, exec);
  Field E = std::move(green.field);
  gate_z(E);
  const Field wp = transverse_green(spec, Continuation::retarded, exec).field;
  const Field wm = transverse_green(spec, Continuation::advanced, exec).field;
  const Field sum = wp + wm;

  auto gated = [](Field f) {
    gate_z(f);
    return f;
  };
  const auto pz_plus = make_mask(ProjectorKind::Pzplus, g);
  const auto pz_minus = make_mask(ProjectorKind::Pzminus, g);

  Theorem1Report r;
  r.excluded_mass = green.excluded_mass;
  const Field rhs = gated(apply(pz_plus, sum, exec));
  r.residual = relative_l2(E, rhs, E);

  const double e2 = std::pow(l2_norm(E), 2);
  const auto q = causality_stats(inverse_transform(E - rhs, AxisSet::transverse_time(), exec));
  r.quadrants = {relative_norm(q.energy_pp, e2), relative_norm(q.energy_pm, e2), relative_norm(q.energy_mp, e2),
                 relative_norm(q.energy_mm, e2), relative_norm(std::max(0.0, q.axis_energy()), e2)};

  r.without_projection = relative_l2(E, gated(sum), E);
  r.without_gate = relative_l2(E, apply(pz_plus, sum, exec), E);
  r.kz_projection = relative_l2(
      E, gated(apply(make_mask(ProjectorKind::P00, g), sum, exec) + apply(make_mask(ProjectorKind::P10, g), sum, exec)),
      E);
  r.frequency_split = relative_l2(E, gated(apply(pz_plus, wp, exec) + apply(pz_minus, wm, exec)), E);

  const Field e_phys = inverse_transform(E, AxisSet::transverse_time(), exec);
  const Field box = wave_green_spectral(+1, spec, spec.planar(), exec) + wave_green_spectral(-1, spec, spec.planar(), exec);
  r.time_domain_route = relative_l2(e_phys, gated(apply(pz_plus, box, exec)), e_phys);
  return r;
}

namespace {

// Σ|f|² over the (k, t) representation; the measure cancels in ratios.
double sum_norm2(const Field& f) {
  CompensatedSum s;
  for (const auto& v : f.values()) s.add(std::norm(v));
  return s.value();
}

// ∓c·∫^t ∂_z u dτ per mode: multiply by i·k_z, divide by −i·ω with ω = ±c|k|
// the frequency of the mode e^{∓ick t}.
Field antiderivative_route(const Field& u, int sign, double prefactor_sign) {
  const auto& g = u.grid();
  const double c = g.c;
  Field out(g, u.rep());
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz) {
        const double kx = g.freq(Axis::x, ix), ky = g.freq(Axis::y, iy), kz = g.freq(Axis::z, iz);
        const double k = std::sqrt(kx * kx + ky * ky + kz * kz);
        if (k == 0.0) continue;
        const double omega = sign * c * k;
        for (std::size_t it = 0; it < g.n[3]; ++it)
          out(ix, iy, iz, it) = prefactor_sign * c * (kI * kz * u(ix, iy, iz, it)) / (-kI * omega);
      }
  return out;
}

// ∓c·Σ_{m<n} D_z u(t_m)·dt with D_z the periodic centered difference.
Field cumulative_route(const Field& u, int sign) {
  const auto& g = u.grid();
  const std::size_t nz = g.n[2], nt = g.n[3];
  const double dz = g.step(Axis::z), dt = g.step(Axis::t), c = g.c;
  Field out(g, all_physical);
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < nz; ++iz) {
        const std::size_t up_z = (iz + 1) % nz, dn_z = (iz + nz - 1) % nz;
        cplx acc = 0.0;
        for (std::size_t it = 0; it < nt; ++it) {
          out(ix, iy, iz, it) = -static_cast<double>(sign) * c * acc;
          acc += (u(ix, iy, up_z, it) - u(ix, iy, dn_z, it)) / (2.0 * dz) * dt;
        }
      }
  return out;
}

// Compares the route with the increments of u_p from the first time slice.
double increment_residual(const Field& route, const Field& up) {
  const auto& g = up.grid();
  CompensatedSum num, den;
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz)
        for (std::size_t it = 0; it < g.n[3]; ++it) {
          const cplx target = up(ix, iy, iz, it) - up(ix, iy, iz, 0);
          num.add(std::norm(target - route(ix, iy, iz, it)));
          den.add(std::norm(target));
        }
  return relative_norm(num.value(), den.value());
}

}  // namespace

Field theorem2_physical_route(int sign, const GreenSpec& spec, const Mollifier& m, Exec exec) {
  spec.validate();
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  return cumulative_route(to_physical(split_kt(spec.grid, m, sign, false, exec), exec), sign);
}

Theorem2Report theorem2_residual(const GreenSpec& spec, const Mollifier& m, Exec exec) {
  spec.validate();
  const auto& g = spec.grid;
  Theorem2Report r;
  for (int sign : {+1, -1}) {
    const Field u = split_kt(g, m, sign, false, exec);
    const Field up = split_kt(g, m, sign, true, exec);
    const Field route = antiderivative_route(u, sign, -static_cast<double>(sign));
    const double spectral = relative_norm(sum_norm2(route - up), sum_norm2(up));
    const Field swapped = antiderivative_route(u, sign, static_cast<double>(sign));
    r.sign_swap = std::max(r.sign_swap, relative_norm(sum_norm2(swapped + route), sum_norm2(route)));

    const double physical = increment_residual(cumulative_route(to_physical(u, exec), sign), to_physical(up, exec));
    (sign > 0 ? r.spectral_plus : r.spectral_minus) = spectral;
    (sign > 0 ? r.physical_plus : r.physical_minus) = physical;
  }
  return r;
}

}  // namespace uppe
