#include "uppe/propagator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "uppe/numerics.hpp"
#include "uppe/transform.hpp"

namespace uppe {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr RepTags kTransverseSpectral{Rep::spectral, Rep::spectral, Rep::physical, Rep::spectral};

std::size_t nearest_bin(const GridSpec& g, Axis a, double x) {
  const double j = std::round(x / g.step(a)) + static_cast<double>(g.origin(a));
  if (j < 0.0 || j >= static_cast<double>(g.count(a)))
    throw std::invalid_argument(std::string("source center lies outside the grid on axis ") + axis_name(a));
  return static_cast<std::size_t>(j);
}

// Per-axis profile: unit-mass Gaussian (normalized) or unit-peak envelope.
std::vector<double> profile(const GridSpec& g, Axis a, double center, double sigma, bool normalized) {
  std::vector<double> p(g.count(a), 0.0);
  if (sigma <= 0.0) {
    p[nearest_bin(g, a, center)] = normalized ? 1.0 / g.step(a) : 1.0;
    return p;
  }
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double u = (g.coord(a, j) - center) / sigma;
    p[j] = normalized ? gaussian(g.coord(a, j) - center, sigma) : std::exp(-0.5 * u * u);
  }
  return p;
}

}  // namespace

const char* to_string(SourceKind k) {
  switch (k) {
    case SourceKind::point_mollified: return "point_mollified";
    case SourceKind::gaussian_pulse: return "gaussian_pulse";
    case SourceKind::plane_wave_packet: return "plane_wave_packet";
    case SourceKind::custom_grid: return "custom_grid";
  }
  return "?";
}

SourceKind source_kind_from_string(const std::string& s) {
  for (auto k : {SourceKind::point_mollified, SourceKind::gaussian_pulse, SourceKind::plane_wave_packet,
                 SourceKind::custom_grid})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown source kind '" + s + "'");
}

const char* to_string(ConvolutionMode m) { return m == ConvolutionMode::linear ? "linear" : "periodic"; }

const char* to_string(ZRule r) { return r == ZRule::linear_source ? "linear_source" : "point_samples"; }

Field sample_source(const SourceSpec& spec, const GridSpec& g, Exec exec) {
  Field f(g, all_physical);
  if (spec.kind == SourceKind::custom_grid) {
    if (!spec.custom) throw std::invalid_argument("custom_grid source has no samples");
    if (!(spec.custom->grid() == g)) throw std::invalid_argument("custom_grid samples live on a different grid");
    if (spec.custom->rep() != all_physical) throw ContractError("custom_grid samples must be fully physical");
    f = *spec.custom;
    f *= spec.amplitude;
  } else {
    for (double w : spec.width)
      if (!(w >= 0.0)) throw std::invalid_argument("source widths must be >= 0");
    const bool normalized = spec.kind == SourceKind::point_mollified;
    std::array<std::vector<double>, 4> p;
    for (Axis a : all_axes)
      p[axis_index(a)] = profile(g, a, spec.center[axis_index(a)], spec.width[axis_index(a)], normalized);
    const long long nx = static_cast<long long>(g.n[0]);
#pragma omp parallel for if (exec == Exec::parallel) schedule(static)
    for (long long ix = 0; ix < nx; ++ix)
      for (std::size_t iy = 0; iy < g.n[1]; ++iy)
        for (std::size_t iz = 0; iz < g.n[2]; ++iz) {
          const double s = spec.amplitude * p[0][ix] * p[1][iy] * p[2][iz];
          const double z = g.coord(Axis::z, iz) - spec.center[2];
          for (std::size_t it = 0; it < g.n[3]; ++it) {
            const double t = g.coord(Axis::t, it) - spec.center[3];
            const double phase = spec.k0 * z - spec.omega0 * t;
            cplx carrier = 1.0;
            if (spec.kind == SourceKind::gaussian_pulse) carrier = std::cos(phase);
            if (spec.kind == SourceKind::plane_wave_packet) carrier = std::exp(kI * phase);
            f(static_cast<std::size_t>(ix), iy, iz, it) = s * p[3][it] * carrier;
          }
        }
  }
  if (spec.direction_filter) f = apply(make_mask(*spec.direction_filter, g), f, exec);
  return f;
}

std::size_t PropagatorSpec::substeps() const {
  if (!(dz > 0.0)) throw std::invalid_argument("march step dz must be > 0");
  const double ratio = grid.step(Axis::z) / dz;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * ratio)
    throw std::invalid_argument("march step dz must divide the grid z step");
  return static_cast<std::size_t>(n);
}

Propagator::Propagator(const PropagatorSpec& spec)
    : spec_(spec), beta_(spec.grid, spec.branch_policy, spec.light_line_epsilon) {
  spec_.substeps();
}

void Propagator::step(SpectralSlice& e, const SpectralSlice& q, double dz, Exec exec) const {
  if (e.size() != beta_.size() || q.size() != beta_.size()) throw std::invalid_argument("slice size mismatch");
  const long long n = static_cast<long long>(e.size());
#pragma omp parallel for if (exec == Exec::parallel) schedule(static)
  for (long long i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    if (!beta_.active(u)) {
      e[u] = 0.0;
      continue;
    }
    const cplx ib = kI * beta_.value(u);
    e[u] = std::exp(ib * dz) * e[u] + dz * phi1(ib * dz) * q[u] / (2.0 * ib);
  }
}

namespace {

// Copies the z slice iz of a transverse-spectral field into a (kx, ky, ω) slice.
void gather(const Field& f, std::size_t iz, SpectralSlice& out) {
  const auto& g = f.grid();
  std::size_t k = 0;
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t it = 0; it < g.n[3]; ++it) out[k++] = f(ix, iy, iz, it);
}

void scatter(const SpectralSlice& s, std::size_t iz, Field& f) {
  const auto& g = f.grid();
  std::size_t k = 0;
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t it = 0; it < g.n[3]; ++it) f(ix, iy, iz, it) = s[k++];
}

Field transverse_spectrum(const Field& source, const GridSpec& grid, Exec exec) {
  if (!(source.grid() == grid)) throw std::invalid_argument("source lives on a different grid");
  if (source.rep(Axis::z) != Rep::physical) throw ContractError("source must be physical in z");
  Field q = source;
  AxisSet axes;
  for (Axis a : {Axis::x, Axis::y, Axis::t})
    if (q.rep(a) == Rep::physical) axes = axes.with(a);
  if (!axes.empty()) forward_transform_inplace(q, axes, exec);
  return q;
}

}  // namespace

MarchResult Propagator::march(const Field& source, Exec exec) const {
  const auto& g = spec_.grid;
  const Field q = transverse_spectrum(source, g, exec);
  const std::size_t nz = g.n[2], m = spec_.substeps();
  const double h = g.step(Axis::z) / static_cast<double>(m);

  MarchResult r;
  r.singular_bins = beta_.singular_count();
  for (std::size_t i = 0; i < beta_.size(); ++i) r.inactive_bins += beta_.active(i) ? 0 : 1;
  r.excluded_mass = excluded_spectral_mass(beta_, q);

  // Per-bin step factors for the substep h.
  const std::size_t n = beta_.size();
  std::vector<cplx> decay(n, 0.0), gain(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!beta_.active(i)) continue;
    const cplx ib = kI * beta_.value(i);
    decay[i] = std::exp(ib * h);
    gain[i] = h * phi1(ib * h) / (2.0 * ib);
  }

  Field out(g, kTransverseSpectral);
  SpectralSlice e(n, 0.0), q0(n), q1(n);
  gather(q, 0, q1);
  for (std::size_t iz = 0; iz < nz; ++iz) {
    scatter(e, iz, out);
    if (iz + 1 == nz) break;
    q0.swap(q1);
    gather(q, iz + 1, q1);
    for (std::size_t s = 0; s < m; ++s) {
      const double f = static_cast<double>(s) / static_cast<double>(m);
      const long long nn = static_cast<long long>(n);
#pragma omp parallel for if (exec == Exec::parallel) schedule(static)
      for (long long i = 0; i < nn; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const cplx qs = (1.0 - f) * q0[u] + f * q1[u];
        e[u] = decay[u] * e[u] + gain[u] * qs;
      }
    }
  }
  inverse_transform_inplace(out, AxisSet::transverse_time(), exec);
  r.field = std::move(out);
  return r;
}

MarchResult Propagator::solve_convolution(const Field& source, ConvolutionMode mode, ZRule rule, Exec exec) const {
  const auto& g = spec_.grid;
  const Field q = transverse_spectrum(source, g, exec);
  const std::size_t nz = g.n[2];
  const double dz = g.step(Axis::z);

  MarchResult r;
  r.singular_bins = beta_.singular_count();
  for (std::size_t i = 0; i < beta_.size(); ++i) r.inactive_bins += beta_.active(i) ? 0 : 1;
  r.excluded_mass = excluded_spectral_mass(beta_, q);

  Field out(g, kTransverseSpectral);
  const long long nx = static_cast<long long>(g.n[0]);
#pragma omp parallel for if (exec == Exec::parallel) schedule(static)
  for (long long ix = 0; ix < nx; ++ix) {
    const auto uix = static_cast<std::size_t>(ix);
    std::vector<cplx> w(nz), col(nz);
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t it = 0; it < g.n[3]; ++it) {
        const std::size_t bi = beta_.index(uix, iy, it);
        if (!beta_.active(bi)) continue;
        const cplx ib = kI * beta_.value(bi);
        const cplx a = ib * dz;
        cplx upper_half = 0.0;
        if (rule == ZRule::linear_source) {
          // Weight of the hat function centered k slices below the target.
          w[0] = dz * phi2(a) / (2.0 * ib);
          const cplx full = dz * (phi2(a) + phi2(-a)) / (2.0 * ib);
          for (std::size_t k = 1; k < nz; ++k) w[k] = std::exp(a * static_cast<double>(k)) * full;
          upper_half = dz * phi2(-a) / (2.0 * ib);
        } else {
          w[0] = 0.5 * dz / (2.0 * ib);
          for (std::size_t k = 1; k < nz; ++k) w[k] = std::exp(a * static_cast<double>(k)) * dz / (2.0 * ib);
        }
        for (std::size_t iz = 0; iz < nz; ++iz) col[iz] = q(uix, iy, iz, it);
        for (std::size_t iz = 0; iz < nz; ++iz) {
          CompensatedComplexSum acc;
          for (std::size_t jz = 0; jz < nz; ++jz) {
            if (mode == ConvolutionMode::linear) {
              if (jz > iz) break;
              // On the open line the bottom hat keeps only its upper half,
              // since the source vanishes below the grid.
              if (jz == 0 && rule == ZRule::linear_source) {
                if (iz > 0) acc.add(std::exp(a * static_cast<double>(iz)) * upper_half * col[0]);
                continue;
              }
            }
            acc.add(w[(iz + nz - jz) % nz] * col[jz]);
          }
          out(uix, iy, iz, it) = acc.value();
        }
      }
  }
  inverse_transform_inplace(out, AxisSet::transverse_time(), exec);
  r.field = std::move(out);
  return r;
}

DirectionReport source_direction_report(const Field& source, Exec exec) {
  const auto& g = source.grid();
  Field s = source;
  AxisSet axes;
  for (Axis a : {Axis::z, Axis::t})
    if (s.rep(a) == Rep::physical) axes = axes.with(a);
  if (!axes.empty()) forward_transform_inplace(s, axes, exec);

  const auto m00 = make_mask(ProjectorKind::P00, g), m01 = make_mask(ProjectorKind::P01, g);
  const auto m10 = make_mask(ProjectorKind::P10, g), m11 = make_mask(ProjectorKind::P11, g);
  CompensatedSum e00, e01, e10, e11, total;
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz)
        for (std::size_t it = 0; it < g.n[3]; ++it) {
          const double e = std::norm(s(ix, iy, iz, it));
          total.add(e);
          e00.add(m00.weight(iz, it) * e);
          e01.add(m01.weight(iz, it) * e);
          e10.add(m10.weight(iz, it) * e);
          e11.add(m11.weight(iz, it) * e);
        }
  DirectionReport r;
  const double t = total.value();
  if (t <= 0.0) return r;
  r.p00 = e00.value() / t;
  r.p01 = e01.value() / t;
  r.p10 = e10.value() / t;
  r.p11 = e11.value() / t;
  r.forward = r.p00 + r.p11;
  r.backward = r.p01 + r.p10;
  return r;
}

}  // namespace uppe
