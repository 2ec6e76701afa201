#include "uppe/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "uppe/green.hpp"
#include "uppe/projectors.hpp"
#include "uppe/propagator.hpp"
#include "uppe/transform.hpp"
#include "uppe/verification.hpp"

namespace uppe {

const char* to_string(Bound b) {
  switch (b) {
    case Bound::at_most: return "<=";
    case Bound::greater_than: return ">";
    case Bound::less_than: return "<";
    case Bound::within: return "within";
  }
  return "?";
}

void OracleReport::evaluate() {
  if (!std::isfinite(residual)) {
    passed = false;
    return;
  }
  switch (bound) {
    case Bound::at_most: passed = residual <= tolerance; break;
    case Bound::greater_than: passed = residual > tolerance; break;
    case Bound::less_than: passed = residual < tolerance; break;
    case Bound::within: passed = residual >= lower && residual <= tolerance; break;
  }
}

nlohmann::ordered_json OracleReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["criterion"] = criterion;
  j["acceptance"] = acceptance();
  j["bound"] = to_string(bound);
  if (bound == Bound::within) j["lower"] = lower;
  j["tolerance"] = tolerance;
  if (timing)
    j["residual"] = "see timing.json";
  else if (std::isfinite(residual))
    j["residual"] = residual;
  else
    j["residual"] = nullptr;
  j["passed"] = passed;
  j["details"] = details;
  return j;
}

namespace {

using Clock = std::chrono::steady_clock;
using json = nlohmann::ordered_json;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

OracleReport gate(std::string name, int criterion, double residual, double tolerance, Bound bound = Bound::at_most) {
  OracleReport r;
  r.name = std::move(name);
  r.criterion = criterion;
  r.residual = residual;
  r.tolerance = tolerance;
  r.bound = bound;
  r.evaluate();
  return r;
}

OracleReport range_gate(std::string name, int criterion, double residual, double lower, double upper) {
  OracleReport r = gate(std::move(name), criterion, residual, upper, Bound::within);
  r.lower = lower;
  r.evaluate();
  return r;
}

json grid_json(const GridSpec& g) {
  return {{"n", g.n}, {"d", g.d}, {"c", g.c}};
}

Field random_field(const GridSpec& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Field f(g, all_physical);
  for (auto& v : f.values()) {
    const double re = normal(rng);
    v = cplx(re, normal(rng));
  }
  return f;
}

// Acceptance grids. The Green's function identity keeps the box fixed and refines 16 → 24 per
// axis; the time step is incommensurate with the space step so that no
// lattice line lies on the light cone.
GreenSpec theorem1_spec(std::size_t n) {
  const double scale = 16.0 / static_cast<double>(n);
  const auto g = make_grid({n, n, n, 2 * n}, {scale, scale, scale, 0.47 * scale});
  GreenSpec s = default_green_spec(g);
  s.mollifier_sigma_r = 2.0;
  s.mollifier_sigma_t = 1.0;
  return s;
}

GreenSpec theorem2_spec(std::size_t nt) {
  const double window = 6.0;
  const auto g = make_grid({16, 16, 16, nt}, {1.0, 1.0, 0.5, window / static_cast<double>(nt)});
  GreenSpec s = default_green_spec(g);
  s.mollifier_sigma_r = 4.0;
  s.mollifier_sigma_t = 1.0;
  return s;
}

json theorem1_json(const Theorem1Report& r) {
  return {{"residual", r.residual},
          {"frequency_split", r.frequency_split},
          {"without_projection", r.without_projection},
          {"without_gate", r.without_gate},
          {"kz_projection", r.kz_projection},
          {"time_domain_route", r.time_domain_route},
          {"quadrants",
           {{"z+t+", r.quadrants.pp},
            {"z+t-", r.quadrants.pm},
            {"z-t+", r.quadrants.mp},
            {"z-t-", r.quadrants.mm},
            {"axes", r.quadrants.axes}}},
          {"excluded_mass", r.excluded_mass}};
}

// ‖a(·, s_a·j) − b(·, s_b·j)‖ over the first `n` shared time slices.
double shared_time_distance(const Field& a, const Field& b, std::size_t sa, std::size_t sb, std::size_t n) {
  const auto& g = a.grid();
  double s = 0.0;
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz)
        for (std::size_t j = 0; j < n; ++j) s += std::norm(a(ix, iy, iz, sa * j) - b(ix, iy, iz, sb * j));
  return std::sqrt(s);
}

double slice_error(const Field& a, const Field& b, std::size_t iz) {
  const auto& g = a.grid();
  double num = 0.0, den = 0.0;
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t it = 0; it < g.n[3]; ++it) {
        num += std::norm(a(ix, iy, iz, it) - b(ix, iy, iz, it));
        den += std::norm(b(ix, iy, iz, it));
      }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

PropagatorSpec propagator_spec(const GridSpec& g, std::size_t substeps) {
  return {g, BranchPolicy::evanescent_decay, 1e-6 * g.spectral_step(Axis::t) / g.c,
          g.step(Axis::z) / static_cast<double>(substeps)};
}

}  // namespace

std::vector<OracleReport> check_theorem1(const CheckOptions& o) {
  const auto s16 = theorem1_spec(16);
  const auto t0 = Clock::now();
  const auto r16 = theorem1_residual(s16, o.exec);
  const double runtime = seconds_since(t0);
  const auto r24 = theorem1_residual(theorem1_spec(24), o.exec);

  std::vector<OracleReport> out;
  auto main = gate("theorem1.residual", 1, r16.residual, 1e-8);
  main.details = {{"grid", grid_json(s16.grid)}, {"sigma_r", s16.mollifier_sigma_r},
                  {"sigma_t", s16.mollifier_sigma_t}, {"epsilon", s16.light_line_epsilon},
                  {"n16", theorem1_json(r16)}, {"n24", theorem1_json(r24)}};
  out.push_back(std::move(main));

  auto refine = gate("theorem1.refinement", 1, r16.residual > 0.0 ? r24.residual / r16.residual : 0.0, 1.0,
                     Bound::less_than);
  refine.details = {{"residual_16", r16.residual}, {"residual_24", r24.residual}};
  out.push_back(std::move(refine));

  auto timing = gate("theorem1.runtime", 1, runtime, 60.0);
  timing.timing = true;
  timing.details = {{"unit", "s"}};
  out.push_back(std::move(timing));

  if (!o.acceptance_only) {
    auto corrected = gate("theorem1.frequency_split_form", 0, std::max(r16.frequency_split, r24.frequency_split), 1e-8);
    corrected.details = {{"n16", r16.frequency_split}, {"n24", r24.frequency_split}};
    out.push_back(std::move(corrected));
    out.push_back(gate("theorem1.without_projection_is_order_one", 0, r16.without_projection, 0.1,
                       Bound::greater_than));
    out.push_back(gate("theorem1.without_gate_is_order_one", 0, r16.without_gate, 0.1, Bound::greater_than));
  }
  return out;
}

std::vector<OracleReport> check_theorem2(const CheckOptions& o) {
  const auto s64 = theorem2_spec(64);
  const auto r64 = theorem2_residual(s64, o.exec);
  std::vector<OracleReport> out;

  auto spectral = gate("theorem2.spectral", 2, r64.spectral(), 1e-10);
  spectral.details = {{"plus", r64.spectral_plus}, {"minus", r64.spectral_minus}};
  out.push_back(std::move(spectral));
  out.push_back(gate("theorem2.sign_swap", 2, r64.sign_swap, 0.0));

  auto physical = gate("theorem2.physical", 2, r64.physical(), 0.05);
  physical.details = {{"grid", grid_json(s64.grid)}, {"sigma_r", s64.mollifier_sigma_r},
                      {"sigma_t", s64.mollifier_sigma_t}, {"plus", r64.physical_plus},
                      {"minus", r64.physical_minus}};
  out.push_back(std::move(physical));

  // Refinement: the route's own first-order error halves with dt; the
  // comparison with E_p also carries a dt-independent z-difference floor.
  const auto s128 = theorem2_spec(128), s256 = theorem2_spec(256);
  double worst = 2.0;
  json per_sign = json::object();
  for (int sign : {+1, -1}) {
    const Field a = theorem2_physical_route(sign, s64, s64.isotropic(), o.exec);
    const Field b = theorem2_physical_route(sign, s128, s128.isotropic(), o.exec);
    const Field c = theorem2_physical_route(sign, s256, s256.isotropic(), o.exec);
    const double ratio = shared_time_distance(a, b, 1, 2, 64) / shared_time_distance(b, c, 2, 4, 64);
    per_sign[sign > 0 ? "plus" : "minus"] = ratio;
    if (std::abs(ratio - 2.0) > std::abs(worst - 2.0)) worst = ratio;
  }
  const auto r128 = theorem2_residual(s128, o.exec);
  auto halving = range_gate("theorem2.halving", 2, worst, 1.8, 2.2);
  halving.details = {{"self_convergence", per_sign},
                     {"physical_64", r64.physical()},
                     {"physical_128", r128.physical()},
                     {"raw_ratio", r64.physical() / r128.physical()}};
  out.push_back(std::move(halving));
  return out;
}

std::vector<OracleReport> check_projector_algebra(const CheckOptions&) {
  const auto g = theorem1_spec(16).grid;
  const std::size_t nz = g.n[2], nt = g.n[3];
  const ProjectorKind quads[] = {ProjectorKind::P00, ProjectorKind::P01, ProjectorKind::P10, ProjectorKind::P11};
  const ProjectorKind all[] = {ProjectorKind::P00,   ProjectorKind::P01,    ProjectorKind::P10,
                               ProjectorKind::P11,   ProjectorKind::Pplus,  ProjectorKind::Pminus,
                               ProjectorKind::Pzplus, ProjectorKind::Pzminus};
  std::vector<ProjectorMask> q, m;
  for (auto k : quads) q.push_back(make_mask(k, g));
  for (auto k : all) m.push_back(make_mask(k, g));
  const auto& pplus = m[4];
  const auto& pminus = m[5];
  const auto& pzplus = m[6];
  const auto& pzminus = m[7];

  double partition = 0.0, off_axis = 0.0, axis = 0.0;
  std::size_t axis_bins = 0;
  for (std::size_t iz = 0; iz < nz; ++iz)
    for (std::size_t it = 0; it < nt; ++it) {
      double quad_sum = 0.0;
      for (const auto& p : q) quad_sum += p.weight(iz, it);
      partition = std::max({partition, std::abs(quad_sum - 1.0),
                            std::abs(pplus.weight(iz, it) + pminus.weight(iz, it) - 1.0),
                            std::abs(pzplus.weight(iz, it) + pzminus.weight(iz, it) - 1.0)});

      const int skz = bin_sign(iz, nz), sw = bin_sign(it, nt);
      if (skz != 0 && sw != 0) {
        for (const auto& p : m) {
          const double w = p.weight(iz, it);
          off_axis = std::max(off_axis, std::abs(w * w - w));
        }
        for (std::size_t a = 0; a < 4; ++a)
          for (std::size_t b = a + 1; b < 4; ++b)
            off_axis = std::max(off_axis, std::abs(q[a].weight(iz, it) * q[b].weight(iz, it)));
        off_axis = std::max({off_axis, std::abs(pplus.weight(iz, it) * pminus.weight(iz, it)),
                             std::abs(pzplus.weight(iz, it) * pzminus.weight(iz, it))});
        continue;
      }
      // Axis bins: P_lm = Θ(±ω)Θ(±k_z) with Θ(0) = 1/2, so one zero factor
      // gives 1/2 (or 0) and P² = 1/4; the origin gives 1/4 and 1/16.
      ++axis_bins;
      for (std::size_t l = 0; l < 2; ++l)
        for (std::size_t mm = 0; mm < 2; ++mm) {
          const double fw = sw == 0 ? 0.5 : ((l == 0 ? sw : -sw) > 0 ? 1.0 : 0.0);
          const double fk = skz == 0 ? 0.5 : ((mm == 0 ? skz : -skz) > 0 ? 1.0 : 0.0);
          const double predicted = fw * fk;
          const double w = q[2 * l + mm].weight(iz, it);
          axis = std::max({axis, std::abs(w - predicted), std::abs(w * w - predicted * predicted)});
        }
    }

  std::vector<OracleReport> out;
  auto p = gate("projectors.partition_of_unity", 3, partition, 0.0);
  p.details = {{"bins", nz * nt}};
  out.push_back(std::move(p));
  auto off = gate("projectors.off_axis_idempotence_orthogonality", 3, off_axis, 0.0);
  off.details = {{"bins", nz * nt - axis_bins}};
  out.push_back(std::move(off));
  auto ax = gate("projectors.axis_bin_weights", 3, axis, 0.0);
  ax.details = {{"bins", axis_bins}, {"single_axis_weight", 0.5}, {"single_axis_square", 0.25},
                {"origin_weight", 0.25}, {"origin_square", 0.0625}};
  out.push_back(std::move(ax));
  return out;
}

std::vector<OracleReport> check_non_causality(const CheckOptions& o) {
  const auto s = theorem1_spec(16);
  const auto green = uppe_green(s, o.exec);
  const auto st = causality_stats(green.field);
  const double fraction = st.total > 0.0 ? st.energy_pm / st.total : 0.0;
  auto r = gate("non_causality.z_pos_t_neg_fraction", 4, fraction, 0.1, Bound::greater_than);
  r.details = {{"energy_pp", st.energy_pp / st.total}, {"energy_pm", st.energy_pm / st.total},
               {"energy_mp", st.energy_mp / st.total}, {"energy_mm", st.energy_mm / st.total},
               {"axes", st.axis_energy() / st.total}, {"excluded_mass", green.excluded_mass}};
  return {std::move(r)};
}

std::vector<OracleReport> check_forward_preservation(const CheckOptions& o) {
  const auto g = theorem1_spec(16).grid;
  const Propagator prop(propagator_spec(g, 1));
  const auto pplus = make_mask(ProjectorKind::Pplus, g);
  double worst = 0.0;
  json per_seed = json::array();
  for (std::uint64_t k = 0; k < 20; ++k) {
    const Field q = random_field(g, o.seed + k);
    const Field lhs = prop.solve_convolution(apply(pplus, q, o.exec), ConvolutionMode::periodic,
                                             ZRule::linear_source, o.exec)
                          .field;
    const Field e = prop.solve_convolution(q, ConvolutionMode::periodic, ZRule::linear_source, o.exec).field;
    const double r = relative_l2(lhs, apply(pplus, e, o.exec), e);
    per_seed.push_back(r);
    worst = std::max(worst, r);
  }
  auto r = gate("forward_preservation.commutation", 5, worst, 1e-10);
  r.details = {{"seeds", 20}, {"first_seed", o.seed}, {"mode", to_string(ConvolutionMode::periodic)},
               {"per_seed", per_seed}};
  return {std::move(r)};
}

std::vector<OracleReport> check_two_route(const CheckOptions& o) {
  const auto g = make_grid({16, 16, 16, 32}, {2.0, 2.0, 0.5, 0.9});
  SourceSpec src;
  src.kind = SourceKind::point_mollified;
  src.width = {4.0, 4.0, 2.0, 2.0};
  const Field q = sample_source(src, g, o.exec);
  const std::size_t top = g.n[2] - 1;

  std::vector<double> err;
  for (std::size_t m : {1u, 2u, 4u, 8u}) {
    const Propagator prop(propagator_spec(g, m));
    const auto ref = prop.solve_convolution(q, ConvolutionMode::linear, ZRule::linear_source, o.exec);
    const auto marched = prop.march(q, o.exec);
    err.push_back(slice_error(marched.field, ref.field, top));
  }
  std::vector<OracleReport> out;
  auto e = gate("two_route.z_final_error", 6, err[2], 0.01);
  e.details = {{"grid", grid_json(g)}, {"substeps", {1, 2, 4, 8}}, {"errors", err}};
  out.push_back(std::move(e));
  json ratios = json::array();
  double worst = 2.0;
  for (std::size_t i = 0; i + 1 < err.size(); ++i) {
    const double r = err[i] / err[i + 1];
    ratios.push_back(r);
    if (std::abs(r - 2.0) > std::abs(worst - 2.0)) worst = r;
  }
  auto rate = range_gate("two_route.convergence_ratio", 6, worst, 1.5, 3.0);
  rate.details = {{"ratios", ratios}};
  out.push_back(std::move(rate));
  return out;
}

std::vector<OracleReport> check_oracles(const CheckOptions& o) {
  std::vector<OracleReport> out;
  {
    const auto g = make_grid({4, 4, 4, 4}, {0.7, 1.1, 0.9, 0.3});
    const Field f = random_field(g, o.seed);
    const Field fast = forward_transform(f, AxisSet::all(), o.exec);
    const Field slow = brute_force_dft(f, AxisSet::all());
    const double fwd = relative_l2(fast, slow);
    const double inv = relative_l2(inverse_transform(slow, AxisSet::all(), o.exec), brute_force_idft(slow, AxisSet::all()));
    auto r = gate("oracles.brute_force_dft", 7, std::max(fwd, inv), 1e-12);
    r.details = {{"forward", fwd}, {"inverse", inv}};
    out.push_back(std::move(r));
  }
  {
    const auto g = theorem1_spec(16).grid;
    const Field f = random_field(g, o.seed + 1);
    const double a = l2_norm(f);
    const double b = l2_norm(forward_transform(f, AxisSet::all(), o.exec));
    out.push_back(gate("oracles.plancherel", 7, std::abs(a - b) / a, 1e-10));
  }
  {
    // Forward-filtered flash: the P00 part of a plane-wave packet sampled on
    // the quadrature grid, embedded in a grid large enough that the periodic
    // images of the convolution route stay out of the comparison cone.
    const double dt = 0.5;
    const auto small = make_grid({16, 16, 16, 32}, {1.0, 1.0, 1.0, dt});
    const auto big = make_grid({48, 48, 16, 96}, {1.0, 1.0, 1.0, dt});
    SourceSpec src;
    src.kind = SourceKind::plane_wave_packet;
    src.width = {2.0, 2.0, 2.0, 2.0};
    src.center = {0.0, 0.0, -3.0, -3.0};
    src.k0 = 1.0;
    src.omega0 = 1.0;
    src.direction_filter = ProjectorKind::P00;
    const Field qs = sample_source(src, small, o.exec);
    Field qb(big, all_physical);
    const std::size_t ox = 16, ot = 32;
    for (std::size_t a = 0; a < 16; ++a)
      for (std::size_t b = 0; b < 16; ++b)
        for (std::size_t c = 0; c < 16; ++c)
          for (std::size_t d = 0; d < 32; ++d) qb(a + ox, b + ox, c, d + ot) = qs(a, b, c, d);
    const Propagator prop(propagator_spec(big, 1));
    const Field e = prop.solve_convolution(qb, ConvolutionMode::linear, ZRule::point_samples, o.exec).field;

    std::vector<Event> events;
    std::vector<std::array<std::size_t, 4>> at;
    for (std::size_t ix = 20; ix <= 28; ++ix)
      for (std::size_t iy = 20; iy <= 28; ++iy)
        for (std::size_t iz = 9; iz < 16; ++iz)
          for (std::size_t it = 49; it < 64; ++it) {
            at.push_back({ix, iy, iz, it});
            events.push_back({big.coord(Axis::x, ix), big.coord(Axis::y, iy), big.coord(Axis::z, iz),
                              big.coord(Axis::t, it)});
          }
    const auto r = retarded_quadrature(qs, events, 1e-12, o.exec);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < at.size(); ++k) {
      num += std::norm(e(at[k][0], at[k][1], at[k][2], at[k][3]) - r[k]);
      den += std::norm(r[k]);
    }
    auto flash = gate("oracles.retarded_flash", 7, std::sqrt(num / den), 0.05);
    flash.details = {{"source_grid", grid_json(small)}, {"convolution_grid", grid_json(big)},
                     {"filter", to_string(ProjectorKind::P00)}, {"z_rule", to_string(ZRule::point_samples)},
                     {"cone", {{"x", {-4, 4}}, {"y", {-4, 4}}, {"z", {1, 7}}, {"t", {0.5, 7.5}}}},
                     {"targets", at.size()}};
    out.push_back(std::move(flash));
  }
  return out;
}

namespace {

// Smallest share of strictly-k_z<0 mass over ω shells holding more than
// 1e−12 of the largest shell. `f` is spectral in z and t.
json backward_share(const Field& f) {
  const auto& g = f.grid();
  std::vector<double> total(g.n[3], 0.0), backward(g.n[3], 0.0);
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz)
        for (std::size_t it = 0; it < g.n[3]; ++it) {
          const double e = std::norm(f(ix, iy, iz, it));
          total[it] += e;
          if (bin_sign(iz, g.n[2]) < 0) backward[it] += e;
        }
  const double peak = *std::max_element(total.begin(), total.end());
  double lowest = 1.0;
  std::size_t shells = 0;
  for (std::size_t it = 0; it < g.n[3]; ++it) {
    if (total[it] <= 1e-12 * peak) continue;
    ++shells;
    lowest = std::min(lowest, backward[it] / total[it]);
  }
  return {{"min_fraction", lowest}, {"populated_shells", shells}};
}

}  // namespace

std::vector<OracleReport> check_remark1(const CheckOptions& o) {
  // A long z box so that k_z = ±ω/c is resolved from k_z = 0 on the lowest
  // nonzero ω shell.
  const auto g = make_grid({16, 16, 64, 32}, {1.0, 1.0, 1.0, 0.47});
  GreenSpec s = default_green_spec(g);
  s.mollifier_sigma_r = 2.0;
  s.mollifier_sigma_t = 1.0;
  double worst = 1.0;
  json frequency = json::object(), time_slices = json::object();
  for (int sign : {+1, -1}) {
    const char* key = sign > 0 ? "plus" : "minus";
    const auto share = backward_share(forward_transform(wave_green_frequency(sign, s, o.exec), AxisSet{Axis::z}, o.exec));
    worst = std::min(worst, share["min_fraction"].get<double>());
    frequency[key] = share;
    time_slices[key] = backward_share(forward_transform(wave_green_spectral(sign, s, o.exec), AxisSet::all(), o.exec));
  }
  auto r = gate("remark1.backward_kz_fraction", 8, worst, 0.3, Bound::greater_than);
  r.details = {{"grid", grid_json(g)}, {"frequency_lattice", frequency}, {"time_slice_route", time_slices}};
  return {std::move(r)};
}

std::vector<OracleReport> check_invariants(const CheckOptions& o) {
  std::vector<OracleReport> out;
  const auto s = theorem1_spec(16);
  const auto& g = s.grid;
  const auto green = uppe_green(s, o.exec);
  const Field& E = green.field;

  {
    double below = 0.0;
    for (std::size_t ix = 0; ix < g.n[0]; ++ix)
      for (std::size_t iy = 0; iy < g.n[1]; ++iy)
        for (std::size_t iz = 0; iz < g.origin(Axis::z); ++iz)
          for (std::size_t it = 0; it < g.n[3]; ++it) below = std::max(below, std::abs(E(ix, iy, iz, it)));
    out.push_back(gate("green.z_support", 0, below, 0.0));
  }
  {
    double im = 0.0, all = 0.0;
    for (const auto& v : E.values()) {
      im += v.imag() * v.imag();
      all += std::norm(v);
    }
    auto r = gate("green.reality", 0, std::sqrt(im / all), 1e-10);
    r.details = {{"note", "imaginary L2 fraction of uppe_green"}};
    out.push_back(std::move(r));
  }
  {
    auto pair = uppe_green_split(s, o.exec);
    Field sum = std::move(pair.e_plus);
    sum += pair.e_minus;
    gate_z(sum);
    out.push_back(gate("green.split_consistency", 0, relative_l2(sum, E, E), 1e-10));
  }
  {
    const auto m = s.planar();
    auto pair = paraxial_green_split(s, m, o.exec);
    const Field gated = paraxial_green(s, m, o.exec);
    const std::size_t iz0 = g.origin(Axis::z);
    double dev = 0.0, peak = 0.0;
    for (std::size_t ix = 0; ix < g.n[0]; ++ix)
      for (std::size_t iy = 0; iy < g.n[1]; ++iy)
        for (std::size_t it = 0; it < g.n[3]; ++it) {
          const cplx full = pair.e_plus(ix, iy, iz0, it) + pair.e_minus(ix, iy, iz0, it);
          dev = std::max(dev, std::abs(gated(ix, iy, iz0, it) - 0.5 * full));
          peak = std::max(peak, std::abs(full));
        }
    out.push_back(gate("green.half_slice", 0, peak > 0.0 ? dev / peak : 0.0, 1e-15));
  }
  {
    const auto pair = uppe_green_split(s, o.exec);
    const Field spec_plus = forward_transform(pair.e_plus, AxisSet::space(), o.exec);
    double neg = 0.0, all = 0.0;
    for (std::size_t ix = 0; ix < g.n[0]; ++ix)
      for (std::size_t iy = 0; iy < g.n[1]; ++iy)
        for (std::size_t iz = 0; iz < g.n[2]; ++iz)
          for (std::size_t it = 0; it < g.n[3]; ++it) {
            const double e = std::norm(spec_plus(ix, iy, iz, it));
            all += e;
            if (bin_sign(iz, g.n[2]) < 0) neg += e;
          }
    out.push_back(gate("green.split_kz_support", 0, std::sqrt(neg / all), 1e-13));
  }
  {
    const auto g24 = make_grid({24, 24, 24, 48}, {1.0, 1.0, 1.0, 0.25});
    GreenSpec w = default_green_spec(g24);
    w.mollifier_sigma_r = 2.0;
    w.mollifier_sigma_t = 0.5;
    const double d = relative_l2(wave_green_spectral(+1, w, o.exec), wave_green_analytic(+1, w));
    auto r = gate("green.wave_spectral_vs_analytic", 0, d, 0.02);
    r.details = {{"grid", grid_json(g24)}};
    out.push_back(std::move(r));
  }
  {
    const Propagator prop(propagator_spec(g, 1));
    const Field delta = mollified_delta(g, s.planar());
    const auto solved = prop.solve_convolution(delta, ConvolutionMode::linear, ZRule::point_samples, o.exec);
    // Both sides must drop the same bins: the propagator's ε is the spec's.
    out.push_back(gate("propagator.solve_reproduces_green", 0, relative_l2(solved.field, E, E), 1e-10));
  }
  {
    // Retarded quadrature of a mollified δ against the closed form, on two
    // grids covering the same box.
    std::vector<double> errs;
    for (std::size_t n : {8u, 16u}) {
      const double h = 16.0 / static_cast<double>(n);
      const auto gq = make_grid({n, n, n, 2 * n}, {h, h, h, 0.5 * h});
      GreenSpec q = default_green_spec(gq);
      q.mollifier_sigma_r = 4.0;
      q.mollifier_sigma_t = 2.0;
      const Field src = mollified_delta(gq, q.isotropic());
      const Field ref = wave_green_analytic(+1, q);
      std::vector<Event> ev;
      std::vector<std::array<std::size_t, 4>> at;
      for (std::size_t ix = 0; ix < n; ++ix)
        for (std::size_t iy = 0; iy < n; ++iy)
          for (std::size_t iz = 0; iz < n; ++iz)
            for (std::size_t it = n; it < 2 * n; ++it) {
              at.push_back({ix, iy, iz, it});
              ev.push_back({gq.coord(Axis::x, ix), gq.coord(Axis::y, iy), gq.coord(Axis::z, iz), gq.coord(Axis::t, it)});
            }
      const auto r = retarded_quadrature(src, ev, 1e-12, o.exec);
      double num = 0.0, den = 0.0;
      for (std::size_t k = 0; k < at.size(); ++k) {
        const cplx v = ref(at[k][0], at[k][1], at[k][2], at[k][3]);
        num += std::norm(v - r[k]);
        den += std::norm(v);
      }
      errs.push_back(std::sqrt(num / den));
    }
    auto r = gate("verification.quadrature_refinement", 0, errs[1] / errs[0], 1.0, Bound::less_than);
    r.details = {{"error_8", errs[0]}, {"error_16", errs[1]}};
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<OracleReport> run_all_checks(const CheckOptions& o) {
  using Check = std::function<std::vector<OracleReport>(const CheckOptions&)>;
  const std::vector<std::pair<const char*, Check>> registry = {
      {"theorem1", check_theorem1},
      {"theorem2", check_theorem2},
      {"projector_algebra", check_projector_algebra},
      {"non_causality", check_non_causality},
      {"forward_preservation", check_forward_preservation},
      {"two_route", check_two_route},
      {"oracles", check_oracles},
      {"remark1", check_remark1},
      {"invariants", check_invariants},
  };
  const int criterion_of[] = {1, 2, 3, 4, 5, 6, 7, 8, 0};

  std::vector<OracleReport> out;
  for (std::size_t i = 0; i < registry.size(); ++i) {
    const auto& [name, fn] = registry[i];
    if (o.acceptance_only && criterion_of[i] == 0) continue;
    const auto t0 = Clock::now();
    std::vector<OracleReport> got;
    try {
      got = fn(o);
    } catch (const std::exception& e) {
      OracleReport r;
      r.name = std::string(name) + ".error";
      r.criterion = criterion_of[i];
      r.residual = std::numeric_limits<double>::quiet_NaN();
      r.passed = false;
      r.details = {{"error", e.what()}};
      got.push_back(std::move(r));
    }
    const double dt = seconds_since(t0);
    for (auto& r : got) {
      r.runtime_s = dt;
      out.push_back(std::move(r));
    }
  }
  return out;
}

bool acceptance_passed(const std::vector<OracleReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const OracleReport& r) { return !r.acceptance() || r.passed; });
}

}  // namespace uppe
