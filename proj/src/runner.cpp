#include "uppe/runner.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <ostream>

#include "uppe/io.hpp"
#include "uppe/projectors.hpp"

namespace uppe {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Outcome {
  json results = json::object();
  std::vector<OracleReport> checks;
};

class Stopwatch {
 public:
  explicit Stopwatch(json& sink) : sink_(sink) {}
  template <class F>
  auto time(const std::string& stage, F&& f) {
    const auto t0 = Clock::now();
    auto out = f();
    sink_[stage] = std::chrono::duration<double>(Clock::now() - t0).count();
    return out;
  }

 private:
  json& sink_;
};

OracleReport gate(std::string name, int criterion, double residual, double tolerance,
                  Bound bound = Bound::at_most) {
  OracleReport r;
  r.name = std::move(name);
  r.criterion = criterion;
  r.residual = residual;
  r.tolerance = tolerance;
  r.bound = bound;
  r.evaluate();
  return r;
}

json grid_json(const GridSpec& g) { return {{"n", g.n}, {"d", g.d}, {"c", g.c}}; }

// Cuts through the origin bin along each axis of a fully physical field.
void write_axis_cuts(const std::filesystem::path& path, const Field& f) {
  const auto& g = f.grid();
  const std::array<std::size_t, 4> o{g.origin(Axis::x), g.origin(Axis::y), g.origin(Axis::z), g.origin(Axis::t)};
  std::vector<std::vector<std::string>> rows;
  for (Axis a : all_axes) {
    const int k = axis_index(a);
    for (std::size_t j = 0; j < g.count(a); ++j) {
      auto idx = o;
      idx[k] = j;
      const cplx v = f(idx[0], idx[1], idx[2], idx[3]);
      rows.push_back({axis_name(a), std::to_string(j), format_double(g.coord(a, j)), format_double(v.real()),
                      format_double(v.imag()), format_double(std::abs(v))});
    }
  }
  write_csv(path, {"axis", "index", "coordinate", "re", "im", "abs"}, rows);
}

json quadrant_json(const CausalityStats& s) {
  const double t = s.total > 0.0 ? s.total : 1.0;
  return {{"z+t+", s.energy_pp / t}, {"z+t-", s.energy_pm / t}, {"z-t+", s.energy_mp / t},
          {"z-t-", s.energy_mm / t}, {"axes", s.axis_energy() / t}, {"total", s.total}};
}

void write_quadrants(const std::filesystem::path& path, const CausalityStats& s) {
  const double t = s.total > 0.0 ? s.total : 1.0;
  auto row = [&](const char* q, const char* zs, const char* ts, double e) {
    return std::vector<std::string>{q, zs, ts, format_double(e), format_double(e / t)};
  };
  write_csv(path, {"quadrant", "z_sign", "t_sign", "energy", "fraction"},
            {row("z+t+", "+", "+", s.energy_pp), row("z+t-", "+", "-", s.energy_pm),
             row("z-t+", "-", "+", s.energy_mp), row("z-t-", "-", "-", s.energy_mm),
             row("axes", "0", "0", s.axis_energy()), row("total", "", "", s.total)});
}

double z_support_violation(const Field& f) {
  const auto& g = f.grid();
  double m = 0.0;
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.origin(Axis::z); ++iz)
        for (std::size_t it = 0; it < g.n[3]; ++it) m = std::max(m, std::abs(f(ix, iy, iz, it)));
  return m;
}

Outcome run_fundamental(const ExperimentConfig& cfg, const std::filesystem::path& out, json& timing) {
  Stopwatch sw(timing);
  const auto spec = cfg.green_spec();
  const auto green = sw.time("uppe_green", [&] { return uppe_green(spec); });
  const auto plus = sw.time("wave_green_plus", [&] { return wave_green_spectral(+1, spec); });
  const auto minus = sw.time("wave_green_minus", [&] { return wave_green_spectral(-1, spec); });
  const auto stats = causality_stats(green.field);

  double im = 0.0, all = 0.0;
  for (const auto& v : green.field.values()) {
    im += v.imag() * v.imag();
    all += std::norm(v);
  }
  Outcome o;
  o.results = {{"l2_norm", l2_norm(green.field)},
               {"max_abs", max_abs(green.field)},
               {"imaginary_fraction", all > 0.0 ? std::sqrt(im / all) : 0.0},
               {"excluded_mass", green.excluded_mass},
               {"quadrants", quadrant_json(stats)},
               {"wave_green_plus_l2", l2_norm(plus)},
               {"wave_green_minus_l2", l2_norm(minus)}};
  o.checks.push_back(gate("green.z_support", 0, z_support_violation(green.field), 0.0));
  if (cfg.write_fields) {
    write_field(out, "uppe_green", green.field, {{"excluded_mass", green.excluded_mass}});
    write_field(out, "wave_green_plus", plus);
    write_field(out, "wave_green_minus", minus);
  }
  if (cfg.write_csv) {
    write_axis_cuts(out / "axis_cuts.csv", green.field);
    write_quadrants(out / "quadrants.csv", stats);
  }
  return o;
}

Outcome run_paraxial(const ExperimentConfig& cfg, const std::filesystem::path& out, json& timing) {
  Stopwatch sw(timing);
  const auto spec = cfg.green_spec();
  const Field f = sw.time("paraxial_green", [&] { return paraxial_green(spec); });
  const auto stats = causality_stats(f);

  Outcome o;
  o.results = {{"l2_norm", l2_norm(f)}, {"max_abs", max_abs(f)}, {"quadrants", quadrant_json(stats)}};
  o.checks.push_back(gate("paraxial.z_support", 0, z_support_violation(f), 0.0));
  if (cfg.write_fields) write_field(out, "paraxial_green", f);
  if (cfg.write_csv) {
    write_axis_cuts(out / "axis_cuts.csv", f);
    write_quadrants(out / "quadrants.csv", stats);
  }
  return o;
}

Outcome run_theorem1(const ExperimentConfig& cfg, const std::filesystem::path& out, json& timing) {
  Stopwatch sw(timing);
  const auto r = sw.time("theorem1_residual", [&] { return theorem1_residual(cfg.green_spec()); });
  Outcome o;
  o.results = {{"residual", r.residual},
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
  o.checks.push_back(gate("theorem1.residual", 1, r.residual, 1e-8));
  o.checks.push_back(gate("theorem1.frequency_split_form", 0, r.frequency_split, 1e-8));
  if (cfg.write_csv) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [k, v] : o.results.items())
      if (v.is_number() && k != "excluded_mass") rows.push_back({k, format_double(v.get<double>())});
    write_csv(out / "theorem1.csv", {"variant", "relative_l2"}, rows);
  }
  return o;
}

Outcome run_theorem2(const ExperimentConfig& cfg, const std::filesystem::path& out, json& timing) {
  Stopwatch sw(timing);
  const auto r = sw.time("theorem2_residual", [&] { return theorem2_residual(cfg.green_spec()); });
  Outcome o;
  o.results = {{"spectral_plus", r.spectral_plus},   {"spectral_minus", r.spectral_minus},
               {"physical_plus", r.physical_plus},   {"physical_minus", r.physical_minus},
               {"sign_swap", r.sign_swap}};
  o.checks.push_back(gate("theorem2.spectral", 2, r.spectral(), 1e-10));
  o.checks.push_back(gate("theorem2.sign_swap", 2, r.sign_swap, 0.0));
  o.checks.push_back(gate("theorem2.physical", 2, r.physical(), 0.05));
  if (cfg.write_csv) {
    write_csv(out / "theorem2.csv", {"route", "sign", "residual"},
              {{"spectral", "+", format_double(r.spectral_plus)},
               {"spectral", "-", format_double(r.spectral_minus)},
               {"physical", "+", format_double(r.physical_plus)},
               {"physical", "-", format_double(r.physical_minus)}});
  }
  return o;
}

Outcome run_propagate(const ExperimentConfig& cfg, const std::filesystem::path& out, json& timing) {
  Stopwatch sw(timing);
  const auto& g = cfg.grid;
  const Field q = sw.time("sample_source", [&] { return sample_source(cfg.source, g); });
  const auto dir = source_direction_report(q);
  const Propagator prop(cfg.propagator_spec());
  const auto res = sw.time(to_string(cfg.route), [&] {
    return cfg.route == Route::march ? prop.march(q) : prop.solve_convolution(q, cfg.mode, cfg.rule);
  });

  Outcome o;
  o.results = {{"route", to_string(cfg.route)},
               {"substeps", cfg.substeps},
               {"singular_bins", res.singular_bins},
               {"inactive_bins", res.inactive_bins},
               {"excluded_mass", res.excluded_mass},
               {"l2_norm", l2_norm(res.field)},
               {"source_direction",
                {{"forward", dir.forward},
                 {"backward", dir.backward},
                 {"P00", dir.p00},
                 {"P01", dir.p01},
                 {"P10", dir.p10},
                 {"P11", dir.p11}}}};
  if (cfg.route == Route::convolution) {
    o.results["mode"] = to_string(cfg.mode);
    o.results["rule"] = to_string(cfg.rule);
  }

  json slices = json::array();
  std::vector<std::size_t> picks;
  if (cfg.z_slices.empty()) {
    for (std::size_t iz = 0; iz < g.n[2]; ++iz) picks.push_back(iz);
  } else {
    for (double z : cfg.z_slices) {
      const double j = std::round(z / g.step(Axis::z)) + static_cast<double>(g.origin(Axis::z));
      picks.push_back(static_cast<std::size_t>(j));
    }
  }
  for (std::size_t iz : picks) {
    const std::string name = "slice_z" + std::to_string(iz);
    slices.push_back({{"name", name}, {"z_index", iz}, {"z", g.coord(Axis::z, iz)}});
    if (cfg.write_fields) write_z_slice(out, name, res.field, iz);
  }
  o.results["slices"] = slices;
  if (cfg.write_csv) {
    write_axis_cuts(out / "axis_cuts.csv", res.field);
    write_csv(out / "direction.csv", {"component", "fraction"},
              {{"forward", format_double(dir.forward)},
               {"backward", format_double(dir.backward)},
               {"P00", format_double(dir.p00)},
               {"P01", format_double(dir.p01)},
               {"P10", format_double(dir.p10)},
               {"P11", format_double(dir.p11)}});
  }
  return o;
}

Outcome run_causality(const ExperimentConfig& cfg, const std::filesystem::path& out, json& timing) {
  Stopwatch sw(timing);
  const auto green = sw.time("uppe_green", [&] { return uppe_green(cfg.green_spec()); });
  const auto stats = causality_stats(green.field);
  Outcome o;
  o.results = {{"quadrants", quadrant_json(stats)}, {"excluded_mass", green.excluded_mass}};
  o.checks.push_back(gate("non_causality.z_pos_t_neg_fraction", 4,
                          stats.total > 0.0 ? stats.energy_pm / stats.total : 0.0, 0.1, Bound::greater_than));
  if (cfg.write_csv) write_quadrants(out / "quadrants.csv", stats);
  if (cfg.write_fields) write_field(out, "uppe_green", green.field, {{"excluded_mass", green.excluded_mass}});
  return o;
}

Outcome run_checks(const ExperimentConfig& cfg, const std::filesystem::path& out, json& timing) {
  CheckOptions opt;
  opt.seed = cfg.seed;
  Outcome o;
  o.checks = run_all_checks(opt);
  json per = json::object();
  for (const auto& r : o.checks) {
    per[r.name] = r.runtime_s;
    if (r.timing) per[r.name + ".measured"] = r.residual;
  }
  timing["checks"] = per;
  o.results = {{"reports", o.checks.size()}};
  if (cfg.write_csv) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : o.checks)
      rows.push_back({r.name, std::to_string(r.criterion), r.timing ? "" : format_double(r.residual),
                      to_string(r.bound), format_double(r.tolerance), r.passed ? "pass" : "fail"});
    write_csv(out / "checks.csv", {"name", "criterion", "residual", "bound", "tolerance", "result"}, rows);
  }
  return o;
}

}  // namespace

int run(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log) {
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  const auto t0 = Clock::now();
  json timing = json::object();
  json stages = json::object();
  Outcome o;
  try {
    write_text(out_dir / "config.effective.toml", echo_config(cfg));
    log << "experiment " << to_string(cfg.experiment) << " -> " << out_dir.string() << "\n";
    try {
      cfg.green_spec().validate();
      switch (cfg.experiment) {
        case Experiment::fundamental: o = run_fundamental(cfg, out_dir, stages); break;
        case Experiment::paraxial: o = run_paraxial(cfg, out_dir, stages); break;
        case Experiment::theorem1: o = run_theorem1(cfg, out_dir, stages); break;
        case Experiment::theorem2: o = run_theorem2(cfg, out_dir, stages); break;
        case Experiment::propagate: o = run_propagate(cfg, out_dir, stages); break;
        case Experiment::causality: o = run_causality(cfg, out_dir, stages); break;
        case Experiment::checks: o = run_checks(cfg, out_dir, timing); break;
      }
    } catch (const std::invalid_argument& e) {
      log << "error: " << e.what() << "\n";
      return kExitConfigError;
    }

    bool passed = true;
    json reports = json::array();
    for (const auto& r : o.checks) {
      reports.push_back(r.to_json());
      if (r.acceptance() && !r.passed) passed = false;
      log << (r.passed ? "PASS " : "FAIL ") << r.name << "\n";
    }
    json summary;
    summary["experiment"] = to_string(cfg.experiment);
    summary["seed"] = cfg.seed;
    summary["grid"] = grid_json(cfg.grid);
    summary["green"] = {{"sigma_r", cfg.sigma_r},
                        {"sigma_t", cfg.sigma_t},
                        {"epsilon", cfg.epsilon},
                        {"branch", to_string(cfg.branch)}};
    summary["results"] = o.results;
    summary["checks"] = reports;
    summary["passed"] = passed;
    write_json(out_dir / "summary.json", summary);

    timing["stages"] = stages;
    timing["threads"] = omp_get_max_threads();
    timing["total_s"] = std::chrono::duration<double>(Clock::now() - t0).count();
    write_json(out_dir / "timing.json", timing);
    return passed ? kExitOk : kExitCheckFailed;
  } catch (const IoError& e) {
    log << "io error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    log << "io error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::exception& e) {
    log << "internal error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace uppe
