#include "uppe/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace uppe {

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::fundamental: return "fundamental";
    case Experiment::paraxial: return "paraxial";
    case Experiment::theorem1: return "theorem1";
    case Experiment::theorem2: return "theorem2";
    case Experiment::propagate: return "propagate";
    case Experiment::causality: return "causality";
    case Experiment::checks: return "checks";
  }
  return "?";
}

std::optional<Experiment> experiment_from_string(std::string_view s) {
  for (auto e : {Experiment::fundamental, Experiment::paraxial, Experiment::theorem1, Experiment::theorem2,
                 Experiment::propagate, Experiment::causality, Experiment::checks})
    if (s == to_string(e)) return e;
  return std::nullopt;
}

const char* to_string(Route r) { return r == Route::march ? "march" : "convolution"; }

ConfigError::ConfigError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

GreenSpec ExperimentConfig::green_spec() const {
  GreenSpec s;
  s.grid = grid;
  s.mollifier_sigma_r = sigma_r;
  s.mollifier_sigma_t = sigma_t;
  s.light_line_epsilon = epsilon;
  s.branch_policy = branch;
  return s;
}

PropagatorSpec ExperimentConfig::propagator_spec() const {
  return {grid, branch, epsilon, grid.step(Axis::z) / static_cast<double>(substeps)};
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(std::string_view v, std::size_t line) {
  if (!v.empty() && v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') throw ConfigError(line, "unterminated string");
    return std::string(v.substr(1, v.size() - 2));
  }
  return std::string(v);
}

double to_double(std::string_view v, std::size_t line, const std::string& key) {
  double x = 0.0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, x);
  if (r.ec != std::errc() || r.ptr != end || !std::isfinite(x))
    throw ConfigError(line, "'" + key + "' expects a number, got '" + std::string(v) + "'");
  return x;
}

long long to_integer(std::string_view v, std::size_t line, const std::string& key) {
  long long x = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, x);
  if (r.ec != std::errc() || r.ptr != end)
    throw ConfigError(line, "'" + key + "' expects an integer, got '" + std::string(v) + "'");
  return x;
}

bool to_bool(std::string_view v, std::size_t line, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(line, "'" + key + "' expects true or false");
}

std::vector<double> to_list(std::string_view v, std::size_t line, const std::string& key) {
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw ConfigError(line, "unterminated list for '" + key + "'");
    v = trim(v.substr(1, v.size() - 2));
  }
  std::vector<double> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    out.push_back(to_double(trim(v.substr(0, comma)), line, key));
    if (comma == std::string_view::npos) break;
    v = trim(v.substr(comma + 1));
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

struct Entry {
  std::string value;
  std::size_t line;
};

using Setter = std::function<void(ExperimentConfig&, const std::string&, std::size_t)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    t["experiment"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      const auto e = experiment_from_string(v);
      if (!e) throw ConfigError(line, "unknown experiment '" + v + "'");
      c.experiment = *e;
    };
    t["seed"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      const auto s = to_integer(v, line, "seed");
      if (s < 0) throw ConfigError(line, "seed must be nonnegative");
      c.seed = static_cast<std::uint64_t>(s);
    };
    t["threads"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      const auto n = to_integer(v, line, "threads");
      if (n < 0 || n > 4096) throw ConfigError(line, "threads must be in [0, 4096]");
      c.threads = static_cast<int>(n);
    };
    for (Axis a : all_axes) {
      const int k = axis_index(a);
      const std::string n = std::string("grid.n_") + axis_name(a);
      t[n] = [k, n](ExperimentConfig& c, const std::string& v, std::size_t line) {
        const auto x = to_integer(v, line, n);
        if (x < 2 || x % 2 != 0) throw ConfigError(line, "counts must be even and >= 2 (" + n + " = " + v + ")");
        c.grid.n[k] = static_cast<std::size_t>(x);
      };
      const std::string d = std::string("grid.d_") + axis_name(a);
      t[d] = [k, d](ExperimentConfig& c, const std::string& v, std::size_t line) {
        const double x = to_double(v, line, d);
        if (!(x > 0.0)) throw ConfigError(line, "steps must be positive (" + d + ")");
        c.grid.d[k] = x;
      };
      const std::string cen = std::string("source.center_") + axis_name(a);
      t[cen] = [k, cen](ExperimentConfig& c, const std::string& v, std::size_t line) {
        c.source.center[k] = to_double(v, line, cen);
      };
      const std::string w = std::string("source.width_") + axis_name(a);
      t[w] = [k, w](ExperimentConfig& c, const std::string& v, std::size_t line) {
        const double x = to_double(v, line, w);
        if (x < 0.0) throw ConfigError(line, "widths must be nonnegative (" + w + ")");
        c.source.width[k] = x;
      };
    }
    t["grid.c"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      const double x = to_double(v, line, "grid.c");
      if (!(x > 0.0)) throw ConfigError(line, "c must be positive");
      c.grid.c = x;
    };
    t["green.sigma_r"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      c.sigma_r = to_double(v, line, "sigma_r");
      if (c.sigma_r < 0.0) throw ConfigError(line, "sigma_r must be nonnegative");
    };
    t["green.sigma_t"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      c.sigma_t = to_double(v, line, "sigma_t");
      if (c.sigma_t < 0.0) throw ConfigError(line, "sigma_t must be nonnegative");
    };
    t["green.epsilon"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      c.epsilon = to_double(v, line, "epsilon");
      if (c.epsilon < 0.0) throw ConfigError(line, "epsilon must be nonnegative");
    };
    t["green.branch"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      try {
        c.branch = branch_policy_from_string(v);
      } catch (const std::exception&) {
        throw ConfigError(line, "unknown branch '" + v + "'");
      }
    };
    t["source.kind"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      try {
        c.source.kind = source_kind_from_string(v);
      } catch (const std::exception&) {
        throw ConfigError(line, "unknown source kind '" + v + "'");
      }
      if (c.source.kind == SourceKind::custom_grid)
        throw ConfigError(line, "custom_grid sources cannot be given in a config file");
    };
    t["source.amplitude"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      c.source.amplitude = to_double(v, line, "amplitude");
    };
    t["source.k0"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      c.source.k0 = to_double(v, line, "k0");
    };
    t["source.omega0"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      c.source.omega0 = to_double(v, line, "omega0");
    };
    t["source.filter"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      if (v == "none") {
        c.source.direction_filter.reset();
        return;
      }
      try {
        c.source.direction_filter = projector_kind_from_string(v);
      } catch (const std::exception&) {
        throw ConfigError(line, "unknown filter '" + v + "'");
      }
    };
    t["propagate.route"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      if (v == "march")
        c.route = Route::march;
      else if (v == "convolution")
        c.route = Route::convolution;
      else
        throw ConfigError(line, "route must be march or convolution");
    };
    t["propagate.substeps"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      const auto n = to_integer(v, line, "substeps");
      if (n < 1 || n > 1024) throw ConfigError(line, "substeps must be in [1, 1024]");
      c.substeps = static_cast<std::size_t>(n);
    };
    t["propagate.mode"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      if (v == "linear")
        c.mode = ConvolutionMode::linear;
      else if (v == "periodic")
        c.mode = ConvolutionMode::periodic;
      else
        throw ConfigError(line, "mode must be linear or periodic");
    };
    t["propagate.rule"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      if (v == "linear_source")
        c.rule = ZRule::linear_source;
      else if (v == "point_samples")
        c.rule = ZRule::point_samples;
      else
        throw ConfigError(line, "rule must be linear_source or point_samples");
    };
    t["propagate.z_slices"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      c.z_slices = to_list(v, line, "z_slices");
    };
    t["output.dir"] = [](ExperimentConfig& c, const std::string& v, std::size_t) { c.out_dir = v; };
    t["output.fields"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      c.write_fields = to_bool(v, line, "fields");
    };
    t["output.csv"] = [](ExperimentConfig& c, const std::string& v, std::size_t line) {
      c.write_csv = to_bool(v, line, "csv");
    };
    return t;
  }();
  return table;
}

const char* const kSections[] = {"grid", "green", "source", "propagate", "output"};

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    // Strip a trailing comment unless the '#' sits inside quotes.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "malformed section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (std::find(std::begin(kSections), std::end(kSections), name) == std::end(kSections))
        throw ConfigError(line_no, "unknown section [" + name + "]");
      section = name;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const auto raw = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key");
    if (raw.empty()) throw ConfigError(line_no, "missing value for '" + key + "'");
    const std::string full = section.empty() ? key : section + "." + key;
    if (!setters().count(full)) throw ConfigError(line_no, "unknown key '" + full + "'");
    if (entries.count(full))
      throw ConfigError(line_no, "duplicate key '" + full + "' (first set on line " +
                                     std::to_string(entries[full].line) + ")");
    entries[full] = {unquote(raw, line_no), line_no};
  }

  ExperimentConfig c;
  c.grid.c = 1.0;
  if (!entries.count("experiment")) throw ConfigError(0, "missing required key 'experiment'");
  for (Axis a : all_axes)
    for (const char* p : {"grid.n_", "grid.d_"}) {
      const std::string k = std::string(p) + axis_name(a);
      if (!entries.count(k)) throw ConfigError(0, "missing required key '" + k + "'");
    }
  for (const auto& [key, e] : entries) setters().at(key)(c, e.value, e.line);

  const auto& g = c.grid;
  const double max_space = std::max({g.d[0], g.d[1], g.d[2]});
  auto line_of = [&](const char* k) { return entries.count(k) ? entries.at(k).line : 0; };
  if (!entries.count("green.sigma_r")) c.sigma_r = 2.0 * max_space;
  if (!entries.count("green.sigma_t")) c.sigma_t = 2.0 * g.d[3];
  if (!entries.count("green.epsilon")) c.epsilon = 1e-6 * g.spectral_step(Axis::t) / g.c;
  for (Axis a : all_axes) {
    const std::string k = std::string("source.width_") + axis_name(a);
    if (!entries.count(k)) c.source.width[axis_index(a)] = 2.0 * g.step(a);
  }

  if (c.sigma_r > 0.0 && c.sigma_r < 2.0 * max_space)
    throw ConfigError(line_of("green.sigma_r"), "sigma_r must be 0 or at least two spatial steps (" +
                                                    fmt(2.0 * max_space) + ")");
  if (c.sigma_t > 0.0 && c.sigma_t < 2.0 * g.d[3])
    throw ConfigError(line_of("green.sigma_t"), "sigma_t must be 0 or at least two time steps (" +
                                                    fmt(2.0 * g.d[3]) + ")");
  for (double z : c.z_slices) {
    const double lo = g.coord(Axis::z, 0), hi = g.coord(Axis::z, g.n[2] - 1);
    if (z < lo || z > hi)
      throw ConfigError(line_of("propagate.z_slices"), "z slice " + fmt(z) + " lies outside [" + fmt(lo) + ", " +
                                                           fmt(hi) + "]");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string echo_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "experiment = " << to_string(c.experiment) << "\n";
  os << "seed = " << c.seed << "\n";
  os << "threads = " << c.threads << "\n";
  os << "\n[grid]\n";
  for (Axis a : all_axes) os << "n_" << axis_name(a) << " = " << c.grid.count(a) << "\n";
  for (Axis a : all_axes) os << "d_" << axis_name(a) << " = " << fmt(c.grid.step(a)) << "\n";
  os << "c = " << fmt(c.grid.c) << "\n";
  os << "\n[green]\n";
  os << "sigma_r = " << fmt(c.sigma_r) << "\n";
  os << "sigma_t = " << fmt(c.sigma_t) << "\n";
  os << "epsilon = " << fmt(c.epsilon) << "\n";
  os << "branch = " << to_string(c.branch) << "\n";
  os << "\n[source]\n";
  os << "kind = " << to_string(c.source.kind) << "\n";
  for (Axis a : all_axes) os << "center_" << axis_name(a) << " = " << fmt(c.source.center[axis_index(a)]) << "\n";
  for (Axis a : all_axes) os << "width_" << axis_name(a) << " = " << fmt(c.source.width[axis_index(a)]) << "\n";
  os << "amplitude = " << fmt(c.source.amplitude) << "\n";
  os << "k0 = " << fmt(c.source.k0) << "\n";
  os << "omega0 = " << fmt(c.source.omega0) << "\n";
  os << "filter = " << (c.source.direction_filter ? to_string(*c.source.direction_filter) : "none") << "\n";
  os << "\n[propagate]\n";
  os << "route = " << to_string(c.route) << "\n";
  os << "substeps = " << c.substeps << "\n";
  os << "mode = " << to_string(c.mode) << "\n";
  os << "rule = " << to_string(c.rule) << "\n";
  os << "z_slices = [";
  for (std::size_t i = 0; i < c.z_slices.size(); ++i) os << (i ? ", " : "") << fmt(c.z_slices[i]);
  os << "]\n";
  os << "\n[output]\n";
  if (!c.out_dir.empty()) os << "dir = \"" << c.out_dir << "\"\n";
  os << "fields = " << (c.write_fields ? "true" : "false") << "\n";
  os << "csv = " << (c.write_csv ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace uppe
