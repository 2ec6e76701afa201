#include "uppe/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace uppe {

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
    case Axis::t: return "t";
  }
  return "?";
}

double GridSpec::spectral_step(Axis a) const {
  return 2.0 * std::numbers::pi / length(a);
}

double GridSpec::spectral_cell_measure() const {
  double m = 1.0;
  for (Axis a : all_axes) m *= spectral_step(a);
  return m;
}

GridSpec make_grid(const std::array<std::size_t, 4>& counts, const std::array<double, 4>& steps,
                   double c) {
  for (Axis a : all_axes) {
    const auto k = axis_index(a);
    if (counts[k] < 2 || counts[k] % 2 != 0) {
      std::ostringstream os;
      os << "counts must be even and >= 2 (n_" << axis_name(a) << " = " << counts[k] << ")";
      throw std::invalid_argument(os.str());
    }
    if (!(steps[k] > 0.0) || !std::isfinite(steps[k])) {
      std::ostringstream os;
      os << "steps must be positive (d_" << axis_name(a) << " = " << steps[k] << ")";
      throw std::invalid_argument(os.str());
    }
  }
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("wave speed c must be positive");
  return GridSpec{counts, steps, c};
}

}  // namespace uppe
