#pragma once

#include <string>
#include <utility>
#include <vector>

#include "uppe/field.hpp"

namespace uppe {

/// Θ(x) = (1 + sign x)/2, so Θ(0) = 1/2.
inline constexpr double heaviside(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? 0.0 : 0.5); }

/// Θ of a centered bin, using the bin's sign (the Nyquist bin is negative).
inline constexpr double heaviside_bin(std::size_t j, std::size_t n) {
  const int s = bin_sign(j, n);
  return s > 0 ? 1.0 : (s < 0 ? 0.0 : 0.5);
}

/// Quadrant projectors in the (k_z, ω) plane. P_lm = Θ((−1)^l ω)·Θ((−1)^m k_z):
/// l selects the sign of ω, m the sign of k_z. P00 keeps ω > 0, k_z > 0.
enum class ProjectorKind { P00, P01, P10, P11, Pplus, Pminus, Pzplus, Pzminus, Identity };

const char* to_string(ProjectorKind k);
ProjectorKind projector_kind_from_string(const std::string& s);

/// Weights per (k_z, ω) bin, ω fastest.
class ProjectorMask {
 public:
  ProjectorMask(ProjectorKind kind, const GridSpec& grid, std::vector<double> weights);

  ProjectorKind kind() const { return kind_; }
  const GridSpec& grid() const { return grid_; }
  double weight(std::size_t iz, std::size_t it) const { return weights_[iz * grid_.n[3] + it]; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  ProjectorKind kind_;
  GridSpec grid_;
  std::vector<double> weights_;
};

ProjectorMask make_mask(ProjectorKind kind, const GridSpec& grid);

/// Multiplies the (k_z, ω) spectrum by the mask. Axes z and t are transformed
/// as needed and restored; x and y are left in whatever representation they are.
Field apply(const ProjectorMask& mask, const Field& f, Exec exec = Exec::parallel);

struct Decomposition {
  Field forward;
  Field backward;
};

/// (P₊f, P₋f); the two parts sum to f.
Decomposition decompose(const Field& f, Exec exec = Exec::parallel);

/// Energy Σ|f|²·measure of a fully physical field split by (sign z, sign t).
/// Bins on the z = 0 or t = 0 planes count only toward `total`.
struct CausalityStats {
  double energy_pp = 0.0;  ///< z > 0, t > 0
  double energy_pm = 0.0;  ///< z > 0, t < 0
  double energy_mp = 0.0;  ///< z < 0, t > 0
  double energy_mm = 0.0;  ///< z < 0, t < 0
  double total = 0.0;

  double axis_energy() const { return total - energy_pp - energy_pm - energy_mp - energy_mm; }
};

CausalityStats causality_stats(const Field& f);

}  // namespace uppe
