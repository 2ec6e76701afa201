#pragma once

#include <array>

#include "uppe/beta_z.hpp"
#include "uppe/field.hpp"

namespace uppe {

/// Separable Gaussian widths regularizing δ(r, t); a zero width leaves that
/// axis unregularized (a discrete delta of height 1/d at the origin bin).
struct Mollifier {
  std::array<double, 4> sigma{};  // x, y, z, t

  double sigma_of(Axis a) const { return sigma[axis_index(a)]; }
  /// Continuum spectrum exp(−Σ k_a²σ_a²/2) over the spatial axes.
  double spatial_damping(double kx, double ky, double kz) const;
};

struct GreenSpec {
  GridSpec grid;
  double mollifier_sigma_r = 0.0;  ///< spatial width [m]
  double mollifier_sigma_t = 0.0;  ///< temporal width [s]
  double light_line_epsilon = 0.0;
  BranchPolicy branch_policy = BranchPolicy::evanescent_decay;

  /// Widths must be 0 or at least two steps on every axis they act on.
  void validate() const;

  /// Gaussian in x, y, z and t.
  Mollifier isotropic() const;
  /// Gaussian in x, y and t with δ(z) kept exact, which is what the
  /// z-marching construction consumes.
  Mollifier planar() const;
};

/// Two-step widths and ε = 1e−6·dω/c.
GreenSpec default_green_spec(const GridSpec& grid);

/// Sampled mollified δ at the origin, fully physical.
Field mollified_delta(const GridSpec& grid, const Mollifier& m);

struct GreenPair {
  Field e_plus;
  Field e_minus;
  std::size_t excluded_bins = 0;
};

struct GreenField {
  Field field;
  double excluded_mass = 0.0;  ///< spectral mass of the source on dropped bins
};

/// Multiplies each z-slice by Θ(z), 1/2 on the z = 0 slice. Physical z only.
void gate_z(Field& f);

/// E_□±(k, t) = −c·Θ(±t)·sin(ck|t|)/k per time slice (the k = 0 bin takes the
/// limit −c·Θ(±t)·c|t|), convolved in t with the temporal Gaussian and damped
/// by the spatial one. Returned fully physical.
Field wave_green_spectral(int sign, const GreenSpec& spec, const Mollifier& m, Exec exec = Exec::parallel);
inline Field wave_green_spectral(int sign, const GreenSpec& spec, Exec exec = Exec::parallel) {
  return wave_green_spectral(sign, spec, spec.isotropic(), exec);
}

/// Free-space retarded (+) / advanced (−) Green's function −δ(t ∓ r/c)/(4πr)
/// convolved with the isotropic mollifier, in closed form. Requires both
/// widths positive.
Field wave_green_analytic(int sign, const GreenSpec& spec);

/// E_□± on the (k⊥, z, ω) lattice: e^{iβ±|z|}/(2iβ±)·S(k⊥, ω) with β± the
/// retarded (+) or advanced (−) continuation, β± = ±sign(ω)|β_z| on
/// propagating bins and i|β_z| on evanescent ones. S is the spectrum of the
/// planar mollifier; light-line bins are zero. Spectral in x, y, t.
Field wave_green_frequency(int sign, const GreenSpec& spec, Exec exec = Exec::parallel);

/// Θ(z)·F⁻¹_{k⊥,ω}[e^{iβ_z z}/(2iβ_z)·S(k⊥, ω)] with S the spectrum of the
/// planar mollifier. Light-line bins (and evanescent ones under
/// evanescent_zero) are dropped.
GreenField uppe_green(const GreenSpec& spec, Exec exec = Exec::parallel);

/// E_± = −(ic/2)·F⁻¹_k[Θ(k_z)·e^{∓ickt}/k] per time slice (planar mollifier by
/// default). The k = 0 bin is dropped.
GreenPair uppe_green_split(const GreenSpec& spec, const Mollifier& m, Exec exec = Exec::parallel);
inline GreenPair uppe_green_split(const GreenSpec& spec, Exec exec = Exec::parallel) {
  return uppe_green_split(spec, spec.planar(), exec);
}

/// E_p± = −(ic/2)·F⁻¹_k[Θ(k_z)·(k_z/k²)·e^{∓ickt}].
GreenPair paraxial_green_split(const GreenSpec& spec, const Mollifier& m, Exec exec = Exec::parallel);

/// Θ(z)·(E_p+ + E_p−).
Field paraxial_green(const GreenSpec& spec, const Mollifier& m, Exec exec = Exec::parallel);
inline Field paraxial_green(const GreenSpec& spec, Exec exec = Exec::parallel) {
  return paraxial_green(spec, spec.planar(), exec);
}

struct QuadrantResidual {
  double pp = 0.0, pm = 0.0, mp = 0.0, mm = 0.0, axes = 0.0;
};

struct Theorem1Report {
  /// ‖E − Θ(z)·P_z+{E_□+ + E_□−}‖ / ‖E‖.
  double residual = 0.0;
  /// Share of the residual per (sign z, sign t) quadrant: sqrt(‖diff_q‖²)/‖E‖.
  QuadrantResidual quadrants;
  double without_projection = 0.0;  ///< ‖E − Θ(z)(E_□+ + E_□−)‖/‖E‖
  double without_gate = 0.0;        ///< ‖E − P_z+{E_□+ + E_□−}‖/‖E‖
  double kz_projection = 0.0;       ///< with Θ(k_z) in place of P_z+
  double frequency_split = 0.0;     ///< ‖E − Θ(z)(P_z+E_□+ + P_z−E_□−)‖/‖E‖
  /// Same as `residual` with E_□± built per (k, t) slice by wave_green_spectral
  /// (planar mollifier) instead of the closed form on the transverse lattice.
  double time_domain_route = 0.0;
  double excluded_mass = 0.0;
};

Theorem1Report theorem1_residual(const GreenSpec& spec, Exec exec = Exec::parallel);

struct Theorem2Report {
  double spectral_plus = 0.0, spectral_minus = 0.0;
  double physical_plus = 0.0, physical_minus = 0.0;
  /// ‖route(∓) + route(±)‖: the integrand sign flips exactly under the swap.
  double sign_swap = 0.0;

  double spectral() const { return std::max(spectral_plus, spectral_minus); }
  double physical() const { return std::max(physical_plus, physical_minus); }
};

/// Compares E_p± with ∓c∫_{−∞}^t ∂_z E_± dτ two ways: per mode in the
/// spectral representation (i·k_z, division by the mode frequency), and in
/// physical space (centered z difference, left-endpoint cumulative time sum,
/// compared as increments from the first time slice).
Theorem2Report theorem2_residual(const GreenSpec& spec, const Mollifier& m, Exec exec = Exec::parallel);

/// The physical route alone, ∓c·Σ_{m<n} D_z E_±(t_m)·dt, fully physical.
Field theorem2_physical_route(int sign, const GreenSpec& spec, const Mollifier& m, Exec exec = Exec::parallel);
inline Theorem2Report theorem2_residual(const GreenSpec& spec, Exec exec = Exec::parallel) {
  return theorem2_residual(spec, spec.isotropic(), exec);
}

}  // namespace uppe
