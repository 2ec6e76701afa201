#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "uppe/beta_z.hpp"
#include "uppe/field.hpp"
#include "uppe/projectors.hpp"

namespace uppe {

enum class SourceKind { point_mollified, gaussian_pulse, plane_wave_packet, custom_grid };

const char* to_string(SourceKind k);
SourceKind source_kind_from_string(const std::string& s);

struct SourceSpec {
  SourceKind kind = SourceKind::point_mollified;
  std::array<double, 4> center{};  ///< x, y, z, t
  std::array<double, 4> width{};   ///< Gaussian σ per axis; 0 means a one-bin delta
  double amplitude = 1.0;
  double k0 = 0.0;      ///< carrier wavenumber along z
  double omega0 = 0.0;  ///< carrier angular frequency
  /// Optional quadrant mask applied after sampling.
  std::optional<ProjectorKind> direction_filter;
  /// Samples for custom_grid, fully physical on the target grid.
  std::shared_ptr<const Field> custom;
};

/// Samples the source on the grid, fully physical.
///  point_mollified:   amplitude · Π_a g_{σ_a}(x_a − c_a) (unit-mass Gaussians)
///  gaussian_pulse:    amplitude · envelope · cos(k0(z − c_z) − ω0(t − c_t))
///  plane_wave_packet: amplitude · envelope · exp(i(k0(z − c_z) − ω0(t − c_t)))
/// with envelope = Π_a exp(−(x_a − c_a)²/(2σ_a²)).
Field sample_source(const SourceSpec& spec, const GridSpec& grid, Exec exec = Exec::parallel);

struct PropagatorSpec {
  GridSpec grid;
  BranchPolicy branch_policy = BranchPolicy::evanescent_decay;
  double light_line_epsilon = 0.0;
  /// March step; must divide the grid z step into a whole number of substeps.
  double dz = 0.0;

  std::size_t substeps() const;
};

/// One (k_x, k_y, ω) plane of transverse spectra, ω fastest.
using SpectralSlice = std::vector<cplx>;

struct MarchResult {
  Field field;  ///< fully physical, one entry per grid z slice
  std::size_t singular_bins = 0;
  std::size_t inactive_bins = 0;  ///< singular plus dropped evanescent bins
  double excluded_mass = 0.0;     ///< source spectral mass on inactive bins
};

enum class ConvolutionMode {
  linear,    ///< open z line; the source is zero beyond the grid
  periodic,  ///< z offsets wrap, so the operator is diagonal in k_z
};

const char* to_string(ConvolutionMode m);

/// How the source is represented between z samples.
enum class ZRule {
  linear_source,  ///< kernel integrated exactly against the piecewise-linear source
  point_samples,  ///< Σ_j K(z_i − z_j)·Q_j·dz with K(0) taken at Θ(0) = 1/2
};

const char* to_string(ZRule r);

class Propagator {
 public:
  explicit Propagator(const PropagatorSpec& spec);

  const PropagatorSpec& spec() const { return spec_; }
  const BetaZTable& beta() const { return beta_; }

  /// E(z) → E(z + dz) for ∂_z E = iβ_z E + Q/(2iβ_z) with Q frozen at its
  /// left-endpoint value: E' = e^{iβ dz}E + dz·φ1(iβ dz)·Q/(2iβ). Inactive
  /// bins are set to zero.
  void step(SpectralSlice& e, const SpectralSlice& q, double dz, Exec exec = Exec::parallel) const;

  /// Forward march from the bottom of the grid with E = 0 there. The source
  /// is linearly interpolated between grid slices.
  MarchResult march(const Field& source, Exec exec = Exec::parallel) const;

  /// Direct z sum of the forward kernel Θ(s)e^{iβs}/(2iβ) per (k⊥, ω) bin.
  /// The march converges to the linear_source rule as dz → 0.
  MarchResult solve_convolution(const Field& source, ConvolutionMode mode = ConvolutionMode::linear,
                                ZRule rule = ZRule::linear_source, Exec exec = Exec::parallel) const;

 private:
  PropagatorSpec spec_;
  BetaZTable beta_;
};

/// Fractions Σ w|Q̃|² / Σ |Q̃|² of the source's (k_z, ω) spectral energy in
/// each quadrant and in the two direction projectors.
struct DirectionReport {
  double p00 = 0.0, p01 = 0.0, p10 = 0.0, p11 = 0.0;
  double forward = 0.0;   ///< P₊
  double backward = 0.0;  ///< P₋
};

DirectionReport source_direction_report(const Field& source, Exec exec = Exec::parallel);

}  // namespace uppe
