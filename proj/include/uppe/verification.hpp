#pragma once

#include <array>
#include <span>
#include <vector>

#include "uppe/field.hpp"

namespace uppe {

/// Largest field, in samples, the direct transforms accept.
inline constexpr std::size_t kBruteForceLimit = 4096;

/// Direct O(N²) evaluation of the measure-weighted transform over `axes`,
/// sharing no code with the FFT path. Same conventions as forward_transform
/// and inverse_transform.
Field brute_force_dft(const Field& f, AxisSet axes);
Field brute_force_idft(const Field& f, AxisSet axes);

/// Largest source grid the retarded quadrature accepts: 16³ × 32 samples.
inline constexpr std::size_t kQuadratureLimit = 16 * 16 * 16 * 32;

/// (x, y, z, t) of a target point.
using Event = std::array<double, 4>;

/// Retarded solution of □E = Q, E(r, t) = −∫ Q(r′, t − |r − r′|/c)/(4π|r − r′|) d³r′,
/// by direct summation over the source cells. Q is linear in time between
/// samples and zero outside the window; a target that falls on a source cell
/// center uses the cell average of 1/|ρ| there. Targets may lie outside the
/// source grid. Source points whose peak is below `negligible` times the
/// global peak are skipped.
std::vector<cplx> retarded_quadrature(const Field& source, std::span<const Event> targets,
                                      double negligible = 1e-12, Exec exec = Exec::parallel);

}  // namespace uppe
