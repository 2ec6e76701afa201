#pragma once

#include <array>
#include <span>

#include "uppe/field.hpp"

namespace uppe {

/// Measure-weighted Fourier transform over the requested axes, with the
/// electrodynamics sign convention: e^{−i k·r} on spatial axes and e^{+iωt}
/// on the temporal axis. Bins are centered on both sides, so the discrete sum
/// is a Riemann sum of the continuum integral.
Field forward_transform(const Field& f, AxisSet axes, Exec exec = Exec::parallel);

/// Inverse of forward_transform: (1/2π)·Σ·dk per axis with the opposite signs.
Field inverse_transform(const Field& f, AxisSet axes, Exec exec = Exec::parallel);

/// In-place variants.
void forward_transform_inplace(Field& f, AxisSet axes, Exec exec = Exec::parallel);
void inverse_transform_inplace(Field& f, AxisSet axes, Exec exec = Exec::parallel);

namespace detail {

enum class Direction { forward, inverse };

/// Transforms one axis of a row-major 4D block (t fastest) in place. `extent`
/// may carry 1 on axes that are absent, which lets 3D slices reuse the engine.
void transform_axis(std::span<cplx> data, const std::array<std::size_t, 4>& extent, Axis axis,
                    double step, Direction dir, Exec exec);

}  // namespace detail

}  // namespace uppe
