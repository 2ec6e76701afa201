#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace uppe {

enum class Axis : int { x = 0, y = 1, z = 2, t = 3 };

inline constexpr std::array<Axis, 4> all_axes{Axis::x, Axis::y, Axis::z, Axis::t};

inline constexpr int axis_index(Axis a) { return static_cast<int>(a); }

const char* axis_name(Axis a);

/// Subset of {x, y, z, t}.
class AxisSet {
 public:
  constexpr AxisSet() = default;
  constexpr AxisSet(std::initializer_list<Axis> axes) {
    for (Axis a : axes) bits_ |= bit(a);
  }

  constexpr bool contains(Axis a) const { return (bits_ & bit(a)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr AxisSet with(Axis a) const { return from_bits(bits_ | bit(a)); }
  constexpr std::uint8_t bits() const { return bits_; }

  static constexpr AxisSet all() { return from_bits(0xF); }
  static constexpr AxisSet space() { return AxisSet{Axis::x, Axis::y, Axis::z}; }
  static constexpr AxisSet transverse_time() { return AxisSet{Axis::x, Axis::y, Axis::t}; }

  friend constexpr bool operator==(AxisSet, AxisSet) = default;

 private:
  static constexpr std::uint8_t bit(Axis a) { return static_cast<std::uint8_t>(1u << axis_index(a)); }
  static constexpr AxisSet from_bits(std::uint8_t b) {
    AxisSet s;
    s.bits_ = b;
    return s;
  }
  std::uint8_t bits_ = 0;
};

/// Sign of a centered bin index: bins below n/2 are negative (the Nyquist
/// bin j = 0 included), n/2 is the origin.
inline constexpr int bin_sign(std::size_t j, std::size_t n) {
  const auto half = n / 2;
  return j < half ? -1 : (j == half ? 0 : 1);
}

/// Uniform space-time grid centered on the origin and its dual spectral
/// lattice. Counts are even so both a zero bin and a Nyquist bin exist.
struct GridSpec {
  std::array<std::size_t, 4> n{};
  std::array<double, 4> d{};
  double c = 1.0;

  std::size_t count(Axis a) const { return n[axis_index(a)]; }
  double step(Axis a) const { return d[axis_index(a)]; }
  double length(Axis a) const { return static_cast<double>(count(a)) * step(a); }

  /// dk_a = 2π/(n_a d_a); the last axis is dω.
  double spectral_step(Axis a) const;

  /// Physical coordinate (j - n/2)·d.
  double coord(Axis a, std::size_t j) const {
    return (static_cast<double>(j) - static_cast<double>(count(a) / 2)) * step(a);
  }
  /// Spectral coordinate (j - n/2)·dk.
  double freq(Axis a, std::size_t j) const {
    return (static_cast<double>(j) - static_cast<double>(count(a) / 2)) * spectral_step(a);
  }

  std::size_t origin(Axis a) const { return count(a) / 2; }

  std::size_t size() const { return n[0] * n[1] * n[2] * n[3]; }

  /// Row-major with t fastest.
  std::size_t stride(Axis a) const {
    std::size_t s = 1;
    for (int k = 3; k > axis_index(a); --k) s *= n[k];
    return s;
  }
  std::size_t index(std::size_t ix, std::size_t iy, std::size_t iz, std::size_t it) const {
    return ((ix * n[1] + iy) * n[2] + iz) * n[3] + it;
  }

  /// Product of physical steps over every axis.
  double cell_measure() const { return d[0] * d[1] * d[2] * d[3]; }
  double spectral_cell_measure() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

GridSpec make_grid(const std::array<std::size_t, 4>& counts, const std::array<double, 4>& steps,
                   double c = 1.0);

}  // namespace uppe
