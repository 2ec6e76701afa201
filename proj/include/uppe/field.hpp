#pragma once

#include <array>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "uppe/grid.hpp"

namespace uppe {

using cplx = std::complex<double>;

enum class Rep : std::uint8_t { physical, spectral };

/// Execution policy for the data-parallel kernels. `serial` is the reference
/// path; both produce bit-identical results.
enum class Exec { serial, parallel };

/// Thrown when an operation is handed a field in the wrong representation.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using RepTags = std::array<Rep, 4>;

inline constexpr RepTags all_physical{Rep::physical, Rep::physical, Rep::physical, Rep::physical};
inline constexpr RepTags all_spectral{Rep::spectral, Rep::spectral, Rep::spectral, Rep::spectral};

/// Complex samples over the 4D grid; each axis is tagged physical or spectral.
class Field {
 public:
  Field() = default;
  Field(const GridSpec& grid, RepTags rep);
  Field(const GridSpec& grid, RepTags rep, std::vector<cplx> data);

  const GridSpec& grid() const { return grid_; }
  const RepTags& rep() const { return rep_; }
  Rep rep(Axis a) const { return rep_[axis_index(a)]; }
  void set_rep(Axis a, Rep r) { rep_[axis_index(a)] = r; }

  std::size_t size() const { return data_.size(); }
  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }
  std::vector<cplx>& values() { return data_; }
  const std::vector<cplx>& values() const { return data_; }

  cplx& operator()(std::size_t ix, std::size_t iy, std::size_t iz, std::size_t it) {
    return data_[grid_.index(ix, iy, iz, it)];
  }
  const cplx& operator()(std::size_t ix, std::size_t iy, std::size_t iz, std::size_t it) const {
    return data_[grid_.index(ix, iy, iz, it)];
  }

  /// Product over axes of d_a (physical) or dk_a/(2π) (spectral): the weight
  /// under which the discrete sums approximate the continuum integrals.
  double measure() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(cplx s);

 private:
  void require_compatible(const Field& other) const;

  GridSpec grid_{};
  RepTags rep_ = all_physical;
  std::vector<cplx> data_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx s, Field a);

/// ⟨u, φ⟩ = Σ u·conj(φ)·measure(u), compensated.
cplx inner_product(const Field& u, const Field& phi);
/// sqrt(Σ|u|²·measure), compensated.
double l2_norm(const Field& u);
/// ‖a − b‖ / ‖reference‖; 0 when both vanish.
double relative_l2(const Field& a, const Field& b, const Field& reference);
inline double relative_l2(const Field& a, const Field& b) { return relative_l2(a, b, b); }
/// Largest |u| over the field.
double max_abs(const Field& u);

}  // namespace uppe
