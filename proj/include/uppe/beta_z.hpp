#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uppe/field.hpp"

namespace uppe {

/// Root taken for β_z where k_⊥ > |ω|/c.
enum class BranchPolicy {
  evanescent_decay,  ///< β_z = i·sqrt(k_⊥² − ω²/c²), so e^{iβ_z z} decays for z > 0
  evanescent_zero,   ///< evanescent bins are dropped
};

const char* to_string(BranchPolicy p);
BranchPolicy branch_policy_from_string(const std::string& s);

/// β_z(k_x, k_y, ω) = sqrt(ω²/c² − k_⊥²) on the transverse-spectral lattice,
/// laid out (k_x, k_y, ω) with ω fastest.
class BetaZTable {
 public:
  BetaZTable(const GridSpec& grid, BranchPolicy policy, double light_line_epsilon);

  const GridSpec& grid() const { return grid_; }
  BranchPolicy policy() const { return policy_; }
  double epsilon() const { return epsilon_; }

  std::size_t size() const { return values_.size(); }
  std::size_t index(std::size_t ix, std::size_t iy, std::size_t it) const {
    return (ix * grid_.n[1] + iy) * grid_.n[3] + it;
  }

  cplx value(std::size_t i) const { return values_[i]; }
  bool singular(std::size_t i) const { return (flags_[i] & kSingular) != 0; }
  bool evanescent(std::size_t i) const { return (flags_[i] & kEvanescent) != 0; }
  /// False for light-line bins and, under evanescent_zero, for evanescent bins.
  bool active(std::size_t i) const {
    return !singular(i) && !(policy_ == BranchPolicy::evanescent_zero && evanescent(i));
  }

  std::size_t singular_count() const;
  std::size_t evanescent_count() const;

 private:
  static constexpr std::uint8_t kSingular = 1;
  static constexpr std::uint8_t kEvanescent = 2;

  GridSpec grid_;
  BranchPolicy policy_;
  double epsilon_;
  std::vector<cplx> values_;
  std::vector<std::uint8_t> flags_;
};

BetaZTable build_beta_z(const GridSpec& grid, BranchPolicy policy, double epsilon);

/// Fraction Σ_inactive |ũ|² / Σ |ũ|² of a field that is spectral in (x, y, t):
/// the spectral mass that a 1/β_z multiplication would drop.
double excluded_spectral_mass(const BetaZTable& beta, const Field& transverse_spectral);

}  // namespace uppe
