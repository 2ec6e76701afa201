#include "uppe/beta_z.hpp"

#include <cmath>

#include "uppe/numerics.hpp"

namespace uppe {

const char* to_string(BranchPolicy p) {
  return p == BranchPolicy::evanescent_decay ? "evanescent_decay" : "evanescent_zero";
}

BranchPolicy branch_policy_from_string(const std::string& s) {
  if (s == "evanescent_decay" || s == "decay") return BranchPolicy::evanescent_decay;
  if (s == "evanescent_zero" || s == "zero") return BranchPolicy::evanescent_zero;
  throw std::invalid_argument("unknown branch policy '" + s + "'");
}

BetaZTable::BetaZTable(const GridSpec& grid, BranchPolicy policy, double light_line_epsilon)
    : grid_(grid), policy_(policy), epsilon_(light_line_epsilon) {
  if (!(light_line_epsilon >= 0.0)) throw std::invalid_argument("light-line epsilon must be >= 0");
  const std::size_t nx = grid.n[0], ny = grid.n[1], nt = grid.n[3];
  values_.resize(nx * ny * nt);
  flags_.assign(nx * ny * nt, 0);
  const double eps2 = epsilon_ * epsilon_;
  for (std::size_t ix = 0; ix < nx; ++ix) {
    const double kx = grid.freq(Axis::x, ix);
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const double ky = grid.freq(Axis::y, iy);
      const double kperp2 = kx * kx + ky * ky;
      for (std::size_t it = 0; it < nt; ++it) {
        const double beta = grid.freq(Axis::t, it) / grid.c;
        const double s = beta * beta - kperp2;
        const std::size_t i = index(ix, iy, it);
        std::uint8_t f = 0;
        if (std::abs(s) <= eps2) f |= kSingular;
        if (s >= 0.0) {
          values_[i] = cplx(std::sqrt(s), 0.0);
        } else {
          f |= kEvanescent;
          values_[i] = policy_ == BranchPolicy::evanescent_decay ? cplx(0.0, std::sqrt(-s)) : cplx(0.0);
        }
        flags_[i] = f;
      }
    }
  }
}

std::size_t BetaZTable::singular_count() const {
  std::size_t n = 0;
  for (auto f : flags_) n += (f & kSingular) ? 1 : 0;
  return n;
}

std::size_t BetaZTable::evanescent_count() const {
  std::size_t n = 0;
  for (auto f : flags_) n += (f & kEvanescent) ? 1 : 0;
  return n;
}

BetaZTable build_beta_z(const GridSpec& grid, BranchPolicy policy, double epsilon) {
  return BetaZTable(grid, policy, epsilon);
}

double excluded_spectral_mass(const BetaZTable& beta, const Field& f) {
  for (Axis a : {Axis::x, Axis::y, Axis::t})
    if (f.rep(a) != Rep::spectral) throw ContractError("excluded_spectral_mass needs (x, y, t) spectral");
  const auto& g = f.grid();
  CompensatedSum excluded, total;
  for (std::size_t ix = 0; ix < g.n[0]; ++ix)
    for (std::size_t iy = 0; iy < g.n[1]; ++iy)
      for (std::size_t iz = 0; iz < g.n[2]; ++iz)
        for (std::size_t it = 0; it < g.n[3]; ++it) {
          const double e = std::norm(f(ix, iy, iz, it));
          total.add(e);
          if (!beta.active(beta.index(ix, iy, it))) excluded.add(e);
        }
  return total.value() > 0.0 ? excluded.value() / total.value() : 0.0;
}

}  // namespace uppe
