#include "uppe/field.hpp"

#include <cmath>
#include <numbers>

#include "uppe/numerics.hpp"

namespace uppe {

Field::Field(const GridSpec& grid, RepTags rep) : grid_(grid), rep_(rep), data_(grid.size()) {}

Field::Field(const GridSpec& grid, RepTags rep, std::vector<cplx> data)
    : grid_(grid), rep_(rep), data_(std::move(data)) {
  if (data_.size() != grid_.size()) throw std::invalid_argument("field data length does not match grid");
}

double Field::measure() const {
  double m = 1.0;
  for (Axis a : all_axes) {
    m *= rep(a) == Rep::physical ? grid_.step(a) : grid_.spectral_step(a) / (2.0 * std::numbers::pi);
  }
  return m;
}

void Field::require_compatible(const Field& other) const {
  if (!(grid_ == other.grid_)) throw ContractError("fields live on different grids");
  if (rep_ != other.rep_) throw ContractError("fields are in different representations");
}

Field& Field::operator+=(const Field& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Field& Field::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx s, Field a) { return a *= s; }

cplx inner_product(const Field& u, const Field& phi) {
  if (!(u.grid() == phi.grid()) || u.rep() != phi.rep())
    throw ContractError("inner product needs matching grids and representations");
  CompensatedComplexSum s;
  const auto a = u.data();
  const auto b = phi.data();
  for (std::size_t i = 0; i < a.size(); ++i) s.add(a[i] * std::conj(b[i]));
  return s.value() * u.measure();
}

double l2_norm(const Field& u) {
  CompensatedSum s;
  for (const auto& v : u.data()) s.add(std::norm(v));
  return std::sqrt(s.value() * u.measure());
}

double relative_l2(const Field& a, const Field& b, const Field& reference) {
  const double den = l2_norm(reference);
  const double num = l2_norm(a - b);
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return num / den;
}

double max_abs(const Field& u) {
  double m = 0.0;
  for (const auto& v : u.data()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace uppe
