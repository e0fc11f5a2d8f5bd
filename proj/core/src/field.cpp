#include "pech/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pech/errors.hpp"

namespace pech {

const char* to_string(VBasis b) noexcept {
  switch (b) {
    case VBasis::cosine: return "cosine";
    case VBasis::sine: return "sine";
    case VBasis::none: return "none";
  }
  return "none";
}

VBasis product_basis(VBasis a, VBasis b) noexcept {
  if (a == VBasis::none || b == VBasis::none) return VBasis::none;
  return a == b ? VBasis::cosine : VBasis::sine;
}

VBasis flipped(VBasis b) noexcept {
  switch (b) {
    case VBasis::cosine: return VBasis::sine;
    case VBasis::sine: return VBasis::cosine;
    case VBasis::none: return VBasis::none;
  }
  return VBasis::none;
}

void GridSpec::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (nx < 4 || nx % 2 != 0) fail("grid.nx must be even and >= 4");
  if (ny < 4 || ny % 2 != 0) fail("grid.ny must be even and >= 4");
  if (nz < 3) fail("grid.nz must be >= 3");
  if (!(h > 0.0) || !std::isfinite(h)) fail("grid.h must be > 0");
}

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b))
    throw IncompatibleOperands("incompatible operands: fields live on different grids");
}

namespace {

VBasis sum_basis(VBasis a, VBasis b) noexcept { return a == b ? a : VBasis::none; }

}  // namespace

// ---------------------------------------------------------------- ScalarField3

ScalarField3::ScalarField3(const GridSpec& grid, VBasis basis)
    : grid_(grid), basis_(basis), values_(grid.size3(), 0.0) {}

ScalarField3::ScalarField3(const GridSpec& grid, VBasis basis, std::vector<double> values)
    : grid_(grid), basis_(basis), values_(std::move(values)) {
  if (values_.size() != grid_.size3())
    throw InputError("field value count does not match the grid");
}

ScalarField3 ScalarField3::with_basis(VBasis b) const {
  ScalarField3 out = *this;
  out.basis_ = b;
  return out;
}

bool ScalarField3::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField3& ScalarField3::operator+=(const ScalarField3& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += o.values_[n];
  basis_ = sum_basis(basis_, o.basis_);
  return *this;
}

ScalarField3& ScalarField3::operator-=(const ScalarField3& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] -= o.values_[n];
  basis_ = sum_basis(basis_, o.basis_);
  return *this;
}

ScalarField3& ScalarField3::operator*=(double a) noexcept {
  for (double& v : values_) v *= a;
  return *this;
}

ScalarField3 operator+(ScalarField3 a, const ScalarField3& b) { return a += b; }
ScalarField3 operator-(ScalarField3 a, const ScalarField3& b) { return a -= b; }
ScalarField3 operator*(ScalarField3 a, double s) { return a *= s; }
ScalarField3 operator*(double s, ScalarField3 a) { return a *= s; }

ScalarField3 operator*(const ScalarField3& a, const ScalarField3& b) {
  require_same_grid(a.grid(), b.grid());
  ScalarField3 out(a.grid(), product_basis(a.basis(), b.basis()));
  auto av = a.values();
  auto bv = b.values();
  auto ov = out.values();
  for (std::size_t n = 0; n < ov.size(); ++n) ov[n] = av[n] * bv[n];
  return out;
}

// ---------------------------------------------------------------- VectorFieldH

VectorFieldH::VectorFieldH(ScalarField3 a, ScalarField3 b) : u1(std::move(a)), u2(std::move(b)) {
  require_same_grid(u1.grid(), u2.grid());
  if (u1.basis() != u2.basis())
    throw IncompatibleOperands("vector components must share one vertical basis");
}

VectorFieldH& VectorFieldH::operator+=(const VectorFieldH& o) {
  u1 += o.u1;
  u2 += o.u2;
  return *this;
}

VectorFieldH& VectorFieldH::operator-=(const VectorFieldH& o) {
  u1 -= o.u1;
  u2 -= o.u2;
  return *this;
}

VectorFieldH& VectorFieldH::operator*=(double a) noexcept {
  u1 *= a;
  u2 *= a;
  return *this;
}

VectorFieldH operator+(VectorFieldH a, const VectorFieldH& b) { return a += b; }
VectorFieldH operator-(VectorFieldH a, const VectorFieldH& b) { return a -= b; }
VectorFieldH operator*(double s, VectorFieldH a) { return a *= s; }

// ---------------------------------------------------------------- ScalarField2

ScalarField2::ScalarField2(const GridSpec& grid) : grid_(grid), values_(grid.size2(), 0.0) {}

ScalarField2::ScalarField2(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size2())
    throw InputError("field value count does not match the grid");
}

ScalarField2& ScalarField2::operator+=(const ScalarField2& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += o.values_[n];
  return *this;
}

ScalarField2& ScalarField2::operator-=(const ScalarField2& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] -= o.values_[n];
  return *this;
}

ScalarField2& ScalarField2::operator*=(double a) noexcept {
  for (double& v : values_) v *= a;
  return *this;
}

ScalarField2 operator+(ScalarField2 a, const ScalarField2& b) { return a += b; }
ScalarField2 operator-(ScalarField2 a, const ScalarField2& b) { return a -= b; }
ScalarField2 operator*(double s, ScalarField2 a) { return a *= s; }

ScalarField2 operator*(const ScalarField2& a, const ScalarField2& b) {
  require_same_grid(a.grid(), b.grid());
  ScalarField2 out(a.grid());
  for (std::size_t n = 0; n < out.values().size(); ++n)
    out.values()[n] = a.values()[n] * b.values()[n];
  return out;
}

}  // namespace pech
