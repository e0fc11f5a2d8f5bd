#pragma once

#include <span>
#include <vector>

#include "pech/grid.hpp"

namespace pech {

/// Real field on the collocation points of M x [-h, 0], stored x-fastest,
/// then y, then z.
class ScalarField3 {
 public:
  ScalarField3() = default;
  ScalarField3(const GridSpec& grid, VBasis basis);
  ScalarField3(const GridSpec& grid, VBasis basis, std::vector<double> values);

  /// Samples f(x, y, z) on the grid.
  template <class F>
  static ScalarField3 sample(const GridSpec& grid, VBasis basis, F&& f) {
    ScalarField3 out(grid, basis);
    for (int k = 0; k < grid.nz; ++k)
      for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
          out.values_[grid.index(i, j, k)] = f(grid.x(i), grid.y(j), grid.z(k));
    return out;
  }

  const GridSpec& grid() const noexcept { return grid_; }
  VBasis basis() const noexcept { return basis_; }
  ScalarField3 with_basis(VBasis b) const;

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  double& operator()(int i, int j, int k) noexcept { return values_[grid_.index(i, j, k)]; }
  double operator()(int i, int j, int k) const noexcept { return values_[grid_.index(i, j, k)]; }

  bool all_finite() const noexcept;

  ScalarField3& operator+=(const ScalarField3& o);
  ScalarField3& operator-=(const ScalarField3& o);
  ScalarField3& operator*=(double a) noexcept;

 private:
  GridSpec grid_{};
  VBasis basis_ = VBasis::none;
  std::vector<double> values_;
};

ScalarField3 operator+(ScalarField3 a, const ScalarField3& b);
ScalarField3 operator-(ScalarField3 a, const ScalarField3& b);
ScalarField3 operator*(ScalarField3 a, double s);
ScalarField3 operator*(double s, ScalarField3 a);
/// Pointwise product, tagged by parity (see product_basis).
ScalarField3 operator*(const ScalarField3& a, const ScalarField3& b);

/// Horizontal vector field (v1, v2); both components share grid and basis.
struct VectorFieldH {
  ScalarField3 u1;
  ScalarField3 u2;

  VectorFieldH() = default;
  VectorFieldH(ScalarField3 a, ScalarField3 b);
  VectorFieldH(const GridSpec& grid, VBasis basis) : u1(grid, basis), u2(grid, basis) {}

  const GridSpec& grid() const noexcept { return u1.grid(); }
  VBasis basis() const noexcept { return u1.basis(); }
  bool all_finite() const noexcept { return u1.all_finite() && u2.all_finite(); }

  VectorFieldH& operator+=(const VectorFieldH& o);
  VectorFieldH& operator-=(const VectorFieldH& o);
  VectorFieldH& operator*=(double a) noexcept;
};

VectorFieldH operator+(VectorFieldH a, const VectorFieldH& b);
VectorFieldH operator-(VectorFieldH a, const VectorFieldH& b);
VectorFieldH operator*(double s, VectorFieldH a);

/// Real field on the horizontal torus M, stored x-fastest.
class ScalarField2 {
 public:
  ScalarField2() = default;
  explicit ScalarField2(const GridSpec& grid);
  ScalarField2(const GridSpec& grid, std::vector<double> values);

  template <class F>
  static ScalarField2 sample(const GridSpec& grid, F&& f) {
    ScalarField2 out(grid);
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) out.values_[grid.index2(i, j)] = f(grid.x(i), grid.y(j));
    return out;
  }

  const GridSpec& grid() const noexcept { return grid_; }
  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  double& operator()(int i, int j) noexcept { return values_[grid_.index2(i, j)]; }
  double operator()(int i, int j) const noexcept { return values_[grid_.index2(i, j)]; }

  ScalarField2& operator+=(const ScalarField2& o);
  ScalarField2& operator-=(const ScalarField2& o);
  ScalarField2& operator*=(double a) noexcept;

 private:
  GridSpec grid_{};
  std::vector<double> values_;
};

ScalarField2 operator+(ScalarField2 a, const ScalarField2& b);
ScalarField2 operator-(ScalarField2 a, const ScalarField2& b);
ScalarField2 operator*(double s, ScalarField2 a);
ScalarField2 operator*(const ScalarField2& a, const ScalarField2& b);

/// Vector field on M.
struct VectorField2 {
  ScalarField2 u1;
  ScalarField2 u2;

  const GridSpec& grid() const noexcept { return u1.grid(); }
};

/// Throws IncompatibleOperands when the two grids differ.
void require_same_grid(const GridSpec& a, const GridSpec& b);

}  // namespace pech
