#pragma once

#include <complex>
#include <vector>

#include "pech/field.hpp"

namespace pech {

using cplx = std::complex<double>;

/// Modal coefficients of a 3D field. Horizontal Fourier (half spectrum in x)
/// times the vertical expansion named by `basis`:
///   cosine: f = sum_m a_m cos(m pi (z+h)/h), m = 0..nz-1
///   sine:   f = sum_m b_m sin(m pi (z+h)/h), m = 1..nz-2 (slots 0, nz-1 unused)
///   none:   slot m holds the horizontal coefficients of level m
/// Coefficients are normalised so that f(x) = sum_k c_k exp(2 pi i k.x).
struct Modal3 {
  GridSpec grid{};
  VBasis basis = VBasis::none;
  std::vector<cplx> c;

  Modal3() = default;
  Modal3(const GridSpec& g, VBasis b);

  int nxh() const noexcept { return grid.nx / 2 + 1; }
  std::size_t slab() const noexcept { return std::size_t(grid.ny) * nxh(); }
  std::size_t idx(int m, int jy, int ix) const noexcept {
    return (std::size_t(m) * grid.ny + jy) * nxh() + ix;
  }

  Modal3& operator+=(const Modal3& o);
  Modal3& operator-=(const Modal3& o);
  Modal3& operator*=(double a) noexcept;
};

/// Horizontal Fourier coefficients of a field on M.
struct Modal2 {
  GridSpec grid{};
  std::vector<cplx> c;

  Modal2() = default;
  explicit Modal2(const GridSpec& g);

  int nxh() const noexcept { return grid.nx / 2 + 1; }
  std::size_t idx(int jy, int ix) const noexcept { return std::size_t(jy) * nxh() + ix; }
};

/// Signed integer wavenumbers of slot (jy, ix).
inline int wave_x(const GridSpec&, int ix) noexcept { return ix; }
inline int wave_y(const GridSpec& g, int jy) noexcept { return jy <= g.ny / 2 ? jy : jy - g.ny; }

Modal3 forward(const ScalarField3& f);
ScalarField3 inverse(const Modal3& m);
Modal2 forward(const ScalarField2& f);
ScalarField2 inverse(const Modal2& m);

/// Horizontal-only transform of each level (result tagged `none`).
Modal3 forward_levels(const ScalarField3& f);

// Modal operators. All return fresh coefficients.
Modal3 mdx(const Modal3& a);
Modal3 mdy(const Modal3& a);
Modal3 mlap(const Modal3& a);
/// Vertical derivative; flips cosine <-> sine. Throws on `none`.
Modal3 mdz(const Modal3& a);
Modal3 mdzz(const Modal3& a);
/// Applies the 2/3 rule (no-op when the grid has dealiasing disabled).
void truncate(Modal3& a);
void truncate(Modal2& a);

Modal2 mdx(const Modal2& a);
Modal2 mdy(const Modal2& a);
Modal2 mlap(const Modal2& a);

/// Barotropic (m = 0) slice of a cosine field.
Modal2 mode0(const Modal3& a);

/// Integral over the domain of |f|^2 (mean over M, integral in z), by Parseval.
double l2sq(const Modal3& a);
double l2sq(const Modal2& a);
/// Integral of f g over the domain, by Parseval. Both must share a basis.
double inner(const Modal3& a, const Modal3& b);

}  // namespace pech
