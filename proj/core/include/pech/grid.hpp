#pragma once

#include <cstddef>
#include <numbers>

namespace pech {

/// Vertical expansion carried by a 3D field.
///  - cosine: Neumann at z = 0, -h (velocity, stress-free walls)
///  - sine:   Dirichlet at z = 0, -h (shifted temperature)
///  - none:   general grid data; vertical spectral operators are unavailable
enum class VBasis { cosine, sine, none };

const char* to_string(VBasis b) noexcept;

/// Parity of a pointwise product: cos*cos = sin*sin = cos, cos*sin = sin.
VBasis product_basis(VBasis a, VBasis b) noexcept;

/// Opposite parity, as produced by one vertical derivative.
VBasis flipped(VBasis b) noexcept;

/// Discretisation of the channel M x (-h, 0) with M = (0,1)^2 periodic.
///
/// Horizontal points are x_i = i/nx, y_j = j/ny. Vertical points are the
/// endpoint-inclusive uniform levels z_k = -h + k h/(nz-1), k = 0..nz-1, which
/// carry the cosine modes cos(m pi (z+h)/h), m = 0..nz-1 (DCT-I) and the sine
/// modes sin(m pi (z+h)/h), m = 1..nz-2 (DST-I on interior levels).
struct GridSpec {
  int nx = 0;
  int ny = 0;
  int nz = 0;
  double h = 1.0;
  bool dealias = true;

  /// Throws ConfigError unless nx, ny are even and >= 4, nz >= 3, h > 0.
  void validate() const;

  int intervals() const noexcept { return nz - 1; }
  double dx() const noexcept { return 1.0 / nx; }
  double dy() const noexcept { return 1.0 / ny; }
  double dz() const noexcept { return h / (nz - 1); }
  double x(int i) const noexcept { return i * dx(); }
  double y(int j) const noexcept { return j * dy(); }
  double z(int k) const noexcept { return -h + k * dz(); }

  std::size_t size2() const noexcept { return std::size_t(nx) * ny; }
  std::size_t size3() const noexcept { return size2() * nz; }
  std::size_t index(int i, int j, int k) const noexcept {
    return std::size_t(i) + std::size_t(nx) * (std::size_t(j) + std::size_t(ny) * k);
  }
  std::size_t index2(int i, int j) const noexcept {
    return std::size_t(i) + std::size_t(nx) * j;
  }

  /// Largest retained |kx|, |ky| and vertical mode index. With dealiasing on
  /// these are the 2/3-rule cutoffs (3K < n horizontally, 3M < 2(nz-1)
  /// vertically), which makes every quadratic product alias-free on the
  /// retained modes and every triple product integrate exactly.
  int kx_cut() const noexcept { return dealias ? (nx - 1) / 3 : nx / 2; }
  int ky_cut() const noexcept { return dealias ? (ny - 1) / 3 : ny / 2; }
  int m_cut() const noexcept { return dealias ? (2 * (nz - 1) - 1) / 3 : nz - 1; }

  /// Trapezoid weight of level k (sums to h).
  double zweight(int k) const noexcept {
    return (k == 0 || k == nz - 1) ? 0.5 * dz() : dz();
  }

  bool operator==(const GridSpec&) const = default;
};

inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace pech
