#pragma once

#include <cstdint>
#include <vector>

#include "pech/field.hpp"

namespace pech {

enum class TrialKind { field2D, field3D };

/// One real Fourier mode a cos(2 pi k.x) + b sin(2 pi k.x), times the vertical
/// function of index m for 3D trials.
struct TrialMode {
  int kx = 0, ky = 0, m = 0;
  double a = 0.0, b = 0.0;
};

/// Random band-limited test function. The coefficient list depends only on
/// (kind, seed, band_limit, decay, basis), never on the grid it is sampled on,
/// so the same function can be compared across resolutions.
struct TrialFunction {
  TrialKind kind = TrialKind::field2D;
  std::uint64_t seed = 0;
  int band_limit = 5;
  double decay = 2.0;  ///< amplitudes scale like (1 + |k|)^-decay
  VBasis basis = VBasis::cosine;
  std::vector<TrialMode> modes;

  static TrialFunction generate(TrialKind kind, std::uint64_t seed, int band_limit, double decay = 2.0,
                                VBasis basis = VBasis::cosine);

  /// Drops the horizontally constant modes.
  TrialFunction zero_mean() const;

  /// Sample on a grid; throws ConfigError if the grid cannot carry the band
  /// without touching the Nyquist modes.
  ScalarField2 realize2(const GridSpec& g) const;
  ScalarField3 realize3(const GridSpec& g) const;
};

}  // namespace pech
