#include "pech/trial.hpp"

#include <cmath>
#include <random>

#include "pech/errors.hpp"
#include "pech/spectral.hpp"

namespace pech {

TrialFunction TrialFunction::generate(TrialKind kind, std::uint64_t seed, int band_limit, double decay, VBasis basis) {
  if (band_limit < 0) throw ConfigError("trial band_limit must be >= 0");
  if (kind == TrialKind::field3D && basis == VBasis::none) throw ConfigError("3D trials need a cosine or sine basis");
  TrialFunction f;
  f.kind = kind;
  f.seed = seed;
  f.band_limit = band_limit;
  f.decay = decay;
  f.basis = basis;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int B = band_limit;
  const int m_lo = kind == TrialKind::field2D ? 0 : (basis == VBasis::sine ? 1 : 0);
  const int m_hi = kind == TrialKind::field2D ? 0 : B;
  for (int m = m_lo; m <= m_hi; ++m)
    for (int kx = 0; kx <= B; ++kx)
      for (int ky = -B; ky <= B; ++ky) {
        if (kx == 0 && ky < 0) continue;
        const double scale = std::pow(1.0 + std::sqrt(double(kx * kx + ky * ky + m * m)), -decay);
        TrialMode md{kx, ky, m, scale * u(rng), scale * u(rng)};
        if (kx == 0 && ky == 0) md.b = 0.0;
        f.modes.push_back(md);
      }
  return f;
}

TrialFunction TrialFunction::zero_mean() const {
  TrialFunction out = *this;
  std::erase_if(out.modes, [](const TrialMode& m) { return m.kx == 0 && m.ky == 0; });
  return out;
}

namespace {

void check_band(const TrialFunction& f, const GridSpec& g) {
  if (2 * f.band_limit >= g.nx || 2 * f.band_limit >= g.ny)
    throw ConfigError("trial band_limit " + std::to_string(f.band_limit) + " needs nx, ny > " +
                      std::to_string(2 * f.band_limit));
  if (f.kind == TrialKind::field3D && f.band_limit >= g.nz - 1)
    throw ConfigError("trial band_limit " + std::to_string(f.band_limit) + " needs nz > " +
                      std::to_string(f.band_limit + 1));
}

// Writes a cos + b sin into the half-spectrum slots (with the mirrored slot
// for kx = 0) of one horizontal slab.
template <class Slot>
void place(const TrialMode& md, const GridSpec& g, Slot&& slot) {
  const int jy = md.ky >= 0 ? md.ky : md.ky + g.ny;
  if (md.kx == 0 && md.ky == 0) {
    slot(0, 0) += md.a;
    return;
  }
  const cplx c(0.5 * md.a, -0.5 * md.b);
  slot(jy, md.kx) += c;
  if (md.kx == 0) slot((g.ny - md.ky) % g.ny, 0) += std::conj(c);
}

}  // namespace

ScalarField2 TrialFunction::realize2(const GridSpec& g) const {
  if (kind != TrialKind::field2D) throw InputError("realize2 needs a 2D trial");
  check_band(*this, g);
  Modal2 c(g);
  for (const TrialMode& md : modes) place(md, g, [&](int jy, int ix) -> cplx& { return c.c[c.idx(jy, ix)]; });
  return inverse(c);
}

ScalarField3 TrialFunction::realize3(const GridSpec& g) const {
  if (kind != TrialKind::field3D) throw InputError("realize3 needs a 3D trial");
  check_band(*this, g);
  Modal3 c(g, basis);
  for (const TrialMode& md : modes)
    place(md, g, [&](int jy, int ix) -> cplx& { return c.c[c.idx(md.m, jy, ix)]; });
  return inverse(c);
}

}  // namespace pech
