#include "pech/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

#include "pech/errors.hpp"

namespace pech {

namespace {

enum class PlanKind { r2c3, c2r3, r2c2, c2r2, dct1, dst1 };

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const noexcept { fftw_destroy_plan(p); }
};
using PlanPtr = std::unique_ptr<fftw_plan_s, PlanDeleter>;

constexpr unsigned plan_flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex plan_mutex;
std::map<std::tuple<PlanKind, int, int, int>, PlanPtr> plan_cache;

fftw_plan make_plan(PlanKind kind, const GridSpec& g) {
  const int nxh = g.nx / 2 + 1;
  const int n2[2] = {g.ny, g.nx};
  const int slab = 2 * g.ny * nxh;  // doubles per level of interleaved complex data
  const int N = g.nz - 1;
  std::vector<double> rbuf(std::size_t(g.nx) * g.ny * g.nz + 8);
  std::vector<double> cbuf(std::size_t(slab) * g.nz + 8);
  auto* cb = reinterpret_cast<fftw_complex*>(cbuf.data());
  switch (kind) {
    case PlanKind::r2c3:
      return fftw_plan_many_dft_r2c(2, n2, g.nz, rbuf.data(), nullptr, 1, g.nx * g.ny, cb, nullptr,
                                    1, g.ny * nxh, plan_flags);
    case PlanKind::c2r3:
      return fftw_plan_many_dft_c2r(2, n2, g.nz, cb, nullptr, 1, g.ny * nxh, rbuf.data(), nullptr,
                                    1, g.nx * g.ny, plan_flags);
    case PlanKind::r2c2:
      return fftw_plan_dft_r2c_2d(g.ny, g.nx, rbuf.data(), cb, plan_flags);
    case PlanKind::c2r2:
      return fftw_plan_dft_c2r_2d(g.ny, g.nx, cb, rbuf.data(), plan_flags);
    case PlanKind::dct1: {
      const int n = N + 1;
      const fftw_r2r_kind k = FFTW_REDFT00;
      return fftw_plan_many_r2r(1, &n, slab, cbuf.data(), nullptr, slab, 1, cbuf.data(), nullptr,
                                slab, 1, &k, plan_flags);
    }
    case PlanKind::dst1: {
      const int n = N - 1;
      const fftw_r2r_kind k = FFTW_RODFT00;
      return fftw_plan_many_r2r(1, &n, slab, cbuf.data(), nullptr, slab, 1, cbuf.data(), nullptr,
                                slab, 1, &k, plan_flags);
    }
  }
  return nullptr;
}

fftw_plan plan_for(PlanKind kind, const GridSpec& g) {
  std::lock_guard lock(plan_mutex);
  auto key = std::make_tuple(kind, g.nx, g.ny, g.nz);
  auto it = plan_cache.find(key);
  if (it != plan_cache.end()) return it->second.get();
  fftw_plan p = make_plan(kind, g);
  if (!p) throw Error("FFTW failed to create a plan");
  plan_cache.emplace(key, PlanPtr(p));
  return p;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

// Vertical transform in place on interleaved data; `inverse` selects the
// coefficient scaling of the synthesis direction.
void vertical(Modal3& a, bool inverse_dir) {
  const GridSpec& g = a.grid;
  const int N = g.nz - 1;
  const std::size_t slab = a.slab();
  double* d = reinterpret_cast<double*>(a.c.data());
  if (a.basis == VBasis::cosine) {
    if (inverse_dir) {
      for (int m = 1; m < N; ++m)
        for (std::size_t s = 0; s < slab; ++s) a.c[m * slab + s] *= 0.5;
    }
    fftw_execute_r2r(plan_for(PlanKind::dct1, g), d, d);
    if (!inverse_dir) {
      for (int m = 0; m <= N; ++m) {
        const double scale = (m == 0 || m == N) ? 1.0 / (2 * N) : 1.0 / N;
        for (std::size_t s = 0; s < slab; ++s) a.c[m * slab + s] *= scale;
      }
    }
  } else if (a.basis == VBasis::sine) {
    const double scale = inverse_dir ? 0.5 : 1.0 / N;
    for (std::size_t s = 0; s < slab; ++s) {
      a.c[s] = 0.0;
      a.c[N * slab + s] = 0.0;
    }
    if (inverse_dir)
      for (std::size_t n = slab; n < N * slab; ++n) a.c[n] *= scale;
    double* interior = d + 2 * slab;
    fftw_execute_r2r(plan_for(PlanKind::dst1, g), interior, interior);
    if (!inverse_dir)
      for (std::size_t n = slab; n < N * slab; ++n) a.c[n] *= scale;
  }
}

}  // namespace

Modal3::Modal3(const GridSpec& g, VBasis b)
    : grid(g), basis(b), c(std::size_t(g.nz) * g.ny * (g.nx / 2 + 1)) {}

Modal3& Modal3::operator+=(const Modal3& o) {
  require_same_grid(grid, o.grid);
  if (basis != o.basis) throw IncompatibleOperands("modal sum of fields with different bases");
  for (std::size_t n = 0; n < c.size(); ++n) c[n] += o.c[n];
  return *this;
}

Modal3& Modal3::operator-=(const Modal3& o) {
  require_same_grid(grid, o.grid);
  if (basis != o.basis) throw IncompatibleOperands("modal sum of fields with different bases");
  for (std::size_t n = 0; n < c.size(); ++n) c[n] -= o.c[n];
  return *this;
}

Modal3& Modal3::operator*=(double a) noexcept {
  for (auto& v : c) v *= a;
  return *this;
}

Modal2::Modal2(const GridSpec& g) : grid(g), c(std::size_t(g.ny) * (g.nx / 2 + 1)) {}

Modal3 forward_levels(const ScalarField3& f) {
  const GridSpec& g = f.grid();
  Modal3 out(g, VBasis::none);
  std::vector<double> in(f.values().begin(), f.values().end());
  fftw_execute_dft_r2c(plan_for(PlanKind::r2c3, g), in.data(), as_fftw(out.c.data()));
  out *= 1.0 / (double(g.nx) * g.ny);
  return out;
}

Modal3 forward(const ScalarField3& f) {
  Modal3 out = forward_levels(f);
  out.basis = f.basis();
  vertical(out, false);
  return out;
}

ScalarField3 inverse(const Modal3& m) {
  const GridSpec& g = m.grid;
  Modal3 work = m;
  vertical(work, true);
  ScalarField3 out(g, m.basis);
  fftw_execute_dft_c2r(plan_for(PlanKind::c2r3, g), as_fftw(work.c.data()), out.values().data());
  return out;
}

Modal2 forward(const ScalarField2& f) {
  const GridSpec& g = f.grid();
  Modal2 out(g);
  std::vector<double> in(f.values().begin(), f.values().end());
  fftw_execute_dft_r2c(plan_for(PlanKind::r2c2, g), in.data(), as_fftw(out.c.data()));
  const double s = 1.0 / (double(g.nx) * g.ny);
  for (auto& v : out.c) v *= s;
  return out;
}

ScalarField2 inverse(const Modal2& m) {
  std::vector<cplx> work = m.c;
  ScalarField2 out(m.grid);
  fftw_execute_dft_c2r(plan_for(PlanKind::c2r2, m.grid), as_fftw(work.data()),
                       out.values().data());
  return out;
}

namespace {

// Multiplies every slot by sym(kx, ky); kx, ky are signed integer wavenumbers.
template <class Sym>
void apply_h(std::vector<cplx>& c, const GridSpec& g, int levels, Sym&& sym) {
  const int nxh = g.nx / 2 + 1;
  std::size_t n = 0;
  for (int m = 0; m < levels; ++m)
    for (int jy = 0; jy < g.ny; ++jy) {
      const int ky = wave_y(g, jy);
      for (int ix = 0; ix < nxh; ++ix, ++n) c[n] *= sym(ix, ky, jy);
    }
}

cplx dx_sym(const GridSpec& g, int ix) {
  return ix == g.nx / 2 ? cplx{} : cplx(0.0, two_pi * ix);
}
cplx dy_sym(const GridSpec& g, int jy, int ky) {
  return jy == g.ny / 2 ? cplx{} : cplx(0.0, two_pi * ky);
}
double lap_sym(int kx, int ky) { return -two_pi * two_pi * (double(kx) * kx + double(ky) * ky); }

}  // namespace

Modal3 mdx(const Modal3& a) {
  Modal3 out = a;
  apply_h(out.c, a.grid, a.grid.nz, [&](int ix, int, int) { return dx_sym(a.grid, ix); });
  return out;
}

Modal3 mdy(const Modal3& a) {
  Modal3 out = a;
  apply_h(out.c, a.grid, a.grid.nz, [&](int, int ky, int jy) { return dy_sym(a.grid, jy, ky); });
  return out;
}

Modal3 mlap(const Modal3& a) {
  Modal3 out = a;
  apply_h(out.c, a.grid, a.grid.nz, [](int ix, int ky, int) { return cplx(lap_sym(ix, ky)); });
  return out;
}

Modal2 mdx(const Modal2& a) {
  Modal2 out = a;
  apply_h(out.c, a.grid, 1, [&](int ix, int, int) { return dx_sym(a.grid, ix); });
  return out;
}

Modal2 mdy(const Modal2& a) {
  Modal2 out = a;
  apply_h(out.c, a.grid, 1, [&](int, int ky, int jy) { return dy_sym(a.grid, jy, ky); });
  return out;
}

Modal2 mlap(const Modal2& a) {
  Modal2 out = a;
  apply_h(out.c, a.grid, 1, [](int ix, int ky, int) { return cplx(lap_sym(ix, ky)); });
  return out;
}

Modal3 mdz(const Modal3& a) {
  if (a.basis == VBasis::none)
    throw IncompatibleOperands("vertical derivative needs a cosine or sine field");
  const GridSpec& g = a.grid;
  const int N = g.nz - 1;
  const std::size_t slab = a.slab();
  const double kz = std::numbers::pi / g.h;
  Modal3 out(g, flipped(a.basis));
  // d/dz cos(m k z') = -m k sin(m k z'); d/dz sin(m k z') = m k cos(m k z').
  const double sign = a.basis == VBasis::cosine ? -1.0 : 1.0;
  for (int m = 1; m < N; ++m)
    for (std::size_t s = 0; s < slab; ++s) out.c[m * slab + s] = sign * m * kz * a.c[m * slab + s];
  return out;
}

Modal3 mdzz(const Modal3& a) {
  if (a.basis == VBasis::none)
    throw IncompatibleOperands("vertical derivative needs a cosine or sine field");
  const std::size_t slab = a.slab();
  const double kz = std::numbers::pi / a.grid.h;
  Modal3 out = a;
  for (int m = 0; m < a.grid.nz; ++m) {
    const double lam = -(m * kz) * (m * kz);
    for (std::size_t s = 0; s < slab; ++s) out.c[m * slab + s] *= lam;
  }
  if (a.basis == VBasis::sine)
    for (std::size_t s = 0; s < slab; ++s) out.c[(a.grid.nz - 1) * slab + s] = 0.0;
  return out;
}

void truncate(Modal3& a) {
  const GridSpec& g = a.grid;
  if (!g.dealias) return;
  const int kc = g.kx_cut(), lc = g.ky_cut();
  const int mc = a.basis == VBasis::none ? g.nz - 1 : g.m_cut();
  const int nxh = a.nxh();
  std::size_t n = 0;
  for (int m = 0; m < g.nz; ++m)
    for (int jy = 0; jy < g.ny; ++jy) {
      const int ky = std::abs(wave_y(g, jy));
      for (int ix = 0; ix < nxh; ++ix, ++n)
        if (m > mc || ky > lc || ix > kc) a.c[n] = 0.0;
    }
}

void truncate(Modal2& a) {
  const GridSpec& g = a.grid;
  if (!g.dealias) return;
  const int kc = g.kx_cut(), lc = g.ky_cut();
  const int nxh = a.nxh();
  for (int jy = 0; jy < g.ny; ++jy) {
    const int ky = std::abs(wave_y(g, jy));
    for (int ix = 0; ix < nxh; ++ix)
      if (ky > lc || ix > kc) a.c[a.idx(jy, ix)] = 0.0;
  }
}

Modal2 mode0(const Modal3& a) {
  if (a.basis != VBasis::cosine) throw IncompatibleOperands("barotropic slice needs a cosine field");
  Modal2 out(a.grid);
  std::copy(a.c.begin(), a.c.begin() + a.slab(), out.c.begin());
  return out;
}

namespace {

double hweight(const GridSpec& g, int ix) { return (ix == 0 || ix == g.nx / 2) ? 1.0 : 2.0; }

double vweight(const GridSpec& g, VBasis b, int m) {
  const int N = g.nz - 1;
  switch (b) {
    case VBasis::cosine: return (m == 0 || m == N) ? g.h : 0.5 * g.h;
    case VBasis::sine: return (m == 0 || m == N) ? 0.0 : 0.5 * g.h;
    case VBasis::none: return g.zweight(m);
  }
  return 0.0;
}

}  // namespace

double inner(const Modal3& a, const Modal3& b) {
  require_same_grid(a.grid, b.grid);
  if (a.basis != b.basis) throw IncompatibleOperands("modal inner product needs matching bases");
  const GridSpec& g = a.grid;
  const int nxh = a.nxh();
  double total = 0.0;
  std::size_t n = 0;
  for (int m = 0; m < g.nz; ++m) {
    double level = 0.0;
    for (int jy = 0; jy < g.ny; ++jy)
      for (int ix = 0; ix < nxh; ++ix, ++n)
        level += hweight(g, ix) * (a.c[n].real() * b.c[n].real() + a.c[n].imag() * b.c[n].imag());
    total += vweight(g, a.basis, m) * level;
  }
  return total;
}

double l2sq(const Modal3& a) { return inner(a, a); }

double l2sq(const Modal2& a) {
  const GridSpec& g = a.grid;
  const int nxh = a.nxh();
  double total = 0.0;
  for (int jy = 0; jy < g.ny; ++jy)
    for (int ix = 0; ix < nxh; ++ix) total += hweight(g, ix) * std::norm(a.c[a.idx(jy, ix)]);
  return total;
}

}  // namespace pech
