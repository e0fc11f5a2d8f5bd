#include "pech/pipeline.hpp"

#include <numbers>

#include "pech/errors.hpp"

namespace pech {

ModalState& ModalState::operator+=(const ModalState& o) {
  v1 += o.v1;
  v2 += o.v2;
  T += o.T;
  return *this;
}

ModalState& ModalState::operator*=(double a) noexcept {
  v1 *= a;
  v2 *= a;
  T *= a;
  return *this;
}

void ModalState::axpy(double a, const ModalState& o) {
  auto go = [a](Modal3& x, const Modal3& y) {
    for (std::size_t n = 0; n < x.c.size(); ++n) x.c[n] += a * y.c[n];
  };
  go(v1, o.v1);
  go(v2, o.v2);
  go(T, o.T);
}

Pipeline::Pipeline(const GridSpec& g, const ModelParams& p) : grid_(g), params_(p) {
  if (params_.has_source()) {
    require_same_grid(g, params_.Q.grid());
    Q_ = forward(params_.Q.with_basis(VBasis::sine));
    truncate(Q_);
  } else {
    Q_ = Modal3(g, VBasis::sine);
  }
  Modal3 shape(g, VBasis::cosine);
  lam_v_.assign(shape.c.size(), 0.0);
  lam_T_.assign(shape.c.size(), 0.0);
  const double kz = std::numbers::pi / g.h;
  const int nxh = shape.nxh();
  std::size_t n = 0;
  for (int m = 0; m < g.nz; ++m) {
    const double vz = (m * kz) * (m * kz);
    for (int jy = 0; jy < g.ny; ++jy) {
      const double ky = two_pi * wave_y(g, jy);
      for (int ix = 0; ix < nxh; ++ix, ++n) {
        const double kx = two_pi * ix;
        lam_v_[n] = -(kx * kx + ky * ky) / p.R1 - vz / p.R2;
        lam_T_[n] = -vz / p.R3;
      }
    }
  }
}

ModalState Pipeline::to_modal(const VectorFieldH& v, const ScalarField3& T) const {
  require_same_grid(grid_, T.grid());
  require_same_grid(grid_, v.grid());
  ModalState m;
  m.v1 = forward(v.u1.with_basis(VBasis::cosine));
  m.v2 = forward(v.u2.with_basis(VBasis::cosine));
  m.T = forward(T.with_basis(VBasis::sine));
  return m;
}

State Pipeline::to_state(const ModalState& m, double t) const {
  State s;
  s.t = t;
  s.v = VectorFieldH(inverse(m.v1), inverse(m.v2));
  s.T = inverse(m.T);
  refresh_diagnostics(s);
  return s;
}

void Pipeline::project(Modal3& v1, Modal3& v2) {
  const GridSpec& g = v1.grid;
  const int nxh = v1.nxh();
  // Same modified wavenumbers as the spectral divergence (Nyquist symbols are
  // zero), so the projected slice has exactly zero discrete divergence.
  for (int jy = 0; jy < g.ny; ++jy) {
    const double ky = jy == g.ny / 2 ? 0.0 : two_pi * wave_y(g, jy);
    for (int ix = 0; ix < nxh; ++ix) {
      const double kx = ix == g.nx / 2 ? 0.0 : two_pi * ix;
      const double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) continue;
      const std::size_t n = v1.idx(0, jy, ix);
      const cplx d = (kx * v1.c[n] + ky * v2.c[n]) / k2;
      v1.c[n] -= kx * d;
      v2.c[n] -= ky * d;
    }
  }
}

void Pipeline::project(ModalState& s) const { project(s.v1, s.v2); }

ModalState Pipeline::implicit_rhs(const ModalState& s) const {
  ModalState out = s;
  for (std::size_t n = 0; n < lam_v_.size(); ++n) {
    out.v1.c[n] *= lam_v_[n];
    out.v2.c[n] *= lam_v_[n];
    out.T.c[n] *= lam_T_[n];
  }
  return out;
}

namespace {

// Vertical integral of the horizontal divergence of (v1, v2) in modal form:
// the sine part and the barotropic divergence (coefficient of z + h).
struct DivIntegral {
  Modal3 sine;
  Modal2 mean;
};

DivIntegral integrate_div(const Modal3& v1, const Modal3& v2) {
  const GridSpec& g = v1.grid;
  Modal3 div = mdx(v1);
  div += mdy(v2);
  const int N = g.nz - 1;
  const double kz = std::numbers::pi / g.h;
  const std::size_t slab = div.slab();
  DivIntegral out{Modal3(g, VBasis::sine), Modal2(g)};
  for (int m = 1; m < N; ++m)
    for (std::size_t s = 0; s < slab; ++s) out.sine.c[m * slab + s] = div.c[m * slab + s] / (m * kz);
  std::copy(div.c.begin(), div.c.begin() + slab, out.mean.c.begin());
  return out;
}

ScalarField3 w_physical(const Modal3& v1, const Modal3& v2) {
  const GridSpec& g = v1.grid;
  DivIntegral I = integrate_div(v1, v2);
  ScalarField3 w = inverse(I.sine);
  ScalarField2 a0 = inverse(I.mean);
  for (int k = 0; k < g.nz; ++k) {
    const double zh = g.z(k) + g.h;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) w(i, j, k) = -(w(i, j, k) + a0(i, j) * zh);
  }
  return w.with_basis(VBasis::sine);
}

// Physical fields needed by the quadratic terms.
struct Physical {
  ScalarField3 v1, v2, v1x, v1y, v2x, v2y, v1z, v2z, Tx, Ty, Tz, w;
};

Physical physical_fields(const ModalState& s, bool advection) {
  Physical f;
  f.w = w_physical(s.v1, s.v2);
  if (!advection) return f;
  f.v1 = inverse(s.v1);
  f.v2 = inverse(s.v2);
  f.v1x = inverse(mdx(s.v1));
  f.v1y = inverse(mdy(s.v1));
  f.v2x = inverse(mdx(s.v2));
  f.v2y = inverse(mdy(s.v2));
  f.v1z = inverse(mdz(s.v1));
  f.v2z = inverse(mdz(s.v2));
  f.Tx = inverse(mdx(s.T));
  f.Ty = inverse(mdy(s.T));
  f.Tz = inverse(mdz(s.T));
  return f;
}

Modal3 forward_truncated(const ScalarField3& f) {
  Modal3 m = forward(f);
  truncate(m);
  return m;
}

// grad_H int_{-h}^z T for sine T, in modal form.
void buoyancy_into(const Modal3& T, Modal3& b1, Modal3& b2) {
  const GridSpec& g = T.grid;
  const int N = g.nz - 1;
  const double kz = std::numbers::pi / g.h;
  const std::size_t slab = T.slab();
  Modal3 P(g, VBasis::cosine);
  for (int m = 1; m < N; ++m)
    for (std::size_t s = 0; s < slab; ++s) {
      const cplx c = T.c[m * slab + s] / (m * kz);
      P.c[m * slab + s] = -c;
      P.c[s] += c;
    }
  b1 = mdx(P);
  b2 = mdy(P);
}

}  // namespace

ScalarField3 Pipeline::vertical_velocity(const ModalState& s) const {
  return w_physical(s.v1, s.v2);
}

ExplicitTerms Pipeline::explicit_terms(const ModalState& s) const {
  const TermSwitches& on = params_.terms;
  const GridSpec& g = grid_;
  ExplicitTerms out{ModalState(g), ModalState(g), ModalState(g), ModalState(g), ModalState(g)};
  const bool need_w = on.advection || on.stratification;
  if (need_w) {
    Physical f = physical_fields(s, on.advection);
    if (on.advection) {
      const std::size_t n3 = g.size3();
      ScalarField3 a1(g, VBasis::cosine), a2(g, VBasis::cosine), aT(g, VBasis::sine);
      for (std::size_t n = 0; n < n3; ++n) {
        const double u = f.v1.values()[n], v = f.v2.values()[n], w = f.w.values()[n];
        a1.values()[n] = -(u * f.v1x.values()[n] + v * f.v1y.values()[n] + w * f.v1z.values()[n]);
        a2.values()[n] = -(u * f.v2x.values()[n] + v * f.v2y.values()[n] + w * f.v2z.values()[n]);
        aT.values()[n] = -(u * f.Tx.values()[n] + v * f.Ty.values()[n] + w * f.Tz.values()[n]);
      }
      out.advection.v1 = forward_truncated(a1);
      out.advection.v2 = forward_truncated(a2);
      out.advection.T = forward_truncated(aT);
    }
    if (on.stratification) out.stratification.T = forward_truncated((-1.0 / g.h) * f.w);
  }
  if (on.coriolis) {
    out.coriolis.v1 = s.v2;
    out.coriolis.v1 *= params_.f0;
    out.coriolis.v2 = s.v1;
    out.coriolis.v2 *= -params_.f0;
  }
  if (on.buoyancy) buoyancy_into(s.T, out.buoyancy.v1, out.buoyancy.v2);
  if (on.source) out.source.T = Q_;
  return out;
}

ModalState Pipeline::explicit_rhs(const ModalState& s) const {
  const TermSwitches& on = params_.terms;
  const GridSpec& g = grid_;
  ModalState out(g);
  if (on.advection || on.stratification) {
    Physical f = physical_fields(s, on.advection);
    const std::size_t n3 = g.size3();
    const double inv_h = on.stratification ? 1.0 / g.h : 0.0;
    ScalarField3 aT(g, VBasis::sine);
    if (on.advection) {
      ScalarField3 a1(g, VBasis::cosine), a2(g, VBasis::cosine);
      for (std::size_t n = 0; n < n3; ++n) {
        const double u = f.v1.values()[n], v = f.v2.values()[n], w = f.w.values()[n];
        a1.values()[n] = -(u * f.v1x.values()[n] + v * f.v1y.values()[n] + w * f.v1z.values()[n]);
        a2.values()[n] = -(u * f.v2x.values()[n] + v * f.v2y.values()[n] + w * f.v2z.values()[n]);
        aT.values()[n] = -(u * f.Tx.values()[n] + v * f.Ty.values()[n] + w * (f.Tz.values()[n] + inv_h));
      }
      out.v1 = forward_truncated(a1);
      out.v2 = forward_truncated(a2);
    } else {
      for (std::size_t n = 0; n < n3; ++n) aT.values()[n] = -inv_h * f.w.values()[n];
    }
    out.T = forward_truncated(aT);
  }
  if (on.coriolis) {
    const double f0 = params_.f0;
    for (std::size_t n = 0; n < out.v1.c.size(); ++n) {
      out.v1.c[n] += f0 * s.v2.c[n];
      out.v2.c[n] -= f0 * s.v1.c[n];
    }
  }
  if (on.buoyancy) {
    Modal3 b1, b2;
    buoyancy_into(s.T, b1, b2);
    out.v1 += b1;
    out.v2 += b2;
  }
  if (on.source) out.T += Q_;
  return out;
}

}  // namespace pech
