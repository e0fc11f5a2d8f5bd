#include "pech/model.hpp"

#include <spdlog/spdlog.h>

#include <cmath>

#include "pech/calculus.hpp"
#include "pech/errors.hpp"
#include "pech/norms.hpp"
#include "pech/pipeline.hpp"

namespace pech {

void ModelParams::validate() const {
  auto positive = [](double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(std::string(name) + " must be > 0");
  };
  positive(R1, "params.R1");
  positive(R2, "params.R2");
  positive(R3, "params.R3");
  positive(h, "grid.h");
  if (!std::isfinite(f0)) throw ConfigError("params.f0 must be finite");
  if (has_source() && Q.grid().h != h) throw ConfigError("Q lives on a grid with a different depth");
}

ScalarField3 diagnose_w(const VectorFieldH& v) {
  ScalarField3 w = vint_from_bottom(div_h(v));
  w *= -1.0;
  return w;
}

ScalarField3 diagnose_pressure(const ScalarField3& T) {
  ScalarField3 p = vint_from_bottom(T);
  p *= -1.0;
  return p;
}

namespace {

ModalState truncated_modal(const Pipeline& pl, const State& s) {
  ModalState m = pl.to_modal(s.v, s.T);
  truncate(m.v1);
  truncate(m.v2);
  truncate(m.T);
  return m;
}

VectorFieldH vec(const Modal3& a, const Modal3& b) { return {inverse(a), inverse(b)}; }

}  // namespace

MomentumTendency momentum_tendency(const State& s, const ModelParams& p) {
  Pipeline pl(s.grid(), p);
  ModalState m = truncated_modal(pl, s);
  ModalState ex = pl.explicit_rhs(m);
  ModalState im = pl.implicit_rhs(m);
  return {vec(ex.v1, ex.v2), vec(im.v1, im.v2)};
}

TemperatureTendency temperature_tendency(const State& s, const ModelParams& p) {
  Pipeline pl(s.grid(), p);
  ModalState m = truncated_modal(pl, s);
  return {inverse(pl.explicit_rhs(m).T), inverse(pl.implicit_rhs(m).T)};
}

Tendency tendency(const State& s, const ModelParams& p) {
  Pipeline pl(s.grid(), p);
  ModalState m = truncated_modal(pl, s);
  ModalState ex = pl.explicit_rhs(m);
  ModalState im = pl.implicit_rhs(m);
  return {{vec(ex.v1, ex.v2), vec(im.v1, im.v2)}, {inverse(ex.T), inverse(im.T)}};
}

VectorFieldH barotropic_project(const VectorFieldH& dv) {
  if (dv.basis() == VBasis::sine)
    throw IncompatibleOperands("barotropic projection needs a cosine velocity field");
  Modal3 a = forward(dv.u1.with_basis(VBasis::cosine));
  Modal3 b = forward(dv.u2.with_basis(VBasis::cosine));
  Pipeline::project(a, b);
  return vec(a, b);
}

ScalarField3 reconstruct_physical_T(const ScalarField3& T, double h) {
  const GridSpec& g = T.grid();
  ScalarField3 out = T.with_basis(VBasis::none);
  for (int k = 0; k < g.nz; ++k) {
    const double shift = g.z(k) / h;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) out(i, j, k) -= shift;
  }
  return out;
}

ScalarField3 shift_physical_T(const ScalarField3& T_phys, double h) {
  const GridSpec& g = T_phys.grid();
  ScalarField3 out = T_phys.with_basis(VBasis::sine);
  for (int k = 0; k < g.nz; ++k) {
    const double shift = g.z(k) / h;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) out(i, j, k) += shift;
  }
  return out;
}

void refresh_diagnostics(State& s) {
  s.w = diagnose_w(s.v);
  s.p_baroclinic = diagnose_pressure(s.T);
}

State make_state(VectorFieldH v, ScalarField3 T, double t) {
  require_same_grid(v.grid(), T.grid());
  Modal3 a = forward(v.u1.with_basis(VBasis::cosine));
  Modal3 b = forward(v.u2.with_basis(VBasis::cosine));
  Modal3 c = forward(T.with_basis(VBasis::sine));
  truncate(a);
  truncate(b);
  truncate(c);
  Pipeline::project(a, b);
  State s;
  s.t = t;
  s.v = vec(a, b);
  s.T = inverse(c);
  refresh_diagnostics(s);
  return s;
}

ScalarField3 prepare_source(const ScalarField3& Q) {
  Modal3 m = forward(Q.with_basis(VBasis::sine));
  truncate(m);
  ScalarField3 out = inverse(m);
  double diff = 0.0, scale = 0.0;
  for (std::size_t n = 0; n < out.values().size(); ++n) {
    diff = std::max(diff, std::abs(out.values()[n] - Q.values()[n]));
    scale = std::max(scale, std::abs(Q.values()[n]));
  }
  if (diff > 1e-12 * std::max(scale, 1.0))
    spdlog::warn("heat source is not compatible with the sine basis (max change {:.3g}); projected",
                 diff);
  return out;
}

EnergyRates energy_rates(const State& s, const ModelParams& p) {
  Pipeline pl(s.grid(), p);
  ModalState m = truncated_modal(pl, s);
  ExplicitTerms terms = pl.explicit_terms(m);
  auto rate = [](const ModalState& d, const ModalState& x) {
    ModalState dp = d;
    Pipeline::project(dp.v1, dp.v2);
    return inner(dp.v1, x.v1) + inner(dp.v2, x.v2) + inner(d.T, x.T);
  };
  EnergyRates e;
  e.advection = rate(terms.advection, m);
  e.coriolis = rate(terms.coriolis, m);
  e.buoyancy = rate(terms.buoyancy, m);
  e.stratification = rate(terms.stratification, m);
  e.source = rate(terms.source, m);
  ModalState im = pl.implicit_rhs(m);
  e.dissipation = -rate(im, m);
  ModalState full = pl.explicit_rhs(m);
  full += im;
  e.total = rate(full, m);
  return e;
}

}  // namespace pech
