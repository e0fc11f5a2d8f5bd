#pragma once

#include "pech/field.hpp"

namespace pech {

/// Individual right-hand-side terms; switching one off removes it from the
/// explicit tendency. Used for linear sub-problems and oracle tests.
struct TermSwitches {
  bool advection = true;       // (v.grad)v + w v_z and v.grad T + w T_z
  bool coriolis = true;        // f0 k x v
  bool buoyancy = true;        // grad_H int_{-h}^z T
  bool source = true;          // Q
  bool stratification = true;  // w / h in the temperature equation
};

struct ModelParams {
  double R1 = 1.0;
  double R2 = 1.0;
  double R3 = 1.0;
  double f0 = 0.0;
  double h = 1.0;
  ScalarField3 Q;  ///< time-independent heat source, sine tag; empty means zero
  TermSwitches terms{};

  /// Throws ConfigError naming the offending parameter.
  void validate() const;
  bool has_source() const noexcept { return !Q.values().empty(); }
};

/// Prognostic fields plus cached diagnostics. T is the shifted temperature.
struct State {
  double t = 0.0;
  VectorFieldH v;          ///< cosine tag
  ScalarField3 T;          ///< sine tag
  ScalarField3 w;          ///< diagnosed vertical velocity
  ScalarField3 p_baroclinic;  ///< -int_{-h}^z T

  const GridSpec& grid() const noexcept { return T.grid(); }
};

struct MomentumTendency {
  VectorFieldH explicit_part;
  VectorFieldH implicit_part;
  VectorFieldH total() const { return explicit_part + implicit_part; }
};

struct TemperatureTendency {
  ScalarField3 explicit_part;
  ScalarField3 implicit_part;
  ScalarField3 total() const { return explicit_part + implicit_part; }
};

struct Tendency {
  MomentumTendency v;
  TemperatureTendency T;
};

/// w = -int_{-h}^z div_H v.
ScalarField3 diagnose_w(const VectorFieldH& v);
/// Baroclinic pressure p - p_s = -int_{-h}^z T.
ScalarField3 diagnose_pressure(const ScalarField3& T);

/// Explicit: -(v.grad)v - w v_z - f0 k x v + grad_H int T (projection handles
/// grad p_s). Implicit: (1/R1) lap_H v + (1/R2) v_zz. Quadratic terms are
/// dealiased.
MomentumTendency momentum_tendency(const State& s, const ModelParams& p);
/// Explicit: -v.grad T - w (T_z + 1/h) + Q. Implicit: (1/R3) T_zz.
TemperatureTendency temperature_tendency(const State& s, const ModelParams& p);
Tendency tendency(const State& s, const ModelParams& p);

/// Replaces the vertical mean of dv by its 2D Leray projection (zero-mean
/// gauge); the fluctuation is untouched.
VectorFieldH barotropic_project(const VectorFieldH& dv);

/// T_phys = T - z/h (general field).
ScalarField3 reconstruct_physical_T(const ScalarField3& T, double h);
/// Inverse of reconstruct_physical_T: T = T_phys + z/h (sine tag).
ScalarField3 shift_physical_T(const ScalarField3& T_phys, double h);

/// Builds a constraint-satisfying state: truncates v and T to the dealiased
/// band, projects v, and fills the diagnostics.
State make_state(VectorFieldH v, ScalarField3 T, double t = 0.0);
/// Recomputes w and p_baroclinic from v and T.
void refresh_diagnostics(State& s);

/// Checks Q against the sine-tag boundary conditions; incompatible or
/// out-of-band input is projected with a logged warning.
ScalarField3 prepare_source(const ScalarField3& Q);

/// Term-by-term budget of d/dt (1/2)(||v||^2 + ||T||^2) computed from the
/// tendencies (projected momentum tendency).
struct EnergyRates {
  double total = 0.0;           ///< <dv, v> + <dT, T>
  double advection = 0.0;
  double coriolis = 0.0;
  double buoyancy = 0.0;        ///< <grad_H int T, v>
  double stratification = 0.0;  ///< -(1/h) <w, T>
  double source = 0.0;          ///< <Q, T>
  double dissipation = 0.0;     ///< (1/R1)||grad_H v||^2 + (1/R2)||v_z||^2 + (1/R3)||T_z||^2
};
EnergyRates energy_rates(const State& s, const ModelParams& p);

}  // namespace pech
