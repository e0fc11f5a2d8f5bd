#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pech/field.hpp"

namespace pech {

/// One inequality evaluated on one sample, in the form
///   lhs <= C * rhs_c + rhs_free.
/// ratio = lhs / (rhs_c + rhs_free), the right-hand side with C = 1;
/// 0/0 = 0 and x/0 = inf.
/// Constant-free inequalities have rhs_c = 0 and report holds instead.
struct Measurement {
  std::string name;
  double lhs = 0.0;
  double rhs_c = 0.0;
  double rhs_free = 0.0;
  double ratio = 0.0;
  bool constant_free = false;
  bool holds = true;
};

struct InequalityResult {
  std::string name;
  int samples = 0;
  std::vector<double> ratios;  ///< fine resolution
  double empirical_C = 0.0;    ///< max ratio at the fine resolution
  double coarse_C = 0.0;
  double drift = 1.0;          ///< empirical_C / coarse_C (0/0 = 1)
  bool constant_free = false;
  int failures = 0;            ///< constant-free violations over both resolutions
  bool pass = true;            ///< constant-free: no failures; otherwise finite C with drift in [1/2, 2]
};

Measurement make_measurement(std::string name, double lhs, double rhs_c, double rhs_free = 0.0);
/// lhs <= rhs up to relative round-off rel.
Measurement make_constant_free(std::string name, double lhs, double rhs, double rel = 1e-10);

/// On M:
///   L4-2d          ||f||_4 vs (||f||_2 ||f||_H1)^(1/2)
///   L8-2d          ||f||_8 vs ||f||_6^(3/4) ||f||_H1^(1/4)
///   grad-L4-2d     ||grad f||_4 vs (||f||_inf ||f||_H2)^(1/2)
///   grad-L4-2d-sup ||grad f||_4 vs (||f||_2 ||grad f||_inf)^(1/2) + ||f||_2
std::vector<Measurement> check_sobolev_2d(const ScalarField2& f);
/// On the channel: ||f||_3 vs (||f||_2 ||f||_H1)^(1/2) (L3-3d) and ||f||_6 vs ||f||_H1 (L6-3d).
std::vector<Measurement> check_sobolev_3d(const ScalarField3& f);
/// ||grad u||_{W^{m,q}} against ||div u||_{W^{m,q}} + ||curl u||_{W^{m,q}}.
Measurement check_div_curl(const VectorField2& u, int m, double q);
/// log-sup: ||f||_inf vs ||f||_H1 (1 + log+ ||f||_H2)^(1/2).
/// log-grad-sup: ||grad u||_inf vs (||div u||_inf + ||curl u||_inf)(1 + log+ ||grad u||_H2).
std::vector<Measurement> check_log_inequalities(const ScalarField2& f, const VectorField2& u);
/// log+ r = log r for r >= 1, else 0.
double log_plus(double r);
/// Power interpolation for one q: the identity ||f||_{4q}^{4q} = || |f|^q ||_4^4
/// (constant-free, named power-identity-q<q>) and the bound (power-q<q>).
std::vector<Measurement> check_power_interp(const ScalarField2& f, int q);
/// Integral Minkowski inequality for |f| with xi over M and eta over (-h, 0).
Measurement check_minkowski(const ScalarField3& f, double p);
/// Cauchy-Schwarz on M, on the channel, and along each vertical column.
std::vector<Measurement> check_cauchy_schwarz(const ScalarField2& a, const ScalarField2& b, const ScalarField3& c,
                                              const ScalarField3& d);
/// trilinear-1 and trilinear-2 for the triple (psi1, psi2, psi3).
std::vector<Measurement> check_anisotropic(const ScalarField3& psi1, const ScalarField3& psi2,
                                           const ScalarField3& psi3);

struct LabConfig {
  std::uint64_t seed = 1;
  int samples = 100;
  int band_limit = 5;
  int coarse = 16;  ///< horizontal points (and vertical intervals) of the coarse grid
  int fine = 32;
  double h = 1.0;
};

/// Runs every check on `samples` random trial sets at both resolutions.
/// Rows appear in a fixed order.
std::vector<InequalityResult> run_inequality_lab(const LabConfig& cfg);

/// Measurements of one trial set on one grid (used by run_inequality_lab).
std::vector<Measurement> measure_sample(const LabConfig& cfg, int sample, const GridSpec& g2, const GridSpec& g3);

}  // namespace pech
