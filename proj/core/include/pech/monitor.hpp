#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pech/integrator.hpp"
#include "pech/model.hpp"
#include "pech/sample.hpp"

namespace pech {

/// Per-level solution of lap_H beta = grad_H T with zero horizontal mean,
/// obtained as beta = grad_H phi, lap_H phi = T. Keeps T's vertical tag.
VectorFieldH solve_beta(const ScalarField3& T);

struct DerivedVars {
  VectorFieldH u;      ///< v_z (sine tag)
  VectorFieldH beta;
  VectorFieldH zeta;   ///< u + R1 beta
  ScalarField3 eta;    ///< curl_H zeta (= curl_H u)
  ScalarField3 theta;  ///< div_H u + R1 T
};

DerivedVars derived_vars(const State& s, const ModelParams& p);

/// 2 R1^2 (R1 + R2)(R2 - R3)^2 / (R2^2 R3).
double coupling_constant(const ModelParams& p);

/// Column order of series.csv. The first block is the fixed public schema;
/// the rest are integrands and auxiliary functionals used by the certificates.
const std::vector<std::string>& series_columns();

/// Every functional of the estimate ladder for one state. `T0_inf` is the
/// sup norm of the initial physical temperature (enters maxprin_margin).
Sample sample_functionals(const State& s, const ModelParams& p, double T0_inf);

/// Initial-data and source norms referenced by the bound formulas:
/// v0_L2, T0_L2, v0_H1, dz_v0_H1, v0_H4, T0_H2, T0_inf (physical temperature),
/// Q_L2, Q_inf, lapQ_L2, gradQz_L2.
std::map<std::string, double> compute_init_norms(const State& s0, const ModelParams& p);

enum class BoundName { K1, K2, K3, K4, K5, K6, K7, K8, K };

const char* to_string(BoundName b) noexcept;
/// Throws ConfigError on an unknown name.
BoundName parse_bound(const std::string& name);
const std::vector<BoundName>& all_bounds();

/// Bound formula with the generic constant C wherever it appears. Nested K_i
/// are evaluated at the same (t, C). Throws ConfigError naming a missing key.
double eval_bound(BoundName name, const ModelParams& p, const std::map<std::string, double>& init_norms,
                  double t, double C);

/// Monitored quantity paired with a bound: sample.at(instant) plus the
/// trapezoid time integral of sample.at(rate). Either key may be empty.
struct Pairing {
  std::string instant;
  std::string rate;
};
const std::map<BoundName, Pairing>& pairing_table();

struct CertificatePoint {
  double t = 0.0;
  double monitored = 0.0;
  double bound = 0.0;
};

struct CertificateReport {
  std::string name;
  std::vector<CertificatePoint> series;  ///< bound evaluated at the supplied C
  double empirical_C = 0.0;
  bool pass = true;
};

/// empirical_C is the smallest C >= 0 with monitored <= bound(C) at every
/// sample (infinite if none exists); for the C-free K2 it is max
/// monitored / bound. pass compares against the bound at the supplied C.
/// Throws InputError if the series is empty or not strictly time-ordered.
std::vector<CertificateReport> certify(const std::vector<Sample>& series, const ModelParams& p,
                                       const std::map<std::string, double>& init_norms, double C);

/// Single certificate with an explicit monitored key, validated against the
/// pairing table (ConfigError on a mismatch).
CertificateReport certify_pair(BoundName name, const std::string& monitored, const std::vector<Sample>& series,
                               const ModelParams& p, const std::map<std::string, double>& init_norms, double C);

/// ||T_phys||_inf <= 1 + T0_inf + ||Q||_inf t + tol at one state.
struct MaxPrincipleCheck {
  double monitored = 0.0;
  double bound = 0.0;
  double margin = 0.0;  ///< bound - monitored
  bool pass = true;
};
MaxPrincipleCheck max_principle_check(const State& s, const ModelParams& p, double T0_inf, double tol = 1e-6);

/// Series-level certificates built from the fixed columns.
CertificateReport max_principle_certificate(const std::vector<Sample>& series, double tol);
CertificateReport energy_certificate(const std::vector<Sample>& series, double tol);

struct TwinPoint {
  double t = 0.0;
  double D = 0.0;
  double E = 0.0;
  double envelope = 0.0;  ///< D(0) exp(C_hat E)
};

struct TwinReport {
  std::vector<TwinPoint> series;
  double C_hat = 0.0;  ///< max_t log(D/D0)/E clamped at 0; 0 when D(0) = 0
  CertificateReport certificate;
};

/// Integrates both states in lockstep with the same step sizes and records
/// D = ||v_a - v_b||^2 + ||T_a - T_b||^2 and the growth integral
/// E = int ||v_b||_6^4 + ||grad_H T_b||_{H1}^2 + ||d_z v_b||_6^4 + ||d_z lap_H T_b||^2.
/// Throws InputError on a grid mismatch.
TwinReport twin_run(const State& s0a, const State& s0b, const ModelParams& p, const StepperConfig& c,
                    int every = 1);

/// Sampler closure for run(): sample_functionals with T0_inf from init norms.
std::function<Sample(const State&)> make_sampler(const ModelParams& p, double T0_inf);

}  // namespace pech
