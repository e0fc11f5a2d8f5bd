#include "pech/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pech/calculus.hpp"
#include "pech/errors.hpp"
#include "pech/norms.hpp"
#include "pech/spectral.hpp"

namespace pech {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double sq(double x) { return x * x; }

// Products that treat 0 * inf as 0: a vanishing bracket stays vanishing no
// matter how large the exponential prefactor overflows.
double mul(double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : a * b; }
double expt(double rate, double t) { return t == 0.0 ? 1.0 : std::exp(rate * t); }

double l2sq(const VectorFieldH& u) { return sq(norm_L2(u)); }
double l2sq(const ScalarField3& f) { return sq(norm_L2(f)); }
double l2sq(const VectorField2& u) { return sq(norm_L2(u.u1)) + sq(norm_L2(u.u2)); }

// Squared norms of horizontal gradients, summed over components.
double grad_sq(const ScalarField3& f) { return l2sq(grad_h(f)); }
double grad_sq(const VectorFieldH& u) { return grad_sq(u.u1) + grad_sq(u.u2); }
double grad_sq(const ScalarField2& f) {
  VectorField2 g = grad_h(f);
  return l2sq(g);
}
double grad_sq(const VectorField2& u) { return grad_sq(u.u1) + grad_sq(u.u2); }

VectorField2 lap_h(const VectorField2& u) { return {pech::lap_h(u.u1), pech::lap_h(u.u2)}; }

ScalarField3 squared_magnitude(const VectorFieldH& u) { return u.u1 * u.u1 + u.u2 * u.u2; }

// |grad_H u|^2 summed over all components, pointwise.
ScalarField3 grad_density(const VectorFieldH& u) {
  VectorFieldH g1 = grad_h(u.u1), g2 = grad_h(u.u2);
  return squared_magnitude(g1) + squared_magnitude(g2);
}

// Volume integral of a non-negative density.
double integral(const ScalarField3& f) { return norm_Lq(f, 1.0); }

double ratio(double monitored, double bound) {
  if (monitored <= 0.0) return 0.0;
  if (std::isinf(bound)) return 0.0;
  if (bound <= 0.0) return inf;
  return monitored / bound;
}

}  // namespace

VectorFieldH solve_beta(const ScalarField3& T) {
  const GridSpec& g = T.grid();
  Modal3 phi = forward_levels(T);
  const int nxh = phi.nxh();
  for (int m = 0; m < g.nz; ++m)
    for (int jy = 0; jy < g.ny; ++jy) {
      const int ky = wave_y(g, jy);
      for (int ix = 0; ix < nxh; ++ix) {
        const double k2 = sq(two_pi) * (double(ix) * ix + double(ky) * ky);
        cplx& c = phi.c[phi.idx(m, jy, ix)];
        c = k2 == 0.0 ? cplx{} : -c / k2;
      }
    }
  ScalarField3 pf = inverse(phi).with_basis(T.basis());
  return grad_h(pf);
}

DerivedVars derived_vars(const State& s, const ModelParams& p) {
  DerivedVars d;
  d.u = ddz(s.v);
  d.beta = solve_beta(s.T);
  d.zeta = d.u + p.R1 * d.beta;
  d.eta = curl_h(d.zeta);
  d.theta = div_h(d.u) + s.T * p.R1;
  return d;
}

double coupling_constant(const ModelParams& p) {
  return 2 * sq(p.R1) * (p.R1 + p.R2) * sq(p.R2 - p.R3) / (sq(p.R2) * p.R3);
}

const std::vector<std::string>& series_columns() {
  static const std::vector<std::string> cols = {
      "t", "norm_v_L2", "norm_T_L2", "norm_Tphys_inf", "norm_vtilde_L6", "norm_gradH_vbar_L2",
      "norm_u_L6", "norm_uz_L2", "eta_L2", "theta_L2", "lapH_T_L2", "gradH_Tz_L2",
      "X", "Z", "div_vbar_inf", "energy_residual", "maxprin_margin",
      // auxiliary
      "Y", "lapH_eta_L2", "lapH_theta_L2", "energy_lhs", "energy_rhs",
      "k1_inst", "k1_rate", "k3_inst", "k3_rate", "k4_inst", "k4_rate",
      "k5_inst", "k5_rate", "k6_inst", "k6_rate", "k7_inst", "k7_rate"};
  return cols;
}

Sample sample_functionals(const State& s, const ModelParams& p, double T0_inf) {
  const double h = s.grid().h;
  const double R1 = p.R1, R2 = p.R2;
  const double CR = coupling_constant(p);
  Sample out;
  out.t = s.t;
  auto& o = out.values;

  const VectorField2 vbar = vertical_average(s.v);
  const VectorFieldH vt = fluctuation(s.v);
  const DerivedVars d = derived_vars(s, p);
  const VectorFieldH& u = d.u;
  const VectorFieldH uz = ddz(u);
  const ScalarField3 Tz = ddz(s.T);
  const ScalarField3 eta_z = ddz(d.eta), theta_z = ddz(d.theta);

  o["norm_v_L2"] = norm_L2(s.v);
  o["norm_T_L2"] = norm_L2(s.T);
  o["norm_Tphys_inf"] = norm_Lq(reconstruct_physical_T(s.T, h), q_inf);
  o["norm_vtilde_L6"] = norm_Lq(vt, 6.0);
  const double grad_vbar_sq = grad_sq(vbar);
  o["norm_gradH_vbar_L2"] = std::sqrt(grad_vbar_sq);
  o["norm_u_L6"] = norm_Lq(u, 6.0);
  o["norm_uz_L2"] = norm_L2(uz);
  o["eta_L2"] = norm_L2(d.eta);
  o["theta_L2"] = norm_L2(d.theta);
  const ScalarField3 lapT = lap_h(s.T);
  o["lapH_T_L2"] = norm_L2(lapT);
  const double grad_Tz_sq = grad_sq(Tz);
  o["gradH_Tz_L2"] = std::sqrt(grad_Tz_sq);

  const VectorField2 lap_vbar = lap_h(vbar);
  const ScalarField3 lap_eta = lap_h(d.eta), lap_theta = lap_h(d.theta);
  const double X = 1.0 + grad_sq(lap_vbar) + CR * l2sq(lapT) + CR * grad_Tz_sq + l2sq(lap_eta) +
                   grad_sq(eta_z) + l2sq(lap_theta) + grad_sq(theta_z);
  o["X"] = X;
  o["Z"] = std::log(X);
  o["Y"] = l2sq(lap_h(lap_vbar)) + l2sq(lap_h(Tz)) + grad_sq(d2dz2(s.T)) + grad_sq(lap_eta) +
           l2sq(lap_h(eta_z)) + grad_sq(lap_theta) + l2sq(lap_h(theta_z));
  o["lapH_eta_L2"] = norm_L2(lap_eta);
  o["lapH_theta_L2"] = norm_L2(lap_theta);

  o["div_vbar_inf"] = norm_Lq(div_h(vbar), q_inf);

  const EnergyRates er = energy_rates(s, p);
  const double Q2 = p.has_source() ? l2sq(p.Q) : 0.0;
  const double lhs = 2.0 * er.total + er.dissipation;
  const double rhs = Q2 + (1 + R1) * sq(1 + h) * sq(o["norm_T_L2"]);
  o["energy_lhs"] = lhs;
  o["energy_rhs"] = rhs;
  o["energy_residual"] = lhs - rhs;

  const double Q_inf = p.has_source() ? norm_Lq(p.Q, q_inf) : 0.0;
  o["maxprin_margin"] = 1.0 + T0_inf + Q_inf * s.t - o["norm_Tphys_inf"];

  const double grad_v_sq = grad_sq(s.v);
  o["k1_inst"] = sq(o["norm_v_L2"]) + sq(o["norm_T_L2"]);
  o["k1_rate"] = grad_v_sq + l2sq(u) + l2sq(Tz);

  const ScalarField3 vt2 = squared_magnitude(vt);
  const ScalarField3 u2 = squared_magnitude(u);
  o["k3_inst"] = std::pow(o["norm_vtilde_L6"], 6);
  // Second integrand kept as printed: |v~_z|^2 |v~_z|^4.
  o["k3_rate"] = integral(grad_density(vt) * vt2 * vt2) / R1 + integral(u2 * u2 * u2) / R2;

  o["k4_inst"] = grad_vbar_sq;
  o["k4_rate"] = l2sq(lap_vbar) / R1;

  o["k5_inst"] = std::pow(o["norm_u_L6"], 6);
  o["k5_rate"] = integral(u2 * u2 * grad_density(u)) / R1 + integral(u2 * u2 * squared_magnitude(uz)) / R2;

  o["k6_inst"] = l2sq(uz);
  o["k6_rate"] = grad_sq(uz) / R1 + l2sq(ddz(uz)) / R2;

  o["k7_inst"] = l2sq(d.eta) + l2sq(d.theta);
  o["k7_rate"] = (grad_sq(d.eta) + grad_sq(d.theta)) / R1 + (l2sq(eta_z) + l2sq(theta_z)) / R2;
  return out;
}

std::function<Sample(const State&)> make_sampler(const ModelParams& p, double T0_inf) {
  return [p, T0_inf](const State& s) { return sample_functionals(s, p, T0_inf); };
}

std::map<std::string, double> compute_init_norms(const State& s0, const ModelParams& p) {
  std::map<std::string, double> n;
  n["v0_L2"] = norm_L2(s0.v);
  n["T0_L2"] = norm_L2(s0.T);
  n["v0_H1"] = norm_Hm(s0.v, 1);
  n["dz_v0_H1"] = norm_Hm(ddz(s0.v), 1);
  n["v0_H4"] = norm_Hm(s0.v, 4);
  n["T0_H2"] = norm_Hm(s0.T, 2);
  n["T0_inf"] = norm_Lq(reconstruct_physical_T(s0.T, s0.grid().h), q_inf);
  if (p.has_source()) {
    n["Q_L2"] = norm_L2(p.Q);
    n["Q_inf"] = norm_Lq(p.Q, q_inf);
    n["lapQ_L2"] = norm_L2(lap_h(p.Q));
    n["gradQz_L2"] = std::sqrt(grad_sq(ddz(p.Q)));
  } else {
    for (const char* k : {"Q_L2", "Q_inf", "lapQ_L2", "gradQz_L2"}) n[k] = 0.0;
  }
  return n;
}

const char* to_string(BoundName b) noexcept {
  switch (b) {
    case BoundName::K1: return "K1";
    case BoundName::K2: return "K2";
    case BoundName::K3: return "K3";
    case BoundName::K4: return "K4";
    case BoundName::K5: return "K5";
    case BoundName::K6: return "K6";
    case BoundName::K7: return "K7";
    case BoundName::K8: return "K8";
    case BoundName::K: return "K";
  }
  return "?";
}

const std::vector<BoundName>& all_bounds() {
  static const std::vector<BoundName> all = {BoundName::K1, BoundName::K2, BoundName::K3,
                                             BoundName::K4, BoundName::K5, BoundName::K6,
                                             BoundName::K7, BoundName::K8, BoundName::K};
  return all;
}

BoundName parse_bound(const std::string& name) {
  for (BoundName b : all_bounds())
    if (name == to_string(b)) return b;
  throw ConfigError("unknown bound name '" + name + "'");
}

namespace {

class Ladder {
 public:
  Ladder(const ModelParams& p, const std::map<std::string, double>& n, double t, double C)
      : p_(p), n_(n), t_(t), C_(C) {}

  double get(BoundName b) {
    auto it = memo_.find(b);
    if (it != memo_.end()) return it->second;
    const double v = compute(b);
    memo_[b] = v;
    return v;
  }

 private:
  double norm(const char* key) const {
    auto it = n_.find(key);
    if (it == n_.end()) throw ConfigError(std::string("init_norms is missing '") + key + "'");
    return it->second;
  }

  double compute(BoundName b) {
    const double t = t_, C = C_;
    switch (b) {
      case BoundName::K1: {
        const double a = (1 + p_.R1) * sq(1 + p_.h);
        const double e0 = sq(norm("v0_L2")) + sq(norm("T0_L2"));
        return mul(C, mul(e0, expt(a, t)) + sq(norm("Q_L2")) * t);
      }
      case BoundName::K2:
        return 1.0 + norm("T0_inf") + norm("Q_inf") * t;
      case BoundName::K3: {
        const double br = std::pow(norm("v0_H1"), 6) + std::pow(get(BoundName::K2), 4) * t;
        return mul(expt(sq(get(BoundName::K1)), t), br);
      }
      case BoundName::K4: {
        const double br = sq(norm("v0_H1")) + get(BoundName::K2) + get(BoundName::K3);
        return mul(expt(sq(get(BoundName::K2)), t), br);
      }
      case BoundName::K5: {
        const double rate = 1.0 + std::cbrt(sq(get(BoundName::K3))) + sq(get(BoundName::K4));
        const double br = std::pow(norm("dz_v0_H1"), 6) + std::pow(get(BoundName::K2), 6) * t;
        return mul(expt(rate, t), br);
      }
      case BoundName::K6: {
        const double rate = std::cbrt(sq(get(BoundName::K3))) + std::cbrt(sq(get(BoundName::K5)));
        const double br = sq(norm("v0_H1")) + get(BoundName::K1);
        return mul(C, mul(expt(rate, t), br));
      }
      case BoundName::K7: {
        const double k1 = get(BoundName::K1), k2 = get(BoundName::K2), k3 = get(BoundName::K3),
                     k5 = get(BoundName::K5), k6 = get(BoundName::K6);
        const double rate = k1 + std::cbrt(sq(k3)) + std::cbrt(sq(k5)) + sq(k6);
        const double br = sq(norm("v0_H1")) + k1 + sq(norm("Q_L2")) +
                          sq(k2) * (k2 + std::cbrt(k3) + std::cbrt(k5) + k6);
        return mul(C, mul(expt(rate, t), br));
      }
      case BoundName::K8:
      case BoundName::K: {
        const double ex = mul(C, get(BoundName::K1) + get(BoundName::K2) + get(BoundName::K7));
        const double br = 1.0 + sq(norm("v0_H4")) + sq(norm("T0_H2")) + t + sq(norm("lapQ_L2")) * t +
                          sq(norm("gradQz_L2")) * t;
        return std::exp(ex) * br;
      }
    }
    return 0.0;
  }

  const ModelParams& p_;
  const std::map<std::string, double>& n_;
  double t_, C_;
  std::map<BoundName, double> memo_;
};

void require_ordered(const std::vector<Sample>& series) {
  if (series.empty()) throw InputError("certificate series is empty");
  for (std::size_t n = 1; n < series.size(); ++n)
    if (!(series[n].t > series[n - 1].t)) throw InputError("unordered series: sample times must increase");
}

std::vector<double> monitored_series(const Pairing& pr, const std::vector<Sample>& series) {
  std::vector<double> m(series.size(), 0.0);
  double acc = 0.0;
  for (std::size_t n = 0; n < series.size(); ++n) {
    if (!pr.rate.empty() && n > 0)
      acc += 0.5 * (series[n].t - series[n - 1].t) * (series[n].at(pr.rate) + series[n - 1].at(pr.rate));
    m[n] = (pr.instant.empty() ? 0.0 : series[n].at(pr.instant)) + acc;
  }
  return m;
}

CertificateReport certify_one(BoundName name, const std::vector<Sample>& series, const ModelParams& p,
                              const std::map<std::string, double>& init_norms, double C) {
  const Pairing& pr = pairing_table().at(name);
  const std::vector<double> mon = monitored_series(pr, series);
  auto bound_at = [&](std::size_t n, double c) { return eval_bound(name, p, init_norms, series[n].t, c); };

  CertificateReport r;
  r.name = to_string(name);
  for (std::size_t n = 0; n < series.size(); ++n) {
    const double b = bound_at(n, C);
    r.series.push_back({series[n].t, mon[n], b});
    if (!(mon[n] <= b)) r.pass = false;
  }

  if (name == BoundName::K2) {
    for (const auto& pt : r.series) r.empirical_C = std::max(r.empirical_C, ratio(pt.monitored, pt.bound));
    return r;
  }
  // Every bound is non-decreasing in C, so the smallest admissible C is
  // found by doubling then bisection.
  auto ok = [&](double c) {
    for (std::size_t n = 0; n < series.size(); ++n)
      if (!(mon[n] <= bound_at(n, c))) return false;
    return true;
  };
  if (ok(0.0)) {
    r.empirical_C = 0.0;
    return r;
  }
  double hi = 1.0;
  while (!ok(hi)) {
    hi *= 2.0;
    if (hi > 1e300) {
      r.empirical_C = inf;
      return r;
    }
  }
  double lo = hi == 1.0 ? 0.0 : 0.5 * hi;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  r.empirical_C = hi;
  return r;
}

}  // namespace

double eval_bound(BoundName name, const ModelParams& p, const std::map<std::string, double>& init_norms,
                  double t, double C) {
  Ladder l(p, init_norms, t, C);
  return l.get(name);
}

const std::map<BoundName, Pairing>& pairing_table() {
  static const std::map<BoundName, Pairing> table = {
      {BoundName::K1, {"k1_inst", "k1_rate"}}, {BoundName::K2, {"norm_Tphys_inf", ""}},
      {BoundName::K3, {"k3_inst", "k3_rate"}}, {BoundName::K4, {"k4_inst", "k4_rate"}},
      {BoundName::K5, {"k5_inst", "k5_rate"}}, {BoundName::K6, {"k6_inst", "k6_rate"}},
      {BoundName::K7, {"k7_inst", "k7_rate"}}, {BoundName::K8, {"", "Y"}},
      // X <= e^K is compared in logarithmic form, Z <= K.
      {BoundName::K, {"Z", ""}}};
  return table;
}

CertificateReport certify_pair(BoundName name, const std::string& monitored, const std::vector<Sample>& series,
                               const ModelParams& p, const std::map<std::string, double>& init_norms, double C) {
  const Pairing& pr = pairing_table().at(name);
  if (monitored != pr.instant && monitored != pr.rate)
    throw ConfigError(std::string("bound ") + to_string(name) + " is not paired with '" + monitored + "'");
  require_ordered(series);
  return certify_one(name, series, p, init_norms, C);
}

MaxPrincipleCheck max_principle_check(const State& s, const ModelParams& p, double T0_inf, double tol) {
  MaxPrincipleCheck c;
  c.monitored = norm_Lq(reconstruct_physical_T(s.T, s.grid().h), q_inf);
  const double Q_inf = p.has_source() ? norm_Lq(p.Q, q_inf) : 0.0;
  c.bound = 1.0 + T0_inf + Q_inf * s.t;
  c.margin = c.bound - c.monitored;
  c.pass = c.margin >= -tol;
  return c;
}

CertificateReport max_principle_certificate(const std::vector<Sample>& series, double tol) {
  CertificateReport r;
  r.name = "max_principle";
  for (const Sample& s : series) {
    const double m = s.at("norm_Tphys_inf");
    const double b = m + s.at("maxprin_margin");
    r.series.push_back({s.t, m, b});
    r.empirical_C = std::max(r.empirical_C, ratio(m, b));
    if (s.at("maxprin_margin") < -tol) r.pass = false;
  }
  return r;
}

CertificateReport energy_certificate(const std::vector<Sample>& series, double tol) {
  CertificateReport r;
  r.name = "energy_inequality";
  for (const Sample& s : series) {
    const double m = s.at("energy_lhs"), b = s.at("energy_rhs");
    r.series.push_back({s.t, m, b});
    r.empirical_C = std::max(r.empirical_C, ratio(m, b));
    if (!(m <= b + tol)) r.pass = false;
  }
  return r;
}

std::vector<CertificateReport> certify(const std::vector<Sample>& series, const ModelParams& p,
                                       const std::map<std::string, double>& init_norms, double C) {
  require_ordered(series);
  std::vector<CertificateReport> out;
  for (BoundName b : all_bounds()) out.push_back(certify_one(b, series, p, init_norms, C));
  out.push_back(max_principle_certificate(series, 1e-6));
  out.push_back(energy_certificate(series, 1e-6));
  return out;
}

namespace {

double growth_integrand(const State& s) {
  const VectorFieldH vz = ddz(s.v);
  const VectorFieldH gT = grad_h(s.T);
  return std::pow(norm_Lq(s.v, 6.0), 4) + sq(norm_Hm(gT, 1)) + std::pow(norm_Lq(vz, 6.0), 4) +
         l2sq(ddz(lap_h(s.T)));
}

double distance_sq(const State& a, const State& b) { return l2sq(a.v - b.v) + l2sq(a.T - b.T); }

}  // namespace

TwinReport twin_run(const State& s0a, const State& s0b, const ModelParams& p, const StepperConfig& c, int every) {
  if (!(s0a.grid() == s0b.grid())) throw InputError("twin_run: the two initial states live on different grids");
  c.validate();
  every = std::max(1, every);
  Stepper a(s0a, p, c), b(s0b, p, c);

  struct Raw {
    double t, D, rate;
  };
  std::vector<Raw> raw;
  auto record = [&] {
    State sa = a.state(), sb = b.state();
    raw.push_back({sa.t, distance_sq(sa, sb), growth_integrand(sb)});
  };
  record();
  bool last = true;
  while (a.time() < c.t_end) {
    if (a.steps() >= c.max_steps) break;
    const double dt = std::min(a.next_dt(), b.next_dt());
    a.advance(dt);
    b.advance(dt);
    last = a.steps() % every == 0 || a.time() >= c.t_end;
    if (last) record();
  }
  if (!last) record();

  TwinReport r;
  const double D0 = raw.front().D;
  double E = 0.0;
  for (std::size_t n = 0; n < raw.size(); ++n) {
    if (n > 0) E += 0.5 * (raw[n].t - raw[n - 1].t) * (raw[n].rate + raw[n - 1].rate);
    r.series.push_back({raw[n].t, raw[n].D, E, 0.0});
    if (D0 > 0.0 && E > 0.0 && raw[n].D > 0.0) r.C_hat = std::max(r.C_hat, std::log(raw[n].D / D0) / E);
  }
  r.certificate.name = "twin_run";
  r.certificate.empirical_C = r.C_hat;
  for (TwinPoint& pt : r.series) {
    pt.envelope = D0 * std::exp(r.C_hat * pt.E);
    r.certificate.series.push_back({pt.t, pt.D, pt.envelope});
    // Rounding in log/exp may leave D a few ulps above its own envelope.
    if (pt.D > pt.envelope * (1 + 1e-12)) r.certificate.pass = false;
  }
  return r;
}

}  // namespace pech
