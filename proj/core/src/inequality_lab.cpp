#include "pech/inequality_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pech/calculus.hpp"
#include "pech/norms.hpp"
#include "pech/trial.hpp"

namespace pech {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double sq(double x) { return x * x; }

double mean(const ScalarField2& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s / double(f.values().size());
}

ScalarField2 apply(ScalarField2 f, double (*op)(double, double), double arg) {
  for (double& v : f.values()) v = op(v, arg);
  return f;
}

double abs_pow(double v, double q) { return std::pow(std::abs(v), q); }

// Euclidean magnitude of a list of 2D fields, pointwise.
ScalarField2 euclid(const std::vector<ScalarField2>& comps) {
  ScalarField2 out(comps.front().grid());
  for (const auto& c : comps)
    for (std::size_t n = 0; n < c.values().size(); ++n) out.values()[n] += sq(c.values()[n]);
  for (double& v : out.values()) v = std::sqrt(v);
  return out;
}

std::vector<ScalarField2> jacobian(const VectorField2& u) {
  VectorField2 g1 = grad_h(u.u1), g2 = grad_h(u.u2);
  return {g1.u1, g1.u2, g2.u1, g2.u2};
}

// (sum_{|alpha| <= m} || |d^alpha g| ||_q^q)^(1/q) for a vector-valued g.
double sobolev_wmq(const std::vector<ScalarField2>& comps, int m, double q) {
  double s = std::pow(norm_Lq(euclid(comps), q), q);
  if (m >= 1) {
    std::vector<ScalarField2> dx, dy;
    for (const auto& c : comps) {
      dx.push_back(derivative(c, 1, 0));
      dy.push_back(derivative(c, 0, 1));
    }
    s += std::pow(norm_Lq(euclid(dx), q), q) + std::pow(norm_Lq(euclid(dy), q), q);
  }
  return std::pow(s, 1.0 / q);
}

// Integral over (-h, 0) by the trapezoid rule, as a field on M.
ScalarField2 column_integral(const ScalarField3& f) {
  ScalarField2 out = vertical_average(f);
  out *= f.grid().h;
  return out;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, int sample, int role) {
  return splitmix(splitmix(seed) ^ splitmix(std::uint64_t(sample) * 64 + role));
}

}  // namespace

Measurement make_measurement(std::string name, double lhs, double rhs_c, double rhs_free) {
  Measurement m;
  m.name = std::move(name);
  m.lhs = lhs;
  m.rhs_c = rhs_c;
  m.rhs_free = rhs_free;
  const double den = rhs_c + rhs_free;
  m.ratio = lhs == 0.0 ? 0.0 : (den == 0.0 ? inf : lhs / den);
  return m;
}

Measurement make_constant_free(std::string name, double lhs, double rhs, double rel) {
  Measurement m;
  m.name = std::move(name);
  m.lhs = lhs;
  m.rhs_free = rhs;
  m.constant_free = true;
  m.holds = lhs <= rhs + rel * std::abs(rhs);
  m.ratio = lhs == 0.0 ? 0.0 : (rhs == 0.0 ? inf : lhs / rhs);
  return m;
}

double log_plus(double r) { return r >= 1.0 ? std::log(r) : 0.0; }

std::vector<Measurement> check_sobolev_2d(const ScalarField2& f) {
  const double L2 = norm_L2(f), H1 = norm_Hm(f, 1), H2 = norm_Hm(f, 2);
  const VectorField2 g = grad_h(f);
  const double G4 = norm_Lq(g, 4.0), Ginf = norm_Lq(g, q_inf);
  return {
      make_measurement("L4-2d", norm_Lq(f, 4.0), std::sqrt(L2 * H1)),
      make_measurement("L8-2d", norm_Lq(f, 8.0), std::pow(norm_Lq(f, 6.0), 0.75) * std::pow(H1, 0.25)),
      make_measurement("grad-L4-2d", G4, std::sqrt(norm_Lq(f, q_inf) * H2)),
      make_measurement("grad-L4-2d-sup", G4, std::sqrt(L2 * Ginf), L2),
  };
}

std::vector<Measurement> check_sobolev_3d(const ScalarField3& f) {
  const double L2 = norm_L2(f), H1 = norm_Hm(f, 1);
  return {make_measurement("L3-3d", norm_Lq(f, 3.0), std::sqrt(L2 * H1)),
          make_measurement("L6-3d", norm_Lq(f, 6.0), H1)};
}

Measurement check_div_curl(const VectorField2& u, int m, double q) {
  const std::string name = "div-curl-m" + std::to_string(m) + "q" + std::to_string(int(q));
  const double lhs = sobolev_wmq(jacobian(u), m, q);
  const double rhs = sobolev_wmq({div_h(u)}, m, q) + sobolev_wmq({curl_h(u)}, m, q);
  return make_measurement(name, lhs, rhs);
}

std::vector<Measurement> check_log_inequalities(const ScalarField2& f, const VectorField2& u) {
  Measurement sup_row = make_measurement("log-sup", norm_Lq(f, q_inf),
                                     norm_Hm(f, 1) * std::sqrt(1.0 + log_plus(norm_Hm(f, 2))));
  const auto J = jacobian(u);
  double JH2 = 0.0;
  for (const auto& c : J) JH2 += sq(norm_Hm(c, 2));
  const double dc = norm_Lq(div_h(u), q_inf) + norm_Lq(curl_h(u), q_inf);
  Measurement grad_row = make_measurement("log-grad-sup", norm_Lq(euclid(J), q_inf), dc * (1.0 + log_plus(std::sqrt(JH2))));
  return {sup_row, grad_row};
}

std::vector<Measurement> check_power_interp(const ScalarField2& f, int q) {
  const std::string tag = "q" + std::to_string(q);
  const double lhs = std::pow(norm_Lq(f, 4.0 * q), 4.0 * q);
  const double id_rhs = std::pow(norm_Lq(apply(f, abs_pow, q), 4.0), 4.0);
  Measurement id;
  id.name = "power-identity-" + tag;
  id.lhs = lhs;
  id.rhs_free = id_rhs;
  id.constant_free = true;
  const double scale = std::max(std::abs(lhs), std::abs(id_rhs));
  id.ratio = scale == 0.0 ? 0.0 : std::abs(lhs - id_rhs) / scale;
  id.holds = id.ratio <= 1e-10;

  // int |f|^(2q-2) |grad f|^2
  const ScalarField2 w = apply(f, abs_pow, 2.0 * q - 2.0);
  const ScalarField2 g2 = apply(magnitude(grad_h(f)), abs_pow, 2.0);
  const double I = mean(w * g2);
  const double n2q = std::pow(norm_Lq(f, 2.0 * q), 2.0 * q);
  return {make_measurement("power-" + tag, lhs, n2q * I, n2q * n2q), id};
}

Measurement check_minkowski(const ScalarField3& f, double p) {
  const GridSpec& g = f.grid();
  const std::size_t n2 = g.size2();
  std::vector<double> col(n2, 0.0);
  double rhs = 0.0;
  for (int k = 0; k < g.nz; ++k) {
    double lp = 0.0;
    for (std::size_t n = 0; n < n2; ++n) {
      const double a = std::abs(f.values()[k * n2 + n]);
      col[n] += g.zweight(k) * a;
      lp += std::pow(a, p);
    }
    rhs += g.zweight(k) * std::pow(lp / double(n2), 1.0 / p);
  }
  double lhs = 0.0;
  for (double c : col) lhs += std::pow(c, p);
  lhs = std::pow(lhs / double(n2), 1.0 / p);
  return make_constant_free("minkowski-p" + std::to_string(int(p)), lhs, rhs);
}

std::vector<Measurement> check_cauchy_schwarz(const ScalarField2& a, const ScalarField2& b, const ScalarField3& c,
                                              const ScalarField3& d) {
  std::vector<Measurement> out;
  {
    double ab = 0.0, aa = 0.0, bb = 0.0;
    for (std::size_t n = 0; n < a.values().size(); ++n) {
      ab += a.values()[n] * b.values()[n];
      aa += sq(a.values()[n]);
      bb += sq(b.values()[n]);
    }
    out.push_back(make_constant_free("cauchy-schwarz-M", std::abs(ab), std::sqrt(aa) * std::sqrt(bb)));
  }
  const GridSpec& g = c.grid();
  const std::size_t n2 = g.size2();
  double cd = 0.0, cc = 0.0, dd = 0.0, col_sq = 0.0;
  for (std::size_t n = 0; n < n2; ++n) {
    double col = 0.0;
    for (int k = 0; k < g.nz; ++k) {
      const double w = g.zweight(k), x = c.values()[k * n2 + n], y = d.values()[k * n2 + n];
      cd += w * x * y;
      cc += w * x * x;
      dd += w * y * y;
      col += w * x;
    }
    col_sq += col * col;
  }
  out.push_back(make_constant_free("cauchy-schwarz-channel", std::abs(cd), std::sqrt(cc) * std::sqrt(dd)));
  // (int c dz)^2 <= h int c^2 dz, integrated over M
  out.push_back(make_constant_free("cauchy-schwarz-column", col_sq, g.h * cc));
  return out;
}

std::vector<Measurement> check_anisotropic(const ScalarField3& psi1, const ScalarField3& psi2,
                                           const ScalarField3& psi3) {
  const ScalarField2 I1 = column_integral(psi1);
  const double n1 = norm_L2(psi1), n2 = norm_L2(psi2), n3 = norm_L2(psi3);
  const double g1 = norm_L2(grad_h(psi1)), g2 = norm_L2(grad_h(psi2));
  const double free = n1 * n2 * n3;

  const double lhs1 = std::abs(mean(I1 * column_integral(psi2 * psi3)));
  Measurement m1 = make_measurement("trilinear-1", lhs1, std::sqrt(n1 * g1 * n2 * g2) * n3, free);

  const ScalarField3 grad_mag = magnitude(grad_h(psi2));
  const double lhs2 = std::abs(mean(I1 * column_integral(grad_mag * psi3)));
  const double hess = std::sqrt(sq(norm_L2(derivative(psi2, 2, 0, 0))) + 2 * sq(norm_L2(derivative(psi2, 1, 1, 0))) +
                                sq(norm_L2(derivative(psi2, 0, 2, 0))));
  Measurement m2 =
      make_measurement("trilinear-2", lhs2, std::sqrt(n1 * g1) * std::sqrt(norm_Lq(psi2, q_inf) * hess) * n3, free);
  return {m1, m2};
}

std::vector<Measurement> measure_sample(const LabConfig& cfg, int s, const GridSpec& g2, const GridSpec& g3) {
  const int B = cfg.band_limit;
  auto t2 = [&](int role, double decay) {
    return TrialFunction::generate(TrialKind::field2D, trial_seed(cfg.seed, s, role), B, decay);
  };
  auto t3 = [&](int role) {
    return TrialFunction::generate(TrialKind::field3D, trial_seed(cfg.seed, s, role), B, 2.0);
  };
  const ScalarField2 phi = t2(0, 2.0).realize2(g2);
  const VectorField2 u{t2(1, 2.0).zero_mean().realize2(g2), t2(2, 2.0).zero_mean().realize2(g2)};
  const ScalarField2 rough = t2(3, 1.0).realize2(g2);
  const VectorField2 urough{t2(8, 1.0).zero_mean().realize2(g2), t2(9, 1.0).zero_mean().realize2(g2)};
  const ScalarField3 psi1 = t3(4).realize3(g3), psi2 = t3(5).realize3(g3), psi3 = t3(6).realize3(g3);

  std::vector<Measurement> out;
  auto add = [&](std::vector<Measurement> v) { out.insert(out.end(), v.begin(), v.end()); };
  add(check_sobolev_2d(phi));
  add(check_sobolev_3d(psi1));
  for (int m : {0, 1})
    for (double q : {2.0, 4.0}) out.push_back(check_div_curl(u, m, q));
  add(check_log_inequalities(phi, u));
  auto r = check_log_inequalities(rough, urough);
  for (auto& x : r) x.name += "-rough";
  add(r);
  std::vector<Measurement> twe, twe_id;
  for (int q : {1, 2, 3}) {
    auto v = check_power_interp(phi, q);
    twe.push_back(v[0]);
    twe_id.push_back(v[1]);
  }
  add(twe);
  add(twe_id);
  for (double p : {2.0, 4.0}) out.push_back(check_minkowski(psi1, p));
  add(check_cauchy_schwarz(phi, u.u1, psi1, psi2));
  add(check_anisotropic(psi1, psi2, psi3));
  return out;
}

std::vector<InequalityResult> run_inequality_lab(const LabConfig& cfg) {
  auto grids = [&](int n) {
    return std::pair{GridSpec{n, n, 3, cfg.h, false}, GridSpec{n, n, n + 1, cfg.h, false}};
  };
  const auto [c2, c3] = grids(cfg.coarse);
  const auto [f2, f3] = grids(cfg.fine);
  std::vector<InequalityResult> rows;
  for (int s = 0; s < cfg.samples; ++s) {
    const auto coarse = measure_sample(cfg, s, c2, c3);
    const auto fine = measure_sample(cfg, s, f2, f3);
    if (rows.empty()) {
      for (const auto& m : fine) {
        InequalityResult r;
        r.name = m.name;
        r.constant_free = m.constant_free;
        rows.push_back(r);
      }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      InequalityResult& r = rows[i];
      ++r.samples;
      r.ratios.push_back(fine[i].ratio);
      r.empirical_C = std::max(r.empirical_C, fine[i].ratio);
      r.coarse_C = std::max(r.coarse_C, coarse[i].ratio);
      r.failures += int(!fine[i].holds) + int(!coarse[i].holds);
    }
  }
  for (InequalityResult& r : rows) {
    if (r.empirical_C == r.coarse_C)
      r.drift = 1.0;
    else
      r.drift = r.coarse_C == 0.0 ? inf : r.empirical_C / r.coarse_C;
    if (r.constant_free)
      r.pass = r.failures == 0;
    else
      r.pass = std::isfinite(r.empirical_C) && r.drift >= 0.5 && r.drift <= 2.0;
  }
  return rows;
}

}  // namespace pech
