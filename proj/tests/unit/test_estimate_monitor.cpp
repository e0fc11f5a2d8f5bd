#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "oracles.hpp"
#include "pech/calculus.hpp"
#include "pech/errors.hpp"
#include "pech/monitor.hpp"
#include "pech/norms.hpp"

using namespace pech;
using oracle::pi;
using oracle::TrigField;

namespace {

ModelParams params(const GridSpec& g, double R1 = 1.0, double R2 = 1.0, double R3 = 1.0) {
  ModelParams p;
  p.R1 = R1;
  p.R2 = R2;
  p.R3 = R3;
  p.f0 = 1.0;
  p.h = g.h;
  return p;
}

// Random field with every horizontal-mean term removed.
TrigField zero_mean(TrigField f) {
  std::erase_if(f.terms, [](const oracle::Term& t) { return t.kx == 0 && t.ky == 0; });
  return f;
}

double sq(double x) { return x * x; }

double mean_sq(const GridSpec& g, const std::function<double(double, double, double)>& f) {
  return oracle::volume_mean(g, [&](int i, int j, int k) { return sq(f(g.x(i), g.y(j), g.z(k))); });
}

double mean_sq2(const GridSpec& g, const std::function<double(double, double)>& f) {
  double s = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) s += sq(f(g.x(i), g.y(j)));
  return s / (double(g.nx) * g.ny);
}

State random_state(const GridSpec& g, std::uint64_t seed) {
  auto a = oracle::random_field(seed, g.h, false, 3, 4);
  auto b = oracle::random_field(seed + 1, g.h, false, 3, 4);
  auto t = oracle::random_field(seed + 2, g.h, true, 3, 4);
  return make_state({a.sample(g), b.sample(g)}, t.sample(g));
}

}  // namespace

TEST_CASE("solve_beta: zero and single-mode data") {
  GridSpec g{16, 16, 9, 1.0, true};
  VectorFieldH b0 = solve_beta(ScalarField3(g, VBasis::sine));
  CHECK(oracle::max_abs(b0.u1) == 0.0);
  CHECK(oracle::max_abs(b0.u2) == 0.0);

  auto s = [&](double z) { return std::sin(pi * (z + g.h) / g.h); };
  auto T = ScalarField3::sample(g, VBasis::sine, [&](double x, double, double z) { return std::cos(2 * pi * x) * s(z); });
  VectorFieldH beta = solve_beta(T);
  auto want = ScalarField3::sample(g, VBasis::sine,
                                   [&](double x, double, double z) { return std::sin(2 * pi * x) * s(z) / (2 * pi); });
  CHECK(oracle::max_abs_diff(beta.u1, want) <= 1e-14);
  CHECK(oracle::max_abs(beta.u2) <= 1e-14);

  VectorFieldH gT = grad_h(T);
  VectorFieldH res = VectorFieldH(lap_h(beta.u1), lap_h(beta.u2)) - gT;
  CHECK(norm_L2(res) <= 1e-10 * norm_L2(gT));
}

TEST_CASE("solve_beta: reconstruction on random data") {
  GridSpec g{16, 16, 9, 1.0, true};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ScalarField3 T = zero_mean(oracle::random_field(seed, g.h, true, 5, 6)).sample(g);
    VectorFieldH beta = solve_beta(T);
    CHECK(norm_L2(div_h(beta) - T) <= 1e-8 * norm_L2(T));
    CHECK(norm_L2(curl_h(beta)) <= 1e-8 * norm_L2(T));
    // per-level mean zero
    ScalarField3 b1 = beta.u1;
    for (int k = 0; k < g.nz; ++k) {
      double m = 0.0;
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) m += b1(i, j, k);
      CHECK(std::abs(m) / g.size2() <= 1e-14);
    }
  }
}

TEST_CASE("derived variables") {
  GridSpec g{16, 16, 9, 1.0, true};
  const double h = g.h;
  ModelParams p = params(g, 2.0);

  SUBCASE("horizontally constant shear has no vorticity") {
    auto v1 = ScalarField3::sample(g, VBasis::cosine, [&](double, double, double z) { return std::cos(pi * (z + h) / h); });
    State s = make_state({v1, ScalarField3(g, VBasis::cosine)}, ScalarField3(g, VBasis::sine));
    CHECK(oracle::max_abs(derived_vars(s, p).eta) == 0.0);
  }
  SUBCASE("theta of a constant temperature") {
    State s;
    s.v = VectorFieldH(g, VBasis::cosine);
    s.T = ScalarField3(g, VBasis::sine, std::vector<double>(g.size3(), 0.75));
    DerivedVars d = derived_vars(s, p);
    for (double x : d.theta.values()) CHECK(x == doctest::Approx(1.5).epsilon(1e-15));
  }
  SUBCASE("theta equals div zeta") {
    for (std::uint64_t seed : {3, 9, 27}) {
      auto a = oracle::random_field(seed, h, false, 4, 4);
      auto b = oracle::random_field(seed + 1, h, false, 4, 4);
      auto t = zero_mean(oracle::random_field(seed + 2, h, true, 4, 4));
      State s = make_state({a.sample(g), b.sample(g)}, t.sample(g));
      DerivedVars d = derived_vars(s, p);
      CHECK(oracle::max_abs_diff(div_h(d.zeta), d.theta) <= 1e-10);
      CHECK(oracle::max_abs_diff(curl_h(d.u), d.eta) <= 1e-10);
    }
  }
}

TEST_CASE("functionals of the zero state") {
  GridSpec g{8, 8, 5, 1.0, true};
  State s = make_state(VectorFieldH(g, VBasis::cosine), ScalarField3(g, VBasis::sine));
  Sample f = sample_functionals(s, params(g), 0.0);
  for (const char* k : {"norm_v_L2", "norm_T_L2", "norm_vtilde_L6", "norm_gradH_vbar_L2", "norm_u_L6", "norm_uz_L2",
                        "eta_L2", "theta_L2", "lapH_T_L2", "gradH_Tz_L2", "Y", "div_vbar_inf", "energy_residual"})
    CHECK(f.at(k) == 0.0);
  CHECK(f.at("X") == 1.0);
  CHECK(f.at("Z") == 0.0);
  // T_phys = -z/h peaks at the bottom wall.
  CHECK(f.at("norm_Tphys_inf") == doctest::Approx(1.0));
  CHECK(f.at("maxprin_margin") == doctest::Approx(0.0));
  for (const auto& c : series_columns())
    if (c != "t") CHECK_MESSAGE(f.has(c), c);
}

TEST_CASE("coupling constant") {
  GridSpec g{8, 8, 5, 1.0, true};
  CHECK(coupling_constant(params(g, 1.5, 2.0, 2.0)) == 0.0);
  CHECK(coupling_constant(params(g, 1.0, 2.0, 1.0)) == doctest::Approx(2.0 * 3.0 * 1.0 / 4.0));
}

TEST_CASE("X, Y and their blocks against analytic derivatives") {
  GridSpec g{16, 16, 9, 1.0, true};
  const double h = g.h;
  ModelParams p = params(g, 1.3, 2.1, 0.7);
  auto A = oracle::random_field(41, h, false, 3, 3, 8, 1);
  auto B = oracle::random_field(42, h, false, 3, 3, 8, 1);
  auto Psi = oracle::random_field(43, h, false, 3, 0, 6, 0);
  auto Tt = oracle::random_field(44, h, true, 3, 3);
  // v = A, B plus the barotropic flow (-psi_y, psi_x).
  auto v1 = [&](double x, double y, double z, int a, int b, int c) { return A.eval(x, y, z, a, b, c) - Psi.eval(x, y, z, a, b + 1, c); };
  auto v2 = [&](double x, double y, double z, int a, int b, int c) { return B.eval(x, y, z, a, b, c) + Psi.eval(x, y, z, a + 1, b, c); };
  auto sv1 = ScalarField3::sample(g, VBasis::cosine, [&](double x, double y, double z) { return v1(x, y, z, 0, 0, 0); });
  auto sv2 = ScalarField3::sample(g, VBasis::cosine, [&](double x, double y, double z) { return v2(x, y, z, 0, 0, 0); });
  State s = make_state({sv1, sv2}, Tt.sample(g));
  Sample f = sample_functionals(s, p, 0.0);

  // eta = d_x v2_z - d_y v1_z, theta = d_x v1_z + d_y v2_z + R1 T.
  auto eta = [&](double x, double y, double z, int a, int b, int c) {
    return v2(x, y, z, a + 1, b, c + 1) - v1(x, y, z, a, b + 1, c + 1);
  };
  auto theta = [&](double x, double y, double z, int a, int b, int c) {
    return v1(x, y, z, a + 1, b, c + 1) + v2(x, y, z, a, b + 1, c + 1) + p.R1 * Tt.eval(x, y, z, a, b, c);
  };
  using F6 = std::function<double(double, double, double, int, int, int)>;
  auto lap = [](const F6& q, int c) {
    return [=](double x, double y, double z) { return q(x, y, z, 2, 0, c) + q(x, y, z, 0, 2, c); };
  };
  auto grad_sq = [&](const F6& q, int a, int b, int c) {
    // ||grad_H d^(a,b,c) q||^2
    return mean_sq(g, [&](double x, double y, double z) { return q(x, y, z, a + 1, b, c); }) +
           mean_sq(g, [&](double x, double y, double z) { return q(x, y, z, a, b + 1, c); });
  };
  auto grad_lap_sq = [&](const F6& q, int c) {
    return mean_sq(g, [&](double x, double y, double z) { return q(x, y, z, 3, 0, c) + q(x, y, z, 1, 2, c); }) +
           mean_sq(g, [&](double x, double y, double z) { return q(x, y, z, 2, 1, c) + q(x, y, z, 0, 3, c); });
  };
  F6 T6 = [&](double x, double y, double z, int a, int b, int c) { return Tt.eval(x, y, z, a, b, c); };
  F6 E6 = eta, H6 = theta;
  // vbar = (-psi_y, psi_x) on M
  auto vb = [&](int comp, double x, double y, int a, int b) {
    return comp == 0 ? -Psi.eval(x, y, 0.0, a, b + 1, 0) : Psi.eval(x, y, 0.0, a + 1, b, 0);
  };
  double grad_lap_vbar = 0.0, lap2_vbar = 0.0;
  for (int comp = 0; comp < 2; ++comp) {
    grad_lap_vbar += mean_sq2(g, [&](double x, double y) { return vb(comp, x, y, 3, 0) + vb(comp, x, y, 1, 2); }) +
                     mean_sq2(g, [&](double x, double y) { return vb(comp, x, y, 2, 1) + vb(comp, x, y, 0, 3); });
    lap2_vbar += mean_sq2(g, [&](double x, double y) {
      return vb(comp, x, y, 4, 0) + 2 * vb(comp, x, y, 2, 2) + vb(comp, x, y, 0, 4);
    });
  }
  const double CR = coupling_constant(p);
  const double X = 1.0 + grad_lap_vbar + CR * mean_sq(g, lap(T6, 0)) + CR * grad_sq(T6, 0, 0, 1) +
                   mean_sq(g, lap(E6, 0)) + grad_sq(E6, 0, 0, 1) + mean_sq(g, lap(H6, 0)) + grad_sq(H6, 0, 0, 1);
  const double Y = lap2_vbar + mean_sq(g, lap(T6, 1)) + grad_sq(T6, 0, 0, 2) + grad_lap_sq(E6, 0) +
                   mean_sq(g, lap(E6, 1)) + grad_lap_sq(H6, 0) + mean_sq(g, lap(H6, 1));
  CHECK(f.at("X") == doctest::Approx(X).epsilon(1e-12));
  CHECK(f.at("Z") == doctest::Approx(std::log(X)).epsilon(1e-12));
  CHECK(f.at("Y") == doctest::Approx(Y).epsilon(1e-12));
  CHECK(f.at("eta_L2") == doctest::Approx(std::sqrt(mean_sq(g, [&](double x, double y, double z) { return eta(x, y, z, 0, 0, 0); }))).epsilon(1e-12));
  CHECK(f.at("norm_gradH_vbar_L2") ==
        doctest::Approx(std::sqrt(mean_sq2(g, [&](double x, double y) { return vb(0, x, y, 1, 0); }) +
                                  mean_sq2(g, [&](double x, double y) { return vb(0, x, y, 0, 1); }) +
                                  mean_sq2(g, [&](double x, double y) { return vb(1, x, y, 1, 0); }) +
                                  mean_sq2(g, [&](double x, double y) { return vb(1, x, y, 0, 1); })))
            .epsilon(1e-12));
  CHECK(f.at("X") >= 1.0);
  for (const auto& [k, x] : f.values) {
    CHECK_MESSAGE(std::isfinite(x), k);
    if (k != "energy_residual" && k != "energy_lhs" && k != "maxprin_margin") CHECK_MESSAGE(x >= 0.0, k);
  }
}

TEST_CASE("reconstruction inequality constant is resolution independent") {
  ModelParams p;
  p.R1 = 1.5;
  double Cs[2] = {0, 0};
  int n = 0;
  for (int N : {16, 32}) {
    GridSpec g{N, N, N / 2 + 1, 1.0, true};
    p.h = g.h;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      auto a = oracle::random_field(seed, g.h, false, 4, 4);
      auto b = oracle::random_field(seed + 100, g.h, false, 4, 4);
      auto t = zero_mean(oracle::random_field(seed + 200, g.h, true, 4, 4));
      State s = make_state({a.sample(g), b.sample(g)}, t.sample(g));
      DerivedVars d = derived_vars(s, p);
      const double lhs = std::sqrt(sq(norm_L2(grad_h(d.u.u1))) + sq(norm_L2(grad_h(d.u.u2))));
      const double rhs = norm_L2(d.eta) + norm_L2(d.theta) + norm_L2(s.T);
      Cs[n] = std::max(Cs[n], lhs / rhs);
    }
    ++n;
  }
  CHECK(std::isfinite(Cs[0]));
  CHECK(Cs[1] / Cs[0] <= 2.0);
  CHECK(Cs[0] / Cs[1] <= 2.0);
}

TEST_CASE("eval_bound examples") {
  GridSpec g{8, 8, 5, 1.0, true};
  ModelParams p = params(g);
  std::map<std::string, double> zero = {{"v0_L2", 0},   {"T0_L2", 0},  {"v0_H1", 0},   {"dz_v0_H1", 0},
                                        {"v0_H4", 0},   {"T0_H2", 0},  {"T0_inf", 0},  {"Q_L2", 0},
                                        {"Q_inf", 0},   {"lapQ_L2", 0}, {"gradQz_L2", 0}};
  for (double t : {0.0, 0.5, 3.0}) CHECK(eval_bound(BoundName::K1, p, zero, t, 7.0) == 0.0);

  auto n = zero;
  n["v0_L2"] = 1.0;
  CHECK(eval_bound(BoundName::K1, p, n, 0.0, 1.0) == doctest::Approx(1.0));
  n = zero;
  n["v0_H1"] = 1.0;
  CHECK(eval_bound(BoundName::K3, p, n, 0.0, 1.0) == doctest::Approx(1.0));
  CHECK(eval_bound(BoundName::K2, p, zero, 0.0, 1.0) == 1.0);
  n = zero;
  n["T0_inf"] = 0.5;
  n["Q_inf"] = 2.0;
  CHECK(eval_bound(BoundName::K2, p, n, 0.25, 9.0) == doctest::Approx(2.0));

  auto missing = zero;
  missing.erase("v0_H1");
  try {
    eval_bound(BoundName::K4, p, missing, 0.1, 1.0);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("v0_H1") != std::string::npos);
  }
}

TEST_CASE("eval_bound ladder against a direct transcription") {
  GridSpec g{8, 8, 5, 1.0, true};
  ModelParams p = params(g, 0.8, 1.0, 1.0);
  p.h = 0.6;
  std::map<std::string, double> n = {{"v0_L2", 0.3},  {"T0_L2", 0.2},   {"v0_H1", 0.9},  {"dz_v0_H1", 0.7},
                                     {"v0_H4", 2.0},  {"T0_H2", 1.1},   {"T0_inf", 0.4}, {"Q_L2", 0.1},
                                     {"Q_inf", 0.25}, {"lapQ_L2", 0.5}, {"gradQz_L2", 0.3}};
  const double t = 0.05, C = 1.7;
  const double K1 = C * ((0.09 + 0.04) * std::exp(1.8 * 1.6 * 1.6 * t) + 0.01 * t);
  const double K2 = 1 + 0.4 + 0.25 * t;
  const double K3 = std::exp(K1 * K1 * t) * (std::pow(0.9, 6) + std::pow(K2, 4) * t);
  const double K4 = std::exp(K2 * K2 * t) * (0.81 + K2 + K3);
  const double K5 = std::exp((1 + std::pow(K3, 2.0 / 3) + K4 * K4) * t) * (std::pow(0.7, 6) + std::pow(K2, 6) * t);
  const double K6 = C * std::exp((std::pow(K3, 2.0 / 3) + std::pow(K5, 2.0 / 3)) * t) * (0.81 + K1);
  const double K7 = C * std::exp((K1 + std::pow(K3, 2.0 / 3) + std::pow(K5, 2.0 / 3) + K6 * K6) * t) *
                    (0.81 + K1 + 0.01 + K2 * K2 * (K2 + std::cbrt(K3) + std::cbrt(K5) + K6));
  const double K = std::exp(C * (K1 + K2 + K7)) * (1 + 4.0 + 1.21 + t + 0.25 * t + 0.09 * t);
  const double want[] = {K1, K2, K3, K4, K5, K6, K7, K, K};
  int i = 0;
  for (BoundName b : all_bounds()) CHECK(eval_bound(b, p, n, t, C) == doctest::Approx(want[i++]).epsilon(1e-12));
}

TEST_CASE("pairing table is total") {
  for (BoundName b : all_bounds()) {
    REQUIRE(pairing_table().count(b) == 1);
    const Pairing& pr = pairing_table().at(b);
    CHECK(!(pr.instant.empty() && pr.rate.empty()));
    const auto& cols = series_columns();
    for (const auto& k : {pr.instant, pr.rate})
      if (!k.empty()) CHECK_MESSAGE(std::find(cols.begin(), cols.end(), k) != cols.end(), k);
    CHECK(parse_bound(to_string(b)) == b);
  }
  CHECK(pairing_table().size() == all_bounds().size());
  CHECK_THROWS_AS(parse_bound("K9"), ConfigError);
}

TEST_CASE("certify: zero trajectory") {
  GridSpec g{8, 8, 5, 1.0, true};
  ModelParams p = params(g);
  State s0 = make_state(VectorFieldH(g, VBasis::cosine), ScalarField3(g, VBasis::sine));
  auto init = compute_init_norms(s0, p);
  StepperConfig c;
  c.dt = 0.01;
  c.t_end = 0.05;
  MonitorSet m;
  m.sampler = make_sampler(p, init.at("T0_inf"));
  RunSummary r = run(s0, p, c, m);
  REQUIRE(r.series.size() == 6);
  for (const auto& rep : certify(r.series, p, init, 1.0)) {
    CHECK_MESSAGE(rep.pass, rep.name);
    if (rep.name.front() == 'K' && rep.name != "K2" && rep.name != "K") CHECK_MESSAGE(rep.empirical_C == 0.0, rep.name);
  }
}

TEST_CASE("certify: diffusive decay passes K1 at C = 1") {
  GridSpec g{8, 8, 9, 1.0, true};
  ModelParams p = params(g);
  auto T = ScalarField3::sample(g, VBasis::sine, [&](double x, double, double z) {
    return 0.3 * std::cos(2 * pi * x) * std::sin(pi * (z + g.h) / g.h);
  });
  State s0 = make_state(VectorFieldH(g, VBasis::cosine), T);
  auto init = compute_init_norms(s0, p);
  StepperConfig c;
  c.dt = 1e-3;
  c.t_end = 0.05;
  c.freeze_velocity = true;
  MonitorSet m;
  m.every = 5;
  m.sampler = make_sampler(p, init.at("T0_inf"));
  RunSummary r = run(s0, p, c, m);
  for (std::size_t n = 1; n < r.series.size(); ++n) CHECK(r.series[n].at("norm_T_L2") < r.series[n - 1].at("norm_T_L2"));
  auto rep = certify_pair(BoundName::K1, "k1_inst", r.series, p, init, 1.0);
  CHECK(rep.pass);
  CHECK(rep.empirical_C <= 1.0);
  CHECK(rep.empirical_C > 0.0);

  CHECK_THROWS_AS(certify_pair(BoundName::K1, "norm_Tphys_inf", r.series, p, init, 1.0), ConfigError);
  auto shuffled = r.series;
  std::swap(shuffled[0], shuffled[1]);
  CHECK_THROWS_AS(certify(shuffled, p, init, 1.0), InputError);
  CHECK_THROWS_AS(certify({}, p, init, 1.0), InputError);
}

TEST_CASE("maximum principle") {
  GridSpec g{16, 16, 9, 1.0, true};
  ModelParams p = params(g);
  State zero = make_state(VectorFieldH(g, VBasis::cosine), ScalarField3(g, VBasis::sine));
  MaxPrincipleCheck c0 = max_principle_check(zero, p, 0.0);
  CHECK(c0.bound == 1.0);
  zero.t = 3.0;
  CHECK(max_principle_check(zero, p, 0.4).bound == doctest::Approx(1.4));

  // Diffusion only: margin never drops below -1e-6.
  p.terms = {false, false, false, false, false};
  p.f0 = 0.0;
  auto T = oracle::random_field(61, g.h, true, 3, 4).sample(g);
  State s0 = make_state(VectorFieldH(g, VBasis::cosine), T);
  const double T0 = compute_init_norms(s0, p).at("T0_inf");
  StepperConfig c;
  c.dt = 1e-3;
  c.t_end = 0.1;
  double worst = 1e300;
  MonitorSet m;
  m.on_step = [&](const State& s, long) { worst = std::min(worst, max_principle_check(s, p, T0).margin); };
  run(s0, p, c, m);
  CHECK(worst >= -1e-6);
}

TEST_CASE("twin run") {
  GridSpec g{16, 16, 9, 1.0, true};
  ModelParams p = params(g);
  State s0 = random_state(g, 7);
  StepperConfig c;
  c.dt = 1e-3;
  c.t_end = 0.02;

  SUBCASE("identical twins") {
    TwinReport r = twin_run(s0, s0, p, c, 5);
    for (const auto& pt : r.series) CHECK(pt.D == 0.0);
    CHECK(r.C_hat == 0.0);
    CHECK(r.certificate.pass);
  }
  SUBCASE("small perturbation") {
    ScalarField3 dT = ScalarField3::sample(g, VBasis::sine, [&](double x, double y, double z) {
      return 1e-8 * std::cos(2 * pi * x) * std::cos(2 * pi * y) * std::sin(pi * (z + g.h) / g.h);
    });
    State s1 = make_state(s0.v, s0.T + dT);
    TwinReport r = twin_run(s0, s1, p, c, 2);
    CHECK(r.series.front().D > 0.0);
    CHECK(std::isfinite(r.C_hat));
    CHECK(r.certificate.pass);
    for (const auto& pt : r.series) CHECK(pt.D <= pt.envelope * (1 + 1e-12));
    for (std::size_t n = 1; n < r.series.size(); ++n) CHECK(r.series[n].E > r.series[n - 1].E);
  }
  SUBCASE("temperature-only perturbation under pure diffusion") {
    ModelParams q = p;
    q.terms.advection = false;
    StepperConfig cf = c;
    cf.freeze_velocity = true;
    State a = make_state(VectorFieldH(g, VBasis::cosine), s0.T);
    State b = make_state(VectorFieldH(g, VBasis::cosine), s0.T * 1.01);
    TwinReport r = twin_run(a, b, q, cf);
    for (std::size_t n = 1; n < r.series.size(); ++n) CHECK(r.series[n].D <= r.series[n - 1].D);
  }
  SUBCASE("grid mismatch") {
    GridSpec g2{8, 8, 9, 1.0, true};
    State other = make_state(VectorFieldH(g2, VBasis::cosine), ScalarField3(g2, VBasis::sine));
    CHECK_THROWS_AS(twin_run(s0, other, p, c), InputError);
  }
}
