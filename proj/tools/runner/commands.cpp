#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>

#include <spdlog/spdlog.h>

#include "pech/errors.hpp"
#include "pech/inequality_lab.hpp"
#include "pech/monitor.hpp"
#include "pech/norms.hpp"
#include "pech/trial.hpp"
#include "snapshot.hpp"

namespace fs = std::filesystem;

namespace pech::runner {

namespace {

using std::numbers::pi;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double vmode(VBasis b, int m, double z, double h) {
  const double a = m * pi * (z + h) / h;
  return b == VBasis::cosine ? std::cos(a) : std::sin(a);
}

// amp cos(2 pi kx x) cos(2 pi ky y) times the vertical mode m.
ScalarField3 cos_mode(const GridSpec& g, VBasis b, int kx, int ky, int m, double amp) {
  return ScalarField3::sample(g, b, [&](double x, double y, double z) {
    return amp * std::cos(2 * pi * kx * x) * std::cos(2 * pi * ky * y) * vmode(b, m, z, g.h);
  });
}

ScalarField3 random_field(const RunConfig& c, VBasis b, int role, double amp) {
  auto f = TrialFunction::generate(TrialKind::field3D, c.seed * 8 + std::uint64_t(role), c.initial.band, 2.0, b);
  return amp * f.realize3(c.grid);
}

fs::path prepare_dir(const RunConfig& c) {
  const fs::path dir = output_dir(c);
  fs::create_directories(dir);
  std::ofstream(dir / "config.echo") << format_config(c);
  return dir;
}

void write_row(std::ostream& f, const Sample& s) {
  const auto& cols = series_columns();
  for (std::size_t n = 0; n < cols.size(); ++n) {
    if (n) f << ',';
    f << num(cols[n] == "t" ? s.t : s.at(cols[n]));
  }
  f << '\n';
}

}  // namespace

ModelParams build_params(const RunConfig& c) {
  ModelParams p;
  p.R1 = c.R1;
  p.R2 = c.R2;
  p.R3 = c.R3;
  p.f0 = c.f0;
  p.h = c.grid.h;
  const ProfileSpec& q = c.source;
  if (q.name == "taylor-mode") {
    if (q.m < 1) throw ConfigError("source.m must be >= 1 for taylor-mode");
    p.Q = prepare_source(cos_mode(c.grid, VBasis::sine, q.kx, q.ky, q.m, q.amplitude));
  } else if (q.name == "snapshot") {
    p.Q = prepare_source(read_snapshot_on(q.snapshot, c.grid).T);
  }
  p.validate();
  return p;
}

State build_initial(const RunConfig& c) {
  const GridSpec& g = c.grid;
  const ProfileSpec& ic = c.initial;
  if (ic.name == "snapshot") {
    State s = read_snapshot_on(ic.snapshot, g);
    return make_state(s.v, s.T, s.t);
  }
  VectorFieldH v(g, VBasis::cosine);
  ScalarField3 T(g, VBasis::sine);
  if (ic.name == "taylor-mode") {
    const double A = ic.amplitude;
    const int kx = ic.kx, ky = ic.ky, m = ic.m, mT = std::max(ic.m, 1);
    v.u1 = ScalarField3::sample(g, VBasis::cosine, [&](double x, double y, double z) {
      return A * std::cos(2 * pi * kx * x) * std::sin(2 * pi * ky * y) * vmode(VBasis::cosine, m, z, g.h);
    });
    v.u2 = ScalarField3::sample(g, VBasis::cosine, [&](double x, double y, double z) {
      return -A * std::sin(2 * pi * kx * x) * std::cos(2 * pi * ky * y) * vmode(VBasis::cosine, m, z, g.h);
    });
    T = cos_mode(g, VBasis::sine, kx, ky, mT, ic.T_amplitude);
  } else if (ic.name == "random") {
    v = VectorFieldH(random_field(c, VBasis::cosine, 0, ic.amplitude), random_field(c, VBasis::cosine, 1, ic.amplitude));
    T = random_field(c, VBasis::sine, 2, ic.T_amplitude);
  }
  return make_state(std::move(v), std::move(T));
}

State perturbed(const State& s0, const std::string& spec, const RunConfig& c) {
  if (spec == "none") return s0;
  if (spec.rfind("snapshot:", 0) == 0) {
    try {
      State s = read_snapshot_on(spec.substr(9), c.grid);
      return make_state(s.v, s.T, s0.t);
    } catch (const FormatError& e) {
      throw ConfigError(std::string("twin perturbation: ") + e.what());
    }
  }
  const auto bad = [&] {
    return ConfigError("twin perturbation must be none, snapshot:<path> or <v1|v2|T>:kx,ky,m:amp; got '" + spec + "'");
  };
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) throw bad();
  const std::string field = spec.substr(0, c1);
  int kx = 0, ky = 0, m = 0;
  char tail = 0;
  if (std::sscanf(spec.substr(c1 + 1, c2 - c1 - 1).c_str(), "%d,%d,%d%c", &kx, &ky, &m, &tail) != 3) throw bad();
  char* end = nullptr;
  const std::string amp_text = spec.substr(c2 + 1);
  const double amp = std::strtod(amp_text.c_str(), &end);
  if (amp_text.empty() || *end != '\0' || !std::isfinite(amp)) throw bad();
  if (kx < 0 || ky < 0 || m < 0) throw bad();

  VectorFieldH v = s0.v;
  ScalarField3 T = s0.T;
  if (field == "v1") v.u1 += cos_mode(c.grid, VBasis::cosine, kx, ky, m, amp);
  else if (field == "v2") v.u2 += cos_mode(c.grid, VBasis::cosine, kx, ky, m, amp);
  else if (field == "T") {
    if (m < 1) throw ConfigError("twin perturbation of T needs m >= 1");
    T += cos_mode(c.grid, VBasis::sine, kx, ky, m, amp);
  } else throw bad();
  return make_state(std::move(v), std::move(T), s0.t);
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const fs::path dir = prepare_dir(c);
  const ModelParams p = build_params(c);
  const State s0 = build_initial(c);
  const auto init = compute_init_norms(s0, p);
  const auto sampler = make_sampler(p, init.at("T0_inf"));

  std::ofstream series(dir / "series.csv");
  const auto& cols = series_columns();
  for (std::size_t n = 0; n < cols.size(); ++n) series << (n ? "," : "") << cols[n];
  series << '\n';

  MonitorSet mon;
  mon.every = c.monitor_every;
  mon.sampler = sampler;
  mon.on_sample = [&](const Sample& s) { write_row(series, s); };
  if (c.snapshot_every > 0)
    mon.on_step = [&](const State& s, long step) {
      if (step % c.snapshot_every != 0) return;
      char name[32];
      std::snprintf(name, sizeof name, "snap_%08ld.pech", step);
      write_snapshot(s, (dir / name).string());
    };

  RunSummary r;
  try {
    r = run(s0, p, c.stepper, mon);
  } catch (const BlowUpError& e) {
    series.flush();
    spdlog::error("blow-up: {}", e.what());
    out << "blow-up at t = " << num(e.time()) << "; series.csv holds the samples up to that time\n";
    return blow_up;
  }
  if (r.series.empty()) {
    Sample s = sampler(s0);
    s.t = s0.t;
    write_row(series, s);
    r.series.push_back(std::move(s));
  }
  series.close();
  write_snapshot(r.final_state, (dir / "final.pech").string());

  const auto reports = certify(r.series, p, init, c.certificate_C);
  std::ofstream cert(dir / "certificates.csv");
  cert << "name,empirical_C,C,pass\n";
  bool hard_ok = true;
  for (const auto& rep : reports) {
    cert << rep.name << ',' << num(rep.empirical_C) << ',' << num(c.certificate_C) << ',' << (rep.pass ? 1 : 0)
         << '\n';
    out << rep.name << " empirical_C=" << num(rep.empirical_C) << " pass=" << (rep.pass ? "yes" : "no") << '\n';
    if ((rep.name == "max_principle" || rep.name == "energy_inequality") && !rep.pass) hard_ok = false;
  }
  if (r.truncated) {
    spdlog::warn("{}", r.notice);
    out << r.notice << '\n';
    return failed;
  }
  return hard_ok ? ok : failed;
}

int cmd_twin(const RunConfig& c, const std::string& perturb, std::ostream& out) {
  const fs::path dir = prepare_dir(c);
  const ModelParams p = build_params(c);
  const State a = build_initial(c);
  const State b = perturbed(a, perturb, c);
  TwinReport rep;
  try {
    rep = twin_run(a, b, p, c.stepper, c.monitor_every);
  } catch (const BlowUpError& e) {
    spdlog::error("blow-up: {}", e.what());
    out << "blow-up at t = " << num(e.time()) << '\n';
    return blow_up;
  }
  std::ofstream f(dir / "twin.csv");
  f << "t,D,E,envelope\n";
  for (const auto& pt : rep.series)
    f << num(pt.t) << ',' << num(pt.D) << ',' << num(pt.E) << ',' << num(pt.envelope) << '\n';
  out << "C_hat=" << num(rep.C_hat) << " pass=" << (rep.certificate.pass ? "yes" : "no") << '\n';
  return rep.certificate.pass && std::isfinite(rep.C_hat) ? ok : failed;
}

int cmd_ineqlab(const RunConfig& c, std::ostream& out) {
  const fs::path dir = prepare_dir(c);
  const auto rows = run_inequality_lab(lab_config(c));
  std::ofstream f(dir / "inequalities.csv");
  f << "name,samples,empirical_C,drift,pass\n";
  bool free_ok = true;
  for (const auto& r : rows) {
    f << r.name << ',' << r.samples << ',' << num(r.empirical_C) << ',' << num(r.drift) << ',' << (r.pass ? 1 : 0)
      << '\n';
    out << r.name << " empirical_C=" << num(r.empirical_C) << " drift=" << num(r.drift)
        << (r.constant_free ? " failures=" + std::to_string(r.failures) : std::string()) << " pass="
        << (r.pass ? "yes" : "no") << '\n';
    if (r.constant_free && r.failures > 0) free_ok = false;
  }
  return free_ok ? ok : failed;
}

int cmd_snapshot_info(const std::string& path, std::ostream& out) {
  const State s = read_snapshot(path);
  const GridSpec& g = s.grid();
  out << "version " << snapshot_version << '\n'
      << "grid " << g.nx << " x " << g.ny << " x " << g.nz << ", h = " << num(g.h) << '\n'
      << "t " << num(s.t) << '\n'
      << "norm_v_L2 " << num(norm_L2(s.v)) << '\n'
      << "norm_T_L2 " << num(norm_L2(s.T)) << '\n'
      << "norm_Tphys_inf " << num(norm_Lq(reconstruct_physical_T(s.T, g.h), q_inf)) << '\n';
  return ok;
}

}  // namespace pech::runner
