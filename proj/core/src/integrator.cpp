#include "pech/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pech/errors.hpp"
#include "pech/norms.hpp"

namespace pech {

double Sample::at(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw InputError("sample has no value named " + key);
  return it->second;
}

const char* to_string(Scheme s) noexcept {
  return s == Scheme::imex_euler ? "imex_euler" : "imex_cnab2";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "imex_euler") return Scheme::imex_euler;
  if (name == "imex_cnab2") return Scheme::imex_cnab2;
  throw ConfigError("stepper.scheme must be imex_euler or imex_cnab2, got '" + name + "'");
}

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("stepper.dt must be > 0");
  if (!std::isfinite(t_end) || t_end < 0.0) throw ConfigError("stepper.t_end must be >= 0");
  if (cfl_target && !(*cfl_target > 0.0 && *cfl_target < 1.0))
    throw ConfigError("stepper.cfl_target must lie in (0, 1)");
  if (max_steps <= 0) throw ConfigError("stepper.max_steps must be > 0");
}

namespace {

bool all_finite(const ModalState& u) {
  auto ok = [](const Modal3& m) {
    return std::all_of(m.c.begin(), m.c.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
  };
  return ok(u.v1) && ok(u.v2) && ok(u.T);
}

ModalState truncated(ModalState m) {
  truncate(m.v1);
  truncate(m.v2);
  truncate(m.T);
  return m;
}

}  // namespace

Stepper::Stepper(const State& s0, const ModelParams& p, const StepperConfig& c, Forcing forcing)
    : pipe_(s0.grid(), p), cfg_(c), forcing_(std::move(forcing)), t_(s0.t) {
  p.validate();
  cfg_.validate();
  u_ = truncated(pipe_.to_modal(s0.v, s0.T));
  pipe_.project(u_);
}

ModalState Stepper::rhs(const ModalState& u, double t) const {
  ModalState n = pipe_.explicit_rhs(u);
  if (forcing_) {
    auto [fv, fT] = forcing_(t);
    n += truncated(pipe_.to_modal(fv, fT));
  }
  return n;
}

double Stepper::next_dt() const {
  double dt = cfg_.dt;
  if (cfg_.cfl_target) {
    const GridSpec& g = pipe_.grid();
    State s = state();
    const double vmax = norm_Lq(s.v, q_inf);
    const double wmax = norm_Lq(s.w, q_inf);
    const double dxy = std::min(g.dx(), g.dy());
    double limit = std::numeric_limits<double>::infinity();
    if (vmax > 0.0) limit = std::min(limit, dxy / vmax);
    if (wmax > 0.0) limit = std::min(limit, g.dz() / wmax);
    dt = std::min(dt, *cfg_.cfl_target * limit);
  }
  const double remaining = cfg_.t_end - t_;
  if (dt >= remaining - 1e-12 * cfg_.dt) dt = remaining;
  return dt;
}

void Stepper::advance(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("stepper.dt must be > 0");
  const ModalState n_now = rhs(u_, t_);
  const auto& lv = pipe_.lambda_v();
  const auto& lt = pipe_.lambda_T();
  const bool cn = cfg_.scheme == Scheme::imex_cnab2 && have_prev_;
  ModalState next = u_;
  if (cn) {
    const double r = dt / dt_prev_;
    const double a = 1.0 + 0.5 * r, b = -0.5 * r;
    auto solve = [&](Modal3& x, const Modal3& nn, const Modal3& np, const std::vector<double>& lam) {
      for (std::size_t k = 0; k < x.c.size(); ++k) {
        const double hl = 0.5 * dt * lam[k];
        x.c[k] = ((1.0 + hl) * x.c[k] + dt * (a * nn.c[k] + b * np.c[k])) / (1.0 - hl);
      }
    };
    solve(next.v1, n_now.v1, n_prev_.v1, lv);
    solve(next.v2, n_now.v2, n_prev_.v2, lv);
    solve(next.T, n_now.T, n_prev_.T, lt);
  } else {
    auto solve = [&](Modal3& x, const Modal3& nn, const std::vector<double>& lam) {
      for (std::size_t k = 0; k < x.c.size(); ++k) x.c[k] = (x.c[k] + dt * nn.c[k]) / (1.0 - dt * lam[k]);
    };
    solve(next.v1, n_now.v1, lv);
    solve(next.v2, n_now.v2, lv);
    solve(next.T, n_now.T, lt);
  }
  if (cfg_.freeze_velocity) {
    next.v1 = u_.v1;
    next.v2 = u_.v2;
  }
  pipe_.project(next);
  const double t_next = t_ + dt;
  if (!all_finite(next))
    throw BlowUpError(t_next, "non-finite value in the state at t = " + std::to_string(t_next));
  u_ = std::move(next);
  n_prev_ = n_now;
  have_prev_ = true;
  dt_prev_ = dt;
  t_ = t_next;
  ++steps_;
}

State Stepper::state() const { return pipe_.to_state(u_, t_); }

State step(const State& s, const ModelParams& p, const StepperConfig& c) {
  c.validate();
  Stepper st(s, p, c);
  st.advance(c.dt);
  return st.state();
}

RunSummary run(const State& s0, const ModelParams& p, const StepperConfig& c,
               const MonitorSet& monitors, Forcing forcing) {
  c.validate();
  RunSummary out;
  if (c.t_end <= s0.t) {
    out.final_state = s0;
    return out;
  }
  Stepper st(s0, p, c, std::move(forcing));
  const int every = std::max(1, monitors.every);
  auto sample = [&](const State& s) {
    if (!monitors.sampler) return;
    Sample smp = monitors.sampler(s);
    smp.t = s.t;
    if (monitors.on_sample) monitors.on_sample(smp);
    out.series.push_back(std::move(smp));
  };
  State current = st.state();
  sample(current);
  bool sampled_last = true;
  while (st.time() < c.t_end) {
    if (st.steps() >= c.max_steps) {
      out.truncated = true;
      out.notice = "step cap " + std::to_string(c.max_steps) + " reached at t = " + std::to_string(st.time());
      break;
    }
    st.advance(st.next_dt());
    const bool want = (st.steps() % every == 0) || st.time() >= c.t_end;
    if (want || monitors.on_step) current = st.state();
    if (monitors.on_step) monitors.on_step(current, st.steps());
    sampled_last = false;
    if (want) {
      sample(current);
      sampled_last = true;
    }
  }
  if (!sampled_last) {
    current = st.state();
    sample(current);
  }
  out.final_state = st.state();
  out.steps = st.steps();
  return out;
}

}  // namespace pech
