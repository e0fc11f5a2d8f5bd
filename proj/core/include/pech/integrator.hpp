#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pech/model.hpp"
#include "pech/pipeline.hpp"
#include "pech/sample.hpp"

namespace pech {

enum class Scheme { imex_euler, imex_cnab2 };

const char* to_string(Scheme s) noexcept;
/// Throws ConfigError on an unknown name.
Scheme parse_scheme(const std::string& name);

struct StepperConfig {
  double dt = 1e-3;
  double t_end = 0.0;
  Scheme scheme = Scheme::imex_cnab2;
  std::optional<double> cfl_target;  ///< adaptive dt when set, in (0, 1)
  long max_steps = 10'000'000;
  bool freeze_velocity = false;  ///< keep v at its initial value (passive T runs)

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

/// Extra explicit forcing (f_v, f_T) evaluated at time t, e.g. for
/// manufactured solutions.
using Forcing = std::function<std::pair<VectorFieldH, ScalarField3>(double t)>;

/// Time stepper holding the modal state and the explicit-term history.
///   imex_euler: (1 - dt L) u+ = u + dt N(u)
///   imex_cnab2: (1 - dt L/2) u+ = (1 + dt L/2) u + dt[(1 + r/2) N(u) - (r/2) N(u-)],
///               r = dt / dt_prev, first step by imex_euler
/// The barotropic projection follows every implicit solve.
class Stepper {
 public:
  Stepper(const State& s0, const ModelParams& p, const StepperConfig& c, Forcing forcing = {});

  /// Advances by dt; throws BlowUpError if a non-finite value appears.
  void advance(double dt);
  /// Step size the next call to run-style stepping would use (CFL-limited
  /// when configured, clipped to t_end).
  double next_dt() const;

  double time() const noexcept { return t_; }
  long steps() const noexcept { return steps_; }
  State state() const;
  const ModalState& modal() const noexcept { return u_; }
  const Pipeline& pipeline() const noexcept { return pipe_; }

 private:
  ModalState rhs(const ModalState& u, double t) const;

  Pipeline pipe_;
  StepperConfig cfg_;
  Forcing forcing_;
  ModalState u_;
  ModalState n_prev_;
  bool have_prev_ = false;
  double dt_prev_ = 0.0;
  double t_ = 0.0;
  long steps_ = 0;
};

/// One step of size c.dt from s. imex_cnab2 has no history here, so its first
/// (and only) step is the imex_euler bootstrap.
State step(const State& s, const ModelParams& p, const StepperConfig& c);

struct MonitorSet {
  int every = 1;  ///< sample cadence in steps; the final state is always sampled
  std::function<Sample(const State&)> sampler;
  std::function<void(const Sample&)> on_sample;
  std::function<void(const State&, long step)> on_step;
};

struct RunSummary {
  State final_state;
  std::vector<Sample> series;
  long steps = 0;
  bool truncated = false;
  std::string notice;
};

/// Steps from s0 to c.t_end. Samples at s0, every `every` steps and at the
/// end. t_end <= s0.t returns s0 with an empty series.
RunSummary run(const State& s0, const ModelParams& p, const StepperConfig& c,
               const MonitorSet& monitors = {}, Forcing forcing = {});

}  // namespace pech
