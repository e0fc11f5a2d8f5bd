#pragma once

#include <cstdint>
#include <string>

#include "pech/grid.hpp"
#include "pech/inequality_lab.hpp"
#include "pech/integrator.hpp"

namespace pech::runner {

/// Named analytic field profile, or a snapshot to load.
///   zero         all fields vanish
///   taylor-mode  v = A (cos X sin Y, -sin X cos Y) c_m(z),
///                T = B cos X cos Y s_max(m,1)(z)   (X = 2 pi kx x, Y = 2 pi ky y)
///   random       band-limited random fields drawn from rng.seed
///   snapshot     fields read from `snapshot`
/// c_m = cos(m pi (z+h)/h), s_m = sin(m pi (z+h)/h). A source profile uses
/// `amplitude` for Q and reads the T field of a snapshot.
struct ProfileSpec {
  std::string name = "zero";
  double amplitude = 0.0;
  double T_amplitude = 0.0;
  int kx = 1, ky = 1, m = 1;
  int band = 3;
  std::string snapshot;
};

struct RunConfig {
  GridSpec grid;
  double R1 = 0.0, R2 = 0.0, R3 = 0.0, f0 = 0.0;
  StepperConfig stepper;
  ProfileSpec initial;
  ProfileSpec source;
  int monitor_every = 1;
  double certificate_C = 1.0;
  std::string output_dir = ".";
  int snapshot_every = 0;  ///< 0 writes only the final snapshot
  std::uint64_t seed = 1;
  std::string perturb = "none";
  int lab_samples = 100;
  int lab_band = 5;
  int lab_coarse = 16;
  int lab_fine = 32;
  double lab_h = 1.0;
};

/// Flat `key = value` text, one pair per line, `#` starts a comment.
/// Throws ConfigError naming the key (and the line for unknown or duplicate
/// keys and malformed lines).
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

/// Every key with its parsed value, in a fixed order; parses back to the
/// same RunConfig.
std::string format_config(const RunConfig& c);

/// output.dir, unless PECH_OUTPUT_DIR is set.
std::string output_dir(const RunConfig& c);

LabConfig lab_config(const RunConfig& c);

}  // namespace pech::runner
