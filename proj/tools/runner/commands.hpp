#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"
#include "pech/model.hpp"

namespace pech::runner {

/// Process exit codes.
enum Exit : int { ok = 0, failed = 1, blow_up = 2, bad_input = 3 };

ModelParams build_params(const RunConfig& c);
State build_initial(const RunConfig& c);

/// Twin perturbation:
///   none                   identical twin
///   <field>:kx,ky,m:amp    adds amp cos(2 pi kx x) cos(2 pi ky y) times the
///                          vertical mode m to field v1, v2 or T
///   snapshot:<path>        the second twin is read from a snapshot
/// Throws ConfigError on a malformed spec or a grid mismatch.
State perturbed(const State& s0, const std::string& spec, const RunConfig& c);

/// Writes series.csv, certificates.csv, config.echo and final.pech (plus
/// snap_<step>.pech every output.snapshot_every steps) and prints one line
/// per certificate. Nonzero when the run blows up, stops at the step cap, or
/// the maximum principle or energy inequality fails.
int cmd_simulate(const RunConfig& c, std::ostream& out);

/// Writes twin.csv (t, D, E, envelope) and config.echo; prints C_hat.
int cmd_twin(const RunConfig& c, const std::string& perturb, std::ostream& out);

/// Writes inequalities.csv (name, samples, empirical_C, drift, pass) and
/// config.echo. Nonzero iff a constant-free inequality fails.
int cmd_ineqlab(const RunConfig& c, std::ostream& out);

/// Prints the header and basic norms of a snapshot.
int cmd_snapshot_info(const std::string& path, std::ostream& out);

}  // namespace pech::runner
