#include "config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "pech/errors.hpp"
#include "pech/model.hpp"

namespace pech::runner {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class Int>
Int to_int(const std::string& key, const std::string& v) {
  Int out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError(key + " must be an integer, got '" + v + "'");
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError(key + " must be a number, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(key + " must be true or false, got '" + v + "'");
}

struct Key {
  const char* name;
  bool required;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define PECH_INT(K, F, T, REQ) \
  {K, REQ, [](RunConfig& c, const std::string& v) { c.F = to_int<T>(K, v); }, \
   [](const RunConfig& c) { return std::to_string(c.F); }}
#define PECH_REAL(K, F, REQ) \
  {K, REQ, [](RunConfig& c, const std::string& v) { c.F = to_double(K, v); }, \
   [](const RunConfig& c) { return fmt(c.F); }}
#define PECH_TEXT(K, F) \
  {K, false, [](RunConfig& c, const std::string& v) { c.F = v; }, [](const RunConfig& c) { return c.F; }}

const std::vector<Key>& keys() {
  static const std::vector<Key> k = {
    PECH_INT("grid.nx", grid.nx, int, true),
    PECH_INT("grid.ny", grid.ny, int, true),
    PECH_INT("grid.nz", grid.nz, int, true),
    PECH_REAL("grid.h", grid.h, true),
    {"grid.dealias", false, [](RunConfig& c, const std::string& v) { c.grid.dealias = to_bool("grid.dealias", v); },
     [](const RunConfig& c) { return std::string(c.grid.dealias ? "true" : "false"); }},
    PECH_REAL("params.R1", R1, true),
    PECH_REAL("params.R2", R2, true),
    PECH_REAL("params.R3", R3, true),
    PECH_REAL("params.f0", f0, false),
    {"stepper.scheme", false, [](RunConfig& c, const std::string& v) { c.stepper.scheme = parse_scheme(v); },
     [](const RunConfig& c) { return std::string(to_string(c.stepper.scheme)); }},
    PECH_REAL("stepper.dt", stepper.dt, true),
    PECH_REAL("stepper.t_end", stepper.t_end, true),
    {"stepper.cfl_target", false,
     [](RunConfig& c, const std::string& v) {
       if (v == "none") c.stepper.cfl_target.reset();
       else c.stepper.cfl_target = to_double("stepper.cfl_target", v);
     },
     [](const RunConfig& c) { return c.stepper.cfl_target ? fmt(*c.stepper.cfl_target) : std::string("none"); }},
    PECH_INT("stepper.max_steps", stepper.max_steps, long, false),
    {"stepper.freeze_velocity", false,
     [](RunConfig& c, const std::string& v) { c.stepper.freeze_velocity = to_bool("stepper.freeze_velocity", v); },
     [](const RunConfig& c) { return std::string(c.stepper.freeze_velocity ? "true" : "false"); }},
    PECH_TEXT("initial.profile", initial.name),
    PECH_REAL("initial.amplitude", initial.amplitude, false),
    PECH_REAL("initial.T_amplitude", initial.T_amplitude, false),
    PECH_INT("initial.kx", initial.kx, int, false),
    PECH_INT("initial.ky", initial.ky, int, false),
    PECH_INT("initial.m", initial.m, int, false),
    PECH_INT("initial.band", initial.band, int, false),
    PECH_TEXT("initial.snapshot", initial.snapshot),
    PECH_TEXT("source.profile", source.name),
    PECH_REAL("source.amplitude", source.amplitude, false),
    PECH_INT("source.kx", source.kx, int, false),
    PECH_INT("source.ky", source.ky, int, false),
    PECH_INT("source.m", source.m, int, false),
    PECH_INT("source.band", source.band, int, false),
    PECH_TEXT("source.snapshot", source.snapshot),
    PECH_INT("monitor.every", monitor_every, int, false),
    PECH_REAL("certificate.C", certificate_C, false),
    PECH_TEXT("output.dir", output_dir),
    PECH_INT("output.snapshot_every", snapshot_every, int, false),
    PECH_INT("rng.seed", seed, std::uint64_t, false),
    PECH_TEXT("twin.perturb", perturb),
    PECH_INT("ineqlab.samples", lab_samples, int, false),
    PECH_INT("ineqlab.band_limit", lab_band, int, false),
    PECH_INT("ineqlab.coarse", lab_coarse, int, false),
    PECH_INT("ineqlab.fine", lab_fine, int, false),
    PECH_REAL("ineqlab.h", lab_h, false),
  };
  return k;
}

#undef PECH_INT
#undef PECH_REAL
#undef PECH_TEXT

void check_profile(const ProfileSpec& p, const std::string& prefix, bool is_source) {
  static const std::set<std::string> names = {"zero", "taylor-mode", "random", "snapshot"};
  if (!names.count(p.name) || (is_source && p.name == "random"))
    throw ConfigError(prefix + ".profile must be one of zero, taylor-mode," + (is_source ? "" : " random,") +
                      " snapshot; got '" + p.name + "'");
  if (p.name == "snapshot" && p.snapshot.empty())
    throw ConfigError(prefix + ".snapshot is required when " + prefix + ".profile = snapshot");
  if (p.kx < 0 || p.ky < 0) throw ConfigError(prefix + ".kx and " + prefix + ".ky must be >= 0");
  if (p.m < 0) throw ConfigError(prefix + ".m must be >= 0");
  if (p.band < 0) throw ConfigError(prefix + ".band must be >= 0");
  if (!std::isfinite(p.amplitude)) throw ConfigError(prefix + ".amplitude must be finite");
  if (!std::isfinite(p.T_amplitude)) throw ConfigError(prefix + ".T_amplitude must be finite");
}

void validate(const RunConfig& c) {
  c.grid.validate();
  ModelParams p;
  p.R1 = c.R1;
  p.R2 = c.R2;
  p.R3 = c.R3;
  p.f0 = c.f0;
  p.h = c.grid.h;
  p.validate();
  c.stepper.validate();
  check_profile(c.initial, "initial", false);
  check_profile(c.source, "source", true);
  if (c.monitor_every < 1) throw ConfigError("monitor.every must be >= 1");
  if (!(c.certificate_C >= 0.0) || !std::isfinite(c.certificate_C))
    throw ConfigError("certificate.C must be finite and >= 0");
  if (c.output_dir.empty()) throw ConfigError("output.dir must not be empty");
  if (c.snapshot_every < 0) throw ConfigError("output.snapshot_every must be >= 0");
  if (c.lab_samples < 1) throw ConfigError("ineqlab.samples must be >= 1");
  if (c.lab_band < 0) throw ConfigError("ineqlab.band_limit must be >= 0");
  if (c.lab_coarse < 4 || c.lab_fine < 4) throw ConfigError("ineqlab.coarse and ineqlab.fine must be >= 4");
  if (!(c.lab_h > 0.0)) throw ConfigError("ineqlab.h must be > 0");
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  std::map<std::string, const Key*> index;
  for (const Key& k : keys()) index[k.name] = &k;

  RunConfig c;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto it = index.find(key);
    if (it == index.end()) throw ConfigError(where + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + ": duplicate key '" + key + "'");
    if (value.empty()) throw ConfigError(where + ": " + key + " has no value");
    it->second->set(c, value);
  }
  for (const Key& k : keys())
    if (k.required && !seen.count(k.name)) throw ConfigError(std::string("missing required key '") + k.name + "'");
  validate(c);
  return c;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

std::string format_config(const RunConfig& c) {
  std::string out;
  for (const Key& k : keys())
    if (const std::string v = k.get(c); !v.empty()) out += std::string(k.name) + " = " + v + "\n";
  return out;
}

std::string output_dir(const RunConfig& c) {
  if (const char* env = std::getenv("PECH_OUTPUT_DIR"); env && *env) return env;
  return c.output_dir;
}

LabConfig lab_config(const RunConfig& c) {
  LabConfig l;
  l.seed = c.seed;
  l.samples = c.lab_samples;
  l.band_limit = c.lab_band;
  l.coarse = c.lab_coarse;
  l.fine = c.lab_fine;
  l.h = c.lab_h;
  return l;
}

}  // namespace pech::runner
