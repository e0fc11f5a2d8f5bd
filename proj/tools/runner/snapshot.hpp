#pragma once

#include <cstdint>
#include <string>

#include "pech/model.hpp"

namespace pech::runner {

/// Binary layout, all little-endian:
///   "PECH", u32 version, u32 nx, u32 ny, u32 nz, f64 h, f64 t,
///   then v1, v2, T as f64 with x fastest, then y, then z.
inline constexpr std::uint32_t snapshot_version = 1;

struct SnapshotHeader {
  std::uint32_t version = snapshot_version;
  GridSpec grid;
  double t = 0.0;
};

void write_snapshot(const State& s, const std::string& path);

/// Throws FormatError on bad magic, unknown version, invalid or truncated
/// data. The grid's dealias flag is not stored; `dealias` supplies it.
State read_snapshot(const std::string& path, bool dealias = true);
SnapshotHeader read_snapshot_header(const std::string& path);

/// read_snapshot, plus a FormatError when the stored dimensions differ from g.
State read_snapshot_on(const std::string& path, const GridSpec& g);

}  // namespace pech::runner
