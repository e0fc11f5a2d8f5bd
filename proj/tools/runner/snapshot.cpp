#include "snapshot.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <iterator>
#include <vector>

#include "pech/errors.hpp"

namespace pech::runner {

namespace {

constexpr std::size_t header_bytes = 4 + 4 * 4 + 8 * 2;

template <class U>
void put(std::vector<unsigned char>& out, U x) {
  for (std::size_t b = 0; b < sizeof(U); ++b) out.push_back(static_cast<unsigned char>(x >> (8 * b)));
}

void put_f64(std::vector<unsigned char>& out, double x) { put(out, std::bit_cast<std::uint64_t>(x)); }

template <class U>
U get(const std::vector<unsigned char>& in, std::size_t& pos) {
  U x = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) x |= U(in[pos + b]) << (8 * b);
  pos += sizeof(U);
  return x;
}

double get_f64(const std::vector<unsigned char>& in, std::size_t& pos) {
  return std::bit_cast<double>(get<std::uint64_t>(in, pos));
}

std::vector<unsigned char> slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open snapshot '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

SnapshotHeader parse_header(const std::vector<unsigned char>& in, const std::string& path, std::size_t& pos) {
  if (in.size() < header_bytes)
    throw FormatError("truncated snapshot '" + path + "': " + std::to_string(in.size()) + " bytes");
  if (!(in[0] == 'P' && in[1] == 'E' && in[2] == 'C' && in[3] == 'H'))
    throw FormatError("'" + path + "' is not a snapshot (bad magic)");
  pos = 4;
  SnapshotHeader h;
  h.version = get<std::uint32_t>(in, pos);
  if (h.version != snapshot_version)
    throw FormatError("unsupported snapshot version " + std::to_string(h.version) + " (expected " +
                      std::to_string(snapshot_version) + ")");
  h.grid.nx = int(get<std::uint32_t>(in, pos));
  h.grid.ny = int(get<std::uint32_t>(in, pos));
  h.grid.nz = int(get<std::uint32_t>(in, pos));
  h.grid.h = get_f64(in, pos);
  h.t = get_f64(in, pos);
  try {
    h.grid.validate();
  } catch (const ConfigError& e) {
    throw FormatError("snapshot '" + path + "' has invalid dimensions: " + e.what());
  }
  return h;
}

}  // namespace

void write_snapshot(const State& s, const std::string& path) {
  const GridSpec& g = s.grid();
  std::vector<unsigned char> out;
  out.reserve(header_bytes + 3 * 8 * g.size3());
  out.insert(out.end(), {'P', 'E', 'C', 'H'});
  put(out, snapshot_version);
  put(out, std::uint32_t(g.nx));
  put(out, std::uint32_t(g.ny));
  put(out, std::uint32_t(g.nz));
  put_f64(out, g.h);
  put_f64(out, s.t);
  for (const ScalarField3* f : {&s.v.u1, &s.v.u2, &s.T})
    for (double x : f->values()) put_f64(out, x);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write snapshot '" + path + "'");
  f.write(reinterpret_cast<const char*>(out.data()), std::streamsize(out.size()));
  if (!f) throw FormatError("failed writing snapshot '" + path + "'");
}

SnapshotHeader read_snapshot_header(const std::string& path) {
  std::size_t pos = 0;
  return parse_header(slurp(path), path, pos);
}

State read_snapshot(const std::string& path, bool dealias) {
  const std::vector<unsigned char> in = slurp(path);
  std::size_t pos = 0;
  SnapshotHeader h = parse_header(in, path, pos);
  h.grid.dealias = dealias;
  const std::size_t n = h.grid.size3();
  const std::size_t want = header_bytes + 3 * 8 * n;
  if (in.size() != want)
    throw FormatError("snapshot '" + path + "' holds " + std::to_string(in.size()) + " bytes, expected " +
                      std::to_string(want) + (in.size() < want ? " (truncated)" : ""));
  std::array<std::vector<double>, 3> data;
  for (auto& d : data) {
    d.resize(n);
    for (double& x : d) x = get_f64(in, pos);
  }
  State s;
  s.t = h.t;
  s.v = VectorFieldH(ScalarField3(h.grid, VBasis::cosine, std::move(data[0])),
                     ScalarField3(h.grid, VBasis::cosine, std::move(data[1])));
  s.T = ScalarField3(h.grid, VBasis::sine, std::move(data[2]));
  refresh_diagnostics(s);
  return s;
}

State read_snapshot_on(const std::string& path, const GridSpec& g) {
  State s = read_snapshot(path, g.dealias);
  const GridSpec& r = s.grid();
  if (r.nx != g.nx || r.ny != g.ny || r.nz != g.nz || r.h != g.h)
    throw FormatError("snapshot '" + path + "' is " + std::to_string(r.nx) + "x" + std::to_string(r.ny) + "x" +
                      std::to_string(r.nz) + ", the run grid is " + std::to_string(g.nx) + "x" +
                      std::to_string(g.ny) + "x" + std::to_string(g.nz));
  return s;
}

}  // namespace pech::runner
