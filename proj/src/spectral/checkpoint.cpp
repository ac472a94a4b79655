#include "mzk/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "mzk/errors.hpp"

namespace mzk {
namespace {

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
    return v;
  }
}

template <class T>
void put(std::ofstream& os, T v) {
  v = to_little(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& is, const std::string& path) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw IoError("truncated checkpoint: " + path);
  return to_little(v);
}

}  // namespace

void write_checkpoint(const std::string& path, const SpectralField& f, double t) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open checkpoint for writing: " + path);
  const Grid& g = f.grid;
  os.write("MZKC", 4);
  put<std::uint32_t>(os, kCheckpointVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.nx));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.ny));
  put<double>(os, g.lx);
  put<double>(os, t);
  for (int k = -g.nx / 2; k < g.nx / 2; ++k)
    for (int q = -g.ny / 2; q < g.ny / 2; ++q) {
      const cplx c = f.mode(k, q);
      put<double>(os, c.real());
      put<double>(os, c.imag());
    }
  if (!os) throw IoError("write failed: " + path);
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open checkpoint: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "MZKC", 4) != 0) throw IoError("not a checkpoint file: " + path);
  const auto version = get<std::uint32_t>(is, path);
  if (version != kCheckpointVersion) throw IoError("unsupported checkpoint version in " + path);
  const auto nx = get<std::uint32_t>(is, path);
  const auto ny = get<std::uint32_t>(is, path);
  const double lx = get<double>(is, path);
  const double t = get<double>(is, path);
  Grid g;
  try {
    g = make_grid(static_cast<int>(nx), static_cast<int>(ny), lx);
  } catch (const ConfigError& e) {
    throw IoError("bad checkpoint header in " + path + ": " + e.what());
  }
  Checkpoint out{SpectralField(g), t};
  for (int k = -g.nx / 2; k < g.nx / 2; ++k)
    for (int q = -g.ny / 2; q < g.ny / 2; ++q) {
      const double re = get<double>(is, path);
      const double im = get<double>(is, path);
      out.field.mode(k, q) = cplx(re, im);
    }
  return out;
}

}  // namespace mzk
