#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "torusmatch/geometry.hpp"
#include "torusmatch/rng.hpp"

namespace torusmatch {

/// Binary site labels on a torus window plus the seed that produced them.
/// Blue = 1, yellow = 0.
class Configuration {
 public:
  Configuration() = default;
  Configuration(const TorusGeometry& g, uint64_t seed, std::vector<uint64_t> bits)
      : geom_(g), seed_(seed), bits_(std::move(bits)) {}

  const TorusGeometry& geometry() const { return geom_; }
  uint64_t seed() const { return seed_; }

  int label(int64_t idx) const {
    return static_cast<int>((bits_[static_cast<size_t>(idx >> 6)] >> (idx & 63)) & 1ULL);
  }
  bool blue(int64_t idx) const { return label(idx) == 1; }

  int64_t volume() const { return geom_.volume(); }

  const std::vector<uint64_t>& raw_bits() const { return bits_; }

  bool operator==(const Configuration& o) const {
    return geom_ == o.geom_ && seed_ == o.seed_ && bits_ == o.bits_;
  }

 private:
  TorusGeometry geom_;
  uint64_t seed_ = 0;
  std::vector<uint64_t> bits_;
};

/// Bernoulli(1/2) labels, one independent fair bit per site, reproducible
/// bit-exactly from (geometry, seed).
inline Configuration generate(const TorusGeometry& g, uint64_t seed) {
  g.validate();
  int64_t n = g.volume();
  std::vector<uint64_t> bits(static_cast<size_t>((n + 63) / 64), 0);
  Coord p{};
  for (int64_t idx = 0; idx < n; ++idx) {
    if (site_bit(seed, p, g.d))
      bits[static_cast<size_t>(idx >> 6)] |= 1ULL << (idx & 63);
    // advance row-major coordinates
    for (int a = g.d - 1; a >= 0; --a) {
      if (++p[static_cast<size_t>(a)] < g.side) break;
      p[static_cast<size_t>(a)] = 0;
    }
  }
  return Configuration(g, seed, std::move(bits));
}

/// Label at x in the output equals the label at x - v in the input.
inline Configuration translate(const Configuration& c, const Coord& v) {
  const TorusGeometry& g = c.geometry();
  int64_t n = g.volume();
  std::vector<uint64_t> bits(static_cast<size_t>((n + 63) / 64), 0);
  Coord p{};
  for (int64_t idx = 0; idx < n; ++idx) {
    Coord q{};
    for (int a = 0; a < g.d; ++a)
      q[static_cast<size_t>(a)] =
          g.wrap(p[static_cast<size_t>(a)] - v[static_cast<size_t>(a)]);
    if (c.label(g.index(q)))
      bits[static_cast<size_t>(idx >> 6)] |= 1ULL << (idx & 63);
    for (int a = g.d - 1; a >= 0; --a) {
      if (++p[static_cast<size_t>(a)] < g.side) break;
      p[static_cast<size_t>(a)] = 0;
    }
  }
  return Configuration(g, c.seed(), std::move(bits));
}

// --- flat binary export: 16-byte header, then L^d bits, row-major,
// --- little-endian bit packing (site k -> bit k%8 of byte k/8).

inline constexpr char kConfigMagic[6] = {'F', 'M', 'C', 'F', 'G', '1'};

inline void write_config(const Configuration& c, std::ostream& out) {
  const TorusGeometry& g = c.geometry();
  char header[16];
  std::memcpy(header, kConfigMagic, 6);
  header[6] = static_cast<char>(g.d);
  int log2l = 0;
  while ((1 << log2l) < g.side) ++log2l;
  header[7] = static_cast<char>(log2l);
  uint64_t seed = c.seed();
  for (int i = 0; i < 8; ++i) header[8 + i] = static_cast<char>((seed >> (8 * i)) & 0xff);
  out.write(header, 16);
  int64_t n = g.volume();
  int64_t nbytes = (n + 7) / 8;
  std::vector<char> buf(static_cast<size_t>(nbytes), 0);
  for (int64_t i = 0; i < n; ++i)
    if (c.label(i)) buf[static_cast<size_t>(i >> 3)] |= static_cast<char>(1 << (i & 7));
  out.write(buf.data(), nbytes);
}

inline Configuration read_config(std::istream& in) {
  char header[16];
  in.read(header, 16);
  if (in.gcount() != 16 || std::memcmp(header, kConfigMagic, 6) != 0)
    throw std::runtime_error("read_config: bad magic");
  int d = header[6];
  int32_t side = 1 << header[7];
  uint64_t seed = 0;
  for (int i = 0; i < 8; ++i)
    seed |= static_cast<uint64_t>(static_cast<unsigned char>(header[8 + i])) << (8 * i);
  TorusGeometry g(d, side);
  int64_t n = g.volume();
  int64_t nbytes = (n + 7) / 8;
  std::vector<char> buf(static_cast<size_t>(nbytes));
  in.read(buf.data(), nbytes);
  if (in.gcount() != nbytes) throw std::runtime_error("read_config: truncated payload");
  std::vector<uint64_t> bits(static_cast<size_t>((n + 63) / 64), 0);
  for (int64_t i = 0; i < n; ++i)
    if ((buf[static_cast<size_t>(i >> 3)] >> (i & 7)) & 1)
      bits[static_cast<size_t>(i >> 6)] |= 1ULL << (i & 63);
  return Configuration(g, seed, std::move(bits));
}

inline void save_config(const Configuration& c, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("save_config: cannot open " + path);
  write_config(c, f);
}

inline Configuration load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("load_config: cannot open " + path);
  return read_config(f);
}

}  // namespace torusmatch
