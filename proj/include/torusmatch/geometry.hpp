#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace torusmatch {

inline constexpr int kMaxDim = 4;

/// Site coordinates; only the first `d` entries of a geometry are meaningful,
/// the rest stay zero.
using Coord = std::array<int32_t, kMaxDim>;

inline Coord make_coord(std::initializer_list<int32_t> xs) {
  Coord c{};
  int i = 0;
  for (int32_t x : xs) c[static_cast<size_t>(i++)] = x;
  return c;
}

/// d-dimensional torus of side L. All distances are infinity-norm with
/// wraparound; L is a power of two so dyadic subdivisions nest exactly.
struct TorusGeometry {
  int d = 2;
  int32_t side = 4;

  TorusGeometry() = default;
  TorusGeometry(int dim, int32_t length) : d(dim), side(length) { validate(); }

  void validate() const {
    if (d < 2 || d > kMaxDim)
      throw std::invalid_argument("TorusGeometry: dimension must be in [2," +
                                  std::to_string(kMaxDim) + "]");
    if (side < 4) throw std::invalid_argument("TorusGeometry: side must be >= 4");
    if ((side & (side - 1)) != 0)
      throw std::invalid_argument("TorusGeometry: side must be a power of two");
  }

  bool operator==(const TorusGeometry& o) const { return d == o.d && side == o.side; }
  bool operator!=(const TorusGeometry& o) const { return !(*this == o); }

  int64_t volume() const {
    int64_t v = 1;
    for (int a = 0; a < d; ++a) v *= side;
    return v;
  }

  int32_t wrap(int64_t c) const {
    int64_t m = c % side;
    return static_cast<int32_t>(m < 0 ? m + side : m);
  }

  /// Canonical representative of a coordinate difference, in [-side/2, side/2).
  int32_t canon(int32_t diff) const {
    int32_t m = wrap(diff);
    return m >= side / 2 ? m - side : m;
  }

  /// Row-major site index (last coordinate varies fastest).
  int64_t index(const Coord& p) const {
    int64_t idx = 0;
    for (int a = 0; a < d; ++a) idx = idx * side + wrap(p[static_cast<size_t>(a)]);
    return idx;
  }

  Coord coord(int64_t idx) const {
    Coord p{};
    for (int a = d - 1; a >= 0; --a) {
      p[static_cast<size_t>(a)] = static_cast<int32_t>(idx % side);
      idx /= side;
    }
    return p;
  }

  int64_t stride(int axis) const {
    int64_t s = 1;
    for (int a = axis + 1; a < d; ++a) s *= side;
    return s;
  }

  /// Neighbor of `idx` one step along `axis` (`dir` is +1 or -1), wrapped.
  int64_t step(int64_t idx, int axis, int dir) const {
    int64_t s = stride(axis);
    int32_t c = static_cast<int32_t>((idx / s) % side);
    int32_t nc = wrap(c + dir);
    return idx + static_cast<int64_t>(nc - c) * s;
  }

  int32_t axis_dist(int32_t a, int32_t b) const {
    int32_t diff = std::abs(canon(a - b));
    return diff;
  }

  /// Infinity-norm torus distance.
  int32_t dist(const Coord& a, const Coord& b) const {
    int32_t m = 0;
    for (int ax = 0; ax < d; ++ax) {
      int32_t dd = axis_dist(a[static_cast<size_t>(ax)], b[static_cast<size_t>(ax)]);
      if (dd > m) m = dd;
    }
    return m;
  }

  int32_t dist(int64_t a, int64_t b) const { return dist(coord(a), coord(b)); }

  Coord add(const Coord& a, const Coord& b) const {
    Coord r{};
    for (int ax = 0; ax < d; ++ax)
      r[static_cast<size_t>(ax)] =
          wrap(static_cast<int64_t>(a[static_cast<size_t>(ax)]) + b[static_cast<size_t>(ax)]);
    return r;
  }

  /// Canonical offset b - a, each component in [-side/2, side/2).
  Coord offset(const Coord& a, const Coord& b) const {
    Coord r{};
    for (int ax = 0; ax < d; ++ax)
      r[static_cast<size_t>(ax)] = canon(b[static_cast<size_t>(ax)] - a[static_cast<size_t>(ax)]);
    return r;
  }

  Coord offset(int64_t a, int64_t b) const { return offset(coord(a), coord(b)); }
};

/// Lexicographic comparison of coordinate tuples restricted to d axes.
inline bool lex_less(const Coord& a, const Coord& b, int d) {
  for (int ax = 0; ax < d; ++ax) {
    if (a[static_cast<size_t>(ax)] != b[static_cast<size_t>(ax)])
      return a[static_cast<size_t>(ax)] < b[static_cast<size_t>(ax)];
  }
  return false;
}

}  // namespace torusmatch
