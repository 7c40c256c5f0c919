#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "torusmatch/geometry.hpp"

namespace torusmatch {

/// Membership bitset over the sites of one geometry, with cached size.
class SiteSet {
 public:
  SiteSet() = default;
  explicit SiteSet(const TorusGeometry& g)
      : geom_(g), blocks_(static_cast<size_t>((g.volume() + 63) / 64), 0) {}

  const TorusGeometry& geometry() const { return geom_; }

  bool contains(int64_t idx) const {
    return (blocks_[static_cast<size_t>(idx >> 6)] >> (idx & 63)) & 1ULL;
  }

  void insert(int64_t idx) {
    uint64_t& b = blocks_[static_cast<size_t>(idx >> 6)];
    uint64_t m = 1ULL << (idx & 63);
    if (!(b & m)) {
      b |= m;
      ++size_;
    }
  }

  void erase(int64_t idx) {
    uint64_t& b = blocks_[static_cast<size_t>(idx >> 6)];
    uint64_t m = 1ULL << (idx & 63);
    if (b & m) {
      b &= ~m;
      --size_;
    }
  }

  int64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  SiteSet& unite(const SiteSet& o) {
    check(o);
    for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= o.blocks_[i];
    recount();
    return *this;
  }

  SiteSet& intersect(const SiteSet& o) {
    check(o);
    for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= o.blocks_[i];
    recount();
    return *this;
  }

  SiteSet& subtract(const SiteSet& o) {
    check(o);
    for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= ~o.blocks_[i];
    recount();
    return *this;
  }

  SiteSet complement() const {
    SiteSet r(geom_);
    int64_t n = geom_.volume();
    for (size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] = ~blocks_[i];
    // clear the tail beyond volume
    if (n & 63) r.blocks_.back() &= (1ULL << (n & 63)) - 1;
    r.recount();
    return r;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (size_t bi = 0; bi < blocks_.size(); ++bi) {
      uint64_t b = blocks_[bi];
      while (b) {
        int bit = std::countr_zero(b);
        f(static_cast<int64_t>(bi) * 64 + bit);
        b &= b - 1;
      }
    }
  }

  std::vector<int64_t> members() const {
    std::vector<int64_t> v;
    v.reserve(static_cast<size_t>(size_));
    for_each([&](int64_t i) { v.push_back(i); });
    return v;
  }

  bool operator==(const SiteSet& o) const {
    return geom_ == o.geom_ && blocks_ == o.blocks_;
  }

 private:
  void check(const SiteSet& o) const {
    if (geom_ != o.geom_)
      throw std::invalid_argument("SiteSet: geometry mismatch in set algebra");
  }
  void recount() {
    int64_t n = 0;
    for (uint64_t b : blocks_) n += std::popcount(b);
    size_ = n;
  }

  TorusGeometry geom_;
  std::vector<uint64_t> blocks_;
  int64_t size_ = 0;
};

/// All sites within infinity-norm torus distance r of x; |ball| = (2r+1)^d.
inline SiteSet ball(const TorusGeometry& g, const Coord& x, int32_t r) {
  if (r < 0) throw std::invalid_argument("ball: negative radius");
  if (2 * r >= g.side)
    throw std::invalid_argument("ball: radius >= side/2 would wrap onto itself");
  SiteSet s(g);
  Coord p{};
  int d = g.d;
  // iterate the (2r+1)^d cube of offsets
  Coord off{};
  for (int a = 0; a < d; ++a) off[static_cast<size_t>(a)] = -r;
  for (;;) {
    for (int a = 0; a < d; ++a)
      p[static_cast<size_t>(a)] = g.wrap(x[static_cast<size_t>(a)] + off[static_cast<size_t>(a)]);
    s.insert(g.index(p));
    int a = d - 1;
    while (a >= 0 && off[static_cast<size_t>(a)] == r) off[static_cast<size_t>(a--)] = -r;
    if (a < 0) break;
    ++off[static_cast<size_t>(a)];
  }
  return s;
}

inline SiteSet ball(const TorusGeometry& g, int64_t x, int32_t r) {
  return ball(g, g.coord(x), r);
}

/// Sites of S with fewer than 2d lattice neighbors inside S.
inline SiteSet inner_boundary(const SiteSet& s) {
  const TorusGeometry& g = s.geometry();
  SiteSet r(g);
  s.for_each([&](int64_t idx) {
    for (int a = 0; a < g.d; ++a) {
      if (!s.contains(g.step(idx, a, +1)) || !s.contains(g.step(idx, a, -1))) {
        r.insert(idx);
        return;
      }
    }
  });
  return r;
}

/// Maximal 2d-neighbor connected pieces of S.
inline std::vector<SiteSet> connected_components(const SiteSet& s) {
  const TorusGeometry& g = s.geometry();
  std::vector<SiteSet> comps;
  SiteSet seen(g);
  std::vector<int64_t> stack;
  s.for_each([&](int64_t start) {
    if (seen.contains(start)) return;
    SiteSet comp(g);
    stack.push_back(start);
    seen.insert(start);
    while (!stack.empty()) {
      int64_t cur = stack.back();
      stack.pop_back();
      comp.insert(cur);
      for (int a = 0; a < g.d; ++a) {
        for (int dir : {+1, -1}) {
          int64_t nb = g.step(cur, a, dir);
          if (s.contains(nb) && !seen.contains(nb)) {
            seen.insert(nb);
            stack.push_back(nb);
          }
        }
      }
    }
    comps.push_back(std::move(comp));
  });
  return comps;
}

}  // namespace torusmatch
