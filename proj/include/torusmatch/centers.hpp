#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "torusmatch/config.hpp"
#include "torusmatch/geometry.hpp"
#include "torusmatch/rng.hpp"
#include "torusmatch/siteset.hpp"

namespace torusmatch {

enum class CenterSource { faithful_bulb, hash_bulb };

/// Equivariant center set: any two members are at least 2*level apart
/// (level = bulb radius for the faithful rule, separation radius for the
/// hash rule).
struct CenterSet {
  int32_t level = 1;
  CenterSource source = CenterSource::faithful_bulb;
  double density_param = 0.0;  // hash threshold when applicable
  SiteSet sites;
};

/// Shell parity convention: even shells blue (1), odd shells yellow (0),
/// so a bulb center is blue.
inline int shell_parity_label(int32_t shell) { return (shell & 1) == 0 ? 1 : 0; }

/// x is a member iff every shell i = 0..k around x carries the alternating
/// label. Members are automatically pairwise >= 2k apart: two closer bulbs
/// would force contradictory labels where they overlap.
inline CenterSet detect_bulb_centers(const Configuration& c, int32_t k) {
  const TorusGeometry& g = c.geometry();
  if (k < 1) throw std::invalid_argument("detect_bulb_centers: k must be >= 1");
  if (2 * k + 1 >= g.side / 2)
    throw std::invalid_argument("detect_bulb_centers: bulb does not fit the window");
  CenterSet cs;
  cs.level = k;
  cs.source = CenterSource::faithful_bulb;
  cs.sites = SiteSet(g);

  int64_t n = g.volume();
  Coord x{};
  for (int64_t idx = 0; idx < n; ++idx) {
    bool ok = true;
    Coord off{};
    for (int a = 0; a < g.d; ++a) off[static_cast<size_t>(a)] = -k;
    while (ok) {
      int32_t shell = 0;
      for (int a = 0; a < g.d; ++a)
        shell = std::max(shell, std::abs(off[static_cast<size_t>(a)]));
      Coord y{};
      for (int a = 0; a < g.d; ++a)
        y[static_cast<size_t>(a)] = g.wrap(x[static_cast<size_t>(a)] + off[static_cast<size_t>(a)]);
      if (c.label(g.index(y)) != shell_parity_label(shell)) ok = false;
      int a = g.d - 1;
      while (a >= 0 && off[static_cast<size_t>(a)] == k) off[static_cast<size_t>(a--)] = -k;
      if (a < 0) break;
      ++off[static_cast<size_t>(a)];
    }
    if (ok) cs.sites.insert(idx);
    for (int a = g.d - 1; a >= 0; --a) {
      if (++x[static_cast<size_t>(a)] < g.side) break;
      x[static_cast<size_t>(a)] = 0;
    }
  }
  return cs;
}

/// t-giants relative to the reference ball B(o, t): sites x whose labels on
/// ball(x, r_{t,x}) \ B are exactly the alternating bulb pattern around x,
/// r_{t,x} = max(2t, dist(x, o)). Sites whose test ball leaves the window
/// are skipped and counted in *skipped.
inline SiteSet detect_giants(const Configuration& c, int32_t t, const Coord& o,
                             int64_t* skipped = nullptr) {
  const TorusGeometry& g = c.geometry();
  if (t < 1) throw std::invalid_argument("detect_giants: t must be >= 1");
  if (2 * t >= g.side)
    throw std::invalid_argument("detect_giants: reference ball does not fit the window");
  SiteSet giants(g);
  int64_t skip_count = 0;
  int64_t n = g.volume();
  Coord x{};
  for (int64_t idx = 0; idx < n; ++idx) {
    int32_t r = std::max(2 * t, g.dist(x, o));
    if (2 * r >= g.side) {
      ++skip_count;
    } else {
      bool ok = true;
      Coord off{};
      for (int a = 0; a < g.d; ++a) off[static_cast<size_t>(a)] = -r;
      while (ok) {
        int32_t shell = 0;
        for (int a = 0; a < g.d; ++a)
          shell = std::max(shell, std::abs(off[static_cast<size_t>(a)]));
        Coord y{};
        for (int a = 0; a < g.d; ++a)
          y[static_cast<size_t>(a)] =
              g.wrap(x[static_cast<size_t>(a)] + off[static_cast<size_t>(a)]);
        if (g.dist(y, o) > t) {  // outside B: label must match the pattern
          if (c.label(g.index(y)) != shell_parity_label(shell)) ok = false;
        }
        int a = g.d - 1;
        while (a >= 0 && off[static_cast<size_t>(a)] == r) off[static_cast<size_t>(a--)] = -r;
        if (a < 0) break;
        ++off[static_cast<size_t>(a)];
      }
      if (ok) giants.insert(idx);
    }
    for (int a = g.d - 1; a >= 0; --a) {
      if (++x[static_cast<size_t>(a)] < g.side) break;
      x[static_cast<size_t>(a)] = 0;
    }
  }
  if (skipped) *skipped = skip_count;
  return giants;
}

namespace detail {

/// Circular weighted sum along one axis: out[x] = sum_j w[j+m] * in[x + j*e_a],
/// arithmetic mod 2^64.
inline void axis_weighted_sum(const TorusGeometry& g, int axis, int32_t m,
                              const std::vector<uint64_t>& weights,
                              std::vector<uint64_t>& field) {
  int64_t n = g.volume();
  int64_t s = g.stride(axis);
  int32_t L = g.side;
  std::vector<uint64_t> row(static_cast<size_t>(L));
  std::vector<uint64_t> out(static_cast<size_t>(L));
  for (int64_t base = 0; base < n; ++base) {
    if ((base / s) % L != 0) continue;  // row starts only
    for (int32_t j = 0; j < L; ++j) row[static_cast<size_t>(j)] = field[base + j * s];
    for (int32_t j = 0; j < L; ++j) {
      uint64_t acc = 0;
      for (int32_t u = -m; u <= m; ++u) {
        int32_t jj = j + u;
        jj = jj < 0 ? jj + L : (jj >= L ? jj - L : jj);
        acc += weights[static_cast<size_t>(u + m)] * row[static_cast<size_t>(jj)];
      }
      out[static_cast<size_t>(j)] = acc;
    }
    for (int32_t j = 0; j < L; ++j) field[base + j * s] = out[static_cast<size_t>(j)];
  }
}

/// Circular sliding minimum with window radius w along one axis.
inline void axis_sliding_min(const TorusGeometry& g, int axis, int32_t w,
                             std::vector<uint64_t>& field) {
  int64_t n = g.volume();
  int64_t s = g.stride(axis);
  int32_t L = g.side;
  std::vector<uint64_t> row(static_cast<size_t>(L));
  std::vector<uint64_t> out(static_cast<size_t>(L));
  std::deque<int32_t> dq;  // positions t with increasing values
  for (int64_t base = 0; base < n; ++base) {
    if ((base / s) % L != 0) continue;
    for (int32_t j = 0; j < L; ++j) row[static_cast<size_t>(j)] = field[base + j * s];
    dq.clear();
    for (int32_t t = -w; t < L + w; ++t) {
      uint64_t v = row[static_cast<size_t>(g.wrap(t))];
      while (!dq.empty() && row[static_cast<size_t>(g.wrap(dq.back()))] >= v) dq.pop_back();
      dq.push_back(t);
      int32_t j = t - w;  // window [j-w, j+w] is complete at t = j+w
      if (j >= 0 && j < L) {
        while (dq.front() < j - w) dq.pop_front();
        out[static_cast<size_t>(j)] = row[static_cast<size_t>(g.wrap(dq.front()))];
      }
    }
    for (int32_t j = 0; j < L; ++j) field[base + j * s] = out[static_cast<size_t>(j)];
  }
}

}  // namespace detail

/// Per-site hash of the label patch ball(x, m): a separable weighted sum of
/// labels with fixed per-(axis, offset) weights, finalized with mix64. A pure
/// function of the labels relative to x, hence translation covariant.
inline std::vector<uint64_t> patch_hash_field(const Configuration& c, int32_t m) {
  const TorusGeometry& g = c.geometry();
  if (2 * m + 1 > g.side)
    throw std::invalid_argument("patch_hash_field: patch does not fit the window");
  int64_t n = g.volume();
  std::vector<uint64_t> field(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i)
    field[static_cast<size_t>(i)] = static_cast<uint64_t>(c.label(i)) + 0x2545f4914f6cdd1dULL;
  for (int axis = g.d - 1; axis >= 0; --axis) {
    std::vector<uint64_t> w(static_cast<size_t>(2 * m + 1));
    for (int32_t j = -m; j <= m; ++j)
      w[static_cast<size_t>(j + m)] = patch_weight(axis, j);
    detail::axis_weighted_sum(g, axis, m, w, field);
  }
  for (auto& h : field) h = mix64(h);
  return field;
}

/// Configuration-derived distinguished site: the global minimum of the
/// radius-min(4, (L-1)/2) patch hash. Used to anchor whole-window objects
/// covariantly. Hash ties (astronomically rare) fall back to smallest index.
inline int64_t window_anchor(const Configuration& c) {
  const TorusGeometry& g = c.geometry();
  int32_t m = std::min<int32_t>(4, (g.side - 1) / 2);
  std::vector<uint64_t> h = patch_hash_field(c, m);
  int64_t best = 0;
  for (int64_t i = 1; i < g.volume(); ++i)
    if (h[static_cast<size_t>(i)] < h[static_cast<size_t>(best)]) best = i;
  return best;
}

/// Equivariant tunable-density center source. Candidates are sites whose
/// patch hash falls below the density threshold; a candidate is kept iff its
/// hash is the strict minimum among candidates within distance 2m (hash ties
/// resolved by the lexicographically smallest relative offset). Members are
/// pairwise > 2m apart.
inline CenterSet hash_bulb_centers(const Configuration& c, int32_t level,
                                   double target_density) {
  const TorusGeometry& g = c.geometry();
  int32_t m = level;
  if (m < 1) throw std::invalid_argument("hash_bulb_centers: level must be >= 1");
  if (4 * m > g.side)
    throw std::invalid_argument("hash_bulb_centers: separation radius must be <= side/4");
  if (target_density < 0 || target_density > 1)
    throw std::invalid_argument("hash_bulb_centers: density must be in [0, 1]");

  CenterSet cs;
  cs.level = m;
  cs.source = CenterSource::hash_bulb;
  cs.density_param = target_density;
  cs.sites = SiteSet(g);
  if (target_density == 0) return cs;

  int64_t n = g.volume();
  std::vector<uint64_t> h = patch_hash_field(c, m);

  bool all = target_density >= 1.0;
  uint64_t threshold = 0;
  if (!all) {
    long double t = std::ldexp(static_cast<long double>(target_density), 64);
    threshold = t >= static_cast<long double>(UINT64_MAX)
                    ? UINT64_MAX
                    : static_cast<uint64_t>(t);
  }

  std::vector<uint64_t> masked(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) {
    bool cand = all || h[static_cast<size_t>(i)] < threshold;
    masked[static_cast<size_t>(i)] = cand ? h[static_cast<size_t>(i)] : UINT64_MAX;
  }
  std::vector<uint64_t> filt = masked;
  for (int axis = 0; axis < g.d; ++axis) detail::axis_sliding_min(g, axis, 2 * m, filt);

  std::vector<int64_t> survivors;
  for (int64_t i = 0; i < n; ++i) {
    bool cand = all || h[static_cast<size_t>(i)] < threshold;
    if (cand && masked[static_cast<size_t>(i)] == filt[static_cast<size_t>(i)])
      survivors.push_back(i);
  }

  // Two survivors within 2m must share a hash value (each is the minimum of
  // a window containing the other), so ties can only hide inside equal-hash
  // groups. Resolve those by the lexicographically smallest relative offset.
  std::unordered_map<uint64_t, std::vector<size_t>> by_hash;
  for (size_t i = 0; i < survivors.size(); ++i)
    by_hash[h[static_cast<size_t>(survivors[i])]].push_back(i);
  std::vector<char> dead(survivors.size(), 0);
  for (auto& [hv, group] : by_hash) {
    if (group.size() < 2) continue;
    for (size_t gi = 0; gi < group.size(); ++gi)
      for (size_t gj = gi + 1; gj < group.size(); ++gj) {
        size_t i = group[gi], j = group[gj];
        if (dead[i] || dead[j]) continue;
        Coord a = g.coord(survivors[i]);
        Coord b = g.coord(survivors[j]);
        if (g.dist(a, b) > 2 * m) continue;
        Coord off = g.offset(a, b);
        Coord zero{};
        if (lex_less(zero, off, g.d))
          dead[j] = 1;  // b lies lex-after a: a wins
        else
          dead[i] = 1;
      }
  }
  for (size_t i = 0; i < survivors.size(); ++i)
    if (!dead[i]) cs.sites.insert(survivors[i]);
  return cs;
}

}  // namespace torusmatch
