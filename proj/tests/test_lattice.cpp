#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "torusmatch/config.hpp"
#include "torusmatch/geometry.hpp"
#include "torusmatch/rng.hpp"
#include "torusmatch/siteset.hpp"

using namespace torusmatch;

namespace {

// Independent flood-fill oracle: union-find over member sites, scanning in a
// different order than the BFS used by connected_components.
std::vector<std::set<int64_t>> component_oracle(const SiteSet& s) {
  const TorusGeometry& g = s.geometry();
  std::vector<int64_t> sites = s.members();
  std::sort(sites.rbegin(), sites.rend());
  std::map<int64_t, int64_t> parent;
  for (int64_t x : sites) parent[x] = x;
  std::function<int64_t(int64_t)> find = [&](int64_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int64_t x : sites)
    for (int a = 0; a < g.d; ++a)
      for (int dir : {+1, -1}) {
        int64_t nb = g.step(x, a, dir);
        if (s.contains(nb)) parent[find(x)] = find(nb);
      }
  std::map<int64_t, std::set<int64_t>> groups;
  for (int64_t x : sites) groups[find(x)].insert(x);
  std::vector<std::set<int64_t>> out;
  for (auto& [root, grp] : groups) out.push_back(grp);
  return out;
}

SiteSet random_set(const TorusGeometry& g, SplitMix& rng, double p) {
  SiteSet s(g);
  for (int64_t i = 0; i < g.volume(); ++i)
    if (rng.unit() < p) s.insert(i);
  return s;
}

}  // namespace

TEST_CASE("generation is deterministic and fair") {
  TorusGeometry g(2, 4);
  uint64_t s = 12345;
  Configuration a = generate(g, s);
  Configuration b = generate(g, s);
  REQUIRE(a.volume() == 16);
  REQUIRE(a == b);

  // mean of labels over 10^6 sites within 3 sigma of 1/2
  TorusGeometry big(2, 1024);
  Configuration c = generate(big, 987654321);
  int64_t n = big.volume();
  int64_t ones = 0;
  for (int64_t i = 0; i < n; ++i) ones += c.label(i);
  double mean = static_cast<double>(ones) / static_cast<double>(n);
  double sigma = 0.5 / std::sqrt(static_cast<double>(n));
  REQUIRE(std::abs(mean - 0.5) <= 3 * sigma);
}

TEST_CASE("generation d=3 L=64 within binomial CI") {
  TorusGeometry g(3, 64);
  Configuration c = generate(g, 777);
  REQUIRE(c.volume() == 262144);
  int64_t ones = 0;
  for (int64_t i = 0; i < c.volume(); ++i) ones += c.label(i);
  double mean = static_cast<double>(ones) / static_cast<double>(c.volume());
  double sigma = 0.5 / std::sqrt(static_cast<double>(c.volume()));
  REQUIRE(std::abs(mean - 0.5) <= 3 * sigma);
}

TEST_CASE("translation is a group action") {
  TorusGeometry g(2, 16);
  Configuration c = generate(g, 42);

  SECTION("identity and period") {
    Configuration t0 = translate(c, make_coord({0, 0}));
    REQUIRE(t0 == c);
    Configuration tp = translate(c, make_coord({16, 0}));
    REQUIRE(tp == c);
  }

  SECTION("round trip and composition") {
    SplitMix rng(7);
    for (int it = 0; it < 20; ++it) {
      Coord u = make_coord({static_cast<int32_t>(rng.below(16)),
                            static_cast<int32_t>(rng.below(16))});
      Coord v = make_coord({static_cast<int32_t>(rng.below(16)),
                            static_cast<int32_t>(rng.below(16))});
      Coord mu = make_coord({-u[0], -u[1]});
      REQUIRE(translate(translate(c, u), mu) == c);
      Coord uv = make_coord({u[0] + v[0], u[1] + v[1]});
      REQUIRE(translate(translate(c, u), v) == translate(c, uv));
    }
  }
}

TEST_CASE("ball sizes are (2r+1)^d") {
  TorusGeometry g2(2, 16);
  REQUIRE(ball(g2, make_coord({3, 5}), 1).size() == 9);
  REQUIRE(ball(g2, make_coord({0, 0}), 0).size() == 1);
  TorusGeometry g3(3, 16);
  REQUIRE(ball(g3, make_coord({1, 2, 3}), 2).size() == 125);

  SECTION("homogeneity over random centers and radii") {
    SplitMix rng(3);
    for (int it = 0; it < 30; ++it) {
      Coord x = make_coord({static_cast<int32_t>(rng.below(16)),
                            static_cast<int32_t>(rng.below(16))});
      int32_t r = static_cast<int32_t>(rng.below(8));
      int64_t expect = (2 * r + 1) * (2 * r + 1);
      REQUIRE(ball(g2, x, r).size() == expect);
    }
  }

  SECTION("radius past side/2 is rejected") {
    REQUIRE_THROWS_AS(ball(g2, make_coord({0, 0}), 8), std::invalid_argument);
  }
}

TEST_CASE("inner boundary") {
  TorusGeometry g(2, 16);

  SECTION("full torus has empty boundary") {
    SiteSet full = SiteSet(g).complement();
    REQUIRE(full.size() == 256);
    REQUIRE(inner_boundary(full).empty());
  }

  SECTION("single site is its own boundary") {
    SiteSet s(g);
    s.insert(g.index(make_coord({4, 4})));
    REQUIRE(inner_boundary(s) == s);
  }

  SECTION("8x8 cube in d=2 has 28 boundary sites") {
    SiteSet s(g);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) s.insert(g.index(make_coord({i, j})));
    REQUIRE(inner_boundary(s).size() == 28);
  }

  SECTION("boundary is contained in the set and idempotently shrinks") {
    SplitMix rng(11);
    for (int it = 0; it < 10; ++it) {
      SiteSet s = random_set(g, rng, 0.5);
      SiteSet b = inner_boundary(s);
      SiteSet bb = inner_boundary(b);
      b.for_each([&](int64_t i) { REQUIRE(s.contains(i)); });
      bb.for_each([&](int64_t i) { REQUIRE(b.contains(i)); });
    }
  }
}

TEST_CASE("connected components") {
  TorusGeometry g(2, 16);

  SECTION("two distant cubes give two components") {
    SiteSet s(g);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        s.insert(g.index(make_coord({i, j})));
        s.insert(g.index(make_coord({i + 8, j + 8})));
      }
    REQUIRE(connected_components(s).size() == 2);
  }

  SECTION("empty set gives empty list") {
    REQUIRE(connected_components(SiteSet(g)).empty());
  }

  SECTION("random sets match the union-find oracle") {
    SplitMix rng(29);
    for (int it = 0; it < 12; ++it) {
      SiteSet s = random_set(g, rng, 0.4 + 0.05 * (it % 5));
      auto comps = connected_components(s);
      auto oracle = component_oracle(s);
      REQUIRE(comps.size() == oracle.size());
      // partition check: every site in exactly one component, pieces match
      std::set<std::set<int64_t>> got, want;
      int64_t total = 0;
      for (auto& c : comps) {
        auto m = c.members();
        got.insert(std::set<int64_t>(m.begin(), m.end()));
        total += c.size();
      }
      for (auto& c : oracle) want.insert(c);
      REQUIRE(got == want);
      REQUIRE(total == s.size());
    }
  }
}

TEST_CASE("configuration binary round trip") {
  TorusGeometry g(3, 8);
  Configuration c = generate(g, 0xdeadbeef12345678ULL);
  std::stringstream buf;
  write_config(c, buf);
  // header is exactly 16 bytes followed by L^d bits
  REQUIRE(buf.str().size() == 16 + (512 + 7) / 8);
  Configuration back = read_config(buf);
  REQUIRE(back == c);
  REQUIRE(back.seed() == c.seed());
}

TEST_CASE("site hash distance and offsets") {
  TorusGeometry g(2, 16);
  REQUIRE(g.dist(make_coord({0, 0}), make_coord({15, 0})) == 1);
  REQUIRE(g.dist(make_coord({0, 0}), make_coord({8, 8})) == 8);
  REQUIRE(g.dist(make_coord({3, 4}), make_coord({3, 4})) == 0);
  Coord off = g.offset(make_coord({1, 1}), make_coord({15, 2}));
  REQUIRE(off[0] == -2);
  REQUIRE(off[1] == 1);
}
