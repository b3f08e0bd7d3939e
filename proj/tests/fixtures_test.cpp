#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "brute_force.hpp"
#include "wcc/fixtures.hpp"
#include "wcc/wcc.hpp"

namespace wcc {
namespace {

using namespace fixtures;

TEST(Generators, Sizes) {
  const Graph ring = ring_of_cliques(24, 5);
  EXPECT_EQ(ring.vertex_count(), 120u);
  EXPECT_EQ(ring.edge_count(), 24u * 10 + 24);
  const Graph bridged = bridged_cliques(5, 5);
  EXPECT_EQ(bridged.vertex_count(), 10u);
  EXPECT_EQ(bridged.edge_count(), 21u);
  const Graph shared = shared_vertex_cliques(5, 5);
  EXPECT_EQ(shared.vertex_count(), 9u);
  EXPECT_EQ(shared.edge_count(), 20u);
  EXPECT_EQ(shared.degree(shared_vertex(5)), 8u);
  const Graph sat = clique_satellite(6, 3);
  EXPECT_EQ(sat.edge_count(), 15u + 3);
  EXPECT_EQ(sat.degree(6), 3u);
  EXPECT_EQ(clique(1).edge_count(), 0u);
  EXPECT_EQ(cycle(7).edge_count(), 7u);
}

TEST(Generators, RejectBadParameters) {
  EXPECT_THROW(ring_of_cliques(1, 5), DomainError);
  EXPECT_THROW(ring_of_cliques(3, 2), DomainError);
  EXPECT_THROW(bridged_cliques(2, 5), DomainError);
  EXPECT_THROW(clique_satellite(5, 6), DomainError);
  EXPECT_THROW(er_random(10, 1.5, 0), DomainError);
  EXPECT_THROW(cycle(2), DomainError);
  const double bad[] = {3.5, 4};
  EXPECT_THROW(generate("ring_of_cliques", bad, 0), DomainError);
  const double one[] = {4};
  EXPECT_THROW(generate("ring_of_cliques", one, 0), DomainError);
  EXPECT_THROW(generate("lattice", one, 0), DomainError);
}

TEST(Generators, ErRandomIsReproducible) {
  const Graph a = er_random(2000, 0.003, 5);
  const Graph b = er_random(2000, 0.003, 5);
  const Graph c = er_random(2000, 0.003, 6);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == c);
  // Mean edge count p * n(n-1)/2 = 5997; five standard deviations is ~387.
  EXPECT_NEAR(static_cast<double>(a.edge_count()), 5997.0, 400.0);
  EXPECT_EQ(er_random(50, 0.0, 1).edge_count(), 0u);
  EXPECT_EQ(er_random(6, 1.0, 1).edge_count(), 15u);
}

TEST(Generators, GenerateDispatches) {
  const double p[] = {3, 4};
  EXPECT_EQ(generate("ring_of_cliques", p, 0), ring_of_cliques(3, 4));
  EXPECT_EQ(generate("shared_vertex_cliques", p, 0), shared_vertex_cliques(3, 4));
}

// --- satellite vertex --------------------------------------------------------

double joined_minus_apart(std::size_t r, std::size_t d) {
  const Graph g = clique_satellite(r, d);
  std::vector<CommunityId> together(r + 1, 0), apart(r + 1, 0);
  apart[r] = 1;
  return wcc_partition(g, Partition::from_assignment(together)).wcc - wcc_partition(g, Partition::from_assignment(apart)).wcc;
}

TEST(SatelliteMargin, KnownValues) {
  EXPECT_NEAR(satellite_margin({6, 1, 3}).margin, 72.0, 1e-9);
  EXPECT_TRUE(satellite_margin({6, 1, 3}).include);
  EXPECT_NEAR(satellite_margin({6, 1, 2}).margin, -20.0, 1e-9);
  EXPECT_FALSE(satellite_margin({6, 1, 2}).include);
  EXPECT_THROW(satellite_margin({2, 1, 1}), DomainError);
  EXPECT_THROW(satellite_margin({6, 0, 1}), DomainError);
  EXPECT_THROW(satellite_margin({6, 1, 7}), DomainError);
}

TEST(SatelliteMargin, SignAgreesWithDirectEvaluationOnCliques) {
  for (std::size_t r = 6; r <= 30; ++r) {
    for (std::size_t d = 0; d <= r; ++d) {
      const double diff = joined_minus_apart(r, d);
      const auto m = satellite_margin({double(r), 1.0, double(d)});
      if (std::abs(diff) < 1e-12) continue;
      EXPECT_EQ(m.include, diff > 0) << "r=" << r << " d=" << d << " margin=" << m.margin << " diff=" << diff;
    }
  }
}

TEST(SatelliteMargin, ClosedFormValuesExactForCliques) {
  for (std::size_t r = 4; r <= 15; ++r) {
    for (std::size_t d = 2; d <= r; ++d) {
      const Graph g = clique_satellite(r, d);
      std::vector<CommunityId> together(r + 1, 0), apart(r + 1, 0);
      apart[r] = 1;
      const auto [joined, separated] = satellite_values({double(r), 1.0, double(d)});
      EXPECT_NEAR(joined, wcc_partition(g, Partition::from_assignment(together)).wcc, 1e-12) << r << "," << d;
      EXPECT_NEAR(separated, wcc_partition(g, Partition::from_assignment(apart)).wcc, 1e-12) << r << "," << d;
    }
  }
}

TEST(SatelliteThreshold, CliqueFraction) {
  const double limit = (std::sqrt(3.0) - 1.0) / 2.0;
  EXPECT_NEAR(satellite_threshold(10, 1).asymptotic_fraction, limit, 1e-15);
  const auto big = satellite_threshold(1e4, 1);
  EXPECT_NEAR(big.d2 / 1e4, limit, 0.005);
  // The root separates the sign of the margin.
  const auto t = satellite_threshold(40, 1);
  EXPECT_LT(satellite_margin({40, 1, std::floor(t.d2) - 0.5}).margin, 0.0);
  EXPECT_GT(satellite_margin({40, 1, std::ceil(t.d2) + 0.5}).margin, 0.0);
}

TEST(SatelliteThreshold, FractionIncreasesWithDensity) {
  double prev = 0.0;
  for (double p = 0.05; p <= 1.0 + 1e-12; p += 0.05) {
    const double f = satellite_threshold(100, std::min(p, 1.0)).asymptotic_fraction;
    EXPECT_GT(f, prev);
    prev = f;
  }
}

// --- shared-vertex cliques ---------------------------------------------------

TEST(SharedVertex, FrozenValues) {
  const auto v = shared_vertex_values({5, 5});
  EXPECT_NEAR(v.single, 5.0 / 9.0, 1e-15);
  EXPECT_NEAR(v.split, 13.0 / 18.0, 1e-15);
  EXPECT_NEAR(v.singleton, 4.0 / 9.0, 1e-15);
  EXPECT_THROW(shared_vertex_values({4, 5}), DomainError);
  EXPECT_THROW(shared_vertex_values({5, 3}), DomainError);
}

TEST(SharedVertex, SplitWithSharedVertexWinsOnGrid) {
  for (std::size_t s = 4; s <= 30; ++s) {
    for (std::size_t r = s; r <= 30; ++r) {
      const auto v = shared_vertex_values({r, s});
      EXPECT_LE(v.singleton, v.split) << r << "," << s;
      if (r + s - 1 >= 7) {
        EXPECT_LE(v.single, v.split) << r << "," << s;
      }
    }
  }
}

TEST(SharedVertex, ClosedFormsMatchEvaluation) {
  for (std::size_t s = 4; s <= 12; ++s) {
    for (std::size_t r = s; r <= 12; ++r) {
      const Graph g = shared_vertex_cliques(r, s);
      const std::size_t n = r + s - 1;
      const VertexId t = shared_vertex(r);
      std::vector<CommunityId> single(n, 0), split(n, 0), singleton(n, 0);
      for (VertexId v = t + 1; v < n; ++v) split[v] = singleton[v] = 1;
      singleton[t] = 2;
      const auto expect = shared_vertex_values({r, s});
      EXPECT_NEAR(expect.single, wcc_partition(g, Partition::from_assignment(single)).wcc, 1e-12);
      EXPECT_NEAR(expect.split, wcc_partition(g, Partition::from_assignment(split)).wcc, 1e-12);
      EXPECT_NEAR(expect.singleton, wcc_partition(g, Partition::from_assignment(singleton)).wcc, 1e-12);
      EXPECT_GT(expect.split, expect.single);
      EXPECT_GT(expect.split, expect.singleton);
    }
  }
}

// --- exhaustive oracle -------------------------------------------------------

std::vector<std::vector<VertexId>> blocks(const Partition& p) {
  std::vector<std::vector<VertexId>> out;
  for (CommunityId c = 0; c < p.community_count(); ++c) {
    const auto m = p.community(c);
    out.emplace_back(m.begin(), m.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Exhaustive, BridgedCliquesSplit) {
  const auto r = exhaustive_best_partition(bridged_cliques(4, 4));
  EXPECT_EQ(r.examined, 4140u);  // Bell(8)
  EXPECT_EQ(blocks(r.partition), (std::vector<std::vector<VertexId>>{{0, 1, 2, 3}, {4, 5, 6, 7}}));
  EXPECT_DOUBLE_EQ(r.wcc, 1.0);
}

TEST(Exhaustive, SharedVertexGoesToOneClique) {
  const Graph g = shared_vertex_cliques(5, 5);
  const auto r = exhaustive_best_partition(g);
  EXPECT_EQ(r.examined, 21147u);  // Bell(9)
  EXPECT_NEAR(r.wcc, 13.0 / 18.0, 1e-15);
  const auto a = r.partition.assignment();
  EXPECT_EQ(std::vector<CommunityId>(a.begin(), a.end()), (std::vector<CommunityId>{0, 0, 0, 0, 0, 1, 1, 1, 1}));
}

TEST(Exhaustive, RingsOfSmallCliques) {
  for (auto [m, k] : {std::pair<VertexId, VertexId>{3, 4}, {4, 3}, {2, 5}}) {
    const auto r = exhaustive_best_partition(ring_of_cliques(m, k));
    std::vector<std::vector<VertexId>> want(m);
    for (VertexId i = 0; i < m * k; ++i) want[i / k].push_back(i);
    EXPECT_EQ(blocks(r.partition), want) << m << "x" << k;
  }
}

TEST(Exhaustive, CliqueAndTriangle) {
  std::vector<Edge> e;
  for (VertexId i = 0; i < 5; ++i)
    for (VertexId j = i + 1; j < 5; ++j) e.emplace_back(i, j);
  e.insert(e.end(), {{5, 6}, {6, 7}, {5, 7}, {4, 5}});
  const Graph g = Graph::from_edges(8, e);
  const auto r = exhaustive_best_partition(g);
  EXPECT_EQ(blocks(r.partition), (std::vector<std::vector<VertexId>>{{0, 1, 2, 3, 4}, {5, 6, 7}}));
  EXPECT_NEAR(r.wcc, wcc_partition(g, r.partition).wcc, 0.0);
}

TEST(Exhaustive, RefusesLargeGraphs) {
  EXPECT_THROW(exhaustive_best_partition(cycle(13)), CapabilityError);
  EXPECT_NO_THROW(exhaustive_best_partition(Graph::from_edges(0, {})));
}

TEST(ExhaustiveProperty, OptimumDominatesAndMatchesEvaluator) {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const Graph g = testing::coin_flip_graph(n, 0.5, rng);
    const auto best = exhaustive_best_partition(g);
    EXPECT_EQ(best.wcc, wcc_partition(g, best.partition).wcc);
    for (int k = 0; k < 30; ++k) {
      std::vector<CommunityId> a(n);
      for (auto& c : a) c = static_cast<CommunityId>(rng() % n);
      // compact labels to 0..k-1
      std::vector<CommunityId> remap(n, CommunityId(-1));
      CommunityId next = 0;
      for (auto& c : a) {
        if (remap[c] == CommunityId(-1)) remap[c] = next++;
        c = remap[c];
      }
      EXPECT_LE(wcc_partition(g, Partition::from_assignment(a)).wcc, best.wcc + 1e-12);
    }
  }
}

TEST(ExhaustiveProperty, MaskScorerMatchesBruteForce) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const Graph g = testing::coin_flip_graph(n, 0.5, rng);
    const fixtures::detail::MaskScorer scorer(g);
    const testing::BruteForce bf(g);
    const auto mask = testing::random_mask(n, rng);
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < n; ++i) bits |= mask[i] ? 1u << i : 0u;
    for (VertexId x = 0; x < n; ++x) {
      if (mask[x]) {
        EXPECT_NEAR(scorer.vertex(x, bits), bf.wcc_vertex(x, mask), 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace wcc
