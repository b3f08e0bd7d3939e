#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wcc/error.hpp"
#include "wcc/graph.hpp"
#include "wcc/partition.hpp"

namespace wcc::fixtures {

namespace detail {

inline void add_clique(std::vector<Edge>& edges, VertexId first, std::size_t k) {
  for (VertexId i = 0; i < k; ++i)
    for (VertexId j = i + 1; j < k; ++j) edges.emplace_back(first + i, first + j);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail

/// K_k on vertices 0..k-1.
inline Graph clique(std::size_t k) {
  detail::require(k >= 1, "clique needs at least one vertex");
  std::vector<Edge> e;
  detail::add_clique(e, 0, k);
  return Graph::from_edges(k, e);
}

/// C_k on vertices 0..k-1.
inline Graph cycle(std::size_t k) {
  detail::require(k >= 3, "cycle needs at least three vertices");
  std::vector<Edge> e;
  for (VertexId i = 0; i < k; ++i) e.emplace_back(i, static_cast<VertexId>((i + 1) % k));
  return Graph::from_edges(k, e);
}

/// m copies of K_k arranged in a cycle. Clique i owns vertices i*k..i*k+k-1;
/// its last vertex links to the first vertex of clique (i+1) mod m.
inline Graph ring_of_cliques(std::size_t m, std::size_t k) {
  detail::require(m >= 2 && k >= 3, "ring_of_cliques needs m >= 2 cliques of size k >= 3");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < m; ++i) detail::add_clique(e, static_cast<VertexId>(i * k), k);
  for (std::size_t i = 0; i < m; ++i)
    e.emplace_back(static_cast<VertexId>(i * k + k - 1), static_cast<VertexId>(((i + 1) % m) * k));
  return Graph::from_edges(m * k, e);
}

/// K_r on 0..r-1 and K_s on r..r+s-1 joined by the single edge (r-1, r).
inline Graph bridged_cliques(std::size_t r, std::size_t s) {
  detail::require(r >= 3 && s >= 3, "bridged_cliques needs clique sizes >= 3");
  std::vector<Edge> e;
  detail::add_clique(e, 0, r);
  detail::add_clique(e, static_cast<VertexId>(r), s);
  e.emplace_back(static_cast<VertexId>(r - 1), static_cast<VertexId>(r));
  return Graph::from_edges(r + s, e);
}

/// Vertex shared by both cliques in shared_vertex_cliques(r, s).
inline VertexId shared_vertex(std::size_t r) { return static_cast<VertexId>(r - 1); }

/// K_r on 0..r-1 and K_s on r-1..r+s-2; vertex r-1 belongs to both.
inline Graph shared_vertex_cliques(std::size_t r, std::size_t s) {
  detail::require(r >= 3 && s >= 3, "shared_vertex_cliques needs clique sizes >= 3");
  std::vector<Edge> e;
  detail::add_clique(e, 0, r);
  detail::add_clique(e, static_cast<VertexId>(r - 1), s);
  return Graph::from_edges(r + s - 1, e);
}

/// K_r on 0..r-1 plus satellite vertex r adjacent to clique vertices 0..d-1.
inline Graph clique_satellite(std::size_t r, std::size_t d) {
  detail::require(r >= 3 && d <= r, "clique_satellite needs r >= 3 and 0 <= d <= r");
  std::vector<Edge> e;
  detail::add_clique(e, 0, r);
  for (VertexId i = 0; i < d; ++i) e.emplace_back(i, static_cast<VertexId>(r));
  return Graph::from_edges(r + 1, e);
}

/// Erdős–Rényi G(n, p) with geometric edge skipping, O(n + m).
///
/// Uses mt19937_64 and converts raw draws to doubles by hand, so the edge set
/// depends only on (n, p, seed) and not on the standard library.
inline Graph er_random(std::size_t n, double p, std::uint64_t seed) {
  detail::require(p >= 0.0 && p <= 1.0, "er_random needs 0 <= p <= 1");
  std::vector<Edge> e;
  if (n >= 2 && p > 0.0) {
    if (p >= 1.0) {
      detail::add_clique(e, 0, n);
    } else {
      std::mt19937_64 rng(seed);
      auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
      const double log_q = std::log1p(-p);
      std::int64_t v = 1, w = -1;
      const auto nn = static_cast<std::int64_t>(n);
      while (v < nn) {
        const double skip = std::floor(std::log1p(-uniform()) / log_q);
        w += 1 + static_cast<std::int64_t>(std::min(skip, 1e18));
        while (w >= v && v < nn) {
          w -= v;
          ++v;
        }
        if (v < nn) e.emplace_back(static_cast<VertexId>(w), static_cast<VertexId>(v));
      }
    }
  }
  return Graph::from_edges(n, e);
}

/// Generator lookup by name, used by the CLI. Size parameters must be whole numbers.
inline Graph generate(std::string_view kind, std::span<const double> params, std::uint64_t seed = 0) {
  auto need = [&](std::size_t count) {
    if (params.size() != count)
      throw DomainError(std::string(kind) + " takes " + std::to_string(count) + " parameter(s), got " +
                        std::to_string(params.size()));
  };
  auto as_size = [&](std::size_t i) {
    const double v = params[i];
    if (!(v >= 0) || v != std::floor(v)) throw DomainError("parameter " + std::to_string(i + 1) + " must be a non-negative integer");
    return static_cast<std::size_t>(v);
  };
  if (kind == "clique") return need(1), clique(as_size(0));
  if (kind == "cycle") return need(1), cycle(as_size(0));
  if (kind == "ring_of_cliques") return need(2), ring_of_cliques(as_size(0), as_size(1));
  if (kind == "bridged_cliques") return need(2), bridged_cliques(as_size(0), as_size(1));
  if (kind == "shared_vertex_cliques") return need(2), shared_vertex_cliques(as_size(0), as_size(1));
  if (kind == "clique_satellite") return need(2), clique_satellite(as_size(0), as_size(1));
  if (kind == "er_random") return need(2), er_random(as_size(0), params[1], seed);
  throw DomainError("unknown fixture kind '" + std::string(kind) + "'");
}

// ---------------------------------------------------------------------------
// Satellite vertex next to a community of density p (closed forms in expectation)

struct SatelliteParams {
  double r = 0;  ///< community size, >= 3
  double p = 1;  ///< internal density, in (0, 1]
  double d = 0;  ///< satellite edges into the community, 0 <= d <= r
};

struct SatelliteMargin {
  double margin = 0.0;
  bool include = false;  ///< margin > 0: the satellite scores better inside the community
};

struct SatelliteThreshold {
  double d2 = 0.0;                   ///< greatest root; NaN when the quadratic has no real root
  double asymptotic_fraction = 0.0;  ///< limit of d2 / r as r grows
};

struct QuadraticCoefficients {
  double a, b, c;
};

/// a d^2 + b d + c > 0 exactly when joining the satellite to the community
/// beats leaving it alone.
inline QuadraticCoefficients satellite_coefficients(double r, double p) {
  return {2.0 * (2.0 + p * r),
          p * p * (p + 1.0) * r * r - p * (3.0 * p * p + 3.0 * p + 4.0) * r + 2.0 * p * p * p +
              2.0 * p * p - 4.0,
          -p * p * p * r * r * r + 3.0 * p * p * p * r * r + 2.0 * p * (1.0 - p * p) * r};
}

inline void check(const SatelliteParams& q) {
  detail::require(q.r >= 3, "community size r must be >= 3");
  detail::require(q.p > 0 && q.p <= 1, "density p must be in (0, 1]");
  detail::require(q.d >= 0 && q.d <= q.r, "satellite degree d must be in [0, r]");
}

inline SatelliteMargin satellite_margin(const SatelliteParams& q) {
  check(q);
  const auto [a, b, c] = satellite_coefficients(q.r, q.p);
  const double m = a * q.d * q.d + b * q.d + c;
  return {m, m > 0.0};
}

inline SatelliteThreshold satellite_threshold(double r, double p) {
  check({r, p, 0});
  const auto [a, b, c] = satellite_coefficients(r, p);
  const double disc = b * b - 4.0 * a * c;
  SatelliteThreshold t;
  t.d2 = disc < 0 ? std::numeric_limits<double>::quiet_NaN() : (-b + std::sqrt(disc)) / (2.0 * a);
  t.asymptotic_fraction = p * (std::sqrt(p * p + 2.0 * p + 9.0) - (1.0 + p)) / 4.0;
  return t;
}

/// Expected WCC of {community + satellite} (first) and {community, {satellite}}
/// (second). Exact for p = 1 once d >= 2.
inline std::pair<double, double> satellite_values(const SatelliteParams& q) {
  check(q);
  const double r = q.r, p = q.p, d = q.d;
  const double joined = ((r - 1.0) * p + 2.0 * d / r) / (r + 1.0);
  const double inner = (r - 1.0) * (r - 2.0) * p * p;
  const double apart = ((r - d) * p + d / r * ((r - 1.0) * p + 1.0) * inner / (inner + 2.0 * (d - 1.0))) / (r + 1.0);
  return {joined, apart};
}

// ---------------------------------------------------------------------------
// Two cliques sharing one vertex

struct SharedVertexParams {
  std::size_t r = 4;  ///< larger clique, r >= s
  std::size_t s = 4;  ///< smaller clique, s >= 4
};

struct SharedVertexValues {
  double single;       ///< one community with every vertex
  double split;        ///< {K_r including the shared vertex, K_s without it}
  double singleton;    ///< {K_r without it, {shared}, K_s without it}
};

inline SharedVertexValues shared_vertex_values(const SharedVertexParams& q) {
  detail::require(q.r >= q.s && q.s >= 4, "need r >= s >= 4");
  const double r = static_cast<double>(q.r), s = static_cast<double>(q.s);
  const double n = r + s - 1.0;
  const double kr = (r - 1.0) * (r - 2.0), ks = (s - 1.0) * (s - 2.0);
  return {(((r - 1.0) * (r - 1.0) + (s - 1.0) * (s - 1.0)) / (n - 1.0) + 1.0) / n,
          ((r - 1.0) + kr / (kr + ks) + (s - 3.0)) / n,
          ((r - 3.0) + (s - 3.0)) / n};
}

// ---------------------------------------------------------------------------
// Exhaustive optimum for tiny graphs

inline constexpr std::size_t kExhaustiveLimit = 12;

struct OracleResult {
  Partition partition;
  double wcc = 0.0;
  std::uint64_t examined = 0;  ///< number of partitions scored (the Bell number of |V|)
};

namespace detail {

/// Bitmask WCC for graphs of at most 12 vertices. Kept separate from the CSR
/// evaluator so it can serve as an independent check of it.
class MaskScorer {
 public:
  explicit MaskScorer(const Graph& g) : n_(g.vertex_count()), adj_(n_, 0), partners_(n_, 0), pairs_(n_) {
    for (VertexId x = 0; x < n_; ++x)
      for (VertexId y : g.neighbors(x)) adj_[x] |= 1u << y;
    for (VertexId x = 0; x < n_; ++x) {
      for (VertexId y = 0; y < n_; ++y) {
        if (!(adj_[x] >> y & 1u)) continue;
        if (adj_[x] & adj_[y]) partners_[x] |= 1u << y;
        for (VertexId z = y + 1; z < n_; ++z)
          if ((adj_[x] >> z & 1u) && (adj_[y] >> z & 1u)) pairs_[x].push_back((1u << y) | (1u << z));
      }
    }
  }

  double vertex(VertexId x, std::uint32_t set) const {
    const auto& pairs = pairs_[x];
    if (pairs.empty()) return 0.0;
    std::uint64_t inside = 0;
    for (auto pm : pairs) inside += (pm & set) == pm ? 1 : 0;
    if (inside == 0) return 0.0;
    const auto vt_out = static_cast<std::uint64_t>(std::popcount(partners_[x] & ~set));
    const auto others = static_cast<std::uint64_t>(std::popcount(set) - 1);
    const double left = static_cast<double>(inside) / static_cast<double>(pairs.size());
    const double right = static_cast<double>(std::popcount(partners_[x])) / static_cast<double>(others + vt_out);
    return left * right;
  }

  /// |S| * WCC(S), with WCC(S) the mean taken in ascending vertex order.
  double weighted_community(std::uint32_t set) const {
    double sum = 0.0;
    for (VertexId x = 0; x < n_; ++x)
      if (set >> x & 1u) sum += vertex(x, set);
    const double size = static_cast<double>(std::popcount(set));
    return size * (sum / size);
  }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> adj_;
  std::vector<std::uint32_t> partners_;
  std::vector<std::vector<std::uint32_t>> pairs_;
};

}  // namespace detail

/// Scores every partition of V (restricted-growth strings) and returns the
/// best. Ties go to fewer communities, then to the lexicographically smallest
/// assignment. Refuses graphs with more than 12 vertices.
inline OracleResult exhaustive_best_partition(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kExhaustiveLimit)
    throw CapabilityError("exhaustive search is limited to " + std::to_string(kExhaustiveLimit) +
                          " vertices (graph has " + std::to_string(n) + "; Bell(" + std::to_string(n) +
                          ") partitions would be enumerated)");
  OracleResult best;
  if (n == 0) return best;

  const detail::MaskScorer scorer(g);
  std::vector<double> weighted(std::size_t{1} << n, 0.0);
  for (std::uint32_t set = 1; set < weighted.size(); ++set) weighted[set] = scorer.weighted_community(set);

  std::vector<CommunityId> rgs(n, 0), best_rgs;
  std::vector<std::uint32_t> blocks(n, 0);
  std::size_t best_blocks = 0;
  double best_value = -1.0;
  std::uint64_t examined = 0;
  const double nv = static_cast<double>(n);

  // Depth-first over restricted-growth strings; visits them in lexicographic order.
  auto recurse = [&](auto& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      ++examined;
      double total = 0.0;
      for (std::size_t b = 0; b < used; ++b) total += weighted[blocks[b]];
      const double value = total / nv;
      if (value > best_value || (value == best_value && used < best_blocks)) {
        best_value = value;
        best_blocks = used;
        best_rgs = rgs;
      }
      return;
    }
    for (std::size_t b = 0; b <= used && b < n; ++b) {
      rgs[i] = static_cast<CommunityId>(b);
      blocks[b] |= 1u << i;
      self(self, i + 1, b == used ? used + 1 : used);
      blocks[b] &= ~(1u << i);
    }
  };
  recurse(recurse, 0, 0);

  best.partition = Partition::from_assignment(best_rgs);
  best.wcc = best_value;
  best.examined = examined;
  return best;
}

}  // namespace wcc::fixtures
