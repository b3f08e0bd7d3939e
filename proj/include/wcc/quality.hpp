#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "wcc/error.hpp"
#include "wcc/graph.hpp"
#include "wcc/partition.hpp"
#include "wcc/triangles.hpp"
#include "wcc/wcc.hpp"

namespace wcc {

// ---------------------------------------------------------------------------
// Modularity and conductance

/// Newman-Girvan modularity: sum over communities of m_c/m - (d_c/2m)^2.
inline double modularity(const Graph& g, const Partition& p) {
  p.validate_against(g);
  const std::size_t m = g.edge_count();
  if (m == 0) throw DomainError("modularity is undefined on a graph without edges");
  std::vector<std::uint64_t> internal(p.community_count(), 0), volume(p.community_count(), 0);
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    const CommunityId cu = p.community_of(u);
    volume[cu] += g.degree(u);
    for (VertexId v : g.neighbors(u))
      if (u < v && p.community_of(v) == cu) ++internal[cu];
  }
  const double em = static_cast<double>(m);
  double q = 0.0;
  for (CommunityId c = 0; c < p.community_count(); ++c) {
    const double frac = static_cast<double>(volume[c]) / (2.0 * em);
    q += static_cast<double>(internal[c]) / em - frac * frac;
  }
  return q;
}

enum class ConductanceForm {
  /// cut / (2 m_int + cut), bounded in [0, 1].
  Standard,
  /// cut / m_int, unbounded.
  PaperLiteral,
};

struct CutCounts {
  std::uint64_t internal = 0;  ///< edges with both endpoints in S
  std::uint64_t cut = 0;       ///< edges with exactly one endpoint in S
};

inline CutCounts cut_counts(const Graph& g, const VertexSet& s) {
  CutCounts cc;
  for (VertexId u : s) {
    for (VertexId v : g.neighbors(u)) {
      if (!s.contains(v)) {
        ++cc.cut;
      } else if (u < v) {
        ++cc.internal;
      }
    }
  }
  return cc;
}

/// Whether the conductance ratio had a zero denominator for these counts.
inline bool conductance_degenerate(const CutCounts& cc, ConductanceForm form) {
  return form == ConductanceForm::Standard ? 2 * cc.internal + cc.cut == 0 : cc.internal == 0;
}

/// Zero denominators give 0 when nothing is cut. The paper-literal form
/// returns +inf for a set with cut edges but no internal edge.
inline double conductance(const CutCounts& cc, ConductanceForm form = ConductanceForm::Standard) {
  const double cut = static_cast<double>(cc.cut);
  const double internal = static_cast<double>(cc.internal);
  if (form == ConductanceForm::Standard) {
    const double denom = 2.0 * internal + cut;
    return denom == 0.0 ? 0.0 : cut / denom;
  }
  if (cc.internal == 0) return cc.cut == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return cut / internal;
}

inline double conductance(const Graph& g, const VertexSet& s,
                          ConductanceForm form = ConductanceForm::Standard) {
  if (s.empty()) throw DomainError("conductance of an empty set is undefined");
  return conductance(cut_counts(g, s), form);
}

/// Partition WCC plus modularity (when the graph has edges) and the
/// conductance of every community.
inline ScoreReport evaluate(const WccEvaluator& eval, const Partition& p,
                            ConductanceForm form = ConductanceForm::Standard, unsigned threads = 1) {
  ScoreReport report = eval.partition(p, threads);
  const Graph& g = eval.graph();
  if (g.edge_count() > 0) report.modularity = modularity(g, p);
  for (auto& c : report.communities) c.conductance = conductance(cut_counts(g, p.community(c.id)), form);
  return report;
}

// ---------------------------------------------------------------------------
// Induced subgraphs: bridges and diameter

/// Subgraph induced by a vertex set, relabeled to local ids 0..|S|-1 in
/// ascending order of the original ids.
class InducedSubgraph {
 public:
  InducedSubgraph(const Graph& g, const VertexSet& s) : adj_(s.size()) {
    auto members = s.members();
    auto local = [&](VertexId v) {
      return static_cast<VertexId>(std::lower_bound(members.begin(), members.end(), v) - members.begin());
    };
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (VertexId v : g.neighbors(members[i])) {
        if (s.contains(v)) adj_[i].push_back(local(v));
      }
      edges_ += adj_[i].size();
    }
    edges_ /= 2;
  }

  /// Builds directly from local adjacency lists (must be symmetric).
  explicit InducedSubgraph(std::vector<std::vector<VertexId>> adj) : adj_(std::move(adj)) {
    for (const auto& a : adj_) edges_ += a.size();
    edges_ /= 2;
  }

  std::size_t vertex_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }
  const std::vector<VertexId>& neighbors(VertexId v) const noexcept { return adj_[v]; }

  /// Number of bridges, via iterative low-link DFS.
  std::size_t bridge_count() const {
    const std::size_t n = adj_.size();
    constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> disc(n, kUnseen), low(n, 0);
    struct Frame {
      VertexId v;
      VertexId parent;
      std::size_t next;
      bool skipped_parent;
    };
    std::vector<Frame> stack;
    std::uint32_t timer = 0;
    std::size_t bridges = 0;
    for (VertexId root = 0; root < n; ++root) {
      if (disc[root] != kUnseen) continue;
      disc[root] = low[root] = timer++;
      stack.push_back({root, root, 0, true});
      while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < adj_[f.v].size()) {
          const VertexId w = adj_[f.v][f.next++];
          if (w == f.parent && !f.skipped_parent) {
            f.skipped_parent = true;
            continue;
          }
          if (disc[w] == kUnseen) {
            disc[w] = low[w] = timer++;
            stack.push_back({w, f.v, 0, false});
          } else {
            low[f.v] = std::min(low[f.v], disc[w]);
          }
        } else {
          const VertexId v = f.v, parent = f.parent;
          stack.pop_back();
          if (!stack.empty()) {
            low[parent] = std::min(low[parent], low[v]);
            if (low[v] > disc[parent]) ++bridges;
          }
        }
      }
    }
    return bridges;
  }

  struct Diameter {
    std::size_t length = 0;   ///< longest shortest path over reachable pairs
    bool connected = true;
  };

  /// BFS from every vertex.
  Diameter diameter() const {
    const std::size_t n = adj_.size();
    Diameter d;
    std::vector<std::uint32_t> dist(n);
    std::vector<VertexId> queue(n);
    constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
    for (VertexId src = 0; src < n; ++src) {
      std::fill(dist.begin(), dist.end(), kUnseen);
      dist[src] = 0;
      std::size_t head = 0, tail = 0;
      queue[tail++] = src;
      while (head < tail) {
        const VertexId v = queue[head++];
        for (VertexId w : adj_[v]) {
          if (dist[w] == kUnseen) {
            dist[w] = dist[v] + 1;
            d.length = std::max<std::size_t>(d.length, dist[w]);
            queue[tail++] = w;
          }
        }
      }
      if (tail != n) d.connected = false;
    }
    return d;
  }

 private:
  std::vector<std::vector<VertexId>> adj_;
  std::size_t edges_ = 0;
};

// ---------------------------------------------------------------------------
// Per-community statistics

struct StatRecord {
  CommunityId id = 0;
  std::string label;
  std::size_t size = 0;
  double wcc = 0.0;
  double triangle_density = 0.0;
  double avg_inverse_edge_cut = 0.0;
  double avg_edge_density = 0.0;
  double normalized_diameter = 0.0;
  double bridge_ratio = 0.0;
  double conductance = 0.0;
  bool disconnected = false;
  bool conductance_degenerate = false;
};

/// Fills a StatRecord for one community. The diameter is normalized by the
/// natural log of the size (0 below three members); disconnected communities
/// use the longest finite distance and are flagged.
inline StatRecord community_stats(const WccEvaluator& eval, const VertexSet& s,
                                  ConductanceForm form = ConductanceForm::Standard) {
  if (s.empty()) throw DomainError("statistics of an empty community are undefined");
  const Graph& g = eval.graph();
  StatRecord r;
  r.size = s.size();
  r.wcc = eval.community(s);

  auto in = [&](VertexId v) { return s.contains(v); };
  std::uint64_t triangles_thrice = 0;
  double inv_cut = 0.0, density = 0.0;
  for (VertexId x : s) {
    triangles_thrice += detail::triangles_with_if(g, x, in);
    std::size_t inside = 0;
    for (VertexId y : g.neighbors(x)) inside += s.contains(y) ? 1 : 0;
    if (g.degree(x) > 0) inv_cut += static_cast<double>(inside) / static_cast<double>(g.degree(x));
    if (s.size() > 1) density += static_cast<double>(inside) / static_cast<double>(s.size() - 1);
  }
  const double size = static_cast<double>(s.size());
  r.avg_inverse_edge_cut = inv_cut / size;
  r.avg_edge_density = density / size;
  if (s.size() >= 3) {
    const double possible = size * (size - 1.0) * (size - 2.0) / 6.0;
    r.triangle_density = static_cast<double>(triangles_thrice / 3) / possible;
  }

  InducedSubgraph sub(g, s);
  const auto diam = sub.diameter();
  r.disconnected = !diam.connected;
  if (s.size() >= 3) r.normalized_diameter = static_cast<double>(diam.length) / std::log(size);
  if (sub.edge_count() > 0)
    r.bridge_ratio = static_cast<double>(sub.bridge_count()) / static_cast<double>(sub.edge_count());

  const CutCounts cc = cut_counts(g, s);
  r.conductance = conductance(cc, form);
  r.conductance_degenerate = conductance_degenerate(cc, form);
  return r;
}

inline StatRecord community_stats(const Graph& g, const VertexSet& s,
                                  ConductanceForm form = ConductanceForm::Standard) {
  return community_stats(WccEvaluator(g), s, form);
}

/// One StatRecord per community, in community-id order.
inline std::vector<StatRecord> partition_stats(const WccEvaluator& eval, const Partition& p,
                                               ConductanceForm form = ConductanceForm::Standard,
                                               unsigned threads = 1) {
  p.validate_against(eval.graph());
  std::vector<StatRecord> out(p.community_count());
  auto work = [&](CommunityId c) {
    out[c] = community_stats(eval, p.community(c), form);
    out[c].id = c;
    out[c].label = p.label(c);
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    for (CommunityId c = 0; c < p.community_count(); ++c) work(c);
  } else {
    std::atomic<CommunityId> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (CommunityId c = next++; c < p.community_count(); c = next++) work(c);
      });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Percentile groups

struct PercentileRow {
  std::size_t group = 0;  ///< 1-based
  std::size_t count = 0;
  double size = 0.0;
  double wcc = 0.0;
  double triangle_density = 0.0;
  double avg_inverse_edge_cut = 0.0;
  double avg_edge_density = 0.0;
  double normalized_diameter = 0.0;
  double bridge_ratio = 0.0;
  double conductance = 0.0;
};

using PercentileReport = std::vector<PercentileRow>;

/// Drops communities with at most two members, sorts the rest by WCC
/// (descending; ties by size descending, then id ascending) and splits them
/// into `groups` equal-count slices. Leftover records go one each to the
/// first groups. Each row holds the per-field means of its slice.
inline PercentileReport percentile_report(std::vector<StatRecord> records, std::size_t groups = 20) {
  if (groups == 0) throw DomainError("percentile report needs at least one group");
  std::erase_if(records, [](const StatRecord& r) { return r.size <= 2; });
  if (records.size() < groups)
    throw DomainError("only " + std::to_string(records.size()) +
                      " communities with more than two members; need at least " +
                      std::to_string(groups) + " (use fewer groups or pool more partitions)");

  std::stable_sort(records.begin(), records.end(), [](const StatRecord& a, const StatRecord& b) {
    if (a.wcc != b.wcc) return a.wcc > b.wcc;
    if (a.size != b.size) return a.size > b.size;
    return a.id < b.id;
  });

  const std::size_t base = records.size() / groups;
  const std::size_t extra = records.size() % groups;
  PercentileReport report;
  report.reserve(groups);
  std::size_t pos = 0;
  for (std::size_t gi = 0; gi < groups; ++gi) {
    PercentileRow row;
    row.group = gi + 1;
    row.count = base + (gi < extra ? 1 : 0);
    for (std::size_t i = pos; i < pos + row.count; ++i) {
      const StatRecord& r = records[i];
      row.size += static_cast<double>(r.size);
      row.wcc += r.wcc;
      row.triangle_density += r.triangle_density;
      row.avg_inverse_edge_cut += r.avg_inverse_edge_cut;
      row.avg_edge_density += r.avg_edge_density;
      row.normalized_diameter += r.normalized_diameter;
      row.bridge_ratio += r.bridge_ratio;
      row.conductance += r.conductance;
    }
    const double c = static_cast<double>(row.count);
    for (double* f : {&row.size, &row.wcc, &row.triangle_density, &row.avg_inverse_edge_cut,
                      &row.avg_edge_density, &row.normalized_diameter, &row.bridge_ratio,
                      &row.conductance})
      *f /= c;
    pos += row.count;
    report.push_back(row);
  }
  return report;
}

}  // namespace wcc
