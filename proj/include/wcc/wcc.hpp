#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "wcc/error.hpp"
#include "wcc/graph.hpp"
#include "wcc/partition.hpp"
#include "wcc/triangles.hpp"

namespace wcc {

struct CommunityScore {
  CommunityId id = 0;
  std::string label;
  std::size_t size = 0;
  double wcc = 0.0;
  std::optional<double> conductance;
};

/// Result of scoring one partition. The WCC fields are always filled;
/// modularity and conductance only when requested.
struct ScoreReport {
  double wcc = 0.0;
  std::vector<CommunityScore> communities;
  std::optional<double> modularity;
};

/// Scores vertices, communities and partitions against one graph.
///
/// t(x,V) and vt(x,V) are partition independent and computed once on
/// construction. The evaluator keeps a reference to `g`, which must outlive it.
class WccEvaluator {
 public:
  explicit WccEvaluator(const Graph& g) : graph_(&g), index_(g) {}

  const Graph& graph() const noexcept { return *graph_; }
  const TriangleIndex& index() const noexcept { return index_; }

  /// WCC(x, S) for a set given by membership predicate and size. x must be in the set.
  template <typename InSet>
  double vertex_if(VertexId x, const InSet& in, std::size_t set_size) const {
    const Graph& g = *graph_;
    const std::uint64_t t_total = index_.total_triangles(x);
    if (t_total == 0) return 0.0;

    auto nx = g.neighbors(x);
    const std::size_t base = g.arc_offset(x);
    std::uint64_t t_twice = 0;
    std::uint64_t vt_outside = 0;
    for (std::size_t k = 0; k < nx.size(); ++k) {
      const std::uint32_t support = index_.support(base + k);
      if (support == 0) continue;
      const VertexId y = nx[k];
      if (in(y)) {
        t_twice += detail::intersection_size_if(nx, g.neighbors(y), in);
      } else {
        ++vt_outside;
      }
    }
    const std::uint64_t t_in = t_twice / 2;
    if (t_in == 0) return 0.0;
    const double left = static_cast<double>(t_in) / static_cast<double>(t_total);
    const double right = static_cast<double>(index_.total_partners(x)) /
                         static_cast<double>((set_size - 1) + vt_outside);
    return left * right;
  }

  double vertex(VertexId x, const VertexSet& s) const {
    detail::check_vertex(*graph_, x);
    if (!s.contains(x))
      throw DomainError("vertex " + std::to_string(x) + " is not a member of the community");
    return vertex_if(x, [&](VertexId v) { return s.contains(v); }, s.size());
  }

  double community(const VertexSet& s) const {
    if (s.empty()) throw DomainError("WCC of an empty community is undefined");
    return community_sum(s.members(), [&](VertexId v) { return s.contains(v); }) /
           static_cast<double>(s.size());
  }

  /// Scores every community, optionally on several threads. Per-community
  /// sums run in ascending vertex order and the partition total is combined in
  /// ascending community order, so the result does not depend on `threads`.
  ScoreReport partition(const Partition& p, unsigned threads = 1) const {
    p.validate_against(*graph_);
    const std::size_t k = p.community_count();
    std::vector<double> values(k, 0.0);

    auto work = [&](CommunityId c) {
      const VertexSet& s = p.community(c);
      auto in = [&p, c](VertexId v) { return p.community_of(v) == c; };
      values[c] = community_sum(s.members(), in) / static_cast<double>(s.size());
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(k, 1))));
    if (threads == 1) {
      for (CommunityId c = 0; c < k; ++c) work(c);
    } else {
      std::atomic<CommunityId> next{0};
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
          for (CommunityId c = next++; c < k; c = next++) work(c);
        });
      }
    }

    ScoreReport report;
    report.communities.reserve(k);
    double total = 0.0;
    for (CommunityId c = 0; c < k; ++c) {
      const std::size_t size = p.community(c).size();
      total += static_cast<double>(size) * values[c];
      report.communities.push_back({c, p.label(c), size, values[c], std::nullopt});
    }
    const std::size_t n = graph_->vertex_count();
    report.wcc = n == 0 ? 0.0 : total / static_cast<double>(n);
    return report;
  }

 private:
  template <typename InSet>
  double community_sum(std::span<const VertexId> members, const InSet& in) const {
    double sum = 0.0;
    for (VertexId x : members) sum += vertex_if(x, in, members.size());
    return sum;
  }

  const Graph* graph_;
  TriangleIndex index_;
};

/// WCC(x, S). Throws DomainError when x is not in S.
inline double wcc_vertex(const Graph& g, VertexId x, const VertexSet& s) {
  return WccEvaluator(g).vertex(x, s);
}

/// WCC(S): mean of WCC(x, S) over the members of S.
inline double wcc_community(const Graph& g, const VertexSet& s) {
  return WccEvaluator(g).community(s);
}

/// WCC of a partition: size-weighted mean of its community values.
inline ScoreReport wcc_partition(const Graph& g, const Partition& p, unsigned threads = 1) {
  return WccEvaluator(g).partition(p, threads);
}

}  // namespace wcc
