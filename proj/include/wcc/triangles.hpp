#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wcc/error.hpp"
#include "wcc/graph.hpp"

namespace wcc {

namespace detail {

inline void check_vertex(const Graph& g, VertexId x) {
  if (!g.contains(x))
    throw DomainError("vertex id " + std::to_string(x) + " out of range (n=" +
                      std::to_string(g.vertex_count()) + ")");
}

/// |a ∩ b| for ascending ranges, two-pointer merge.
inline std::size_t intersection_size(std::span<const VertexId> a, std::span<const VertexId> b) {
  std::size_t i = 0, j = 0, n = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

/// |a ∩ b ∩ {z : in(z)}| for ascending ranges.
template <typename InSet>
std::size_t intersection_size_if(std::span<const VertexId> a, std::span<const VertexId> b,
                                 const InSet& in) {
  std::size_t i = 0, j = 0, n = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      if (in(a[i])) ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

/// t(x, A) for an arbitrary membership predicate: triangles through x whose
/// two other corners both satisfy `in`.
template <typename InSet>
std::uint64_t triangles_with_if(const Graph& g, VertexId x, const InSet& in) {
  auto nx = g.neighbors(x);
  std::uint64_t twice = 0;
  for (VertexId y : nx) {
    if (!in(y)) continue;
    twice += intersection_size_if(nx, g.neighbors(y), in);
  }
  return twice / 2;
}

}  // namespace detail

/// Number of triangles x closes with pairs of vertices taken from `a`.
inline std::uint64_t triangles_with(const Graph& g, VertexId x, const VertexSet& a) {
  detail::check_vertex(g, x);
  return detail::triangles_with_if(g, x, [&](VertexId v) { return a.contains(v); });
}

/// Number of vertices y in `a` sharing at least one triangle with x. The
/// third corner of that triangle may lie anywhere in the graph.
inline std::uint64_t triangle_partners(const Graph& g, VertexId x, const VertexSet& a) {
  detail::check_vertex(g, x);
  auto nx = g.neighbors(x);
  std::uint64_t n = 0;
  for (VertexId y : nx) {
    if (a.contains(y) && detail::intersection_size(nx, g.neighbors(y)) > 0) ++n;
  }
  return n;
}

/// Partition-independent triangle data, computed once per graph.
///
/// `support(arc)` is the number of triangles through the edge stored at that
/// CSR position; totals per vertex are t(x, V) and vt(x, V).
class TriangleIndex {
 public:
  TriangleIndex() = default;

  explicit TriangleIndex(const Graph& g)
      : support_(g.arc_count(), 0), total_(g.vertex_count(), 0), partners_(g.vertex_count(), 0) {
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
      auto nu = g.neighbors(u);
      const std::size_t base = g.arc_offset(u);
      std::uint64_t twice = 0;
      std::uint32_t partners = 0;
      for (std::size_t k = 0; k < nu.size(); ++k) {
        const auto common = static_cast<std::uint32_t>(detail::intersection_size(nu, g.neighbors(nu[k])));
        support_[base + k] = common;
        twice += common;
        if (common > 0) ++partners;
      }
      total_[u] = twice / 2;
      partners_[u] = partners;
    }
  }

  std::uint32_t support(std::size_t arc) const noexcept { return support_[arc]; }
  /// t(x, V).
  std::uint64_t total_triangles(VertexId x) const noexcept { return total_[x]; }
  /// vt(x, V).
  std::uint32_t total_partners(VertexId x) const noexcept { return partners_[x]; }

  /// Number of distinct triangles in the graph.
  std::uint64_t triangle_count() const noexcept {
    std::uint64_t s = 0;
    for (auto t : total_) s += t;
    return s / 3;
  }

 private:
  std::vector<std::uint32_t> support_;
  std::vector<std::uint64_t> total_;
  std::vector<std::uint32_t> partners_;
};

}  // namespace wcc
