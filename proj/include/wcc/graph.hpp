#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wcc/error.hpp"

namespace wcc {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

/// Immutable undirected simple graph in CSR form.
///
/// Adjacency lists are strictly ascending, symmetric and loop-free. Every
/// vertex carries an external label; internal ids are dense 0..n-1.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Builds a graph on `n` vertices. Self-loops are dropped and duplicate
  /// edges (in either orientation) collapse. Labels default to "0".."n-1".
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::vector<std::string> labels = {}) {
    if (labels.empty()) {
      labels.reserve(n);
      for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    }
    if (labels.size() != n) throw DomainError("label count does not match vertex count");

    std::vector<Edge> clean;
    clean.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw DomainError("edge endpoint out of range");
      if (u == v) continue;
      clean.emplace_back(u, v);
      clean.emplace_back(v, u);
    }
    std::sort(clean.begin(), clean.end());
    clean.erase(std::unique(clean.begin(), clean.end()), clean.end());

    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (auto [u, v] : clean) ++g.offsets_[u + 1];
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.neighbors_.reserve(clean.size());
    for (auto [u, v] : clean) g.neighbors_.push_back(v);
    g.labels_ = std::move(labels);
    g.index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!g.index_.emplace(g.labels_[i], static_cast<VertexId>(i)).second)
        throw DomainError("duplicate vertex label '" + g.labels_[i] + "'");
    }
    return g;
  }

  std::size_t vertex_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  /// Position of v's adjacency list inside the flat neighbor array. Lets
  /// callers keep per-arc data aligned with the CSR layout.
  std::size_t arc_offset(VertexId v) const noexcept { return offsets_[v]; }
  std::size_t arc_count() const noexcept { return neighbors_.size(); }

  bool has_edge(VertexId u, VertexId v) const noexcept {
    auto adj = neighbors(u);
    return std::binary_search(adj.begin(), adj.end(), v);
  }

  bool contains(VertexId v) const noexcept { return v < vertex_count(); }

  const std::string& label(VertexId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::optional<VertexId> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Every edge once, as (u, v) with u < v, in ascending order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (VertexId u = 0; u < vertex_count(); ++u)
      for (VertexId v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  /// Copy of this graph extended with isolated vertices for the given labels
  /// (labels already present are ignored).
  Graph with_isolated(std::span<const std::string> extra) const {
    std::vector<std::string> labels = labels_;
    std::unordered_map<std::string, VertexId> seen = index_;
    for (const auto& l : extra) {
      if (seen.emplace(l, static_cast<VertexId>(labels.size())).second) labels.push_back(l);
    }
    auto e = edges();
    const std::size_t n = labels.size();
    return from_edges(n, e, std::move(labels));
  }

  /// Identical internal layout: same ids, labels and adjacency.
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_ && a.labels_ == b.labels_;
  }

  /// Same labeled graph, regardless of how labels map to internal ids.
  bool same_labeled_graph(const Graph& other) const {
    if (vertex_count() != other.vertex_count() || edge_count() != other.edge_count()) return false;
    for (VertexId v = 0; v < vertex_count(); ++v) {
      auto w = other.find(labels_[v]);
      if (!w || other.degree(*w) != degree(v)) return false;
      for (VertexId u : neighbors(v)) {
        auto ou = other.find(labels_[u]);
        if (!ou || !other.has_edge(*w, *ou)) return false;
      }
    }
    return true;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> neighbors_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> index_;
};

/// Sorted set of vertex ids with constant-time membership.
class VertexSet {
 public:
  VertexSet() = default;

  /// `universe` is the vertex count of the owning graph. Members may arrive
  /// in any order; duplicates or ids >= universe are rejected.
  VertexSet(std::size_t universe, std::vector<VertexId> members)
      : members_(std::move(members)), mask_(universe, false) {
    std::sort(members_.begin(), members_.end());
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (members_[i] >= universe) throw DomainError("vertex id out of range in vertex set");
      if (i > 0 && members_[i] == members_[i - 1]) throw DomainError("duplicate vertex in vertex set");
      mask_[members_[i]] = true;
    }
  }

  static VertexSet all(std::size_t universe) {
    std::vector<VertexId> m(universe);
    for (std::size_t i = 0; i < universe; ++i) m[i] = static_cast<VertexId>(i);
    return VertexSet(universe, std::move(m));
  }

  VertexSet complement() const {
    std::vector<VertexId> m;
    m.reserve(universe() - size());
    for (std::size_t i = 0; i < universe(); ++i)
      if (!mask_[i]) m.push_back(static_cast<VertexId>(i));
    return VertexSet(universe(), std::move(m));
  }

  bool contains(VertexId v) const noexcept { return v < mask_.size() && mask_[v]; }
  std::span<const VertexId> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t universe() const noexcept { return mask_.size(); }

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.members_ == b.members_ && a.mask_.size() == b.mask_.size();
  }

 private:
  std::vector<VertexId> members_;
  std::vector<bool> mask_;
};

namespace detail {

/// Splits on ASCII whitespace.
inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

inline bool is_blank_or_comment(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace detail

/// Reads a whitespace-separated edge list ('#' starts a comment line).
/// Labels are mapped to dense ids in first-seen order.
inline Graph load_edge_list(std::istream& in) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, VertexId> ids;
  std::vector<Edge> edges;
  auto intern = [&](std::string_view tok) {
    auto [it, inserted] = ids.emplace(std::string(tok), static_cast<VertexId>(labels.size()));
    if (inserted) labels.emplace_back(tok);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_blank_or_comment(line)) continue;
    auto tok = detail::split_ws(line);
    if (tok.size() != 2)
      throw ParseError(lineno, "expected 2 vertex labels, found " + std::to_string(tok.size()));
    VertexId u = intern(tok[0]);
    VertexId v = intern(tok[1]);
    edges.emplace_back(u, v);
  }
  const std::size_t n = labels.size();
  return Graph::from_edges(n, edges, std::move(labels));
}

inline Graph load_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_edge_list(in);
}

inline Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open graph file '" + path + "'");
  return load_edge_list(in);
}

/// Writes one "u v" line per edge using the original labels.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

}  // namespace wcc
