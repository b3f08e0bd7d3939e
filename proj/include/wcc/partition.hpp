#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wcc/error.hpp"
#include "wcc/graph.hpp"

namespace wcc {

using CommunityId = std::uint32_t;

/// A "vertex<TAB>community" file as read from disk, before it is bound to a graph.
struct LabeledPartition {
  struct Entry {
    std::string vertex;
    std::string community;
    std::size_t line = 0;
  };
  std::vector<Entry> entries;

  std::vector<std::string> vertex_labels() const {
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.vertex);
    return out;
  }
};

inline LabeledPartition load_partition(std::istream& in) {
  LabeledPartition p;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_blank_or_comment(line)) continue;
    auto tok = detail::split_ws(line);
    if (tok.size() != 2)
      throw ParseError(lineno, "expected 'vertex<TAB>community', found " + std::to_string(tok.size()) +
                                   " fields");
    p.entries.push_back({std::string(tok[0]), std::string(tok[1]), lineno});
  }
  return p;
}

inline LabeledPartition load_partition(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_partition(in);
}

inline LabeledPartition load_partition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open partition file '" + path + "'");
  return load_partition(in);
}

/// Disjoint cover of the vertex set by non-empty communities 0..k-1.
class Partition {
 public:
  Partition() = default;

  /// `assignment[v]` is the community of vertex v. Ids must be dense: every
  /// id below the maximum has at least one member.
  static Partition from_assignment(std::vector<CommunityId> assignment,
                                   std::vector<std::string> labels = {}) {
    const std::size_t n = assignment.size();
    CommunityId k = 0;
    for (auto c : assignment) k = std::max<CommunityId>(k, c + 1);
    std::vector<std::vector<VertexId>> members(k);
    for (VertexId v = 0; v < n; ++v) members[assignment[v]].push_back(v);

    std::vector<std::string> empty;
    for (CommunityId c = 0; c < k; ++c)
      if (members[c].empty()) empty.push_back(std::to_string(c));
    if (!empty.empty()) throw ValidationError("community ids with no members", std::move(empty));

    if (labels.empty()) {
      for (CommunityId c = 0; c < k; ++c) labels.push_back(std::to_string(c));
    }
    if (labels.size() != k) throw DomainError("community label count does not match community count");

    Partition p;
    p.assignment_ = std::move(assignment);
    p.labels_ = std::move(labels);
    p.communities_.reserve(k);
    for (auto& m : members) p.communities_.emplace_back(n, std::move(m));
    return p;
  }

  /// Builds a partition from explicit communities; they must be disjoint and cover 0..n-1.
  static Partition from_communities(std::size_t n, const std::vector<std::vector<VertexId>>& comms) {
    constexpr CommunityId kUnset = ~CommunityId{0};
    std::vector<CommunityId> assignment(n, kUnset);
    std::vector<std::string> bad;
    for (CommunityId c = 0; c < comms.size(); ++c) {
      if (comms[c].empty()) throw ValidationError("empty community", {std::to_string(c)});
      for (VertexId v : comms[c]) {
        if (v >= n) {
          bad.push_back(std::to_string(v));
        } else if (assignment[v] != kUnset) {
          bad.push_back(std::to_string(v));
        } else {
          assignment[v] = c;
        }
      }
    }
    if (!bad.empty()) throw ValidationError("vertices out of range or in several communities", bad);
    for (VertexId v = 0; v < n; ++v)
      if (assignment[v] == kUnset) bad.push_back(std::to_string(v));
    if (!bad.empty()) throw ValidationError("vertices not covered by any community", bad);
    return from_assignment(std::move(assignment));
  }

  /// Binds a file partition to a graph. Community ids follow first appearance
  /// in the file; the original community labels are kept for reporting.
  static Partition from_labeled(const Graph& g, const LabeledPartition& lp) {
    constexpr CommunityId kUnset = ~CommunityId{0};
    std::vector<CommunityId> assignment(g.vertex_count(), kUnset);
    std::unordered_map<std::string, CommunityId> ids;
    std::vector<std::string> labels;
    std::vector<std::string> unknown, duplicate, missing;

    for (const auto& e : lp.entries) {
      auto v = g.find(e.vertex);
      if (!v) {
        unknown.push_back(e.vertex + " (line " + std::to_string(e.line) + ")");
        continue;
      }
      if (assignment[*v] != kUnset) {
        duplicate.push_back(e.vertex + " (line " + std::to_string(e.line) + ")");
        continue;
      }
      auto [it, inserted] = ids.emplace(e.community, static_cast<CommunityId>(labels.size()));
      if (inserted) labels.push_back(e.community);
      assignment[*v] = it->second;
    }
    if (!unknown.empty()) throw ValidationError("partition references unknown vertices", unknown);
    if (!duplicate.empty()) throw ValidationError("vertices assigned more than once", duplicate);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (assignment[v] == kUnset) missing.push_back(g.label(v));
    if (!missing.empty()) throw ValidationError("partition does not cover vertices", missing);
    return from_assignment(std::move(assignment), std::move(labels));
  }

  std::size_t vertex_count() const noexcept { return assignment_.size(); }
  std::size_t community_count() const noexcept { return communities_.size(); }

  CommunityId community_of(VertexId v) const noexcept { return assignment_[v]; }
  std::span<const CommunityId> assignment() const noexcept { return assignment_; }
  const VertexSet& community(CommunityId c) const noexcept { return communities_[c]; }
  const std::vector<VertexSet>& communities() const noexcept { return communities_; }
  const std::string& label(CommunityId c) const noexcept { return labels_[c]; }

  /// Throws ValidationError unless this partition covers exactly the vertices of `g`.
  void validate_against(const Graph& g) const {
    if (vertex_count() != g.vertex_count())
      throw ValidationError("partition covers " + std::to_string(vertex_count()) +
                                " vertices but graph has " + std::to_string(g.vertex_count()),
                            {});
  }

 private:
  std::vector<CommunityId> assignment_;
  std::vector<VertexSet> communities_;
  std::vector<std::string> labels_;
};

/// Writes "vertex<TAB>community" lines in vertex-id order.
inline void write_partition(std::ostream& out, const Graph& g, const Partition& p) {
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    out << g.label(v) << '\t' << p.label(p.community_of(v)) << '\n';
}

}  // namespace wcc
