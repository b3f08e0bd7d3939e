#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wcc/error.hpp"
#include "wcc/partition.hpp"

namespace wcc {

// ---------------------------------------------------------------------------
// Normalized mutual information

/// Overlap counts n_ij = |A_i ∩ B_j| between two partitions of the same vertices.
struct ContingencyTable {
  struct Cell {
    CommunityId a;
    CommunityId b;
    std::uint64_t count;
  };
  std::vector<Cell> cells;             ///< non-zero cells, sorted by (a, b)
  std::vector<std::uint64_t> row;      ///< n_i
  std::vector<std::uint64_t> column;   ///< n_j
  std::uint64_t total = 0;             ///< n

  ContingencyTable(const Partition& a, const Partition& b)
      : row(a.community_count(), 0), column(b.community_count(), 0), total(a.vertex_count()) {
    if (a.vertex_count() != b.vertex_count())
      throw DomainError("partitions cover different vertex sets");
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    for (VertexId v = 0; v < a.vertex_count(); ++v) {
      const CommunityId ca = a.community_of(v), cb = b.community_of(v);
      ++counts[(std::uint64_t{ca} << 32) | cb];
      ++row[ca];
      ++column[cb];
    }
    cells.reserve(counts.size());
    for (auto [key, n] : counts)
      cells.push_back({static_cast<CommunityId>(key >> 32), static_cast<CommunityId>(key & 0xffffffffu), n});
    std::sort(cells.begin(), cells.end(),
              [](const Cell& x, const Cell& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });
  }
};

namespace detail {

/// Sum of terms in ascending order, so equal multisets give bit-equal sums.
inline double canonical_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

/// Sum over counts of c * ln(n / c).
inline double entropy_sum(const std::vector<std::uint64_t>& counts, std::uint64_t n) {
  std::vector<double> terms;
  for (auto c : counts)
    if (c != 0) terms.push_back(static_cast<double>(c) * std::log(static_cast<double>(n) / static_cast<double>(c)));
  return canonical_sum(std::move(terms));
}

}  // namespace detail

/// NMI = 2 I(A;B) / (H(A) + H(B)), natural log. Two trivial partitions
/// (both entropies zero) score 1. Identical partitions score exactly 1: the
/// ratio n_ij n / (n_i n_j) is formed from exact integer products, so each
/// mutual-information term then rounds the same way as its entropy term.
inline double nmi(const Partition& a, const Partition& b) {
  const ContingencyTable t(a, b);
  if (t.total == 0) return 1.0;
  std::vector<double> terms;
  terms.reserve(t.cells.size());
  for (const auto& c : t.cells) {
    const auto num = static_cast<double>(c.count * t.total);
    const auto den = static_cast<double>(t.row[c.a] * t.column[c.b]);
    terms.push_back(static_cast<double>(c.count) * std::log(num / den));
  }
  const double numer = 2.0 * detail::canonical_sum(std::move(terms));
  const double denom = detail::entropy_sum(t.row, t.total) + detail::entropy_sum(t.column, t.total);
  if (denom == 0.0) return 1.0;
  const double v = std::clamp(numer / denom, 0.0, 1.0);
  return v == 0.0 ? 0.0 : v;
}

/// NMI between two file partitions; both must list exactly the same vertex labels.
inline double nmi(const LabeledPartition& a, const LabeledPartition& b) {
  std::vector<std::string> labels = a.vertex_labels();
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw DomainError("first partition lists a vertex more than once");
  std::vector<std::string> other = b.vertex_labels();
  std::sort(other.begin(), other.end());
  if (labels != other) throw DomainError("partitions cover different vertex sets");

  std::vector<Edge> none;
  const Graph universe = Graph::from_edges(labels.size(), none, labels);
  return nmi(Partition::from_labeled(universe, a), Partition::from_labeled(universe, b));
}

// ---------------------------------------------------------------------------
// Kendall rank correlation

/// Scored items; a higher score ranks first.
struct RankSeries {
  std::vector<std::pair<std::string, double>> items;
};

/// Reads "label,score" lines. A first line whose score is not numeric is
/// treated as a header.
inline RankSeries load_rank_series(std::istream& in) {
  RankSeries s;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::is_blank_or_comment(line)) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw ParseError(lineno, "expected 'label,score'");
    std::string label = line.substr(0, comma);
    std::string_view field = std::string_view(line).substr(comma + 1);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    double score = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), score);
    const bool header = std::exchange(first, false);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      if (header) continue;
      throw ParseError(lineno, "score '" + std::string(field) + "' is not a number");
    }
    if (!seen.emplace(label, lineno).second) throw ParseError(lineno, "duplicate label '" + label + "'");
    s.items.emplace_back(std::move(label), score);
  }
  return s;
}

inline RankSeries load_rank_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open rank file '" + path + "'");
  return load_rank_series(in);
}

struct KendallResult {
  double tau = 0.0;
  double p_value = 1.0;
  bool significant = false;
  bool exact = false;  ///< p-value from full permutation enumeration
};

namespace detail {

inline int sign(double d) { return (d > 0) - (d < 0); }

/// Concordance sum S = Σ_{i<j} sgn(x_i - x_j) sgn(y_i - y_j) and tie counts.
struct PairCounts {
  std::int64_t s = 0;
  std::uint64_t tied_x = 0;
  std::uint64_t tied_y = 0;
};

inline PairCounts pair_counts(std::span<const double> x, std::span<const double> y) {
  PairCounts pc;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const int dx = sign(x[i] - x[j]), dy = sign(y[i] - y[j]);
      pc.s += dx * dy;
      if (dx == 0) ++pc.tied_x;
      if (dy == 0) ++pc.tied_y;
    }
  }
  return pc;
}

/// Tie group sizes of a sample.
inline std::vector<std::uint64_t> tie_groups(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::vector<std::uint64_t> groups;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if (j - i > 1) groups.push_back(j - i);
    i = j;
  }
  return groups;
}

}  // namespace detail

/// Kendall tau-b of two score vectors aligned by position, with a two-sided
/// test of tau = 0. Up to `exact_limit` items the p-value enumerates every
/// permutation of `y`; beyond that it uses the tie-corrected normal
/// approximation of S.
inline KendallResult kendall(std::span<const double> x, std::span<const double> y, double alpha = 0.05,
                             std::size_t exact_limit = 10) {
  if (x.size() != y.size()) throw DomainError("rank series have different lengths");
  const std::size_t n = x.size();
  if (n < 2) throw DomainError("Kendall tau needs at least two items");

  const auto pc = detail::pair_counts(x, y);
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double denom = std::sqrt((pairs - static_cast<double>(pc.tied_x)) * (pairs - static_cast<double>(pc.tied_y)));
  if (denom == 0.0) throw DomainError("Kendall tau is undefined for a constant ranking");

  KendallResult r;
  r.tau = static_cast<double>(pc.s) / denom;

  if (n <= exact_limit) {
    // tied_y is invariant under permutation, so only S changes.
    std::vector<int> sx(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sx[i * n + j] = detail::sign(x[i] - x[j]);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    const std::int64_t observed = pc.s < 0 ? -pc.s : pc.s;
    std::uint64_t extreme = 0, total = 0;
    do {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double yi = y[perm[i]];
        for (std::size_t j = i + 1; j < n; ++j) s += sx[i * n + j] * detail::sign(yi - y[perm[j]]);
      }
      if ((s < 0 ? -s : s) >= observed) ++extreme;
      ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    r.p_value = static_cast<double>(extreme) / static_cast<double>(total);
    r.exact = true;
  } else {
    const double nn = static_cast<double>(n);
    double v0 = nn * (nn - 1) * (2 * nn + 5);
    double vt = 0, vu = 0, t1 = 0, u1 = 0, t2 = 0, u2 = 0;
    for (auto t : detail::tie_groups(std::vector<double>(x.begin(), x.end()))) {
      const double d = static_cast<double>(t);
      vt += d * (d - 1) * (2 * d + 5);
      t1 += d * (d - 1);
      t2 += d * (d - 1) * (d - 2);
    }
    for (auto u : detail::tie_groups(std::vector<double>(y.begin(), y.end()))) {
      const double d = static_cast<double>(u);
      vu += d * (d - 1) * (2 * d + 5);
      u1 += d * (d - 1);
      u2 += d * (d - 1) * (d - 2);
    }
    const double var = (v0 - vt - vu) / 18.0 + t1 * u1 / (2 * nn * (nn - 1)) +
                       t2 * u2 / (9 * nn * (nn - 1) * (nn - 2));
    const double z = static_cast<double>(pc.s) / std::sqrt(var);
    r.p_value = std::erfc(std::abs(z) / std::sqrt(2.0));
  }
  r.significant = r.p_value < alpha;
  return r;
}

/// Kendall tau-b between two labeled series; the label sets must match.
inline KendallResult kendall(const RankSeries& a, const RankSeries& b, double alpha = 0.05) {
  if (a.items.size() != b.items.size()) throw DomainError("rank series have different label sets");
  std::unordered_map<std::string, double> other;
  for (const auto& [label, score] : b.items) other.emplace(label, score);
  std::vector<double> x, y;
  for (const auto& [label, score] : a.items) {
    auto it = other.find(label);
    if (it == other.end()) throw DomainError("label '" + label + "' missing from second rank series");
    x.push_back(score);
    y.push_back(it->second);
  }
  return kendall(x, y, alpha);
}

}  // namespace wcc
