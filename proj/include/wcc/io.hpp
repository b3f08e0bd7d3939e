#pragma once

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "wcc/compare.hpp"
#include "wcc/quality.hpp"
#include "wcc/wcc.hpp"

namespace wcc::io {

/// Shortest round-trip decimal form ("inf"/"nan" for non-finite values).
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline nlohmann::ordered_json to_json(const ScoreReport& r) {
  nlohmann::ordered_json j;
  j["wcc"] = r.wcc;
  if (r.modularity) j["modularity"] = *r.modularity;
  auto& comms = j["communities"] = nlohmann::ordered_json::array();
  for (const auto& c : r.communities) {
    nlohmann::ordered_json e{{"id", c.label}, {"size", c.size}, {"wcc", c.wcc}};
    if (c.conductance) e["conductance"] = *c.conductance;
    comms.push_back(std::move(e));
  }
  return j;
}

inline nlohmann::ordered_json to_json(const KendallResult& k) {
  return {{"tau", k.tau}, {"significant", k.significant}, {"p_value", k.p_value},
          {"method", k.exact ? "exact" : "asymptotic"}};
}

inline nlohmann::ordered_json to_json(const StatRecord& r) {
  return {{"id", r.label},
          {"size", r.size},
          {"wcc", r.wcc},
          {"triangle_density", r.triangle_density},
          {"avg_inverse_edge_cut", r.avg_inverse_edge_cut},
          {"avg_edge_density", r.avg_edge_density},
          {"normalized_diameter", r.normalized_diameter},
          {"bridge_ratio", r.bridge_ratio},
          {"conductance", r.conductance},
          {"disconnected", r.disconnected},
          {"conductance_degenerate", r.conductance_degenerate}};
}

inline nlohmann::ordered_json to_json(const PercentileRow& r) {
  return {{"group", r.group},
          {"count", r.count},
          {"size", r.size},
          {"wcc", r.wcc},
          {"triangle_density", r.triangle_density},
          {"avg_inverse_edge_cut", r.avg_inverse_edge_cut},
          {"avg_edge_density", r.avg_edge_density},
          {"normalized_diameter", r.normalized_diameter},
          {"bridge_ratio", r.bridge_ratio},
          {"conductance", r.conductance}};
}

inline void write_score_csv(std::ostream& out, const ScoreReport& r) {
  out << "id,size,wcc,conductance\n";
  for (const auto& c : r.communities)
    out << c.label << ',' << c.size << ',' << format_double(c.wcc) << ','
        << (c.conductance ? format_double(*c.conductance) : "") << '\n';
}

inline void write_stats_csv(std::ostream& out, const std::vector<StatRecord>& records) {
  out << "id,size,wcc,triangle_density,avg_inverse_edge_cut,avg_edge_density,normalized_diameter,"
         "bridge_ratio,conductance,disconnected,conductance_degenerate\n";
  for (const auto& r : records) {
    out << r.label << ',' << r.size << ',' << format_double(r.wcc) << ',' << format_double(r.triangle_density)
        << ',' << format_double(r.avg_inverse_edge_cut) << ',' << format_double(r.avg_edge_density) << ','
        << format_double(r.normalized_diameter) << ',' << format_double(r.bridge_ratio) << ','
        << format_double(r.conductance) << ',' << (r.disconnected ? 1 : 0) << ','
        << (r.conductance_degenerate ? 1 : 0) << '\n';
  }
}

inline void write_percentile_csv(std::ostream& out, const PercentileReport& report) {
  out << "group,count,size,wcc,triangle_density,avg_inverse_edge_cut,avg_edge_density,"
         "normalized_diameter,bridge_ratio,conductance\n";
  for (const auto& r : report) {
    out << r.group << ',' << r.count << ',' << format_double(r.size) << ',' << format_double(r.wcc) << ','
        << format_double(r.triangle_density) << ',' << format_double(r.avg_inverse_edge_cut) << ','
        << format_double(r.avg_edge_density) << ',' << format_double(r.normalized_diameter) << ','
        << format_double(r.bridge_ratio) << ',' << format_double(r.conductance) << '\n';
  }
}

}  // namespace wcc::io
