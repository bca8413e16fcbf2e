#pragma once

// Text, CSV and GraphML renderings of a mining run.

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ontominer/miner.hpp"

namespace ontominer {

inline std::string pattern_line(const Miner& m, int node) {
  const auto& n = m.trie().nodes[static_cast<std::size_t>(node)];
  return n.support.to_decimal(6) + "\tQ(key) :- " + m.pattern_text(node);
}

inline std::string patterns_text(const Miner& m) {
  std::string out;
  for (int id : m.patterns_in_output_order()) out += pattern_line(m, id) + "\n";
  return out;
}

inline std::string stats_csv(const RunStats& s) {
  std::string out = "depth,gen,sat,sfree,cand,freq\n";
  for (std::size_t d = 0; d < s.depths.size(); ++d) {
    const auto& c = s.depths[d];
    out += std::to_string(d + 1) + "," + std::to_string(c.gen) + "," + std::to_string(c.sat) + "," +
           std::to_string(c.sfree) + "," + std::to_string(c.cand) + "," + std::to_string(c.freq) + "\n";
  }
  return out;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string trie_graphml(const Miner& m) {
  const auto& sig = m.program().signature;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
      << "    xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
      << "    xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
         "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
      << "  <key id=\"atom\" for=\"node\" attr.name=\"atom\" attr.type=\"string\"/>\n"
      << "  <key id=\"support\" for=\"node\" attr.name=\"support\" attr.type=\"double\"/>\n"
      << "  <key id=\"depth\" for=\"node\" attr.name=\"depth\" attr.type=\"int\"/>\n"
      << "  <graph id=\"trie\" edgedefault=\"directed\">\n";
  const auto& nodes = m.trie().nodes;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    out << "    <node id=\"n" << i << "\">\n"
        << "      <data key=\"atom\">" << xml_escape(to_string(n.atom, sig)) << "</data>\n"
        << "      <data key=\"support\">" << n.support.to_decimal(6) << "</data>\n"
        << "      <data key=\"depth\">" << n.depth << "</data>\n"
        << "    </node>\n";
  }
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (int c : nodes[i].children)
      out << "    <edge id=\"e" << c << "\" source=\"n" << i << "\" target=\"n" << c << "\"/>\n";
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

inline std::string ratio_text(std::size_t num, std::size_t den) {
  if (num == 0 && den == 0) return "1.0000";
  if (den == 0) return "inf";
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)).to_decimal(4);
}

struct ModeRun {
  Mode mode;
  RunStats stats;
};

// Per-depth cand/freq for each mode, then NOSEM/SEM reduction ratios.
inline std::string compare_csv(const std::vector<ModeRun>& runs) {
  const RunStats* sem = nullptr;
  const RunStats* nosem = nullptr;
  std::string out = "depth";
  for (const auto& r : runs) {
    std::string tag = to_string(r.mode);
    for (auto& ch : tag)
      if (ch == '-') ch = '_';
    out += ",cand_" + tag + ",freq_" + tag;
    if (r.mode == Mode::Sem) sem = &r.stats;
    if (r.mode == Mode::NoSem) nosem = &r.stats;
  }
  if (sem && nosem) out += ",reduction_cand,reduction_freq";
  out += "\n";
  std::size_t depths = runs.empty() ? 0 : runs.front().stats.depths.size();
  for (std::size_t d = 0; d < depths; ++d) {
    out += std::to_string(d + 1);
    for (const auto& r : runs)
      out += "," + std::to_string(r.stats.depths[d].cand) + "," + std::to_string(r.stats.depths[d].freq);
    if (sem && nosem)
      out += "," + ratio_text(nosem->depths[d].cand, sem->depths[d].cand) + "," +
             ratio_text(nosem->depths[d].freq, sem->depths[d].freq);
    out += "\n";
  }
  return out;
}

}  // namespace ontominer
