#pragma once

#include <string>

#include "solonet/network.hpp"
#include "solonet/xml.hpp"

namespace solonet {

enum class GraphFormat { dot, graphml };

// Node ids are "n<index>" in sorted NodeKey order, so output is byte-stable.
inline std::string export_dot(const SoloNetwork& net) {
  std::string out = "digraph solo {\n";
  for (std::size_t i = 0; i < net.node_count(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + label(net.nodes()[i]) + "\"];\n";
  for (const auto& [st, w] : net.edges())
    out += "  n" + std::to_string(st.first) + " -> n" + std::to_string(st.second) + " [weight=" + std::to_string(w) +
           ", label=\"" + std::to_string(w) + "\"];\n";
  out += "}\n";
  return out;
}

inline std::string export_graphml(const SoloNetwork& net) {
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n"
      "  <graph id=\"solo\" edgedefault=\"directed\">\n";
  for (std::size_t i = 0; i < net.node_count(); ++i)
    out += "    <node id=\"n" + std::to_string(i) + "\"><data key=\"label\">" + xml::escape(label(net.nodes()[i])) +
           "</data></node>\n";
  for (const auto& [st, w] : net.edges())
    out += "    <edge source=\"n" + std::to_string(st.first) + "\" target=\"n" + std::to_string(st.second) +
           "\"><data key=\"weight\">" + std::to_string(w) + "</data></edge>\n";
  out += "  </graph>\n</graphml>\n";
  return out;
}

inline std::string export_graph(const SoloNetwork& net, GraphFormat format) {
  return format == GraphFormat::dot ? export_dot(net) : export_graphml(net);
}

}  // namespace solonet
