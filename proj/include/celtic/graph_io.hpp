#pragma once

#include <string>

#include "json.hpp"

#include "celtic/layout.hpp"

namespace celtic {

/// A graph file: rotation system plus whatever geometry it carried.
struct GraphDocument {
  PlaneMultigraph graph;
  Layout layout;               // hints always sized; positions empty unless given
  bool has_positions = false;
  nlohmann::json source;       // the parsed input, kept for write-back
};

/// Parses the graph JSON format. Ends are either [vertex, slot] pairs or bare
/// vertex ids; bare ids need positions for every vertex so the rotation can
/// be read off the coordinates. Throws PARSE (and AMBIGUOUS_ROTATION).
GraphDocument parse_graph(const nlohmann::json& doc);
GraphDocument load_graph(const std::string& path);

/// Serializes a graph (slots made explicit) with optional positions.
nlohmann::json graph_to_json(const PlaneMultigraph& g, const Layout* layout = nullptr);

/// The source document with "pos" replaced for every vertex.
nlohmann::json with_positions(const GraphDocument& doc, const Layout& layout);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace celtic
