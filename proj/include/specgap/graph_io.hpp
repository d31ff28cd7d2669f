#pragma once

#include <iosfwd>
#include <string>

#include "specgap/graph.hpp"

namespace specgap {

// Edge-list text format: first non-blank line "n", then one "u v" pair per line,
// 0-indexed. Blank lines and trailing whitespace tolerated; anything else is a
// ParseError carrying the 1-based line number.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);
std::string emit_edge_list(const Graph& g);

// Standard graph6: '>>graph6<<' header optional on input, never emitted. Covers
// n <= 64 (the 3-byte extended size form kicks in at n >= 63). Round-trips bit-exactly.
Graph parse_graph6(const std::string& line);
std::string emit_graph6(const Graph& g);

}  // namespace specgap
