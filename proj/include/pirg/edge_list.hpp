#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pirg/multigraph.hpp"

namespace pirg {

// Text edge list:
//   # n=<n> t=<t> seed=<seed>
//   i j m
//   ...
// 1-based vertices with i <= j, one line per pair, multiplicity m >= 1, in
// increasing (i, j) order. t is written in shortest round-trip form, so
// write -> read reproduces every field exactly.
struct EdgeListDocument {
  MultiGraph graph;
  double t = 0.0;
  std::uint64_t seed = 0;
};

void write_edge_list(std::ostream& out, const MultiGraph& g, double t, std::uint64_t seed);

// Throws ParseError ("line <k>") on malformed input.
EdgeListDocument read_edge_list(std::istream& in);

// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);
// Strict full-string parse; throws ArgumentError on failure.
double parse_double(const std::string& text);

}  // namespace pirg
