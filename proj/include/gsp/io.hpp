#pragma once

// File formats. Vertex ids are 1-based on disk and 0-based in memory; the
// conversion happens here and nowhere else.

#include "gsp/graph.hpp"
#include "gsp/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace gsp::io {

/// `i j w` per line, whitespace separated, `#` starts a comment. The order
/// is the largest id seen unless `order` is given.
Graph parse_edge_list(std::istream& in, Index order = 0);
Graph read_edge_list(const std::string& path, Index order = 0);
void write_edge_list(std::ostream& out, const Graph& g);

/// CSV with header `vertex,value`; every vertex 1..n exactly once.
Vector parse_signal(std::istream& in, Index order);
Vector read_signal(const std::string& path, Index order);
void write_signal(std::ostream& out, const Vector& x);

/// Shortest round-trip decimal form of a double.
std::string format_number(double v);

/// A table of string cells; numbers go through format_number.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
};

/// Writes `comments` as `# ` lines, then the header and rows.
void write_csv(std::ostream& out, const std::vector<std::string>& comments, const Table& table);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal SVG line plot, one polyline per series. With `log_y` the y axis
/// shows log10 of positive values.
void write_svg(std::ostream& out, const std::string& title, const std::string& x_label, const std::string& y_label,
               const std::vector<Series>& series, bool log_y = false);

}  // namespace gsp::io
