#include "gsp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace gsp::io {

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return in;
}

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Graph parse_edge_list(std::istream& in, Index order) {
  std::vector<Edge> edges;
  Index max_id = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = strip_comment(line);
    if (blank(body)) continue;
    std::istringstream ls(body);
    long long i = 0, j = 0;
    double w = 1.0;
    if (!(ls >> i >> j >> w)) throw ConfigError("edge list line " + std::to_string(line_no) + ": expected 'i j w'");
    std::string extra;
    if (ls >> extra) throw ConfigError("edge list line " + std::to_string(line_no) + ": trailing field '" + extra + "'");
    if (i < 1 || j < 1) throw ConfigError("edge list line " + std::to_string(line_no) + ": vertex ids start at 1");
    edges.push_back({static_cast<Index>(i - 1), static_cast<Index>(j - 1), w});
    max_id = std::max<Index>(max_id, static_cast<Index>(std::max(i, j)));
  }
  if (order == 0) order = max_id;
  if (max_id > order) throw ConfigError("edge list references vertex " + std::to_string(max_id) + " beyond order");
  return Graph(order, edges);
}

Graph read_edge_list(const std::string& path, Index order) {
  auto in = open_input(path);
  return parse_edge_list(in, order);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const Edge& e : g.edges()) out << e.i + 1 << ' ' << e.j + 1 << ' ' << format_number(e.weight) << '\n';
}

Vector parse_signal(std::istream& in, Index order) {
  Vector x = Vector::Constant(order, std::numeric_limits<double>::quiet_NaN());
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = strip_comment(line);
    if (blank(body)) continue;
    if (!header) {
      std::string h = body;
      h.erase(std::remove_if(h.begin(), h.end(), [](unsigned char c) { return std::isspace(c); }), h.end());
      if (h != "vertex,value") throw ConfigError("signal file: header must be 'vertex,value'");
      header = true;
      continue;
    }
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw ConfigError("signal line " + std::to_string(line_no) + ": expected 'vertex,value'");
    long long v = 0;
    double value = 0.0;
    try {
      v = std::stoll(body.substr(0, comma));
      value = std::stod(body.substr(comma + 1));
    } catch (const std::exception&) {
      throw ConfigError("signal line " + std::to_string(line_no) + ": unparsable field");
    }
    if (v < 1 || v > order) throw ConfigError("signal line " + std::to_string(line_no) + ": vertex out of range");
    if (!std::isnan(x(v - 1))) throw ConfigError("signal line " + std::to_string(line_no) + ": duplicate vertex");
    x(v - 1) = value;
  }
  for (Index i = 0; i < order; ++i)
    if (std::isnan(x(i))) throw ConfigError("signal file: missing vertex " + std::to_string(i + 1));
  return x;
}

Vector read_signal(const std::string& path, Index order) {
  auto in = open_input(path);
  return parse_signal(in, order);
}

void write_signal(std::ostream& out, const Vector& x) {
  out << "vertex,value\n";
  for (Index i = 0; i < x.size(); ++i) out << i + 1 << ',' << format_number(x(i)) << '\n';
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw DimensionError("table row width does not match the header");
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& out, const std::vector<std::string>& comments, const Table& table) {
  for (const auto& c : comments) out << "# " << c << '\n';
  for (size_t k = 0; k < table.columns.size(); ++k) out << (k ? "," : "") << table.columns[k];
  out << '\n';
  for (const auto& row : table.rows) {
    for (size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << row[k];
    out << '\n';
  }
}

void write_svg(std::ostream& out, const std::string& title, const std::string& x_label, const std::string& y_label,
               const std::vector<Series>& series, bool log_y) {
  constexpr double kW = 640, kH = 420, kL = 70, kR = 20, kT = 40, kB = 50;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  auto ty = [&](double y) { return log_y ? std::log10(y) : y; };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (size_t k = 0; k < s.x.size(); ++k) {
      if (log_y && !(s.y[k] > 0.0)) continue;
      x0 = std::min(x0, s.x[k]);
      x1 = std::max(x1, s.x[k]);
      y0 = std::min(y0, ty(s.y[k]));
      y1 = std::max(y1, ty(s.y[k]));
    }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  auto px = [&](double x) { return kL + (x - x0) / (x1 - x0) * (kW - kL - kR); };
  auto py = [&](double y) { return kH - kB - (ty(y) - y0) / (y1 - y0) * (kH - kT - kB); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
  out << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR << "\" y2=\"" << kH - kB
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL << "\" y2=\"" << kH - kB << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << kH / 2 << "\" transform=\"rotate(-90 16 " << kH / 2
      << ")\" text-anchor=\"middle\" font-size=\"12\">" << (log_y ? "log10 " : "") << y_label << "</text>\n";
  out << "<text x=\"" << kL - 6 << "\" y=\"" << kH - kB << "\" text-anchor=\"end\" font-size=\"10\">"
      << format_number(y0) << "</text>\n";
  out << "<text x=\"" << kL - 6 << "\" y=\"" << kT + 4 << "\" text-anchor=\"end\" font-size=\"10\">"
      << format_number(y1) << "</text>\n";
  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % 6];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t k = 0; k < series[s].x.size(); ++k) {
      if (log_y && !(series[s].y[k] > 0.0)) continue;
      out << px(series[s].x[k]) << ',' << py(series[s].y[k]) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << kW - kR - 4 << "\" y=\"" << kT + 14 * (s + 1) << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
        << color << "\">" << series[s].label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace gsp::io
