#include "pirg/edge_list.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "pirg/errors.hpp"

namespace pirg {
namespace {

template <class T>
bool parse_integer(const std::string& text, T& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::string field_value(const std::string& token, const std::string& key,
                        const std::string& where) {
  const std::string prefix = key + "=";
  if (token.rfind(prefix, 0) != 0) {
    throw ParseError(where, "expected '" + prefix + "...', got '" + token + "'");
  }
  return token.substr(prefix.size());
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

double parse_double(const std::string& text) {
  double out = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) {
    throw ArgumentError("'" + text + "' is not a number");
  }
  return out;
}

void write_edge_list(std::ostream& out, const MultiGraph& g, double t, std::uint64_t seed) {
  out << "# n=" << g.n() << " t=" << format_double(t) << " seed=" << seed << '\n';
  for (const auto& e : g.edges()) out << e.i << ' ' << e.j << ' ' << e.multiplicity << '\n';
}

EdgeListDocument read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("line 1", "missing header");
  std::istringstream header(line);
  std::string hash, tn, tt, ts, extra;
  header >> hash >> tn >> tt >> ts;
  if (hash != "#" || ts.empty() || (header >> extra)) {
    throw ParseError("line 1", "expected '# n=<n> t=<t> seed=<seed>'");
  }
  std::size_t n = 0;
  EdgeListDocument doc;
  if (!parse_integer(field_value(tn, "n", "line 1"), n)) {
    throw ParseError("line 1", "n is not a nonnegative integer");
  }
  try {
    doc.t = parse_double(field_value(tt, "t", "line 1"));
  } catch (const ArgumentError& e) {
    throw ParseError("line 1", e.what());
  }
  if (!parse_integer(field_value(ts, "seed", "line 1"), doc.seed)) {
    throw ParseError("line 1", "seed is not an unsigned 64-bit integer");
  }

  std::vector<Edge> edges;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    std::istringstream row(line);
    std::string a, b, c, more;
    row >> a >> b >> c;
    Edge e;
    if (c.empty() || (row >> more) || !parse_integer(a, e.i) || !parse_integer(b, e.j) ||
        !parse_integer(c, e.multiplicity)) {
      throw ParseError(where, "expected 'i j m', got '" + line + "'");
    }
    if (e.i > e.j) throw ParseError(where, "pairs must be written with i <= j");
    if (e.i < 1 || e.j > n) {
      throw ParseError(where, "vertex outside [1, " + std::to_string(n) + "]");
    }
    if (e.multiplicity == 0) throw ParseError(where, "multiplicity must be at least 1");
    if (!edges.empty()) {
      const Edge& prev = edges.back();
      if (prev.i > e.i || (prev.i == e.i && prev.j >= e.j)) {
        throw ParseError(where, "pairs must appear in strictly increasing (i, j) order");
      }
    }
    edges.push_back(e);
  }
  try {
    doc.graph = MultiGraph(n, std::move(edges));
  } catch (const Error& e) {
    throw ParseError("edges", e.what());
  }
  return doc;
}

}  // namespace pirg
