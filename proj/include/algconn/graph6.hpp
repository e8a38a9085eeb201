#pragma once

// graph6 text format (one graph per line), as used by nauty and House of Graphs.
//
// Layout: N(n) followed by the upper triangle of the adjacency matrix in
// column-major order (x(0,1), x(0,2), x(1,2), x(0,3), ...), packed into 6-bit
// groups, each written as the byte value + 63. N(n) is one byte for n <= 62,
// '~' + 3 bytes for n <= 258047, and "~~" + 6 bytes above that.

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "algconn/graph.hpp"

namespace algconn {

class Graph6Error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline int graph6_char(char c) {
  auto v = static_cast<unsigned char>(c);
  if (v < 63 || v > 126) throw Graph6Error("graph6 byte out of range: " + std::to_string(v));
  return v - 63;
}

}  // namespace detail

inline std::string graph6_encode(const Graph& g) {
  const int n = g.n();
  if (n <= 0) throw Graph6Error("graph6 cannot encode a graph with no vertices");
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = nbits = 0;
      }
    }
  if (nbits) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

inline Graph graph6_decode(std::string_view text) {
  constexpr std::string_view header = ">>graph6<<";
  if (text.starts_with(header)) text.remove_prefix(header.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw Graph6Error("empty graph6 string");

  std::size_t pos = 0;
  long n = 0;
  if (text[0] != '~') {
    n = detail::graph6_char(text[0]);
    pos = 1;
  } else if (text.size() >= 2 && text[1] == '~') {
    if (text.size() < 8) throw Graph6Error("truncated graph6 length prefix");
    for (pos = 2; pos < 8; ++pos) n = (n << 6) | detail::graph6_char(text[pos]);
  } else {
    if (text.size() < 4) throw Graph6Error("truncated graph6 length prefix");
    for (pos = 1; pos < 4; ++pos) n = (n << 6) | detail::graph6_char(text[pos]);
    if (n <= 62) throw Graph6Error("non-minimal graph6 length prefix");
  }
  if (n == 0) throw Graph6Error("graph6 graph with no vertices");
  if (n > kMaxVertices) throw Graph6Error("graph6 vertex count exceeds 4096");

  const long bits = n * (n - 1) / 2;
  const long groups = (bits + 5) / 6;
  if (static_cast<long>(text.size() - pos) != groups)
    throw Graph6Error("graph6 body has " + std::to_string(text.size() - pos) + " bytes, expected " +
                      std::to_string(groups));

  Graph::Builder b(static_cast<int>(n));
  long k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      int v = detail::graph6_char(text[pos + static_cast<std::size_t>(k / 6)]);
      if ((v >> (5 - k % 6)) & 1) b.add(i, j);
    }
  if (bits % 6) {
    int last = detail::graph6_char(text.back());
    if (last & ((1 << (6 - bits % 6)) - 1)) throw Graph6Error("nonzero padding bits in graph6");
  }
  return b.build();
}

/// Reads every non-blank graph6 line of a stream.
inline std::vector<Graph> read_graph6_stream(std::istream& in) {
  std::vector<Graph> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(graph6_decode(line));
  }
  return out;
}

}  // namespace algconn
