#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "maxconn/graph.hpp"

namespace maxconn {

class FormatError : public std::runtime_error {
 public:
  enum class Kind { kMalformedHeader, kNonPrintable, kLengthMismatch, kTrailingBits, kBadEdgeList };

  FormatError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

namespace detail {

inline void append_graph6_size(std::string& out, long long n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
}

}  // namespace detail

/// graph6 encoding: size header followed by the upper triangle of the
/// adjacency matrix in column order (0,1),(0,2),(1,2),(0,3),... packed six
/// bits per byte, most significant first, each byte offset by 63.
inline std::string encode_graph6(const Graph& g) {
  const long long n = g.order();
  std::string out;
  detail::append_graph6_size(out, n);
  int acc = 0;
  int nbits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        nbits = 0;
      }
    }
  }
  if (nbits > 0) out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
  return out;
}

inline Graph decode_graph6(std::string_view text) {
  constexpr std::string_view kHeader = ">>graph6<<";
  if (text.starts_with(kHeader)) text.remove_prefix(kHeader.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);

  for (unsigned char c : text) {
    if (c < 63 || c > 126) {
      throw FormatError(FormatError::Kind::kNonPrintable,
                        "graph6 byte " + std::to_string(static_cast<int>(c)) + " outside [63,126]");
    }
  }
  if (text.empty()) throw FormatError(FormatError::Kind::kMalformedHeader, "empty graph6 string");

  std::size_t pos = 0;
  long long n = 0;
  auto take = [&](int count) {
    if (pos + count > text.size()) {
      throw FormatError(FormatError::Kind::kMalformedHeader, "truncated graph6 size header");
    }
    long long value = 0;
    for (int k = 0; k < count; ++k) value = (value << 6) | (static_cast<unsigned char>(text[pos++]) - 63);
    return value;
  };
  if (text[0] != 126) {
    n = take(1);
  } else if (text.size() > 1 && text[1] == 126) {
    pos = 2;
    n = take(6);
  } else {
    pos = 1;
    n = take(3);
  }
  if (n > 10000) {
    throw FormatError(FormatError::Kind::kMalformedHeader, "graph6 order " + std::to_string(n) + " too large");
  }

  const long long bits = n * (n - 1) / 2;
  const long long bytes = (bits + 5) / 6;
  if (static_cast<long long>(text.size() - pos) != bytes) {
    throw FormatError(FormatError::Kind::kLengthMismatch,
                      "graph6 body has " + std::to_string(text.size() - pos) + " bytes, expected " +
                          std::to_string(bytes));
  }

  std::vector<Edge> edges;
  long long k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int byte = static_cast<unsigned char>(text[pos + k / 6]) - 63;
      if ((byte >> (5 - k % 6)) & 1) edges.emplace_back(i, j);
    }
  }
  if (bytes > 0) {
    const int pad = static_cast<int>(bytes * 6 - bits);
    const int last = static_cast<unsigned char>(text.back()) - 63;
    if ((last & ((1 << pad) - 1)) != 0) {
      throw FormatError(FormatError::Kind::kTrailingBits, "graph6 padding bits are not zero");
    }
  }
  return Graph::from_edge_list(static_cast<int>(n), edges);
}

/// Plain edge-list text: "n m" then m lines "u v". '#' starts a comment.
inline Graph read_edge_list(std::istream& in) {
  std::string line;
  std::vector<long long> tokens;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string tok;
    while (fields >> tok) {
      try {
        std::size_t used = 0;
        tokens.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw FormatError(FormatError::Kind::kBadEdgeList, "non-integer token '" + tok + "'");
      }
    }
  }
  if (tokens.size() < 2) throw FormatError(FormatError::Kind::kBadEdgeList, "missing 'n m' header");
  const long long n = tokens[0];
  const long long m = tokens[1];
  if (n < 0 || m < 0 || static_cast<long long>(tokens.size()) != 2 + 2 * m) {
    throw FormatError(FormatError::Kind::kBadEdgeList,
                      "edge count " + std::to_string(m) + " does not match the " +
                          std::to_string((tokens.size() - 2) / 2) + " listed pairs");
  }
  std::vector<Edge> edges;
  for (long long e = 0; e < m; ++e) {
    edges.emplace_back(static_cast<int>(tokens[2 + 2 * e]), static_cast<int>(tokens[3 + 2 * e]));
  }
  return Graph::from_edge_list(static_cast<int>(n), edges);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace maxconn
