#pragma once

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "revolver/graph.hpp"

namespace revolver {

// A parsed edge-list file. Vertex ids in the wild are arbitrary 64-bit
// integers; the graph itself always uses dense ids [0, n). original_ids maps
// dense id -> id as written in the file, ascending, and `remapped` says
// whether that mapping is anything other than the identity.
struct LoadedGraph {
  Graph graph;
  std::vector<std::uint64_t> original_ids;
  bool remapped = false;
};

namespace detail {

inline const char* skip_ws(const char* p, const char* end) {
  while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
  return p;
}

inline std::string read_plain_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return text;
}

inline std::string read_gzip_file(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error(path + ": cannot open");
  std::string text;
  char buf[1 << 16];
  int got;
  while ((got = gzread(f, buf, sizeof(buf))) > 0) text.append(buf, got);
  bool bad = got < 0;
  gzclose(f);
  if (bad) throw std::runtime_error(path + ": gzip read error");
  return text;
}

}  // namespace detail

// Parses "u v" pairs, one edge per line. Blank lines and lines starting with
// '#' are skipped, self-loops are dropped, duplicate directed edges are
// collapsed. Malformed lines raise with their 1-based line number.
inline LoadedGraph parse_edge_list(std::string_view text) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::uint64_t line_no = 0;

  const char* p = text.data();
  const char* end = p + text.size();
  while (p < end) {
    ++line_no;
    const char* eol = std::find(p, end, '\n');
    const char* q = detail::skip_ws(p, eol);
    if (q == eol || *q == '#') {
      p = eol + 1;
      continue;
    }
    std::uint64_t u, v;
    auto fail = [&]() {
      throw std::runtime_error("edge list line " + std::to_string(line_no) +
                               ": expected two integer vertex ids");
    };
    auto r1 = std::from_chars(q, eol, u);
    if (r1.ec != std::errc{}) fail();
    q = detail::skip_ws(r1.ptr, eol);
    auto r2 = std::from_chars(q, eol, v);
    if (r2.ec != std::errc{}) fail();
    q = detail::skip_ws(r2.ptr, eol);
    if (q != eol) fail();
    raw.emplace_back(u, v);
    p = eol + 1;
  }

  // Dense remap: every id that appears on a parsed line is a vertex, even if
  // its only mention was a (dropped) self-loop.
  std::vector<std::uint64_t> ids;
  ids.reserve(raw.size() * 2);
  for (auto [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  auto dense = [&](std::uint64_t id) {
    return static_cast<VertexId>(
        std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) edges.emplace_back(dense(u), dense(v));

  LoadedGraph out;
  out.remapped = !ids.empty() && ids.back() != ids.size() - 1;
  out.original_ids = std::move(ids);
  out.graph = Graph::from_edges(
      static_cast<VertexId>(out.original_ids.size()), std::move(edges));
  return out;
}

// Loads a (possibly gzip-compressed) edge-list file; compression is detected
// from the 0x1f 0x8b magic, not the extension.
inline LoadedGraph load_edge_list_file(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw std::runtime_error(path + ": cannot open");
  unsigned char magic[2] = {0, 0};
  probe.read(reinterpret_cast<char*>(magic), 2);
  probe.close();
  const bool gz = magic[0] == 0x1f && magic[1] == 0x8b;
  std::string text =
      gz ? detail::read_gzip_file(path) : detail::read_plain_file(path);
  return parse_edge_list(text);
}

// Writes "dense_id original_id" per line so external tooling can translate
// partition assignments back to the input's id space.
inline void write_id_map(std::ostream& out,
                         std::span<const std::uint64_t> original_ids) {
  for (std::size_t i = 0; i < original_ids.size(); ++i)
    out << i << ' ' << original_ids[i] << '\n';
}

}  // namespace revolver
