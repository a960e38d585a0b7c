#include "dip/graph.hpp"

#include <zlib.h>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <unordered_set>

namespace dip {

namespace {

// Shared pipeline: pairs are already dense ids. Drops self-loops, optionally
// adds the reversed edge, dedups keeping first occurrence.
struct EdgePipeline {
  std::vector<std::pair<NodeId, NodeId>> kept;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;

  void run(const std::vector<std::pair<NodeId, NodeId>>& pairs, bool symmetrize) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(pairs.size() * (symmetrize ? 4 : 2));
    auto key = [](NodeId a, NodeId b) {
      return (static_cast<std::uint64_t>(a) << 32) | b;
    };
    auto insert = [&](NodeId a, NodeId b) {
      if (seen.insert(key(a, b)).second)
        kept.emplace_back(a, b);
      else
        ++duplicates;
    };
    for (auto [a, b] : pairs) {
      if (a == b) {
        ++self_loops;
        continue;
      }
      insert(a, b);
      if (symmetrize) insert(b, a);
    }
  }
};

}  // namespace

Graph Graph::from_external_edges(const std::vector<std::pair<long long, long long>>& pairs,
                                 bool symmetrize) {
  Graph g;
  g.internal_ids_.reserve(pairs.size());
  std::vector<std::pair<NodeId, NodeId>> dense;
  dense.reserve(pairs.size());
  auto remap = [&g](long long ext) {
    auto [it, fresh] = g.internal_ids_.try_emplace(ext, static_cast<NodeId>(g.external_ids_.size()));
    if (fresh) g.external_ids_.push_back(ext);
    return it->second;
  };
  for (auto [a, b] : pairs) {
    const NodeId ia = remap(a);  // two statements: src claims its id first
    const NodeId ib = remap(b);
    dense.emplace_back(ia, ib);
  }
  g.n_ = static_cast<NodeId>(g.external_ids_.size());
  if (g.n_ == 0) throw IngestError("empty graph: no nodes found");

  EdgePipeline pipe;
  pipe.run(dense, symmetrize);
  g.self_loops_dropped_ = pipe.self_loops;
  g.duplicates_dropped_ = pipe.duplicates;
  g.edges_.reserve(pipe.kept.size());
  for (auto [a, b] : pipe.kept) g.edges_.push_back({a, b, 1.0});
  g.delays_.assign(g.edges_.size(), DelayDist::deterministic(1.0));
  g.build_adjacency();
  return g;
}

Graph Graph::from_dense(NodeId n, const std::vector<std::pair<NodeId, NodeId>>& pairs,
                        bool symmetrize) {
  if (n == 0) throw IngestError("empty graph: no nodes found");
  Graph g;
  g.n_ = n;
  g.external_ids_.resize(n);
  g.internal_ids_.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    g.external_ids_[v] = v;
    g.internal_ids_.emplace(v, v);
  }
  for (auto [a, b] : pairs)
    if (a >= n || b >= n) throw IngestError("edge endpoint out of range");

  EdgePipeline pipe;
  pipe.run(pairs, symmetrize);
  g.self_loops_dropped_ = pipe.self_loops;
  g.duplicates_dropped_ = pipe.duplicates;
  g.edges_.reserve(pipe.kept.size());
  for (auto [a, b] : pipe.kept) g.edges_.push_back({a, b, 1.0});
  g.delays_.assign(g.edges_.size(), DelayDist::deterministic(1.0));
  g.build_adjacency();
  return g;
}

void Graph::build_adjacency() {
  out_off_.assign(n_ + 1, 0);
  in_off_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++out_off_[e.src + 1];
    ++in_off_[e.dst + 1];
  }
  for (NodeId v = 0; v < n_; ++v) {
    out_off_[v + 1] += out_off_[v];
    in_off_[v + 1] += in_off_[v];
  }
  edge_ids_out_.resize(edges_.size());
  edge_ids_in_.resize(edges_.size());
  std::vector<std::size_t> out_pos(out_off_.begin(), out_off_.end() - 1);
  std::vector<std::size_t> in_pos(in_off_.begin(), in_off_.end() - 1);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    edge_ids_out_[out_pos[edges_[e].src]++] = e;
    edge_ids_in_[in_pos[edges_[e].dst]++] = e;
  }
}

NodeId Graph::internal_id(long long external) const {
  auto it = internal_ids_.find(external);
  if (it == internal_ids_.end())
    throw ConfigError("node id " + std::to_string(external) + " is not in the graph");
  return it->second;
}

void Graph::set_edge_p(EdgeId e, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("edge probability must lie in [0,1]");
  edges_[e].p = p;
}

namespace {

struct GzFile {
  gzFile f = nullptr;
  explicit GzFile(const std::string& path) { f = gzopen(path.c_str(), "rb"); }
  ~GzFile() {
    if (f) gzclose(f);
  }
  GzFile(const GzFile&) = delete;
  GzFile& operator=(const GzFile&) = delete;
};

std::string read_whole(const std::string& path) {
  GzFile in(path);  // gzopen reads plain files transparently
  if (!in.f) throw IngestError("cannot open " + path);
  std::string data;
  char buf[1 << 16];
  int got;
  while ((got = gzread(in.f, buf, sizeof buf)) > 0) data.append(buf, static_cast<std::size_t>(got));
  if (got < 0) throw IngestError("read error in " + path);
  return data;
}

}  // namespace

Graph load_edge_list(const std::string& path, bool symmetrize) {
  const std::string data = read_whole(path);
  std::vector<std::pair<long long, long long>> pairs;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t eol = data.find('\n', pos);
    if (eol == std::string::npos) eol = data.size();
    ++line_no;
    const char* s = data.data() + pos;
    const char* end = data.data() + eol;
    pos = eol + 1;
    while (s < end && (*s == ' ' || *s == '\t' || *s == '\r')) ++s;
    if (s == end || *s == '#') continue;  // blank or comment
    char* after = nullptr;
    const long long a = std::strtoll(s, &after, 10);
    bool ok = after != s && after < end;
    long long b = 0;
    if (ok) {
      const char* t = after;
      while (t < end && (*t == ' ' || *t == '\t')) ++t;
      ok = t > after;  // at least one separator
      char* after2 = nullptr;
      if (ok) {
        b = std::strtoll(t, &after2, 10);
        ok = after2 != t;
        if (ok) {
          const char* rest = after2;
          while (rest < end && (*rest == ' ' || *rest == '\t' || *rest == '\r')) ++rest;
          ok = rest == end;
        }
      }
    }
    if (!ok)
      throw IngestError(path + ": line " + std::to_string(line_no) + ": malformed edge line");
    pairs.emplace_back(a, b);
  }
  if (pairs.empty()) throw IngestError(path + ": empty graph: no edges found");
  return Graph::from_external_edges(pairs, symmetrize);
}

void write_edge_list(const Graph& g, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw IngestError("cannot write " + path);
  for (EdgeId e = 0; e < g.m(); ++e) {
    const auto& ed = g.edge(e);
    std::fprintf(f, "%lld %lld\n", g.external_id(ed.src), g.external_id(ed.dst));
  }
  std::fclose(f);
}

void assign_weighted_cascade(Graph& g) {
  if (g.m() == 0) throw ConfigError("weighted cascade needs at least one edge");
  for (EdgeId e = 0; e < g.m(); ++e)
    g.set_edge_p(e, 1.0 / g.in_degree(g.edge(e).dst));
}

void assign_uniform_probability(Graph& g, double p) {
  for (EdgeId e = 0; e < g.m(); ++e) g.set_edge_p(e, p);
}

void assign_delay(Graph& g, const DelayDist& d) {
  for (EdgeId e = 0; e < g.m(); ++e) g.set_edge_delay(e, d);
}

}  // namespace dip
