#pragma once

#include <algorithm>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "moorecay/common.hpp"
#include "moorecay/feasibility.hpp"
#include "moorecay/group.hpp"

namespace moorecay {

inline constexpr int kGraphIsoCap = 200;
// Diameter value reported when some ordered pair has no mixed path.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

// A graph with both undirected edges and one-way arcs.  Immutable once
// built; construction enforces: no loops, no duplicate adjacencies, no
// antiparallel arc pairs (those are edges by definition), and no vertex
// pair that is both an edge and an arc.
class MixedGraph {
 public:
  static MixedGraph build(int n, std::vector<std::pair<int, int>> edges,
                          std::vector<std::pair<int, int>> arcs,
                          std::vector<std::string> labels = {}) {
    if (n < 1) throw InvalidParametersError("graph needs at least one vertex");
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
      throw InvalidParametersError("label count does not match vertex count");

    auto check_pair = [n](std::pair<int, int> p, const char* what) {
      if (p.first < 0 || p.first >= n || p.second < 0 || p.second >= n)
        throw InvalidParametersError(std::string(what) + " endpoint out of range");
      if (p.first == p.second) throw InvalidParametersError(std::string(what) + " is a loop");
    };
    for (auto& e : edges) {
      check_pair(e, "edge");
      if (e.first > e.second) std::swap(e.first, e.second);
    }
    for (const auto& a : arcs) check_pair(a, "arc");

    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw InvalidParametersError("duplicate edge");
    std::sort(arcs.begin(), arcs.end());
    if (std::adjacent_find(arcs.begin(), arcs.end()) != arcs.end())
      throw InvalidParametersError("duplicate arc");

    std::set<std::pair<int, int>> arc_set(arcs.begin(), arcs.end());
    for (const auto& [u, v] : arcs)
      if (arc_set.count({v, u}))
        throw InvalidParametersError("antiparallel arcs " + std::to_string(u) + "," +
                                     std::to_string(v) + " must be an edge");
    for (const auto& [u, v] : edges)
      if (arc_set.count({u, v}) || arc_set.count({v, u}))
        throw InvalidParametersError("pair " + std::to_string(u) + "," + std::to_string(v) +
                                     " is both an edge and an arc");

    MixedGraph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.arcs_ = std::move(arcs);
    g.labels_ = std::move(labels);
    g.und_.resize(n);
    g.out_.resize(n);
    g.in_.resize(n);
    for (const auto& [u, v] : g.edges_) {
      g.und_[u].push_back(v);
      g.und_[v].push_back(u);
    }
    for (const auto& [u, v] : g.arcs_) {
      g.out_[u].push_back(v);
      g.in_[v].push_back(u);
    }
    for (int v = 0; v < n; ++v) {
      std::sort(g.und_[v].begin(), g.und_[v].end());
      std::sort(g.out_[v].begin(), g.out_[v].end());
      std::sort(g.in_[v].begin(), g.in_[v].end());
    }
    return g;
  }

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }
  const std::vector<std::string>& labels() const { return labels_; }

  // packed neighbor lists, sorted ascending
  const std::vector<int>& und_neighbors(int v) const { return und_[v]; }
  const std::vector<int>& out_neighbors(int v) const { return out_[v]; }
  const std::vector<int>& in_neighbors(int v) const { return in_[v]; }

  int und_degree(int v) const { return static_cast<int>(und_[v].size()); }
  int out_degree(int v) const { return static_cast<int>(out_[v].size()); }
  int in_degree(int v) const { return static_cast<int>(in_[v].size()); }

  bool has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
  }
  bool has_arc(int u, int v) const {
    return std::binary_search(arcs_.begin(), arcs_.end(), std::make_pair(u, v));
  }

  // 0 = none, 1 = edge, 2 = arc u->v, 3 = arc v->u
  int adjacency_kind(int u, int v) const {
    if (has_edge(u, v)) return 1;
    if (has_arc(u, v)) return 2;
    if (has_arc(v, u)) return 3;
    return 0;
  }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;  // normalized u < v, sorted
  std::vector<std::pair<int, int>> arcs_;   // sorted
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> und_, out_, in_;
};

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

// Cayley graph of G with undirected connection set s1 and directed set s2:
// an edge {g, g*s} for each s in s1 and an arc g -> g*s for each s in s2.
inline MixedGraph from_cayley(const Group& g, const std::vector<int>& s1,
                              const std::vector<int>& s2) {
  auto in_range = [&](int s) { return s >= 0 && s < g.order(); };
  for (int s : s1)
    if (!in_range(s)) throw InvalidGeneratorSetError("undirected generator out of range");
  for (int s : s2)
    if (!in_range(s)) throw InvalidGeneratorSetError("directed generator out of range");

  std::set<int> set1(s1.begin(), s1.end()), set2(s2.begin(), s2.end());
  if (set1.size() != s1.size() || set2.size() != s2.size())
    throw InvalidGeneratorSetError("repeated generator");
  if (set1.count(0) || set2.count(0))
    throw InvalidGeneratorSetError("identity cannot be a generator");
  for (int s : set1)
    if (!set1.count(g.inverse(s)))
      throw InvalidGeneratorSetError("undirected set is not inverse-closed");
  for (int s : set2)
    if (set2.count(g.inverse(s)))
      throw InvalidGeneratorSetError("directed set contains an inverse pair");
  for (int s : set2)
    if (set1.count(s))
      throw InvalidGeneratorSetError("undirected and directed sets intersect");

  std::set<std::pair<int, int>> edges;
  std::vector<std::pair<int, int>> arcs;
  for (int x = 0; x < g.order(); ++x) {
    for (int s : set1) {
      int y = g.mul(x, s);
      edges.insert({std::min(x, y), std::max(x, y)});
    }
    for (int s : set2) arcs.emplace_back(x, g.mul(x, s));
  }
  return MixedGraph::build(g.order(), {edges.begin(), edges.end()}, std::move(arcs));
}

// Kautz graph Ka(d,2): vertices are ordered pairs ab of distinct letters
// from a (d+1)-letter alphabet; ab -> bc for every c != b, with the
// mutual pair ab <-> ba kept as one undirected edge.  Undirected degree 1,
// directed degree d-1.
inline MixedGraph kautz(int d) {
  if (d < 2) throw InvalidParametersError("kautz graph needs d >= 2");
  const int letters = d + 1;
  auto index = [d](int a, int b) { return a * d + (b < a ? b : b - 1); };
  const char* alphabet = "0123456789abcdefghijklmnopqrstuvwxyz";

  std::vector<std::pair<int, int>> edges, arcs;
  std::vector<std::string> labels(d * letters);
  for (int a = 0; a < letters; ++a) {
    for (int b = 0; b < letters; ++b) {
      if (a == b) continue;
      labels[index(a, b)] = std::string{alphabet[a], alphabet[b]};
      if (a < b) edges.emplace_back(index(a, b), index(b, a));
      for (int c = 0; c < letters; ++c)
        if (c != b && c != a) arcs.emplace_back(index(a, b), index(b, c));
    }
  }
  return MixedGraph::build(d * letters, std::move(edges), std::move(arcs), std::move(labels));
}

inline MixedGraph transpose(const MixedGraph& g) {
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(g.arcs().size());
  for (const auto& [u, v] : g.arcs()) arcs.emplace_back(v, u);
  return MixedGraph::build(g.n(), g.edges(), std::move(arcs), g.labels());
}

// ---------------------------------------------------------------------------
// Diameter and verification
// ---------------------------------------------------------------------------

namespace detail {

// out-neighbors in the mixed sense: edges usable both ways, arcs one way
inline std::vector<std::vector<int>> mixed_adjacency(const MixedGraph& g) {
  std::vector<std::vector<int>> adj(g.n());
  for (int v = 0; v < g.n(); ++v) {
    adj[v] = g.und_neighbors(v);
    adj[v].insert(adj[v].end(), g.out_neighbors(v).begin(), g.out_neighbors(v).end());
    std::sort(adj[v].begin(), adj[v].end());
  }
  return adj;
}

inline int eccentricity(const std::vector<std::vector<int>>& adj, int src) {
  std::vector<int> dist(adj.size(), -1);
  std::vector<int> queue{src};
  dist[src] = 0;
  int best = 0;
  for (size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (int v : adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        best = std::max(best, dist[v]);
        queue.push_back(v);
      }
  }
  if (queue.size() != adj.size()) return kUnreachable;
  return best;
}

}  // namespace detail

// Longest shortest mixed path over all ordered vertex pairs;
// kUnreachable when the graph is not strongly connected.
inline int diameter(const MixedGraph& g) {
  auto adj = detail::mixed_adjacency(g);
  int best = 0;
  for (int v = 0; v < g.n(); ++v) {
    int e = detail::eccentricity(adj, v);
    if (e == kUnreachable) return kUnreachable;
    best = std::max(best, e);
  }
  return best;
}

struct MooreReport {
  // uniform undirected degree, uniform out-degree equal to in-degree at
  // every vertex, and both parts present (r >= 1 and z >= 1)
  bool degrees_ok = false;
  int r = -1;      // uniform undirected degree, -1 if not uniform
  int z_out = -1;  // uniform out-degree, -1 if not uniform
  int z_in = -1;   // uniform in-degree, -1 if not uniform
  // order equals (z+r)^2 + z + 1
  bool order_ok = false;
  // A + A^2 has every off-diagonal entry 1 and every diagonal entry r,
  // where edges contribute to A in both directions
  bool unique_path_ok = false;
  // no undirected 3- or 4-cycles
  bool girth_ok = false;
  // every arc lies in exactly one directed (arcs-only) 3-cycle
  bool triangle_ok = false;
  int diameter = kUnreachable;
  bool verdict = false;
};

// Checks every structural property a mixed Moore graph of diameter 2 must
// have, independently of how the graph was produced.
inline MooreReport verify_moore(const MixedGraph& g) {
  MooreReport rep;
  const int n = g.n();

  // degree profile
  bool und_uniform = true, out_uniform = true, in_matches = true;
  for (int v = 0; v < n; ++v) {
    und_uniform = und_uniform && g.und_degree(v) == g.und_degree(0);
    out_uniform = out_uniform && g.out_degree(v) == g.out_degree(0);
    in_matches = in_matches && g.in_degree(v) == g.out_degree(v);
  }
  if (und_uniform) rep.r = g.und_degree(0);
  if (out_uniform) rep.z_out = g.out_degree(0);
  if (out_uniform && in_matches) rep.z_in = rep.z_out;
  rep.degrees_ok = und_uniform && out_uniform && in_matches && rep.r >= 1 && rep.z_out >= 1;

  rep.order_ok = und_uniform && out_uniform &&
                 static_cast<long long>(n) == moore_bound_mixed(rep.r, rep.z_out);

  // walk counting: M = A + A^2 over the mixed adjacency
  {
    auto adj = detail::mixed_adjacency(g);
    std::vector<char> row_ok(n, 0);
    auto run_rows = [&](int lo, int hi) {
      std::vector<int> walks(n);
      for (int u = lo; u < hi; ++u) {
        std::fill(walks.begin(), walks.end(), 0);
        for (int w : adj[u])
          for (int v : adj[w]) ++walks[v];
        for (int v : adj[u]) ++walks[v];
        bool ok = walks[u] == rep.r;  // closed 2-walks = edge backtracks
        for (int v = 0; v < n && ok; ++v)
          if (v != u) ok = walks[v] == 1;
        row_ok[u] = ok;
      }
    };
    unsigned hw = std::thread::hardware_concurrency();
    int jobs = n >= 128 ? static_cast<int>(std::min<unsigned>(hw ? hw : 1, 8)) : 1;
    if (jobs <= 1) {
      run_rows(0, n);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < jobs; ++t) {
        int lo = static_cast<int>(static_cast<long long>(n) * t / jobs);
        int hi = static_cast<int>(static_cast<long long>(n) * (t + 1) / jobs);
        pool.emplace_back(run_rows, lo, hi);
      }
      for (auto& th : pool) th.join();
    }
    rep.unique_path_ok = und_uniform && std::all_of(row_ok.begin(), row_ok.end(),
                                                    [](char c) { return c != 0; });
  }

  // girth: common undirected neighbors of a pair give 4-cycles; an
  // adjacent pair with a common neighbor gives a triangle
  {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u) {
      for (int v = u + 1; v < n && ok; ++v) {
        const auto& nu = g.und_neighbors(u);
        const auto& nv = g.und_neighbors(v);
        int common = 0;
        for (size_t i = 0, j = 0; i < nu.size() && j < nv.size();) {
          if (nu[i] < nv[j])
            ++i;
          else if (nu[i] > nv[j])
            ++j;
          else
            ++common, ++i, ++j;
        }
        if (common >= 2) ok = false;                       // undirected 4-cycle
        if (common >= 1 && g.has_edge(u, v)) ok = false;   // undirected 3-cycle
      }
    }
    rep.girth_ok = ok;
  }

  // every arc in exactly one arcs-only 3-cycle
  {
    bool ok = true;
    for (const auto& [u, v] : g.arcs()) {
      int count = 0;
      for (int w : g.out_neighbors(v))
        if (g.has_arc(w, u)) ++count;
      if (count != 1) {
        ok = false;
        break;
      }
    }
    rep.triangle_ok = ok;
  }

  rep.diameter = diameter(g);
  rep.verdict = rep.degrees_ok && rep.order_ok && rep.unique_path_ok && rep.girth_ok &&
                rep.triangle_ok && rep.diameter == 2;
  return rep;
}

// ---------------------------------------------------------------------------
// Isomorphism testing
// ---------------------------------------------------------------------------

namespace detail {

// Number of arcs-only 3-cycles through each vertex.
inline std::vector<int> directed_triangle_counts(const MixedGraph& g) {
  std::vector<int> count(g.n(), 0);
  for (const auto& [u, v] : g.arcs())
    for (int w : g.out_neighbors(v))
      if (g.has_arc(w, u)) {
        ++count[u];  // each triangle counted once per arc, i.e. once per vertex
      }
  return count;
}

// Iterated refinement by (current color; multisets of neighbor colors per
// relation).  Returns per-vertex colors; colors are comparable across the
// two graphs because signatures are pooled.
inline std::pair<std::vector<int>, std::vector<int>> joint_refinement(const MixedGraph& a,
                                                                      const MixedGraph& b) {
  auto tri_a = directed_triangle_counts(a);
  auto tri_b = directed_triangle_counts(b);
  std::vector<int> ca(a.n()), cb(b.n());
  {
    std::map<std::tuple<int, int, int, int>, int> pool;
    auto seed = [&pool](const MixedGraph& g, const std::vector<int>& tri, std::vector<int>& c) {
      for (int v = 0; v < g.n(); ++v) {
        auto key = std::make_tuple(g.und_degree(v), g.out_degree(v), g.in_degree(v), tri[v]);
        auto [it, _] = pool.emplace(key, static_cast<int>(pool.size()));
        c[v] = it->second;
      }
    };
    seed(a, tri_a, ca);
    seed(b, tri_b, cb);
  }

  while (true) {
    using Sig = std::tuple<int, std::vector<int>, std::vector<int>, std::vector<int>>;
    std::map<Sig, int> pool;
    auto pass = [&pool](const MixedGraph& g, const std::vector<int>& c) {
      std::vector<int> next(g.n());
      for (int v = 0; v < g.n(); ++v) {
        auto collect = [&c](const std::vector<int>& nbrs) {
          std::vector<int> m;
          m.reserve(nbrs.size());
          for (int w : nbrs) m.push_back(c[w]);
          std::sort(m.begin(), m.end());
          return m;
        };
        Sig sig{c[v], collect(g.und_neighbors(v)), collect(g.out_neighbors(v)),
                collect(g.in_neighbors(v))};
        auto [it, _] = pool.emplace(std::move(sig), static_cast<int>(pool.size()));
        next[v] = it->second;
      }
      return next;
    };
    std::vector<int> na = pass(a, ca);
    std::vector<int> nb = pass(b, cb);
    bool stable = true;
    {
      std::set<int> before(ca.begin(), ca.end()), after(na.begin(), na.end());
      std::set<int> before_b(cb.begin(), cb.end()), after_b(nb.begin(), nb.end());
      stable = before.size() == after.size() && before_b.size() == after_b.size();
    }
    ca = std::move(na);
    cb = std::move(nb);
    if (stable) break;
  }
  return {ca, cb};
}

}  // namespace detail

// True iff some vertex bijection maps edges to edges and arcs to arcs
// (arc direction preserved).  Backtracking over color classes from an
// iterated degree/triangle refinement.
inline bool isomorphic(const MixedGraph& a, const MixedGraph& b) {
  if (a.n() > kGraphIsoCap || b.n() > kGraphIsoCap)
    throw SizeCapExceededError("isomorphism test supports at most " +
                               std::to_string(kGraphIsoCap) + " vertices");
  if (a.n() != b.n() || a.edges().size() != b.edges().size() || a.arcs().size() != b.arcs().size())
    return false;
  const int n = a.n();

  auto [ca, cb] = detail::joint_refinement(a, b);
  {
    std::map<int, int> ha, hb;
    for (int c : ca) ++ha[c];
    for (int c : cb) ++hb[c];
    if (ha != hb) return false;
  }

  // candidates for each a-vertex: b-vertices of the same color
  std::vector<std::vector<int>> candidates(n);
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      if (ca[v] == cb[w]) candidates[v].push_back(w);

  // map most-constrained vertices first
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (candidates[x].size() != candidates[y].size())
      return candidates[x].size() < candidates[y].size();
    return x < y;
  });

  std::vector<int> img(n, -1);
  std::vector<char> used(n, 0);
  std::vector<int> mapped;  // a-vertices already assigned
  mapped.reserve(n);

  auto consistent = [&](int v, int w) {
    for (int u : mapped)
      if (a.adjacency_kind(v, u) != b.adjacency_kind(w, img[u])) return false;
    return true;
  };

  std::function<bool(size_t)> dfs = [&](size_t depth) -> bool {
    if (depth == order.size()) return true;
    int v = order[depth];
    for (int w : candidates[v]) {
      if (used[w] || !consistent(v, w)) continue;
      img[v] = w;
      used[w] = 1;
      mapped.push_back(v);
      if (dfs(depth + 1)) return true;
      mapped.pop_back();
      used[w] = 0;
      img[v] = -1;
    }
    return false;
  };
  return dfs(0);
}

// ---------------------------------------------------------------------------
// Graph files
// ---------------------------------------------------------------------------

// Plain-text format: header "n r z" (r, z taken from vertex 0), then one
// line per adjacency, edges first: "E u v" with u < v, then "A u v", both
// sorted; '#' starts a comment.
inline void write_graph(const MixedGraph& g, std::ostream& out) {
  out << g.n() << ' ' << g.und_degree(0) << ' ' << g.out_degree(0) << '\n';
  for (const auto& [u, v] : g.edges()) out << "E " << u << ' ' << v << '\n';
  for (const auto& [u, v] : g.arcs()) out << "A " << u << ' ' << v << '\n';
}

inline MixedGraph read_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  long long n = -1;
  std::vector<std::pair<int, int>> edges, arcs;
  std::set<std::pair<int, int>> seen_edges, seen_arcs;

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    if (n < 0) {
      long long r, z;
      if (!(ss >> n >> r >> z)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
          n = -1;
          continue;  // blank/comment line before header
        }
        throw ParseError(lineno, "expected header 'n r z'");
      }
      if (n < 1) throw ParseError(lineno, "vertex count must be positive");
      if (r < 0 || z < 0) throw ParseError(lineno, "negative degree in header");
      std::string extra;
      if (ss >> extra) throw ParseError(lineno, "trailing tokens after header");
      continue;
    }
    std::string kind;
    if (!(ss >> kind)) continue;  // blank line
    long long u, v;
    if (!(ss >> u >> v)) throw ParseError(lineno, "expected two vertex indices");
    std::string extra;
    if (ss >> extra) throw ParseError(lineno, "trailing tokens");
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ParseError(lineno, "vertex index out of range [0," + std::to_string(n) + ")");
    if (u == v) throw ParseError(lineno, "loops are not allowed");
    auto iu = static_cast<int>(u), iv = static_cast<int>(v);
    if (kind == "E") {
      auto key = std::minmax(iu, iv);
      if (!seen_edges.insert({key.first, key.second}).second)
        throw ParseError(lineno, "duplicate edge");
      edges.emplace_back(iu, iv);
    } else if (kind == "A") {
      if (!seen_arcs.insert({iu, iv}).second) throw ParseError(lineno, "duplicate arc");
      arcs.emplace_back(iu, iv);
    } else {
      throw ParseError(lineno, "unknown line kind '" + kind + "'");
    }
  }
  if (n < 0) throw ParseError(std::max(lineno, 1), "missing header");
  for (const auto& [u, v] : arcs) {
    if (seen_arcs.count({v, u}))
      throw ParseError(lineno, "antiparallel arcs " + std::to_string(u) + "," +
                                   std::to_string(v) + " must be an edge");
    auto key = std::minmax(u, v);
    if (seen_edges.count({key.first, key.second}))
      throw ParseError(lineno, "pair " + std::to_string(u) + "," + std::to_string(v) +
                                   " is both an edge and an arc");
  }
  return MixedGraph::build(static_cast<int>(n), std::move(edges), std::move(arcs));
}

}  // namespace moorecay
