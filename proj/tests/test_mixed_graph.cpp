#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "moorecay/catalog.hpp"
#include "moorecay/mixed_graph.hpp"
#include "oracles.hpp"

using moorecay::MixedGraph;

namespace {

// Random mixed graph: every unordered pair becomes an edge, an arc (random
// direction), or nothing.
MixedGraph random_graph(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> kind(0, 5);
  std::vector<std::pair<int, int>> edges, arcs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      switch (kind(rng)) {
        case 0: edges.emplace_back(u, v); break;
        case 1: arcs.emplace_back(u, v); break;
        case 2: arcs.emplace_back(v, u); break;
        default: break;
      }
    }
  return MixedGraph::build(n, std::move(edges), std::move(arcs));
}

MixedGraph relabel(const MixedGraph& g, const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> edges, arcs;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  for (const auto& [u, v] : g.arcs()) arcs.emplace_back(perm[u], perm[v]);
  return MixedGraph::build(g.n(), std::move(edges), std::move(arcs));
}

bool reports_equal(const moorecay::MooreReport& a, const moorecay::MooreReport& b) {
  return a.degrees_ok == b.degrees_ok && a.r == b.r && a.z_out == b.z_out &&
         a.z_in == b.z_in && a.order_ok == b.order_ok && a.unique_path_ok == b.unique_path_ok &&
         a.girth_ok == b.girth_ok && a.triangle_ok == b.triangle_ok &&
         a.diameter == b.diameter && a.verdict == b.verdict;
}

// The directional degree fields (z_out, z_in, and order_ok through them) swap
// roles under transposition when in- and out-profiles differ; everything else
// must be preserved exactly.
bool reports_transpose_equal(const moorecay::MooreReport& a, const moorecay::MooreReport& b) {
  bool stable = a.degrees_ok == b.degrees_ok && a.r == b.r &&
                a.unique_path_ok == b.unique_path_ok && a.girth_ok == b.girth_ok &&
                a.triangle_ok == b.triangle_ok && a.diameter == b.diameter &&
                a.verdict == b.verdict;
  if (!stable) return false;
  return a.degrees_ok ? reports_equal(a, b) : true;
}

// Independent prediction of the unique-path check from the walk oracle.
bool unique_paths_expected(const MixedGraph& g) {
  bool und_uniform = true;
  for (int v = 0; v < g.n(); ++v) und_uniform = und_uniform && g.und_degree(v) == g.und_degree(0);
  if (!und_uniform) return false;
  auto counts = oracles::short_walk_counts(g);
  for (int u = 0; u < g.n(); ++u)
    for (int v = 0; v < g.n(); ++v) {
      if (u == v && counts[u][v] != g.und_degree(0)) return false;
      if (u != v && counts[u][v] != 1) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("graph construction normalizes and validates") {
  MixedGraph g = MixedGraph::build(4, {{2, 0}, {1, 3}}, {{3, 0}});
  REQUIRE(g.n() == 4);
  REQUIRE(g.edges() == std::vector<std::pair<int, int>>{{0, 2}, {1, 3}});
  REQUIRE(g.arcs() == std::vector<std::pair<int, int>>{{3, 0}});
  REQUIRE(g.has_edge(0, 2));
  REQUIRE(g.has_edge(2, 0));
  REQUIRE_FALSE(g.has_edge(0, 1));
  REQUIRE(g.has_arc(3, 0));
  REQUIRE_FALSE(g.has_arc(0, 3));
  REQUIRE(g.adjacency_kind(0, 2) == 1);
  REQUIRE(g.adjacency_kind(3, 0) == 2);
  REQUIRE(g.adjacency_kind(0, 3) == 3);
  REQUIRE(g.adjacency_kind(0, 1) == 0);
  REQUIRE(g.und_degree(0) == 1);
  REQUIRE(g.out_degree(3) == 1);
  REQUIRE(g.in_degree(0) == 1);

  using moorecay::InvalidParametersError;
  REQUIRE_THROWS_AS(MixedGraph::build(0, {}, {}), InvalidParametersError);
  REQUIRE_THROWS_AS(MixedGraph::build(3, {{0, 0}}, {}), InvalidParametersError);
  REQUIRE_THROWS_AS(MixedGraph::build(3, {}, {{1, 1}}), InvalidParametersError);
  REQUIRE_THROWS_AS(MixedGraph::build(3, {{0, 3}}, {}), InvalidParametersError);
  REQUIRE_THROWS_AS(MixedGraph::build(3, {{0, 1}, {1, 0}}, {}), InvalidParametersError);
  REQUIRE_THROWS_AS(MixedGraph::build(3, {}, {{0, 1}, {0, 1}}), InvalidParametersError);
  REQUIRE_THROWS_AS(MixedGraph::build(3, {}, {{0, 1}, {1, 0}}), InvalidParametersError);
  REQUIRE_THROWS_AS(MixedGraph::build(3, {{0, 1}}, {{1, 0}}), InvalidParametersError);
  REQUIRE_THROWS_AS(MixedGraph::build(3, {{0, 1}}, {}, {"a", "b"}), InvalidParametersError);
}

TEST_CASE("Cayley graph construction") {
  SECTION("cyclic group with an inverse pair gives a cycle") {
    MixedGraph g = moorecay::from_cayley(moorecay::cyclic_group(6), {1, 5}, {});
    REQUIRE(g.n() == 6);
    REQUIRE(g.edges().size() == 6);
    REQUIRE(g.arcs().empty());
    for (int v = 0; v < 6; ++v) REQUIRE(g.und_degree(v) == 2);
    REQUIRE(moorecay::diameter(g) == 3);
  }

  SECTION("cyclic group of order 3 with one directed generator") {
    MixedGraph g = moorecay::from_cayley(moorecay::cyclic_group(3), {}, {1});
    REQUIRE(g.edges().empty());
    REQUIRE(g.arcs().size() == 3);
    REQUIRE(g.has_arc(0, 1));
    REQUIRE(g.has_arc(1, 2));
    REQUIRE(g.has_arc(2, 0));
    REQUIRE(moorecay::diameter(g) == 2);
  }

  SECTION("symmetric group on all transpositions gives complete bipartite") {
    moorecay::Group s3 = moorecay::symmetric_group(3);
    std::vector<int> transpositions;
    for (int x = 1; x < 6; ++x)
      if (s3.order_of(x) == 2) transpositions.push_back(x);
    REQUIRE(transpositions.size() == 3);
    MixedGraph g = moorecay::from_cayley(s3, transpositions, {});
    REQUIRE(g.edges().size() == 9);
    for (int v = 0; v < 6; ++v) REQUIRE(g.und_degree(v) == 3);
    REQUIRE(moorecay::diameter(g) == 2);
    // complete bipartite graphs are full of 4-cycles
    REQUIRE_FALSE(moorecay::verify_moore(g).girth_ok);
  }

  SECTION("invalid connection sets") {
    using moorecay::InvalidGeneratorSetError;
    moorecay::Group c6 = moorecay::cyclic_group(6);
    REQUIRE_THROWS_AS(moorecay::from_cayley(c6, {7}, {}), InvalidGeneratorSetError);
    REQUIRE_THROWS_AS(moorecay::from_cayley(c6, {}, {-1}), InvalidGeneratorSetError);
    REQUIRE_THROWS_AS(moorecay::from_cayley(c6, {3, 3}, {}), InvalidGeneratorSetError);
    REQUIRE_THROWS_AS(moorecay::from_cayley(c6, {0}, {}), InvalidGeneratorSetError);
    REQUIRE_THROWS_AS(moorecay::from_cayley(c6, {}, {0}), InvalidGeneratorSetError);
    REQUIRE_THROWS_AS(moorecay::from_cayley(c6, {1}, {}), InvalidGeneratorSetError);
    REQUIRE_THROWS_AS(moorecay::from_cayley(c6, {}, {1, 5}), InvalidGeneratorSetError);
    REQUIRE_THROWS_AS(moorecay::from_cayley(c6, {}, {3}), InvalidGeneratorSetError);
    REQUIRE_THROWS_AS(moorecay::from_cayley(c6, {3}, {3}), InvalidGeneratorSetError);
  }
}

TEST_CASE("Kautz graphs") {
  MixedGraph k2 = moorecay::kautz(2);
  REQUIRE(k2.n() == 6);
  REQUIRE(k2.edges().size() == 3);
  REQUIRE(k2.arcs().size() == 6);
  for (int v = 0; v < k2.n(); ++v) {
    REQUIRE(k2.und_degree(v) == 1);
    REQUIRE(k2.out_degree(v) == 1);
    REQUIRE(k2.in_degree(v) == 1);
  }
  REQUIRE(k2.labels().size() == 6);
  std::set<std::string> labels(k2.labels().begin(), k2.labels().end());
  REQUIRE(labels.size() == 6);
  REQUIRE(labels.count("01") == 1);
  REQUIRE(labels.count("10") == 1);

  MixedGraph k4 = moorecay::kautz(4);
  REQUIRE(k4.n() == 20);
  REQUIRE(k4.edges().size() == 10);
  REQUIRE(k4.arcs().size() == 60);
  for (int v = 0; v < k4.n(); ++v) {
    REQUIRE(k4.und_degree(v) == 1);
    REQUIRE(k4.out_degree(v) == 3);
  }
  REQUIRE(moorecay::diameter(k4) == 2);

  REQUIRE_THROWS_AS(moorecay::kautz(1), moorecay::InvalidParametersError);
}

TEST_CASE("diameter computation") {
  // complete graph on 4 vertices
  MixedGraph k4 = MixedGraph::build(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {});
  REQUIRE(moorecay::diameter(k4) == 1);
  REQUIRE(moorecay::diameter(moorecay::kautz(3)) == 2);

  // arcs are one-way: a single arc between two vertices leaves them
  // mutually unreachable in one direction
  MixedGraph arrow = MixedGraph::build(2, {}, {{0, 1}});
  REQUIRE(moorecay::diameter(arrow) == moorecay::kUnreachable);
  MixedGraph isolated = MixedGraph::build(3, {{0, 1}}, {});
  REQUIRE(moorecay::diameter(isolated) == moorecay::kUnreachable);
  REQUIRE(moorecay::diameter(MixedGraph::build(1, {}, {})) == 0);
}

TEST_CASE("Moore verification accepts the Kautz family") {
  for (int d = 2; d <= 5; ++d) {
    MixedGraph g = moorecay::kautz(d);
    auto rep = moorecay::verify_moore(g);
    INFO("d = " << d);
    REQUIRE(rep.degrees_ok);
    REQUIRE(rep.r == 1);
    REQUIRE(rep.z_out == d - 1);
    REQUIRE(rep.z_in == d - 1);
    REQUIRE(rep.order_ok);
    REQUIRE(rep.unique_path_ok);
    REQUIRE(rep.girth_ok);
    REQUIRE(rep.triangle_ok);
    REQUIRE(rep.diameter == 2);
    REQUIRE(rep.verdict);
  }
}

TEST_CASE("Moore verification rejects near misses") {
  SECTION("undirected cycle: wrong order and diameter") {
    MixedGraph g = moorecay::from_cayley(moorecay::cyclic_group(6), {1, 5}, {});
    auto rep = moorecay::verify_moore(g);
    REQUIRE_FALSE(rep.degrees_ok);  // no directed part
    REQUIRE(rep.r == 2);
    REQUIRE(rep.z_out == 0);
    REQUIRE_FALSE(rep.order_ok);
    REQUIRE(rep.girth_ok);  // a 6-cycle has no 3- or 4-cycles
    REQUIRE(rep.diameter == 3);
    REQUIRE_FALSE(rep.verdict);
  }

  SECTION("directed triangle: everything passes except mixedness") {
    MixedGraph g = moorecay::from_cayley(moorecay::cyclic_group(3), {}, {1});
    auto rep = moorecay::verify_moore(g);
    REQUIRE_FALSE(rep.degrees_ok);  // no undirected part
    REQUIRE(rep.order_ok);
    REQUIRE(rep.unique_path_ok);
    REQUIRE(rep.girth_ok);
    REQUIRE(rep.triangle_ok);
    REQUIRE(rep.diameter == 2);
    REQUIRE_FALSE(rep.verdict);
  }

  SECTION("non-uniform degrees") {
    MixedGraph path = MixedGraph::build(3, {{0, 1}, {1, 2}}, {});
    auto rep = moorecay::verify_moore(path);
    REQUIRE_FALSE(rep.degrees_ok);
    REQUIRE(rep.r == -1);
    REQUIRE_FALSE(rep.verdict);
  }

  SECTION("in-degree differs from out-degree") {
    MixedGraph g = MixedGraph::build(3, {}, {{0, 1}, {0, 2}, {1, 2}});
    auto rep = moorecay::verify_moore(g);
    REQUIRE_FALSE(rep.degrees_ok);
    REQUIRE(rep.z_out == -1);  // out-degrees 2,1,0 are not uniform
  }

  SECTION("arc in more than one directed triangle") {
    // two directed triangles sharing the arc 0 -> 1
    MixedGraph g = MixedGraph::build(4, {}, {{0, 1}, {1, 2}, {2, 0}, {1, 3}, {3, 0}});
    auto rep = moorecay::verify_moore(g);
    REQUIRE_FALSE(rep.triangle_ok);
  }
}

TEST_CASE("walk counting agrees with the enumeration oracle") {
  std::vector<MixedGraph> corpus;
  corpus.push_back(moorecay::kautz(2));
  corpus.push_back(moorecay::kautz(3));
  corpus.push_back(moorecay::kautz(4));
  corpus.push_back(moorecay::from_cayley(moorecay::cyclic_group(6), {1, 5}, {}));
  corpus.push_back(moorecay::from_cayley(moorecay::cyclic_group(3), {}, {1}));
  corpus.push_back(MixedGraph::build(4, {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}, {3, 0}}));

  std::mt19937 rng(20240811);
  for (int i = 0; i < 10; ++i) corpus.push_back(random_graph(rng, 5 + i * 2));

  for (const MixedGraph& g : corpus) {
    INFO("graph on " << g.n() << " vertices");
    auto rep = moorecay::verify_moore(g);
    REQUIRE(rep.unique_path_ok == unique_paths_expected(g));
  }
}

TEST_CASE("verification is invariant under relabeling and transpose") {
  std::mt19937 rng(987654321);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 5 + static_cast<int>(rng() % 26);
    MixedGraph g = random_graph(rng, n);
    auto rep = moorecay::verify_moore(g);

    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    REQUIRE(reports_equal(rep, moorecay::verify_moore(relabel(g, perm))));
    REQUIRE(reports_transpose_equal(rep, moorecay::verify_moore(moorecay::transpose(g))));
  }
}

TEST_CASE("transpose reverses arcs and is an involution") {
  MixedGraph g = moorecay::kautz(3);
  MixedGraph t = moorecay::transpose(g);
  REQUIRE(t.edges() == g.edges());
  REQUIRE(t.arcs().size() == g.arcs().size());
  for (const auto& [u, v] : g.arcs()) REQUIRE(t.has_arc(v, u));
  MixedGraph tt = moorecay::transpose(t);
  REQUIRE(tt.edges() == g.edges());
  REQUIRE(tt.arcs() == g.arcs());
  REQUIRE(moorecay::verify_moore(t).verdict);
}

TEST_CASE("isomorphism testing on mixed graphs") {
  SECTION("random relabelings are isomorphic") {
    std::mt19937 rng(13371337);
    for (int trial = 0; trial < 10; ++trial) {
      MixedGraph g = random_graph(rng, 12);
      std::vector<int> perm(g.n());
      for (int i = 0; i < g.n(); ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      REQUIRE(moorecay::isomorphic(g, relabel(g, perm)));
    }
  }

  SECTION("the Kautz graph is isomorphic to its transpose") {
    REQUIRE(moorecay::isomorphic(moorecay::kautz(3), moorecay::transpose(moorecay::kautz(3))));
  }

  SECTION("regular but structurally different graphs are distinguished") {
    // 6-cycle vs two disjoint triangles: both 2-regular undirected
    MixedGraph cycle =
        MixedGraph::build(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}}, {});
    MixedGraph triangles =
        MixedGraph::build(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}, {});
    REQUIRE_FALSE(moorecay::isomorphic(cycle, triangles));
  }

  SECTION("count mismatches are rejected immediately") {
    MixedGraph a = MixedGraph::build(3, {{0, 1}}, {});
    MixedGraph b = MixedGraph::build(3, {{0, 1}, {1, 2}}, {});
    MixedGraph c = MixedGraph::build(4, {{0, 1}}, {});
    REQUIRE_FALSE(moorecay::isomorphic(a, b));
    REQUIRE_FALSE(moorecay::isomorphic(a, c));
    MixedGraph d = MixedGraph::build(3, {}, {{0, 1}});
    REQUIRE_FALSE(moorecay::isomorphic(a, d));
  }

  SECTION("arc direction matters") {
    // same counts, but a directed 3-cycle is not a transitive triangle
    MixedGraph cyc = MixedGraph::build(3, {}, {{0, 1}, {1, 2}, {2, 0}});
    MixedGraph path = MixedGraph::build(3, {}, {{0, 1}, {1, 2}, {0, 2}});
    REQUIRE_FALSE(moorecay::isomorphic(cyc, path));
    // reversing one arc next to an edge changes the degree profile
    MixedGraph a = MixedGraph::build(3, {{1, 2}}, {{0, 1}});
    MixedGraph b = MixedGraph::build(3, {{1, 2}}, {{1, 0}});
    REQUIRE_FALSE(moorecay::isomorphic(a, b));
  }

  SECTION("size cap") {
    MixedGraph big = MixedGraph::build(moorecay::kGraphIsoCap + 1, {{0, 1}}, {});
    REQUIRE_THROWS_AS(moorecay::isomorphic(big, big), moorecay::SizeCapExceededError);
  }
}

TEST_CASE("graph files round-trip exactly") {
  MixedGraph g = moorecay::kautz(4);
  std::ostringstream first;
  moorecay::write_graph(g, first);

  std::istringstream in(first.str());
  MixedGraph back = moorecay::read_graph(in);
  REQUIRE(back.n() == g.n());
  REQUIRE(back.edges() == g.edges());
  REQUIRE(back.arcs() == g.arcs());

  std::ostringstream second;
  moorecay::write_graph(back, second);
  REQUIRE(second.str() == first.str());

  // header carries the vertex count and the degrees at vertex 0
  REQUIRE(first.str().substr(0, first.str().find('\n')) == "20 1 3");
}

TEST_CASE("graph file parser reports malformed input") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return moorecay::read_graph(in);
  };

  SECTION("comments and blank lines are fine") {
    MixedGraph g = parse("# mixed graph\n\n3 0 1\n# edges then arcs\nE 0 1\nA 1 2\n");
    REQUIRE(g.n() == 3);
    REQUIRE(g.edges().size() == 1);
    REQUIRE(g.arcs().size() == 1);
  }

  SECTION("failures carry 1-based line numbers") {
    try {
      parse("3 0 1\nE 0\n");
      FAIL("expected ParseError");
    } catch (const moorecay::ParseError& e) {
      REQUIRE(e.line() == 2);
    }
  }

  using moorecay::ParseError;
  REQUIRE_THROWS_AS(parse(""), ParseError);                          // missing header
  REQUIRE_THROWS_AS(parse("x y z\n"), ParseError);                   // bad header
  REQUIRE_THROWS_AS(parse("3 0\n"), ParseError);                     // truncated header
  REQUIRE_THROWS_AS(parse("3 0 1 9\n"), ParseError);                 // trailing header token
  REQUIRE_THROWS_AS(parse("0 0 0\n"), ParseError);                   // no vertices
  REQUIRE_THROWS_AS(parse("3 0 1\nQ 0 1\n"), ParseError);            // unknown kind
  REQUIRE_THROWS_AS(parse("3 0 1\nE 0 3\n"), ParseError);            // out of range
  REQUIRE_THROWS_AS(parse("3 0 1\nE 1 1\n"), ParseError);            // loop
  REQUIRE_THROWS_AS(parse("3 0 1\nE 0 1\nE 1 0\n"), ParseError);     // duplicate edge
  REQUIRE_THROWS_AS(parse("3 0 1\nA 0 1\nA 0 1\n"), ParseError);     // duplicate arc
  REQUIRE_THROWS_AS(parse("3 0 1\nA 0 1\nA 1 0\n"), ParseError);     // antiparallel arcs
  REQUIRE_THROWS_AS(parse("3 0 1\nE 0 1\nA 1 0\n"), ParseError);     // edge and arc overlap
  REQUIRE_THROWS_AS(parse("3 0 1\nE 0 1 7\n"), ParseError);          // trailing tokens
}

TEST_CASE("Cayley graph degrees follow the connection set sizes") {
  moorecay::Group g = moorecay::semidirect_cyclic(5, 4, 2);
  // s1: an inverse-closed pair; s2: two elements avoiding inverses
  std::vector<int> s1, s2;
  for (int x = 1; x < g.order() && s1.empty(); ++x)
    if (g.order_of(x) > 2) s1 = {x, g.inverse(x)};
  for (int x = 1; x < g.order() && s2.size() < 2; ++x) {
    if (g.order_of(x) == 2) continue;
    bool clash = std::find(s1.begin(), s1.end(), x) != s1.end();
    for (int y : s2)
      if (y == x || g.inverse(y) == x) clash = true;
    if (!clash) s2.push_back(x);
  }
  MixedGraph cay = moorecay::from_cayley(g, s1, s2);
  for (int v = 0; v < cay.n(); ++v) {
    REQUIRE(cay.und_degree(v) == 2);
    REQUIRE(cay.out_degree(v) == 2);
    REQUIRE(cay.in_degree(v) == 2);
  }
}
