#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "moorecay/catalog.hpp"
#include "moorecay/group.hpp"
#include "oracles.hpp"

using moorecay::Group;
using moorecay::Subgroup;

namespace {

std::vector<std::vector<int>> cyclic_table(int n, int shift = 0) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j + shift) % n;
  return t;
}

}  // namespace

TEST_CASE("table validation accepts cyclic tables") {
  for (int n : {1, 2, 3, 6, 11}) {
    Group g = Group::from_table(cyclic_table(n), "C" + std::to_string(n));
    REQUIRE(g.order() == n);
    REQUIRE(g.abelian());
    for (int j = 0; j < n; ++j) {
      REQUIRE(g.mul(0, j) == j);
      REQUIRE(g.mul(j, 0) == j);
    }
  }
}

TEST_CASE("table validation rejects malformed tables") {
  SECTION("empty") {
    REQUIRE_THROWS_AS(Group::from_table({}, "x"), moorecay::NotLatinSquareError);
  }
  SECTION("ragged row") {
    REQUIRE_THROWS_AS(Group::from_table({{0, 1}, {1}}, "x"), moorecay::NotLatinSquareError);
  }
  SECTION("entry out of range") {
    REQUIRE_THROWS_AS(Group::from_table({{0, 2}, {1, 0}}, "x"), moorecay::NotLatinSquareError);
  }
  SECTION("repeat within a row") {
    REQUIRE_THROWS_AS(Group::from_table({{0, 0}, {1, 1}}, "x"), moorecay::NotLatinSquareError);
  }
  SECTION("repeat within a column") {
    REQUIRE_THROWS_AS(Group::from_table({{0, 1}, {0, 1}}, "x"), moorecay::NotLatinSquareError);
  }
  SECTION("left identity only") {
    // row 0 acts as identity on the left, but no element works two-sided
    REQUIRE_THROWS_AS(Group::from_table({{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}, "x"),
                      moorecay::NoIdentityError);
  }
  SECTION("latin square that is not associative") {
    // swap the 2x2 subsquare of C6 at rows {1,4} x cols {1,4}; rows and
    // columns stay permutations but (4*4)*2 != 4*(4*2)
    auto t = cyclic_table(6);
    std::swap(t[1][1], t[1][4]);
    std::swap(t[4][1], t[4][4]);
    // net effect: t[1][1]=5, t[1][4]=2, t[4][1]=2, t[4][4]=5
    REQUIRE(t[1][1] == 5);
    REQUIRE(t[4][4] == 5);
    REQUIRE_THROWS_AS(Group::from_table(t, "x"), moorecay::NotAssociativeError);
  }
}

TEST_CASE("identity is relabeled to element 0") {
  // shifted cyclic table: the identity of this C3 sits at index 2
  Group g = Group::from_table(cyclic_table(3, 1), "shifted");
  REQUIRE(g.order() == 3);
  for (int j = 0; j < 3; ++j) {
    REQUIRE(g.mul(0, j) == j);
    REQUIRE(g.mul(j, 0) == j);
  }
  REQUIRE(g.element_orders() == std::vector<int>{1, 3, 3});
}

TEST_CASE("element orders and inverses") {
  Group c6 = moorecay::cyclic_group(6);
  REQUIRE(c6.element_orders() == std::vector<int>{1, 6, 3, 2, 3, 6});

  for (const Group& g : {moorecay::cyclic_group(6), moorecay::symmetric_group(4),
                         moorecay::dicyclic_group(12)}) {
    for (int x = 0; x < g.order(); ++x) {
      REQUIRE(g.mul(x, g.inverse(x)) == 0);
      REQUIRE(g.mul(g.inverse(x), x) == 0);
      REQUIRE(g.order_of(g.inverse(x)) == g.order_of(x));
    }
    REQUIRE(g.order_of(0) == 1);
  }
}

TEST_CASE("closure generates the expected subgroups") {
  Group c6 = moorecay::cyclic_group(6);
  REQUIRE(moorecay::closure(c6, {}).elements == std::vector<int>{0});
  REQUIRE(moorecay::closure(c6, {2}).elements == std::vector<int>{0, 2, 4});
  REQUIRE(moorecay::closure(c6, {1}).size() == 6);

  Group s3 = moorecay::symmetric_group(3);
  int transposition = -1;
  for (int x = 1; x < 6; ++x)
    if (s3.order_of(x) == 2) {
      transposition = x;
      break;
    }
  REQUIRE(moorecay::closure(s3, {transposition}).size() == 2);
}

TEST_CASE("index-2 subgroups of known groups") {
  SECTION("cyclic of order 6") {
    auto subs = moorecay::index_two_subgroups(moorecay::cyclic_group(6));
    REQUIRE(subs.size() == 1);
    REQUIRE(subs[0].elements == std::vector<int>{0, 2, 4});
  }
  SECTION("alternating on 4 points has none") {
    REQUIRE(moorecay::index_two_subgroups(moorecay::alternating_group(4)).empty());
  }
  SECTION("Klein four-group has three") {
    Group v4 = moorecay::direct_product(moorecay::cyclic_group(2), moorecay::cyclic_group(2));
    auto subs = moorecay::index_two_subgroups(v4);
    REQUIRE(subs.size() == 3);
    REQUIRE(subs[0].elements == std::vector<int>{0, 1});
    REQUIRE(subs[1].elements == std::vector<int>{0, 2});
    REQUIRE(subs[2].elements == std::vector<int>{0, 3});
  }
  SECTION("dihedral of order 12 has three") {
    REQUIRE(moorecay::index_two_subgroups(moorecay::dihedral_group(12)).size() == 3);
  }
}

TEST_CASE("index-2 subgroups match the exhaustive oracle") {
  std::vector<Group> groups;
  for (int n : {6, 12, 18, 20})
    for (Group& g : moorecay::catalog_for_order(n).groups) groups.push_back(std::move(g));
  groups.push_back(moorecay::cyclic_group(16));
  groups.push_back(moorecay::dicyclic_group(16));

  for (const Group& g : groups) {
    INFO("group " << g.name());
    auto fast = moorecay::index_two_subgroups(g);
    auto slow = oracles::index_two_subgroups(g);
    REQUIRE(fast == slow);
    for (const Subgroup& h : fast) REQUIRE(h.size() * 2 == g.order());
  }
}

TEST_CASE("subgroup membership lookups") {
  Subgroup h{{0, 2, 4}};
  REQUIRE(h.contains(0));
  REQUIRE(h.contains(4));
  REQUIRE_FALSE(h.contains(1));
  REQUIRE(h.size() == 3);
}

TEST_CASE("automorphism groups match the exhaustive oracle") {
  std::vector<Group> groups;
  groups.push_back(moorecay::cyclic_group(6));
  groups.push_back(moorecay::symmetric_group(3));
  groups.push_back(moorecay::cyclic_group(8));
  groups.push_back(moorecay::dihedral_group(8));
  groups.push_back(moorecay::direct_product(
      moorecay::cyclic_group(2),
      moorecay::direct_product(moorecay::cyclic_group(2), moorecay::cyclic_group(2))));

  for (const Group& g : groups) {
    INFO("group " << g.name());
    auto fast = moorecay::automorphism_group(g);
    auto slow = oracles::automorphisms(g);
    std::set<std::vector<int>> fast_maps, slow_maps;
    for (const auto& a : fast) fast_maps.insert(a.map);
    for (const auto& a : slow) slow_maps.insert(a.map);
    REQUIRE(fast_maps.size() == fast.size());  // no duplicates
    REQUIRE(fast_maps == slow_maps);
  }
}

TEST_CASE("automorphism group sizes of classical groups") {
  auto aut_size = [](const Group& g) { return moorecay::automorphism_group(g).size(); };
  REQUIRE(aut_size(moorecay::cyclic_group(6)) == 2);
  REQUIRE(aut_size(moorecay::cyclic_group(18)) == 6);
  REQUIRE(aut_size(moorecay::cyclic_group(20)) == 8);
  REQUIRE(aut_size(moorecay::symmetric_group(3)) == 6);
  REQUIRE(aut_size(moorecay::alternating_group(4)) == 24);
  REQUIRE(aut_size(moorecay::dihedral_group(18)) == 54);
  REQUIRE(aut_size(moorecay::direct_product(moorecay::cyclic_group(3),
                                            moorecay::cyclic_group(6))) == 48);
}

TEST_CASE("automorphism list is a group under composition") {
  for (const Group& g : {moorecay::symmetric_group(3), moorecay::dicyclic_group(12)}) {
    auto auts = moorecay::automorphism_group(g);
    std::set<std::vector<int>> maps;
    for (const auto& a : auts) maps.insert(a.map);

    // identity present
    std::vector<int> id(g.order());
    for (int i = 0; i < g.order(); ++i) id[i] = i;
    REQUIRE(maps.count(id) == 1);

    // closed under composition and inverses
    for (const auto& a : auts) {
      std::vector<int> inv(g.order());
      for (int i = 0; i < g.order(); ++i) inv[a.map[i]] = i;
      REQUIRE(maps.count(inv) == 1);
      for (const auto& b : auts) {
        std::vector<int> comp(g.order());
        for (int i = 0; i < g.order(); ++i) comp[i] = b.map[a.map[i]];
        REQUIRE(maps.count(comp) == 1);
      }
    }
  }
}

TEST_CASE("canonical set picks the least orbit representative") {
  Group c6 = moorecay::cyclic_group(6);
  auto auts = moorecay::automorphism_group(c6);  // identity and negation
  REQUIRE(moorecay::canonical_set(c6, {1}, auts) == std::vector<int>{1});
  REQUIRE(moorecay::canonical_set(c6, {5}, auts) == std::vector<int>{1});
  REQUIRE(moorecay::canonical_set(c6, {2, 4}, auts) == std::vector<int>{2, 4});
  REQUIRE(moorecay::canonical_set(c6, {4, 2}, auts) == std::vector<int>{2, 4});

  // idempotent, and constant across each orbit
  Group s3 = moorecay::symmetric_group(3);
  auto s3_auts = moorecay::automorphism_group(s3);
  for (int a = 1; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b) {
      auto canon = moorecay::canonical_set(s3, {a, b}, s3_auts);
      REQUIRE(moorecay::canonical_set(s3, canon, s3_auts) == canon);
      for (const auto& phi : s3_auts)
        REQUIRE(moorecay::canonical_set(s3, phi.apply_sorted({a, b}), s3_auts) == canon);
    }
}

TEST_CASE("isomorphism testing distinguishes the order-6 and order-4 groups") {
  Group c6 = moorecay::cyclic_group(6);
  Group s3 = moorecay::symmetric_group(3);
  REQUIRE(moorecay::groups_isomorphic(c6, c6));
  REQUIRE_FALSE(moorecay::groups_isomorphic(c6, s3));

  Group c4 = moorecay::cyclic_group(4);
  Group v4 = moorecay::direct_product(moorecay::cyclic_group(2), moorecay::cyclic_group(2));
  REQUIRE_FALSE(moorecay::groups_isomorphic(c4, v4));
  REQUIRE_FALSE(moorecay::groups_isomorphic(c4, c6));
}

TEST_CASE("isomorphism testing finds a nonobvious pair") {
  Group d12 = moorecay::dihedral_group(12);
  Group c2xs3 = moorecay::direct_product(moorecay::cyclic_group(2), moorecay::symmetric_group(3));
  REQUIRE(moorecay::groups_isomorphic(d12, c2xs3));
  // relabeled copy of the same table is isomorphic too
  Group shifted = Group::from_table(cyclic_table(12, 5), "shifted");
  REQUIRE(moorecay::groups_isomorphic(shifted, moorecay::cyclic_group(12)));
  REQUIRE_FALSE(moorecay::groups_isomorphic(shifted, d12));
}

TEST_CASE("exponential searches refuse groups beyond the order cap") {
  Group big = moorecay::cyclic_group(moorecay::kGroupOrderCap + 1);
  REQUIRE_THROWS_AS(moorecay::automorphism_group(big), moorecay::CapExceededError);
  REQUIRE_THROWS_AS(moorecay::groups_isomorphic(big, big), moorecay::CapExceededError);
}
