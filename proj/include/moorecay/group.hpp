#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "moorecay/common.hpp"

namespace moorecay {

// Automorphism and isomorphism searches are exponential in the worst case;
// groups above this order are rejected rather than left to run forever.
inline constexpr int kGroupOrderCap = 512;

// A finite group as a dense multiplication table over element indices
// 0..n-1, with the identity pinned at index 0. Immutable after
// construction; inverses and element orders are cached eagerly.
class Group {
 public:
  // Validates the table (Latin square, identity, associativity), relabels
  // so the identity sits at index 0, and fills the caches.
  static Group from_table(std::vector<std::vector<int>> table, std::string name);

  int order() const { return n_; }
  const std::string& name() const { return name_; }
  bool abelian() const { return abelian_; }

  int mul(int a, int b) const { return table_[static_cast<size_t>(a) * n_ + b]; }
  int inverse(int g) const { return inverse_[g]; }
  int order_of(int g) const { return element_order_[g]; }

  // Orders of all elements, index-aligned.
  const std::vector<int>& element_orders() const { return element_order_; }

  bool operator==(const Group& other) const {
    return n_ == other.n_ && table_ == other.table_;
  }

 private:
  Group() = default;

  int n_ = 0;
  std::string name_;
  std::vector<int> table_;  // flattened n*n
  std::vector<int> inverse_;
  std::vector<int> element_order_;
  bool abelian_ = false;
};

// A subgroup as a sorted list of element indices.
struct Subgroup {
  std::vector<int> elements;

  int size() const { return static_cast<int>(elements.size()); }
  bool contains(int g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
  }
  bool operator==(const Subgroup& other) const { return elements == other.elements; }
  bool operator<(const Subgroup& other) const { return elements < other.elements; }
};

// A group automorphism as a permutation of element indices.
struct Automorphism {
  std::vector<int> map;

  int operator()(int g) const { return map[g]; }

  std::vector<int> apply_sorted(const std::vector<int>& set) const {
    std::vector<int> image;
    image.reserve(set.size());
    for (int g : set) image.push_back(map[g]);
    std::sort(image.begin(), image.end());
    return image;
  }

  bool operator==(const Automorphism& other) const { return map == other.map; }
};

inline Group Group::from_table(std::vector<std::vector<int>> table, std::string name) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw NotLatinSquareError("empty table");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n)
      throw NotLatinSquareError("row " + std::to_string(i) + " has " +
                                std::to_string(table[i].size()) + " entries, expected " +
                                std::to_string(n));
    for (int j = 0; j < n; ++j) {
      int v = table[i][j];
      if (v < 0 || v >= n)
        throw NotLatinSquareError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") = " + std::to_string(v) + " out of range");
    }
  }

  // Latin square: every row and every column is a permutation.
  {
    std::vector<char> seen(n);
    for (int i = 0; i < n; ++i) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int j = 0; j < n; ++j) {
        if (seen[table[i][j]])
          throw NotLatinSquareError("row " + std::to_string(i) + " repeats value " +
                                    std::to_string(table[i][j]) + " at column " +
                                    std::to_string(j));
        seen[table[i][j]] = 1;
      }
    }
    for (int j = 0; j < n; ++j) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int i = 0; i < n; ++i) {
        if (seen[table[i][j]])
          throw NotLatinSquareError("column " + std::to_string(j) + " repeats value " +
                                    std::to_string(table[i][j]) + " at row " +
                                    std::to_string(i));
        seen[table[i][j]] = 1;
      }
    }
  }

  // Locate the two-sided identity.
  int identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int j = 0; j < n; ++j) {
      if (table[e][j] != j || table[j][e] != j) {
        ok = false;
        break;
      }
    }
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) throw NoIdentityError("no two-sided identity element");

  // Relabel so the identity is element 0 (swap labels 0 <-> identity).
  if (identity != 0) {
    std::vector<int> relab(n);
    std::iota(relab.begin(), relab.end(), 0);
    relab[0] = identity;
    relab[identity] = 0;
    std::vector<std::vector<int>> relabeled(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        relabeled[relab[i]][relab[j]] = relab[table[i][j]];
    table = std::move(relabeled);
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (table[table[i][j]][k] != table[i][table[j][k]])
          throw NotAssociativeError("associativity fails at triple (" + std::to_string(i) +
                                    "," + std::to_string(j) + "," + std::to_string(k) + ")");

  Group g;
  g.n_ = n;
  g.name_ = std::move(name);
  g.table_.resize(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g.table_[static_cast<size_t>(i) * n + j] = table[i][j];

  g.inverse_.assign(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.mul(i, j) == 0) g.inverse_[i] = j;

  g.element_order_.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    int m = 1;
    int acc = i;
    while (acc != 0) {
      acc = g.mul(acc, i);
      ++m;
    }
    g.element_order_[i] = m;
  }

  g.abelian_ = true;
  for (int i = 0; i < n && g.abelian_; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.mul(i, j) != g.mul(j, i)) {
        g.abelian_ = false;
        break;
      }

  return g;
}

// Smallest subgroup containing the given generators, by breadth-first
// saturation under the group product.
inline Subgroup closure(const Group& g, const std::vector<int>& generators) {
  const int n = g.order();
  std::vector<char> member(n, 0);
  std::vector<int> elems;
  auto add = [&](int x) {
    if (!member[x]) {
      member[x] = 1;
      elems.push_back(x);
    }
  };
  add(0);
  for (int x : generators) add(x);
  for (size_t i = 0; i < elems.size(); ++i) {
    for (size_t j = 0; j <= i; ++j) {
      add(g.mul(elems[i], elems[j]));
      add(g.mul(elems[j], elems[i]));
    }
  }
  std::sort(elems.begin(), elems.end());
  return Subgroup{std::move(elems)};
}

// All subgroups of index exactly 2. The subgroup N generated by all
// squares and commutators gives an elementary abelian 2-group G/N, and
// the index-2 subgroups of G are exactly the preimages of its
// hyperplanes, one per nonzero linear functional on G/N.
inline std::vector<Subgroup> index_two_subgroups(const Group& g) {
  const int n = g.order();
  std::vector<int> gens;
  gens.reserve(static_cast<size_t>(n) + static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x) gens.push_back(g.mul(x, x));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      gens.push_back(g.mul(g.mul(g.inverse(x), g.inverse(y)), g.mul(x, y)));
  Subgroup nsub = closure(g, gens);
  if (nsub.size() == n) return {};

  // Left-coset representative of each element; ascending scan makes the
  // representative the least element of its coset.
  std::vector<int> rep(n, -1);
  for (int x = 0; x < n; ++x) {
    if (rep[x] >= 0) continue;
    for (int h : nsub.elements) rep[g.mul(x, h)] = x;
  }

  // Coordinates of each coset over F2, one bit per basis element of G/N.
  std::vector<int> coord(n, -1);
  coord[0] = 0;
  std::vector<int> span{0};
  int bits = 0;
  for (int r = 0; r < n; ++r) {
    if (rep[r] != r || coord[r] >= 0) continue;
    const int bit = 1 << bits++;
    std::vector<int> snapshot = span;
    for (int q : snapshot) {
      int t = rep[g.mul(q, r)];
      coord[t] = coord[q] | bit;
      span.push_back(t);
    }
  }

  std::vector<Subgroup> result;
  for (int mask = 1; mask < (1 << bits); ++mask) {
    std::vector<int> elems;
    elems.reserve(static_cast<size_t>(n) / 2);
    for (int x = 0; x < n; ++x)
      if (__builtin_parity(static_cast<unsigned>(coord[rep[x]] & mask)) == 0)
        elems.push_back(x);
    result.push_back(Subgroup{std::move(elems)});
  }
  std::sort(result.begin(), result.end());
  return result;
}

namespace detail {

// Backtracking search for bijective homomorphisms src -> dst. Images of a
// greedy generating sequence are chosen one at a time; each choice is
// propagated through the multiplication table, pruning on any clash. With
// src == dst this enumerates the automorphism group.
class MorphismSearch {
 public:
  MorphismSearch(const Group& src, const Group& dst, bool find_all)
      : src_(src), dst_(dst), find_all_(find_all) {}

  std::vector<std::vector<int>> run() {
    const int n = src_.order();
    if (n != dst_.order()) return {};
    {
      std::vector<int> a = src_.element_orders();
      std::vector<int> b = dst_.element_orders();
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) return {};
    }

    // Count dst elements per order, then pick generators greedily: each
    // new generator lies outside the subgroup generated so far and has as
    // few order-compatible image candidates as possible.
    std::vector<int> dst_order_count(n + 1, 0);
    for (int x = 0; x < n; ++x) ++dst_order_count[dst_.order_of(x)];

    std::vector<char> in_span(n, 0);
    in_span[0] = 1;
    std::vector<int> span_elems{0};
    while (static_cast<int>(span_elems.size()) < n) {
      int best = -1;
      for (int x = 0; x < n; ++x) {
        if (in_span[x]) continue;
        if (best < 0 || dst_order_count[src_.order_of(x)] < dst_order_count[src_.order_of(best)])
          best = x;
      }
      gens_.push_back(best);
      Subgroup ext = closure(src_, [&] {
        std::vector<int> s = span_elems;
        s.push_back(best);
        return s;
      }());
      span_elems = ext.elements;
      for (int e : span_elems) in_span[e] = 1;
    }

    candidates_.resize(gens_.size());
    for (size_t i = 0; i < gens_.size(); ++i) {
      const int want = src_.order_of(gens_[i]);
      for (int y = 1; y < n; ++y)
        if (dst_.order_of(y) == want) candidates_[i].push_back(y);
    }

    img_.assign(n, -1);
    used_.assign(n, 0);
    img_[0] = 0;
    used_[0] = 1;
    known_.push_back(0);
    dfs(0);
    return std::move(found_);
  }

 private:
  bool unify(int p, int q, std::vector<int>& trail) {
    if (img_[p] == q) return true;
    if (img_[p] != -1 || used_[q]) return false;
    img_[p] = q;
    used_[q] = 1;
    known_.push_back(p);
    trail.push_back(p);
    return true;
  }

  bool propagate(size_t from, std::vector<int>& trail) {
    for (size_t i = from; i < known_.size(); ++i) {
      const int x = known_[i];
      for (size_t j = 0; j < known_.size(); ++j) {
        const int k = known_[j];
        if (!unify(src_.mul(x, k), dst_.mul(img_[x], img_[k]), trail)) return false;
        if (!unify(src_.mul(k, x), dst_.mul(img_[k], img_[x]), trail)) return false;
      }
    }
    return true;
  }

  void dfs(size_t gi) {
    if (!find_all_ && !found_.empty()) return;
    if (gi == gens_.size()) {
      found_.push_back(img_);
      return;
    }
    const int g = gens_[gi];
    for (int y : candidates_[gi]) {
      if (used_[y]) continue;
      std::vector<int> trail;
      const size_t mark = known_.size();
      if (unify(g, y, trail) && propagate(mark, trail)) dfs(gi + 1);
      for (int p : trail) {
        used_[img_[p]] = 0;
        img_[p] = -1;
      }
      known_.resize(mark);
      if (!find_all_ && !found_.empty()) return;
    }
  }

  const Group& src_;
  const Group& dst_;
  bool find_all_;
  std::vector<int> gens_;
  std::vector<std::vector<int>> candidates_;
  std::vector<int> img_;
  std::vector<char> used_;
  std::vector<int> known_;
  std::vector<std::vector<int>> found_;
};

}  // namespace detail

// The complete automorphism group, in a deterministic order.
inline std::vector<Automorphism> automorphism_group(const Group& g) {
  if (g.order() > kGroupOrderCap)
    throw CapExceededError("automorphism search capped at order " +
                           std::to_string(kGroupOrderCap) + ", group has order " +
                           std::to_string(g.order()));
  detail::MorphismSearch search(g, g, /*find_all=*/true);
  std::vector<Automorphism> auts;
  for (auto& m : search.run()) auts.push_back(Automorphism{std::move(m)});
  return auts;
}

inline bool groups_isomorphic(const Group& a, const Group& b) {
  if (a.order() != b.order()) return false;
  if (a.order() > kGroupOrderCap)
    throw CapExceededError("isomorphism search capped at order " +
                           std::to_string(kGroupOrderCap) + ", groups have order " +
                           std::to_string(a.order()));
  if (a.abelian() != b.abelian()) return false;
  detail::MorphismSearch search(a, b, /*find_all=*/false);
  return !search.run().empty();
}

// Orbit-canonical form of an element set: the lexicographically least
// sorted image under the given (full) automorphism list. Two sets lie in
// the same orbit iff their canonical forms coincide.
inline std::vector<int> canonical_set(const Group&, const std::vector<int>& set,
                                      const std::vector<Automorphism>& auts) {
  std::vector<int> best = set;
  std::sort(best.begin(), best.end());
  for (const Automorphism& phi : auts) {
    std::vector<int> image = phi.apply_sorted(set);
    if (image < best) best = image;
  }
  return best;
}

}  // namespace moorecay
