#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "moorecay/common.hpp"
#include "moorecay/feasibility.hpp"
#include "moorecay/group.hpp"
#include "moorecay/mixed_graph.hpp"

namespace moorecay {

// ---------------------------------------------------------------------------
// Generator sets and the subset-feasibility arithmetic
// ---------------------------------------------------------------------------

struct GeneratorSet {
  std::vector<int> s1;  // undirected part, inverse-closed
  std::vector<int> s2;  // directed part, inverse-free
};

// |{1} ∪ T ∪ TT| — the number of group elements reachable from the
// identity by a product of at most two elements of T.
inline int span_size(const Group& g, const std::vector<int>& t) {
  std::vector<char> hit(g.order(), 0);
  hit[0] = 1;
  int count = 1;
  auto add = [&](int x) {
    if (!hit[x]) {
      hit[x] = 1;
      ++count;
    }
  };
  for (int x : t) add(x);
  for (int x : t)
    for (int y : t) add(g.mul(x, y));
  return count;
}

// A generating subset (T1, T2) is feasible when its span attains the Moore
// count for its own degrees: |{1} ∪ T ∪ TT| = (z'+r')² + z' + 1.  Every
// subset of a diameter-2 Moore generating set must satisfy this.
inline bool is_feasible_subset(const Group& g, const std::vector<int>& t1,
                               const std::vector<int>& t2) {
  std::vector<int> t = t1;
  t.insert(t.end(), t2.begin(), t2.end());
  const long long r = static_cast<long long>(t1.size());
  const long long z = static_cast<long long>(t2.size());
  return span_size(g, t) == (z + r) * (z + r) + z + 1;
}

// ---------------------------------------------------------------------------
// Structural filter on generator sets
// ---------------------------------------------------------------------------

// Conditions a generating set of a diameter-2 mixed Moore Cayley graph must
// satisfy, checked in a fixed order; the first failure wins.
enum class Violation {
  none,
  undirected_order,         // an undirected generator has order 3 or 4
  directed_involution,      // a directed generator is an involution
  pair_product_involution,  // two undirected generators multiply to an involution
  commuting_pair,           // two distinct generators commute (non-inverse-pair)
  not_product_free,         // some generator is a product of two generators
  repeated_product,         // a non-identity product of two generators repeats
  directed_structure,       // directed part is not order-3 singles + closed triples
};

inline const char* violation_name(Violation v) {
  switch (v) {
    case Violation::none: return "pass";
    case Violation::undirected_order: return "undirected-order";
    case Violation::directed_involution: return "directed-involution";
    case Violation::pair_product_involution: return "pair-product-involution";
    case Violation::commuting_pair: return "commuting-pair";
    case Violation::not_product_free: return "not-product-free";
    case Violation::repeated_product: return "repeated-product";
    case Violation::directed_structure: return "directed-structure";
  }
  return "?";
}

namespace detail {

// Can the order->=4 part of a directed set be partitioned into triples
// {a, b, c} with abc = 1 under some cyclic ordering?
inline bool triple_partition_exists(const Group& g, std::vector<int> q) {
  if (q.empty()) return true;
  if (q.size() % 3 != 0) return false;
  std::sort(q.begin(), q.end());
  auto closes = [&g](int a, int b, int c) {
    return g.mul(g.mul(a, b), c) == 0 || g.mul(g.mul(a, c), b) == 0;
  };
  std::function<bool(std::vector<int>&)> solve = [&](std::vector<int>& rest) {
    if (rest.empty()) return true;
    int a = rest[0];
    for (size_t i = 1; i + 1 < rest.size(); ++i) {
      for (size_t j = i + 1; j < rest.size(); ++j) {
        if (!closes(a, rest[i], rest[j])) continue;
        std::vector<int> next;
        for (size_t k = 1; k < rest.size(); ++k)
          if (k != i && k != j) next.push_back(rest[k]);
        if (solve(next)) return true;
      }
    }
    return false;
  };
  return solve(q);
}

}  // namespace detail

// Checks the structural conditions in order and reports the first
// violation, or Violation::none.  Item order: undirected element orders;
// directed involutions; undirected pair products; commuting pairs;
// product-freeness; product uniqueness; directed-part structure.
inline Violation generator_filter(const Group& g, const std::vector<int>& s1,
                                  const std::vector<int>& s2) {
  for (int x : s1) {
    int o = g.order_of(x);
    if (o == 3 || o == 4) return Violation::undirected_order;
  }
  for (int x : s2)
    if (g.order_of(x) == 2) return Violation::directed_involution;
  for (size_t i = 0; i < s1.size(); ++i)
    for (size_t j = i + 1; j < s1.size(); ++j)
      if (g.order_of(g.mul(s1[i], s1[j])) == 2) return Violation::pair_product_involution;

  std::vector<int> s = s1;
  s.insert(s.end(), s2.begin(), s2.end());
  std::vector<char> in_s1(g.order(), 0);
  for (int x : s1) in_s1[x] = 1;
  for (size_t i = 0; i < s.size(); ++i) {
    for (size_t j = i + 1; j < s.size(); ++j) {
      int x = s[i], y = s[j];
      if (g.mul(x, y) != g.mul(y, x)) continue;
      bool inverse_pair_in_s1 = in_s1[x] && in_s1[y] && g.inverse(x) == y;
      if (!inverse_pair_in_s1) return Violation::commuting_pair;
    }
  }

  std::vector<char> in_s(g.order(), 0);
  for (int x : s) in_s[x] = 1;
  for (int x : s)
    for (int y : s)
      if (in_s[g.mul(x, y)]) return Violation::not_product_free;

  std::vector<char> product_seen(g.order(), 0);
  for (int x : s)
    for (int y : s) {
      int p = g.mul(x, y);
      if (p == 0) continue;
      if (product_seen[p]) return Violation::repeated_product;
      product_seen[p] = 1;
    }

  std::vector<int> high_order;
  for (int x : s2) {
    int o = g.order_of(x);
    if (o != 3) {
      if (o < 4) return Violation::directed_structure;
      high_order.push_back(x);
    }
  }
  if (!detail::triple_partition_exists(g, high_order)) return Violation::directed_structure;
  return Violation::none;
}

// ---------------------------------------------------------------------------
// Index-2 subgroup constraints
// ---------------------------------------------------------------------------

namespace detail {

inline bool subgroup_abelian(const Group& g, const Subgroup& h) {
  for (size_t i = 0; i < h.elements.size(); ++i)
    for (size_t j = i + 1; j < h.elements.size(); ++j)
      if (g.mul(h.elements[i], h.elements[j]) != g.mul(h.elements[j], h.elements[i])) return false;
  return true;
}

// How many generators already chosen lie in each index-2 subgroup.
inline std::vector<int> subgroup_hits(const std::vector<Subgroup>& subs,
                                      const std::vector<int>& chosen) {
  std::vector<int> t(subs.size(), 0);
  for (size_t h = 0; h < subs.size(); ++h)
    for (int x : chosen)
      if (subs[h].contains(x)) ++t[h];
  return t;
}

// For every index-2 subgroup there must be a split value s reachable from
// the current count t with the given head room: t <= s <= t + room.
// room = 0 is the exact completion test.
inline bool splits_reachable(const std::vector<Subgroup>& subs,
                             const std::vector<long long>& splits, const std::vector<int>& hits,
                             int room) {
  if (subs.empty()) return true;
  if (splits.empty()) return false;
  for (size_t h = 0; h < subs.size(); ++h) {
    bool ok = false;
    for (long long s : splits)
      if (hits[h] <= s && s <= hits[h] + room) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

// A group whose index-2 subgroups cannot accommodate any valid generator
// split for (r, z) hosts no diameter-2 mixed Moore Cayley graph of those
// degrees; in particular an abelian index-2 subgroup rules the group out
// whenever 2(z+r) − √(4r−3) > 9.
inline bool index_two_rejects_group(const Group& g, const std::vector<Subgroup>& subs,
                                    long long r, long long z) {
  if (subs.empty()) return false;
  if (index_two_split(r, z).empty()) return true;
  if (!excludes_abelian_index_two(r, z)) return false;
  for (const Subgroup& h : subs)
    if (detail::subgroup_abelian(g, h)) return true;
  return false;
}

// Prefilter for a chosen undirected part with the directed part still
// open: every index-2 subgroup needs some split value s with
// |A ∩ H| <= s <= |A ∩ H| + z.
inline bool index_two_prefilter(const Group& g, const std::vector<int>& a, long long r,
                                long long z) {
  std::vector<Subgroup> subs = index_two_subgroups(g);
  if (index_two_rejects_group(g, subs, r, z)) return false;
  return detail::splits_reachable(subs, index_two_split(r, z), detail::subgroup_hits(subs, a),
                                  static_cast<int>(z));
}

// ---------------------------------------------------------------------------
// Candidate enumeration
// ---------------------------------------------------------------------------

namespace detail {

// Cooperative deadline shared by the enumeration recursions.
struct Deadline {
  std::chrono::steady_clock::time_point at{};
  bool armed = false;
  mutable int tick = 0;
  mutable bool expired = false;

  bool check() const {
    if (!armed || expired) return expired;
    if ((++tick & 1023) == 0 && std::chrono::steady_clock::now() >= at) expired = true;
    return expired;
  }
};

}  // namespace detail

// Orbit representatives (lexicographically least under Aut(G)) of all
// inverse-closed size-r sets whose span attains r² + 1, restricted by the
// undirected-only structural conditions and the index-2 prefilter.
inline std::vector<std::vector<int>> undirected_candidates(
    const Group& g, int r, int z, const std::vector<Automorphism>& auts,
    const detail::Deadline& deadline = {}) {
  std::vector<Subgroup> subs = index_two_subgroups(g);
  std::vector<long long> splits = index_two_split(r, z);
  if (index_two_rejects_group(g, subs, r, z)) return {};

  // units: a single involution, or an inverse pair {a, a⁻¹}; ordered by
  // least element so the recursion can enforce strictly increasing units
  std::vector<std::vector<int>> units;
  for (int x = 1; x < g.order(); ++x) {
    int o = g.order_of(x);
    if (o == 3 || o == 4) continue;  // cannot appear in the undirected part
    if (o == 2)
      units.push_back({x});
    else if (x < g.inverse(x))
      units.push_back({x, g.inverse(x)});
  }

  std::vector<std::vector<int>> found;
  std::vector<int> current;

  std::function<void(size_t)> recurse = [&](size_t from) {
    if (deadline.check()) return;
    if (static_cast<int>(current.size()) == r) {
      std::vector<int> sorted = current;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != canonical_set(g, sorted, auts)) return;
      if (!detail::splits_reachable(subs, splits, detail::subgroup_hits(subs, sorted), z)) return;
      found.push_back(std::move(sorted));
      return;
    }
    for (size_t u = from; u < units.size(); ++u) {
      const auto& unit = units[u];
      if (current.size() + unit.size() > static_cast<size_t>(r)) continue;

      bool ok = true;
      for (int x : unit) {
        for (int y : current) {
          if (g.order_of(g.mul(x, y)) == 2) ok = false;                       // pair product
          else if (g.mul(x, y) == g.mul(y, x)) ok = false;                    // commuting
          if (!ok) break;
        }
        if (!ok) break;
      }
      if (!ok) continue;

      for (int x : unit) current.push_back(x);
      if (span_size(g, current) ==
          static_cast<int>(current.size()) * static_cast<int>(current.size()) + 1)
        recurse(u + 1);
      current.resize(current.size() - unit.size());
    }
  };
  recurse(0);
  std::sort(found.begin(), found.end());
  return found;
}

inline std::vector<std::vector<int>> undirected_candidates(const Group& g, int r, int z) {
  return undirected_candidates(g, r, z, automorphism_group(g));
}

// ---------------------------------------------------------------------------
// Directed components and extension
// ---------------------------------------------------------------------------

// The directed part of a valid generating set decomposes into elements of
// order 3 (x alone yields the directed triangles g, gx, gx²) and closed
// triples {a, b, (ab)⁻¹} with every member of order at least 4.
struct DirectedComponents {
  std::vector<int> singles;                   // all elements of order 3
  std::vector<std::array<int, 3>> triples;    // sorted element triples
};

inline DirectedComponents directed_components(const Group& g) {
  DirectedComponents comps;
  for (int x = 1; x < g.order(); ++x)
    if (g.order_of(x) == 3) comps.singles.push_back(x);

  std::set<std::array<int, 3>> seen;
  for (int a = 1; a < g.order(); ++a) {
    if (g.order_of(a) < 4) continue;
    for (int b = 1; b < g.order(); ++b) {
      if (b == a || g.order_of(b) < 4 || b == g.inverse(a)) continue;
      int c = g.inverse(g.mul(a, b));
      if (c == 0 || c == a || c == b || g.order_of(c) < 4) continue;
      if (c == g.inverse(a) || c == g.inverse(b)) continue;  // inverse-free
      std::array<int, 3> key{a, b, c};
      std::sort(key.begin(), key.end());
      if (seen.count(key)) continue;
      std::vector<int> as_set{key.begin(), key.end()};
      if (span_size(g, as_set) != 13) continue;  // |B ∪ BB| must be 12
      seen.insert(key);
    }
  }
  comps.triples.assign(seen.begin(), seen.end());
  return comps;
}

namespace detail {

struct Component {
  int size;
  std::array<int, 3> elems;  // first `size` entries used
};

inline std::vector<Component> flatten(const DirectedComponents& comps) {
  std::vector<Component> all;
  for (int x : comps.singles) all.push_back({1, {x, 0, 0}});
  for (const auto& t : comps.triples) all.push_back({3, t});
  return all;
}

struct ExtendContext {
  const Group& g;
  const std::vector<int>& s1;
  const std::vector<Component>& components;
  int z;
  const std::vector<Subgroup>& subs;
  const std::vector<long long>& splits;
  const Deadline& deadline;
  std::vector<std::vector<int>>& out;

  std::vector<int> s2;
  std::vector<char> in_set;      // membership across s1 ∪ s2
  std::vector<int> hits;         // per index-2 subgroup: |S ∩ H|
  bool have_singles_after(size_t idx) const {
    return idx < components.size() && components[idx].size == 1;
  }
};

inline void extend_recurse(ExtendContext& ctx, size_t from) {
  if (ctx.deadline.check()) return;
  const int have = static_cast<int>(ctx.s2.size());
  if (have == ctx.z) {
    if (!splits_reachable(ctx.subs, ctx.splits, ctx.hits, 0)) return;
    std::vector<int> sorted = ctx.s2;
    std::sort(sorted.begin(), sorted.end());
    ctx.out.push_back(std::move(sorted));
    return;
  }
  const int remaining = ctx.z - have;
  for (size_t i = from; i < ctx.components.size(); ++i) {
    const Component& comp = ctx.components[i];
    if (comp.size > remaining) {
      if (comp.size == 3) break;  // components are singles first, then triples
      continue;
    }
    // with no singles left, the remainder must be fillable by triples
    if (comp.size == 3 && remaining % 3 != 0) break;

    bool ok = true;
    for (int k = 0; k < comp.size && ok; ++k) {
      int e = comp.elems[k];
      if (ctx.in_set[e] || ctx.in_set[ctx.g.inverse(e)]) ok = false;
    }
    if (!ok) continue;

    for (int k = 0; k < comp.size; ++k) {
      ctx.s2.push_back(comp.elems[k]);
      ctx.in_set[comp.elems[k]] = 1;
    }
    for (size_t h = 0; h < ctx.subs.size(); ++h)
      for (int k = 0; k < comp.size; ++k)
        if (ctx.subs[h].contains(comp.elems[k])) ++ctx.hits[h];

    int room = ctx.z - static_cast<int>(ctx.s2.size());
    if (splits_reachable(ctx.subs, ctx.splits, ctx.hits, room) &&
        generator_filter(ctx.g, ctx.s1, ctx.s2) == Violation::none &&
        is_feasible_subset(ctx.g, ctx.s1, ctx.s2))
      extend_recurse(ctx, i + 1);

    for (size_t h = 0; h < ctx.subs.size(); ++h)
      for (int k = 0; k < comp.size; ++k)
        if (ctx.subs[h].contains(comp.elems[k])) --ctx.hits[h];
    for (int k = 0; k < comp.size; ++k) {
      ctx.in_set[comp.elems[k]] = 0;
      ctx.s2.pop_back();
    }
  }
}

inline std::vector<std::vector<int>> extend_directed_impl(
    const Group& g, const std::vector<int>& s1, const DirectedComponents& comps, int z,
    const std::vector<Subgroup>& subs, const std::vector<long long>& splits,
    const Deadline& deadline) {
  std::vector<std::vector<int>> out;
  std::vector<Component> components = flatten(comps);
  ExtendContext ctx{g,     s1,    components, z, subs,
                    splits, deadline, out};
  ctx.in_set.assign(g.order(), 0);
  for (int x : s1) ctx.in_set[x] = 1;
  ctx.hits = subgroup_hits(subs, s1);
  extend_recurse(ctx, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// All complete directed parts extending s1 to degree z: depth-first over
// components in strictly increasing order, enforcing the generator-set
// invariants, the structural filter, subset feasibility and the index-2
// counts after every addition.
inline std::vector<std::vector<int>> extend_directed(const Group& g, const std::vector<int>& s1,
                                                     const DirectedComponents& comps, int z) {
  std::vector<Subgroup> subs = index_two_subgroups(g);
  std::vector<long long> splits = index_two_split(static_cast<long long>(s1.size()), z);
  return detail::extend_directed_impl(g, s1, comps, z, subs, splits, {});
}

// ---------------------------------------------------------------------------
// The full search
// ---------------------------------------------------------------------------

struct SearchOptions {
  int jobs = 1;
  double budget_seconds = 0;     // per group; 0 = unlimited
  bool dedup_stabilizer = false; // also reduce directed parts by Stab(S1)
  bool catalog_complete = false; // caller vouches the group list is complete
};

struct SearchResult {
  int group_index = -1;
  std::string group_name;
  std::vector<int> s1, s2;
  bool verified = false;
  int iso_class = 0;      // 1-based tag shared by isomorphic graphs
  int transpose_of = -1;  // index of an earlier result this one transposes
};

struct SearchRun {
  FeasibleParams params;
  std::vector<SearchResult> results;
  int iso_classes = 0;
  bool complete = false;                      // complete catalog and no timeouts
  std::vector<std::string> timed_out_groups;  // budget expired
  bool iso_capped = false;  // some graph exceeded the isomorphism size cap
};

namespace detail {

inline void parallel_for(int jobs, int items, const std::function<void(int)>& fn) {
  if (items <= 0) return;
  jobs = std::max(1, std::min(jobs, items));
  if (jobs == 1) {
    for (int i = 0; i < items; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < items; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct GroupWork {
  const Group* group = nullptr;
  std::vector<Automorphism> auts;
  std::vector<Subgroup> subs;
  std::vector<long long> splits;
  DirectedComponents comps;
  std::vector<std::vector<int>> candidates;
  bool rejected = false;
  Deadline deadline;
  std::atomic<bool> timed_out{false};
};

inline std::vector<int> sorted_inverses(const Group& g, const std::vector<int>& s) {
  std::vector<int> inv;
  inv.reserve(s.size());
  for (int x : s) inv.push_back(g.inverse(x));
  std::sort(inv.begin(), inv.end());
  return inv;
}

}  // namespace detail

// Runs the pruned generating-set search over the given groups (all of
// order params.n).  Work items are (group, undirected candidate) pairs
// handed to a worker pool; results are merged and sorted so the output is
// independent of scheduling.  Every hit is rebuilt as a graph and passed
// through the structural verifier.
inline SearchRun run_search(const FeasibleParams& params, const std::vector<Group>& groups,
                            const SearchOptions& options = {}) {
  for (const Group& g : groups)
    if (g.order() != params.n)
      throw InvalidParametersError("group " + g.name() + " has order " +
                                   std::to_string(g.order()) + ", expected " +
                                   std::to_string(params.n));
  const int r = static_cast<int>(params.r), z = static_cast<int>(params.z);

  SearchRun run;
  run.params = params;

  // per-group preparation: symmetry data, components, undirected candidates
  std::vector<std::unique_ptr<detail::GroupWork>> work;
  for (const Group& g : groups) {
    work.push_back(std::make_unique<detail::GroupWork>());
    work.back()->group = &g;
  }
  detail::parallel_for(options.jobs, static_cast<int>(groups.size()), [&](int i) {
    detail::GroupWork& w = *work[i];
    if (options.budget_seconds > 0) {
      w.deadline.armed = true;
      w.deadline.at = std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(options.budget_seconds));
    }
    w.subs = index_two_subgroups(*w.group);
    w.splits = index_two_split(r, z);
    w.rejected = index_two_rejects_group(*w.group, w.subs, r, z);
    if (w.rejected) return;
    w.auts = automorphism_group(*w.group);
    w.comps = directed_components(*w.group);
    w.candidates = undirected_candidates(*w.group, r, z, w.auts, w.deadline);
    if (w.deadline.expired) w.timed_out = true;
  });

  // (group, candidate) work items
  std::vector<std::pair<int, int>> items;
  for (size_t i = 0; i < work.size(); ++i)
    for (size_t c = 0; c < work[i]->candidates.size(); ++c)
      items.emplace_back(static_cast<int>(i), static_cast<int>(c));

  std::vector<std::vector<std::vector<int>>> slots(items.size());
  detail::parallel_for(options.jobs, static_cast<int>(items.size()), [&](int idx) {
    auto [gi, ci] = items[idx];
    detail::GroupWork& w = *work[gi];
    slots[idx] = detail::extend_directed_impl(*w.group, w.candidates[ci], w.comps, z, w.subs,
                                              w.splits, w.deadline);
    if (w.deadline.expired) w.timed_out = true;
  });

  // merge, optional stabilizer reduction, deterministic order
  for (size_t idx = 0; idx < items.size(); ++idx) {
    auto [gi, ci] = items[idx];
    const detail::GroupWork& w = *work[gi];
    const std::vector<int>& s1 = w.candidates[ci];

    std::vector<const Automorphism*> stabilizer;
    if (options.dedup_stabilizer)
      for (const Automorphism& phi : w.auts)
        if (phi.apply_sorted(s1) == s1) stabilizer.push_back(&phi);

    for (std::vector<int>& s2 : slots[idx]) {
      if (options.dedup_stabilizer) {
        bool minimal = true;
        for (const Automorphism* phi : stabilizer)
          if (phi->apply_sorted(s2) < s2) {
            minimal = false;
            break;
          }
        if (!minimal) continue;
      }
      SearchResult res;
      res.group_index = gi;
      res.group_name = w.group->name();
      res.s1 = s1;
      res.s2 = std::move(s2);
      run.results.push_back(std::move(res));
    }
  }
  std::sort(run.results.begin(), run.results.end(),
            [](const SearchResult& a, const SearchResult& b) {
              return std::tie(a.group_index, a.s1, a.s2) < std::tie(b.group_index, b.s1, b.s2);
            });

  // mandatory re-verification and isomorphism classing
  std::vector<MixedGraph> graphs;
  graphs.reserve(run.results.size());
  for (SearchResult& res : run.results) {
    MixedGraph graph = from_cayley(groups[res.group_index], res.s1, res.s2);
    res.verified = verify_moore(graph).verdict;
    if (!res.verified)
      throw Error("internal error: search emitted a set that fails verification (group " +
                  res.group_name + ")");
    graphs.push_back(std::move(graph));
  }

  std::vector<int> class_rep;  // index of each class's first graph
  for (size_t i = 0; i < run.results.size(); ++i) {
    // transposes: same group and undirected part, inverted directed part
    for (size_t j = 0; j < i; ++j) {
      if (run.results[j].group_index == run.results[i].group_index &&
          run.results[j].s1 == run.results[i].s1 &&
          run.results[j].s2 ==
              detail::sorted_inverses(groups[run.results[i].group_index], run.results[i].s2)) {
        run.results[i].transpose_of = static_cast<int>(j);
        break;
      }
    }
    int assigned = 0;
    if (graphs[i].n() <= kGraphIsoCap) {
      for (size_t c = 0; c < class_rep.size(); ++c) {
        if (graphs[class_rep[c]].n() <= kGraphIsoCap &&
            isomorphic(graphs[class_rep[c]], graphs[i])) {
          assigned = static_cast<int>(c) + 1;
          break;
        }
      }
    } else {
      run.iso_capped = true;  // beyond the cap each orbit counts as its own class
    }
    if (assigned == 0) {
      class_rep.push_back(static_cast<int>(i));
      assigned = static_cast<int>(class_rep.size());
    }
    run.results[i].iso_class = assigned;
  }
  run.iso_classes = static_cast<int>(class_rep.size());

  for (size_t i = 0; i < work.size(); ++i)
    if (work[i]->timed_out) run.timed_out_groups.push_back(groups[i].name());
  run.complete = options.catalog_complete && run.timed_out_groups.empty();
  return run;
}

// ---------------------------------------------------------------------------
// Result rendering
// ---------------------------------------------------------------------------

namespace detail {

inline std::string join_indices(const std::vector<int>& v) {
  if (v.empty()) return "-";
  std::ostringstream out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << v[i];
  }
  return out.str();
}

}  // namespace detail

inline std::string summary_line(const SearchRun& run) {
  std::ostringstream out;
  out << run.params.n << ' ' << run.params.r << ' ' << run.params.z << ' ' << run.iso_classes
      << ' ' << (run.complete ? "complete" : "incomplete");
  return out.str();
}

// One line per result (group name, undirected part, directed part, class),
// then the summary line with the order, degrees, class count and the
// completeness flag.
inline std::string render_plain(const SearchRun& run) {
  std::ostringstream out;
  for (const SearchResult& res : run.results)
    out << res.group_name << " s1=" << detail::join_indices(res.s1)
        << " s2=" << detail::join_indices(res.s2) << " class=" << res.iso_class << '\n';
  for (const std::string& name : run.timed_out_groups)
    out << "# budget expired for group " << name << '\n';
  if (run.iso_capped)
    out << "# isomorphism cap exceeded: classes are per generating-set orbit\n";
  out << summary_line(run) << '\n';
  return out.str();
}

// Machine-readable variant: one key=value record per line.
inline std::string render_records(const SearchRun& run) {
  std::ostringstream out;
  for (const SearchResult& res : run.results) {
    out << "result group=" << res.group_name << " group_index=" << res.group_index
        << " s1=" << detail::join_indices(res.s1) << " s2=" << detail::join_indices(res.s2)
        << " class=" << res.iso_class << " verified=" << (res.verified ? 1 : 0)
        << " transpose_of=";
    if (res.transpose_of >= 0)
      out << res.transpose_of;
    else
      out << '-';
    out << '\n';
  }
  for (const std::string& name : run.timed_out_groups) out << "timeout group=" << name << '\n';
  out << "summary n=" << run.params.n << " r=" << run.params.r << " z=" << run.params.z
      << " graphs=" << run.iso_classes << " status=" << (run.complete ? "complete" : "incomplete")
      << '\n';
  return out.str();
}

}  // namespace moorecay
