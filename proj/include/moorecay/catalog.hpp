#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "moorecay/common.hpp"
#include "moorecay/feasibility.hpp"
#include "moorecay/group.hpp"

namespace moorecay {

// ---------------------------------------------------------------------------
// Built-in family constructors
// ---------------------------------------------------------------------------

inline Group cyclic_group(int m, std::string name = "") {
  if (m < 1) throw InvalidParametersError("cyclic group needs order >= 1");
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t[i][j] = (i + j) % m;
  return Group::from_table(std::move(t), name.empty() ? "C" + std::to_string(m) : name);
}

// Dihedral group of the given (even) order 2m: indices 0..m-1 are the
// rotations r^i, indices m..2m-1 the reflections r^i s.
inline Group dihedral_group(int order, std::string name = "") {
  if (order < 6 || order % 2 != 0)
    throw InvalidParametersError("dihedral group needs even order >= 6");
  const int m = order / 2;
  auto idx = [m](int rot, int refl) { return refl ? m + rot : rot; };
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      t[idx(i, 0)][idx(j, 0)] = idx((i + j) % m, 0);
      t[idx(i, 0)][idx(j, 1)] = idx((i + j) % m, 1);
      t[idx(i, 1)][idx(j, 0)] = idx(((i - j) % m + m) % m, 1);
      t[idx(i, 1)][idx(j, 1)] = idx(((i - j) % m + m) % m, 0);
    }
  }
  return Group::from_table(std::move(t), name.empty() ? "D" + std::to_string(order) : name);
}

// Dicyclic group of order 4m: <a, b | a^{2m} = 1, b^2 = a^m, bab^{-1} = a^{-1}>.
// Indices 0..2m-1 are a^i, indices 2m..4m-1 are a^i b.
inline Group dicyclic_group(int order, std::string name = "") {
  if (order < 8 || order % 4 != 0)
    throw InvalidParametersError("dicyclic group needs order divisible by 4, >= 8");
  const int m = order / 4;
  const int a = 2 * m;
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  auto rot = [a](int i) { return ((i % a) + a) % a; };
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < a; ++j) {
      t[i][j] = rot(i + j);              // a^i a^j
      t[i][a + j] = a + rot(i + j);      // a^i (a^j b)
      t[a + i][j] = a + rot(i - j);      // (a^i b) a^j
      t[a + i][a + j] = rot(i - j + m);  // (a^i b)(a^j b) = a^{i-j} b^2
    }
  }
  return Group::from_table(std::move(t), name.empty() ? "Dic" + std::to_string(order) : name);
}

namespace detail {

inline std::vector<int> compose_perm(const std::vector<int>& p, const std::vector<int>& q) {
  // apply p first, then q
  std::vector<int> r(p.size());
  for (size_t x = 0; x < p.size(); ++x) r[x] = q[p[x]];
  return r;
}

}  // namespace detail

// Group generated by permutations of {0..points-1}, closed by saturation.
// The identity gets index 0; further elements follow discovery order.
// `order_cap` bounds the closure; ingestion keeps the default, while the
// built-in constructors may raise it for their known orders (S6 has 720
// elements).
inline Group group_from_permutations(int points, const std::vector<std::vector<int>>& generators,
                                     std::string name, int order_cap = kGroupOrderCap) {
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != points)
      throw InvalidParametersError("generator acts on " + std::to_string(g.size()) +
                                   " points, expected " + std::to_string(points));
    std::vector<char> seen(points, 0);
    for (int v : g) {
      if (v < 0 || v >= points || seen[v])
        throw InvalidParametersError("generator is not a permutation");
      seen[v] = 1;
    }
  }

  std::vector<int> identity(points);
  for (int i = 0; i < points; ++i) identity[i] = i;
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> elems{identity};
  index[identity] = 0;
  for (size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : generators) {
      std::vector<int> next = detail::compose_perm(elems[i], g);
      if (index.emplace(next, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(next));
        if (static_cast<int>(elems.size()) > order_cap)
          throw OrderCapExceededError("permutation closure exceeds order cap " +
                                      std::to_string(order_cap));
      }
    }
  }

  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = index.at(detail::compose_perm(elems[i], elems[j]));
  return Group::from_table(std::move(t), std::move(name));
}

inline Group symmetric_group(int m, std::string name = "") {
  if (m < 1 || m > 6) throw InvalidParametersError("symmetric group supported for 1 <= m <= 6");
  std::vector<std::vector<int>> gens;
  if (m >= 2) {
    std::vector<int> cycle(m), swap(m);
    for (int i = 0; i < m; ++i) cycle[i] = (i + 1) % m;
    for (int i = 0; i < m; ++i) swap[i] = i;
    std::swap(swap[0], swap[1]);
    gens = {cycle, swap};
  }
  int order = 1;
  for (int i = 2; i <= m; ++i) order *= i;
  return group_from_permutations(m, gens, name.empty() ? "S" + std::to_string(m) : name, order);
}

inline Group alternating_group(int m, std::string name = "") {
  if (m < 3 || m > 6) throw InvalidParametersError("alternating group supported for 3 <= m <= 6");
  std::vector<std::vector<int>> gens;
  {
    std::vector<int> c3(m);
    for (int i = 0; i < m; ++i) c3[i] = i;
    c3[0] = 1, c3[1] = 2, c3[2] = 0;
    gens.push_back(c3);
  }
  if (m > 3) {
    // full m-cycle when m is odd, an (m-1)-cycle fixing 0 when m is even;
    // either way an even permutation, and together with the 3-cycle a
    // standard generating pair
    std::vector<int> g(m);
    if (m % 2 == 1) {
      for (int i = 0; i < m; ++i) g[i] = (i + 1) % m;
    } else {
      g[0] = 0;
      for (int i = 1; i < m; ++i) g[i] = 1 + (i % (m - 1));
    }
    gens.push_back(g);
  }
  return group_from_permutations(m, gens, name.empty() ? "A" + std::to_string(m) : name);
}

inline Group direct_product(const Group& a, const Group& b, std::string name = "") {
  const int na = a.order(), nb = b.order();
  const int n = na * nb;
  if (n > kGroupOrderCap * 4)
    throw InvalidParametersError("direct product order too large");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  auto idx = [nb](int i, int j) { return i * nb + j; };
  for (int i1 = 0; i1 < na; ++i1)
    for (int j1 = 0; j1 < nb; ++j1)
      for (int i2 = 0; i2 < na; ++i2)
        for (int j2 = 0; j2 < nb; ++j2)
          t[idx(i1, j1)][idx(i2, j2)] = idx(a.mul(i1, i2), b.mul(j1, j2));
  return Group::from_table(std::move(t), name.empty() ? a.name() + "x" + b.name() : name);
}

// Split extension C_m x| C_n with the C_n generator acting by a -> a^k.
// Requires k^n = 1 (mod m) so the action is a homomorphism C_n -> Aut(C_m).
inline Group semidirect_cyclic(int m, int n, int k, std::string name = "") {
  if (m < 1 || n < 1 || k < 0) throw InvalidParametersError("semidirect product needs m, n >= 1");
  k %= m;
  long long pw = 1;
  for (int i = 0; i < n; ++i) pw = (pw * k) % m;
  if (pw != 1 % m)
    throw InvalidParametersError("semidirect action k=" + std::to_string(k) +
                                 " does not satisfy k^n = 1 mod " + std::to_string(m));
  // powers of k modulo m, one per C_n element
  std::vector<long long> act(n);
  act[0] = 1 % m;
  for (int i = 1; i < n; ++i) act[i] = (act[i - 1] * k) % m;

  const int order = m * n;
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  auto idx = [m](int a, int b) { return b * m + a; };
  for (int a1 = 0; a1 < m; ++a1)
    for (int b1 = 0; b1 < n; ++b1)
      for (int a2 = 0; a2 < m; ++a2)
        for (int b2 = 0; b2 < n; ++b2)
          t[idx(a1, b1)][idx(a2, b2)] =
              idx(static_cast<int>((a1 + act[b1] * a2) % m), (b1 + b2) % n);
  return Group::from_table(std::move(t), name.empty()
                                             ? "C" + std::to_string(m) + ":C" + std::to_string(n)
                                             : name);
}

// Generalized dihedral group Dih(A) = A x| C2 with the involution acting
// by inversion; requires A abelian.
inline Group generalized_dihedral(const Group& a, std::string name = "") {
  if (!a.abelian()) throw InvalidParametersError("generalized dihedral needs an abelian group");
  const int m = a.order();
  const int n = 2 * m;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  auto idx = [m](int x, int s) { return s ? m + x : x; };
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      t[idx(x, 0)][idx(y, 0)] = idx(a.mul(x, y), 0);
      t[idx(x, 0)][idx(y, 1)] = idx(a.mul(x, y), 1);
      t[idx(x, 1)][idx(y, 0)] = idx(a.mul(x, a.inverse(y)), 1);
      t[idx(x, 1)][idx(y, 1)] = idx(a.mul(x, a.inverse(y)), 0);
    }
  }
  return Group::from_table(std::move(t), name.empty() ? "Dih(" + a.name() + ")" : name);
}

// ---------------------------------------------------------------------------
// GroupSpec: a declarative description of a constructible group
// ---------------------------------------------------------------------------

struct GroupSpec {
  enum class Family {
    cyclic,
    dihedral,
    dicyclic,
    symmetric,
    direct_product,
    semidirect_cyclic,
    generalized_dihedral,
    table_file,
    permutation_file,
  };

  Family family;
  std::vector<int> params;         // family-specific integers
  std::string path;                // for the *_file families
  std::vector<GroupSpec> factors;  // for direct_product / generalized_dihedral
};

Group ingest_table(const std::string& path, std::vector<std::string>* warnings);
Group ingest_permutations(const std::string& path, std::vector<std::string>* warnings);

inline Group construct(const GroupSpec& spec) {
  using F = GroupSpec::Family;
  auto need = [&](size_t k) {
    if (spec.params.size() != k)
      throw InvalidParametersError("family expects " + std::to_string(k) + " parameter(s), got " +
                                   std::to_string(spec.params.size()));
  };
  switch (spec.family) {
    case F::cyclic:
      need(1);
      return cyclic_group(spec.params[0]);
    case F::dihedral:
      need(1);
      return dihedral_group(spec.params[0]);
    case F::dicyclic:
      need(1);
      return dicyclic_group(spec.params[0]);
    case F::symmetric:
      need(1);
      return symmetric_group(spec.params[0]);
    case F::direct_product: {
      if (spec.factors.size() != 2)
        throw InvalidParametersError("direct product expects two factors");
      return direct_product(construct(spec.factors[0]), construct(spec.factors[1]));
    }
    case F::semidirect_cyclic:
      need(3);
      return semidirect_cyclic(spec.params[0], spec.params[1], spec.params[2]);
    case F::generalized_dihedral: {
      if (spec.factors.size() != 1)
        throw InvalidParametersError("generalized dihedral expects one abelian factor");
      return generalized_dihedral(construct(spec.factors[0]));
    }
    case F::table_file:
      return ingest_table(spec.path, nullptr);
    case F::permutation_file:
      return ingest_permutations(spec.path, nullptr);
  }
  throw InvalidParametersError("unknown family");
}

// ---------------------------------------------------------------------------
// Ingestion of externally supplied groups
// ---------------------------------------------------------------------------

namespace detail {

// Strips '#' comments; returns stripped content lines paired with their
// 1-based line numbers.
inline std::vector<std::pair<int, std::string>> content_lines(std::istream& in) {
  std::vector<std::pair<int, std::string>> out;
  std::string line;
  int num = 0;
  while (std::getline(in, line)) {
    ++num;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (!blank) out.emplace_back(num, line);
  }
  return out;
}

inline std::string file_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

}  // namespace detail

// Table file: first content line n, then n rows of n 0-based indices.
// The identity must be element 0; other layouts are accepted but relabeled
// with a warning.
inline Group ingest_table(const std::string& path, std::vector<std::string>* warnings = nullptr) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  auto lines = detail::content_lines(in);
  if (lines.empty()) throw ParseError(1, "empty table file");

  size_t cursor = 0;
  auto next_line = [&]() -> std::pair<int, std::string> {
    if (cursor >= lines.size()) {
      int last = lines.empty() ? 1 : lines.back().first;
      throw ParseError(last, "unexpected end of file");
    }
    return lines[cursor++];
  };

  auto [hline, header] = next_line();
  long long n = 0;
  {
    std::istringstream ss(header);
    if (!(ss >> n) || n < 1) throw ParseError(hline, "expected group order");
    std::string extra;
    if (ss >> extra) throw ParseError(hline, "trailing tokens after order");
  }
  if (n > kGroupOrderCap)
    throw OrderCapExceededError("group of order " + std::to_string(n) + " exceeds cap " +
                                std::to_string(kGroupOrderCap));

  std::vector<std::vector<int>> table;
  for (long long i = 0; i < n; ++i) {
    auto [lno, text] = next_line();
    std::istringstream ss(text);
    std::vector<int> row;
    long long v;
    while (ss >> v) {
      if (v < 0 || v >= n)
        throw ParseError(lno, "entry " + std::to_string(v) + " out of range [0," +
                                  std::to_string(n) + ")");
      row.push_back(static_cast<int>(v));
    }
    if (static_cast<long long>(row.size()) != n)
      throw ParseError(lno, "row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                                " entries, expected " + std::to_string(n));
    table.push_back(std::move(row));
  }
  if (cursor != lines.size()) throw ParseError(lines[cursor].first, "trailing content after table");

  // Report relabeling before from_table silently performs it.
  if (warnings) {
    bool id_at_zero = true;
    for (long long j = 0; j < n && id_at_zero; ++j)
      id_at_zero = table[0][j] == j && table[j][0] == j;
    if (!id_at_zero)
      warnings->push_back(path + ": identity is not element 0; relabeling");
  }
  return Group::from_table(std::move(table), detail::file_stem(path));
}

// Permutation file: first content line the number of points, then one
// generator per line in 0-based cycle notation, e.g. "(0 1 2)(3 4)".
inline Group ingest_permutations(const std::string& path,
                                 std::vector<std::string>* warnings = nullptr) {
  (void)warnings;
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  auto lines = detail::content_lines(in);
  if (lines.empty()) throw ParseError(1, "empty permutation file");

  int points = 0;
  {
    std::istringstream ss(lines[0].second);
    if (!(ss >> points) || points < 1) throw ParseError(lines[0].first, "expected point count");
    std::string extra;
    if (ss >> extra) throw ParseError(lines[0].first, "trailing tokens after point count");
  }

  std::vector<std::vector<int>> gens;
  for (size_t li = 1; li < lines.size(); ++li) {
    const auto& [lno, text] = lines[li];
    std::vector<int> perm(points);
    for (int i = 0; i < points; ++i) perm[i] = i;
    std::vector<char> seen(points, 0);

    size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r'))
        ++pos;
    };
    skip_ws();
    while (pos < text.size()) {
      if (text[pos] != '(') throw ParseError(lno, "expected '(' in cycle notation");
      ++pos;
      std::vector<int> cycle;
      while (true) {
        skip_ws();
        if (pos >= text.size()) throw ParseError(lno, "unterminated cycle");
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        if (!std::isdigit(static_cast<unsigned char>(text[pos])))
          throw ParseError(lno, "expected point or ')' in cycle");
        int v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
          v = v * 10 + (text[pos++] - '0');
        if (v >= points)
          throw ParseError(lno, "point " + std::to_string(v) + " out of range [0," +
                                    std::to_string(points) + ")");
        if (seen[v]) throw ParseError(lno, "point " + std::to_string(v) + " repeated");
        seen[v] = 1;
        cycle.push_back(v);
      }
      for (size_t i = 0; i < cycle.size(); ++i)
        perm[cycle[i]] = cycle[(i + 1) % cycle.size()];
      skip_ws();
    }
    gens.push_back(std::move(perm));
  }

  try {
    return group_from_permutations(points, gens, detail::file_stem(path));
  } catch (const InvalidParametersError& e) {
    throw ParseError(lines.size() > 1 ? lines[1].first : lines[0].first, e.what());
  }
}

// Scans a directory for *.gtab (table) and *.gperm (permutation) files,
// sorted by filename for deterministic ordering.
inline std::vector<Group> scan_group_dir(const std::string& dir,
                                         std::vector<std::string>* warnings = nullptr) {
  namespace fs = std::filesystem;
  std::vector<Group> out;
  if (!fs::exists(dir)) return out;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    if (ext == ".gtab" || ext == ".gperm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    // one corrupt file should not block the rest of the directory
    try {
      if (f.extension() == ".gtab")
        out.push_back(ingest_table(f.string(), warnings));
      else
        out.push_back(ingest_permutations(f.string(), warnings));
    } catch (const Error& e) {
      if (warnings) warnings->push_back(f.string() + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Catalogs per order
// ---------------------------------------------------------------------------

struct Catalog {
  std::vector<Group> groups;
  // True when the list is the complete classification at this order
  // (claimed only at orders covered by the built-in constructors, and at
  // primes, where the cyclic group is the only one).
  bool complete = false;
};

// The groups of a given order known to this build: complete classification
// lists at orders 6, 12, 18, 20 and 30, the cyclic/dihedral/dicyclic
// built-ins elsewhere, plus any ingested groups (duplicates dropped by
// isomorphism testing).
inline Catalog catalog_for_order(int n, const std::vector<Group>& ingested = {}) {
  Catalog cat;
  switch (n) {
    case 6:
      cat.groups = {cyclic_group(6), symmetric_group(3)};
      cat.complete = true;
      break;
    case 12:
      cat.groups = {cyclic_group(12), direct_product(cyclic_group(6), cyclic_group(2)),
                    dihedral_group(12), alternating_group(4), dicyclic_group(12)};
      cat.complete = true;
      break;
    case 18:
      cat.groups = {cyclic_group(18), direct_product(cyclic_group(3), cyclic_group(6)),
                    dihedral_group(18),
                    direct_product(cyclic_group(3), symmetric_group(3)),
                    generalized_dihedral(
                        direct_product(cyclic_group(3), cyclic_group(3)))};
      cat.complete = true;
      break;
    case 20:
      cat.groups = {cyclic_group(20), direct_product(cyclic_group(10), cyclic_group(2)),
                    dihedral_group(20), dicyclic_group(20), semidirect_cyclic(5, 4, 2)};
      cat.complete = true;
      break;
    case 30:
      cat.groups = {cyclic_group(30), dihedral_group(30),
                    direct_product(cyclic_group(3), dihedral_group(10)),
                    direct_product(cyclic_group(5), symmetric_group(3))};
      cat.complete = true;
      break;
    default:
      cat.groups.push_back(cyclic_group(n));
      if (n >= 6 && n % 2 == 0) cat.groups.push_back(dihedral_group(n));
      if (n >= 8 && n % 4 == 0) cat.groups.push_back(dicyclic_group(n));
      cat.complete = n == 1 || detail::is_prime(n);
      break;
  }

  for (const Group& g : ingested) {
    if (g.order() != n) continue;
    bool duplicate = false;
    if (n <= kGroupOrderCap) {
      for (const Group& have : cat.groups)
        if (groups_isomorphic(have, g)) {
          duplicate = true;
          break;
        }
    }
    if (!duplicate) cat.groups.push_back(g);
  }
  return cat;
}

}  // namespace moorecay
