#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "moorecay/common.hpp"

namespace moorecay {

// A parameter triple (r, z, n) admissible for a mixed Moore graph of
// diameter 2: n = (z+r)^2 + z + 1 and r = (c^2+3)/4 for an odd c dividing
// (4z-3)(4z+5). `splits` holds the admissible index-2 intersection sizes
// s1+s2 (empirically always a single value).
struct FeasibleParams {
  long long r = 0;
  long long z = 0;
  long long n = 0;
  long long c = 0;
  std::vector<long long> splits;

  bool operator==(const FeasibleParams& o) const {
    return r == o.r && z == o.z && n == o.n && c == o.c && splits == o.splits;
  }
};

inline long long moore_bound_mixed(long long r, long long z) {
  return (z + r) * (z + r) + z + 1;
}

// Undirected Moore bound 1 + d((d-1)^k - 1)/(d-2); the closed form
// excludes d <= 2.
inline long long moore_bound_undirected(long long d, long long k) {
  if (d <= 2) throw DomainError("undirected Moore bound requires degree > 2");
  if (k <= 1) throw DomainError("undirected Moore bound requires diameter > 1");
  long long pow = 1;
  for (long long i = 0; i < k; ++i) pow *= (d - 1);
  return 1 + d * (pow - 1) / (d - 2);
}

inline long long moore_bound_directed(long long d, long long k) {
  if (d <= 1) throw DomainError("directed Moore bound requires degree > 1");
  if (k <= 1) throw DomainError("directed Moore bound requires diameter > 1");
  long long pow = 1;
  for (long long i = 0; i < k + 1; ++i) pow *= d;
  return (pow - 1) / (d - 1);
}

namespace detail {

// Integer square root of x if x is a perfect square.
inline std::optional<long long> exact_sqrt(long long x) {
  if (x < 0) return std::nullopt;
  long long r = static_cast<long long>(std::max(0.0, std::floor(std::sqrt(static_cast<double>(x)))));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  if (r * r == x) return r;
  return std::nullopt;
}

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline bool is_prime_power(long long n) {
  if (n < 2) return false;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    return n == 1;
  }
  return true;  // n itself prime
}

}  // namespace detail

// Bosak's arithmetic condition: a mixed Moore graph with undirected degree
// r and directed degree z requires r = (c^2+3)/4 for an odd c dividing
// (4z-3)(4z+5). Returns that c, or nothing when the pair is inadmissible.
// There is at most one candidate c per r, namely sqrt(4r-3).
inline std::optional<long long> bosak_feasible(long long r, long long z) {
  if (r < 1 || z < 1) return std::nullopt;
  auto c = detail::exact_sqrt(4 * r - 3);
  if (!c || *c % 2 == 0) return std::nullopt;
  if ((4 * z - 3) * (4 * z + 5) % *c != 0) return std::nullopt;
  return c;
}

// The admissible values of |S cap H| for an index-2 subgroup H: the
// integers among (2(z+r)-1 +- sqrt(4r-3))/4 that fall in [0, r+z]. Exact
// integer arithmetic; sqrt(4r-3) = c for feasible r.
inline std::vector<long long> index_two_split(long long r, long long z) {
  auto c = detail::exact_sqrt(4 * r - 3);
  if (!c) return {};
  std::vector<long long> out;
  for (long long signed_c : {*c, -*c}) {
    long long numer = 2 * (z + r) - 1 + signed_c;
    if (numer % 4 != 0) continue;
    long long s = numer / 4;
    if (s >= 0 && s <= r + z) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Whether the index-2 split rule forces more than two generators into any
// abelian index-2 subgroup, i.e. 2(z+r) - sqrt(4r-3) > 9. Such a subgroup
// would make two non-inverse generators commute, so the host group can be
// discarded. Exact comparison via squaring.
inline bool excludes_abelian_index_two(long long r, long long z) {
  long long lhs = 2 * (z + r) - 9;
  if (lhs < 0) return false;
  return lhs * lhs > 4 * r - 3;
}

// Kautz digraphs on d(d+1) vertices are Cayley graphs exactly when
// q = d+1 = z+2 is a prime power.
inline bool kautz_is_cayley(long long z) {
  return detail::is_prime_power(z + 2);
}

// All Bosak-admissible (r, z, n) with n <= max_n, ascending by n.
inline std::vector<FeasibleParams> enumerate_feasible(long long max_n) {
  std::vector<FeasibleParams> out;
  for (long long c = 1;; c += 2) {
    long long r = (c * c + 3) / 4;
    if (moore_bound_mixed(r, 1) > max_n) break;
    for (long long z = 1;; ++z) {
      long long n = moore_bound_mixed(r, z);
      if (n > max_n) break;
      if ((4 * z - 3) * (4 * z + 5) % c != 0) continue;
      FeasibleParams p;
      p.r = r;
      p.z = z;
      p.n = n;
      p.c = c;
      p.splits = index_two_split(r, z);
      out.push_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end(), [](const FeasibleParams& a, const FeasibleParams& b) {
    if (a.n != b.n) return a.n < b.n;
    return a.r < b.r;
  });
  return out;
}

}  // namespace moorecay
