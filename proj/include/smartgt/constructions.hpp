#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "smartgt/family.hpp"
#include "smartgt/knowledge.hpp"

namespace smartgt {

/// The requested object provably does not exist (distinct from bad input).
struct UnsolvableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A construction recipe cannot be carried out at this size.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Separating families

/// ceil(log2 n) bit-queries: query j holds the elements whose (j-1)-th
/// code bit is set, codes being 0..n-1.
inline Family binary_separating(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  Family f(n);
  int m = 0;
  while ((1ll << m) < n) ++m;
  for (int j = 0; j < m; ++j) {
    ElemSet q(n);
    for (int x = 1; x <= n; ++x)
      if ((x - 1) >> j & 1) q.add(x);
    f.add(q);
  }
  return f;
}

namespace detail {

inline std::uint64_t binom(int m, int k) {
  if (k < 0 || k > m) return 0;
  k = std::min(k, m - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (m - k + i) / i;
  return r;
}

}  // namespace detail

/// Number of queries sperner_code_family(n) produces: the minimal m with
/// C(m, floor(m/2)) >= n.
inline int sperner_code_size(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  for (int m = 1;; ++m)
    if (static_cast<std::int64_t>(detail::binom(m, m / 2)) >= n) return m;
}

///// Completely separating family from a uniform antichain code: element x
/// gets the x-th floor(m/2)-subset of [m] in colex order; query j holds
/// the elements whose code contains j.
inline Family sperner_code_family(int n) {
  int m = sperner_code_size(n);
  Family f(n);
  for (int j = 0; j < m; ++j) f.add(ElemSet(n));
  int assigned = 0;
  // Masks in increasing numeric order = subsets in colex order.
  for (std::uint32_t mask = 0; assigned < n && mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) != m / 2) continue;
    ++assigned;
    for (int j = 0; j < m; ++j)
      if (mask >> j & 1) f.sets[j].add(assigned);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Model 3'

/// Number of zeros in the ternary expansion of n.
inline int ternary_zero_count(int n) {
  int t = 0;
  for (; n > 0; n /= 3)
    if (n % 3 == 0) ++t;
  return t;
}

inline int ceil_log3(int n) {
  int k = 0;
  std::int64_t p = 1;
  while (p < n) {
    p *= 3;
    ++k;
  }
  return k;
}

/// The size target 3*ceil(log3 n) - t(n) of the recursive Model 3'
/// construction.
inline int model3prime_size_bound(int n) { return 3 * ceil_log3(n) - ternary_zero_count(n); }

namespace detail {

// Base families for n <= 8, found by exhaustive search; each solves
// Model 3' and, except for n=4 where no family of the target size
// exists, has exactly model3prime_size_bound(n) members.
inline Family model3prime_base(int n) {
  Family f(n);
  switch (n) {
    case 1: return f;
    case 3:
      f.add({1});
      f.add({2});
      return f;
    case 4:
      f.add({1});
      f.add({2});
      f.add({3});
      return f;
    case 5:
      f.add({1});
      f.add({2});
      f.add({3});
      f.add({1, 2, 3});
      f.add({4});
      f.add({5});
      return f;
    case 6:
    case 7:
      for (int x = 1; x < n; ++x) f.add(ElemSet::single(n, x));
      return f;
    case 8:
      f.add({1, 2, 3});
      f.add({4, 5, 6});
      f.add({1, 4, 7});
      f.add({2, 5, 8});
      f.add({3, 6, 7});
      f.add({1});
      return f;
    default: throw std::logic_error("no base family for this n");
  }
}

// Pad a family with members of its intersection closure (and finally the
// full set), which elements can deduce anyway, until it has `target`
// members. Stops silently if the closure runs out.
inline void pad_with_closure(Family& f, int target) {
  if (f.size() >= target) return;
  Family closed = intersection_closure(f);
  for (int i = f.size(); i < closed.size() && f.size() < target; ++i)
    if (!closed.sets[i].empty()) f.add(closed.sets[i]);
  if (f.size() < target) {
    ElemSet full = ElemSet::full(f.n);
    if (std::find(f.sets.begin(), f.sets.end(), full) == f.sets.end()) f.add(full);
  }
}

}  // namespace detail

/// Recursive Model 3' construction: partition [n] into floor(n/3) blocks
/// of size 3 or 4, lift a recursive solution on the blocks, and add
/// transversal queries meeting every block once (two of them when 3 | n,
/// three otherwise). Throws UnsolvableError for n=2, where no solution
/// exists.
inline Family model3prime_family(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n == 2) throw UnsolvableError("Model 3' has no solution on 2 elements");
  if (n <= 8) {
    Family base = detail::model3prime_base(n);
    detail::pad_with_closure(base, model3prime_size_bound(n));
    return base;
  }
  int m = n / 3;
  int quads = n - 3 * m;  // the first `quads` blocks get a fourth element
  std::vector<ElemSet> blocks;
  int next = 1;
  for (int b = 0; b < m; ++b) {
    int sz = b < quads ? 4 : 3;
    ElemSet blk(n);
    for (int t = 0; t < sz; ++t) blk.add(next++);
    blocks.push_back(blk);
  }
  Family inner = model3prime_family(m);
  Family f(n);
  for (const auto& g : inner.sets) {
    ElemSet lifted(n);
    for (int x : g.elements()) lifted = lifted | blocks[x - 1];
    f.add(lifted);
  }
  int transversals = (n % 3 == 0) ? 2 : 3;
  for (int i = 0; i < transversals; ++i) {
    ElemSet b(n);
    for (const auto& blk : blocks) b.add(blk.elements()[i]);
    f.add(b);
  }
  detail::pad_with_closure(f, model3prime_size_bound(n));
  return f;
}

// ---------------------------------------------------------------------------
// Steiner triple systems

namespace detail {

inline Family canonical_block_family(int n, std::vector<std::vector<int>> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  Family f(n);
  for (const auto& b : blocks) f.add(ElemSet::of_range(n, b));
  return f;
}

}  // namespace detail

/// Bose construction for n = 6k+3, over the idempotent commutative
/// quasigroup x*y = (x+y)(k+1) mod (2k+1).
inline Family sts_bose(int n) {
  if (n < 3 || n % 6 != 3) throw std::invalid_argument("Bose construction needs n = 3 (mod 6)");
  int k = (n - 3) / 6;
  int q = 2 * k + 1;
  auto pt = [q](int x, int i) { return x + i * q + 1; };
  std::vector<std::vector<int>> blocks;
  for (int x = 0; x < q; ++x) blocks.push_back({pt(x, 0), pt(x, 1), pt(x, 2)});
  int half = k + 1;  // inverse of 2 mod q
  for (int i = 0; i < 3; ++i)
    for (int x = 0; x < q; ++x)
      for (int y = x + 1; y < q; ++y)
        blocks.push_back({pt(x, i), pt(y, i), pt((x + y) * half % q, (i + 1) % 3)});
  return detail::canonical_block_family(n, std::move(blocks));
}

/// Skolem construction for n = 6k+1, over the half-idempotent
/// commutative quasigroup g(x+y) on Z_2k with g(2s)=s, g(2s+1)=s+k.
inline Family sts_skolem(int n) {
  if (n < 1 || n % 6 != 1) throw std::invalid_argument("Skolem construction needs n = 1 (mod 6)");
  if (n == 1) return Family(1);
  int k = (n - 1) / 6;
  int q = 2 * k;
  auto pt = [q](int x, int i) { return x + i * q + 1; };
  int inf = n;
  auto g = [q, k](int s) {
    s %= q;
    return s % 2 == 0 ? s / 2 : (s - 1) / 2 + k;
  };
  std::vector<std::vector<int>> blocks;
  for (int x = 0; x < k; ++x) blocks.push_back({pt(x, 0), pt(x, 1), pt(x, 2)});
  for (int i = 0; i < 3; ++i) {
    for (int x = k; x < q; ++x) blocks.push_back({inf, pt(x, i), pt(x - k, (i + 1) % 3)});
    for (int x = 0; x < q; ++x)
      for (int y = x + 1; y < q; ++y) blocks.push_back({pt(x, i), pt(y, i), pt(g(x + y), (i + 1) % 3)});
  }
  return detail::canonical_block_family(n, std::move(blocks));
}

/// STS(n) for any admissible n, by residue.
inline Family steiner_triple_system(int n) {
  if (n % 6 == 3) return sts_bose(n);
  if (n % 6 == 1 && n >= 7) return sts_skolem(n);
  throw std::invalid_argument("a Steiner triple system exists only for n = 1 or 3 (mod 6)");
}

/// Greedy partial matching by smallest block index.
inline std::vector<int> greedy_partial_matching(const Family& f, int size) {
  std::vector<int> picked;
  ElemSet used(f.n);
  for (int b = 0; b < f.size() && static_cast<int>(picked.size()) < size; ++b)
    if (!f.sets[b].intersects(used)) {
      picked.push_back(b);
      used = used | f.sets[b];
    }
  if (static_cast<int>(picked.size()) < size)
    throw InfeasibleError("no partial matching of the requested size");
  return picked;
}

/// STS(n) minus a greedy partial matching of the requested size; solves
/// Model 4 with i=1, j=2.
inline Family model4_sts_minus_matching(int n, int matching_size) {
  if (n < 7 || (n % 6 != 1 && n % 6 != 3))
    throw std::invalid_argument("Model 4 (i=1, j=2) needs n = 1 or 3 (mod 6), n >= 7");
  Family sts = steiner_triple_system(n);
  std::vector<int> m = greedy_partial_matching(sts, matching_size);
  Family f(n);
  for (int b = 0; b < sts.size(); ++b)
    if (std::find(m.begin(), m.end(), b) == m.end()) f.add(sts.sets[b]);
  return f;
}

// ---------------------------------------------------------------------------
// Pairwise balanced designs and Model 4 with larger j

namespace detail {

inline std::vector<std::vector<std::vector<int>>> kirkman_classes(int n);

}  // namespace detail

Family pbd34(int n);

/// Resolvable STS(n) as parallel classes of triples. Hardcoded Kirkman
/// systems for n=9 and n=15; otherwise tries to decompose the Bose
/// system by exact-cover search.
inline std::vector<std::vector<std::vector<int>>> resolvable_sts_classes(int n) {
  auto hard = detail::kirkman_classes(n);
  if (!hard.empty()) return hard;
  if (n % 6 != 3) throw InfeasibleError("resolvable STS available only for n = 3 (mod 6)");
  Family sts = sts_bose(n);
  std::optional<std::vector<std::vector<int>>> classes;
  try {
    classes = find_parallel_classes(sts, 5'000'000);
  } catch (const std::length_error&) {
    throw InfeasibleError("parallel-class search on STS(" + std::to_string(n) + ") gave up");
  }
  if (!classes) throw InfeasibleError("Bose STS(" + std::to_string(n) + ") did not decompose");
  std::vector<std::vector<std::vector<int>>> out;
  for (const auto& cls : *classes) {
    std::vector<std::vector<int>> c;
    for (int b : cls) c.push_back(sts.sets[b].elements());
    out.push_back(std::move(c));
  }
  return out;
}

/// The section-7 extension: a resolvable STS on X = [6k+3], one parallel
/// class per element y of Y extended by y, plus `base` relabeled onto Y.
/// Carries a Model 4 (i=1, j=3) solution (or a PBD) on Y up to
/// n = 6k+3+|Y| elements.
inline Family extend_model4_solution(const Family& base, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  int m = 6 * k + 3;
  int ysize = base.n;
  if (ysize > 3 * k + 1) throw std::invalid_argument("|Y| must be at most 3k+1");
  auto classes = resolvable_sts_classes(m);
  int n = m + ysize;
  std::vector<std::vector<int>> blocks;
  for (std::size_t t = 0; t < classes.size(); ++t)
    for (const auto& b : classes[t]) {
      std::vector<int> blk = b;
      if (static_cast<int>(t) < ysize) blk.push_back(m + 1 + static_cast<int>(t));
      blocks.push_back(std::move(blk));
    }
  for (const auto& s : base.sets) {
    std::vector<int> blk;
    for (int e : s.elements()) blk.push_back(m + e);
    blocks.push_back(std::move(blk));
  }
  return detail::canonical_block_family(n, std::move(blocks));
}

/// PBD({3,4}): Steiner systems where they exist, tiny explicit designs,
/// and the section-7 recipe for n = 0 or 4 (mod 6).
inline Family pbd34(int n) {
  if (n < 3 || n == 6 || (n % 3 != 0 && n % 3 != 1))
    throw std::invalid_argument("PBD({3,4}) needs n = 0 or 1 (mod 3), n not in {1,6}");
  if (n == 3 || n == 4) {
    Family f(n);
    ElemSet all = ElemSet::full(n);
    f.add(all);
    return f;
  }
  if (n % 6 == 1 || n % 6 == 3) return steiner_triple_system(n);
  // n = 0 or 4 (mod 6): largest m = 6k+3 <= n with n-m <= 3k+1.
  for (int k = (n - 3) / 6; k >= 1; --k) {
    int m = 6 * k + 3;
    int r = n - m;
    if (r > 3 * k + 1) break;
    Family ybase(std::max(1, r));  // r = 1: a lone extra element, empty base family
    if (r >= 3) ybase = pbd34(r);
    try {
      return extend_model4_solution(ybase, k);
    } catch (const InfeasibleError&) {
      continue;  // try a smaller Kirkman system
    }
  }
  throw InfeasibleError("PBD({3,4}) recipe infeasible at n=" + std::to_string(n) +
                        ": no suitable resolvable STS(6k+3) with n-(6k+3) <= 3k+1");
}

/// PBD({3,4,5}); n=8 has no such design (use model4_n8_family instead).
inline Family pbd345(int n) {
  if (n < 3 || n == 6 || n == 8)
    throw std::invalid_argument("PBD({3,4,5}) needs n >= 3, n not in {6,8}");
  if (n == 5) {
    Family f(5);
    f.add({1, 2, 3, 4, 5});
    return f;
  }
  if (n == 11) {
    // Found by exhaustive pair-cover search.
    std::vector<std::vector<int>> blocks = {
        {1, 2, 3},  {1, 4, 5},  {1, 6, 7},  {1, 8, 9},        {1, 10, 11}, {2, 4, 6},
        {2, 5, 8},  {2, 7, 10}, {2, 9, 11}, {3, 4, 11},       {3, 7, 8},   {4, 7, 9},
        {4, 8, 10}, {5, 7, 11}, {6, 8, 11}, {3, 5, 6, 9, 10},
    };
    return detail::canonical_block_family(11, std::move(blocks));
  }
  if (n % 3 == 0 || n % 3 == 1) return pbd34(n);
  // n = 2 (mod 3): recipe with a PBD({3,4,5}) remainder.
  for (int k = (n - 3) / 6; k >= 1; --k) {
    int m = 6 * k + 3;
    int r = n - m;
    if (r > 3 * k + 1) break;
    if (r < 3 || r == 6 || r == 8) continue;
    try {
      return extend_model4_solution(pbd345(r), k);
    } catch (const InfeasibleError&) {
      continue;
    }
  }
  throw InfeasibleError("PBD({3,4,5}) recipe infeasible at n=" + std::to_string(n));
}

/// The explicit 5-set family on 8 elements solving Model 4 with i=1, j=4.
inline Family model4_n8_family() {
  Family f(8);
  f.add({1, 2, 3, 4});
  f.add({1, 5, 7});
  f.add({2, 5, 8});
  f.add({3, 6, 8});
  f.add({4, 6, 7});
  return f;
}

namespace detail {

inline std::vector<std::vector<std::vector<int>>> kirkman_classes(int n) {
  if (n == 9)
    return {
        {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}},
        {{1, 4, 7}, {2, 5, 8}, {3, 6, 9}},
        {{1, 5, 9}, {2, 6, 7}, {3, 4, 8}},
        {{1, 6, 8}, {2, 4, 9}, {3, 5, 7}},
    };
  if (n == 15)
    return {
        {{1, 2, 3}, {4, 8, 12}, {5, 10, 15}, {6, 11, 13}, {7, 9, 14}},
        {{1, 4, 5}, {2, 8, 10}, {3, 13, 14}, {6, 9, 15}, {7, 11, 12}},
        {{1, 6, 7}, {2, 9, 11}, {3, 12, 15}, {4, 10, 14}, {5, 8, 13}},
        {{1, 8, 9}, {2, 12, 14}, {3, 5, 6}, {4, 11, 15}, {7, 10, 13}},
        {{1, 10, 11}, {2, 13, 15}, {3, 4, 7}, {5, 9, 12}, {6, 8, 14}},
        {{1, 12, 13}, {2, 4, 6}, {3, 9, 10}, {5, 11, 14}, {7, 8, 15}},
        {{1, 14, 15}, {2, 5, 7}, {3, 8, 11}, {4, 9, 13}, {6, 10, 12}},
    };
  return {};
}

}  // namespace detail

/// All-singletons family; solves Model 4 for j >= n-1.
inline Family singleton_family(int n) {
  Family f(n);
  for (int x = 1; x <= n; ++x) f.add(ElemSet::single(n, x));
  return f;
}

}  // namespace smartgt
