#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "smartgt/knowledge.hpp"
#include "smartgt/search.hpp"

namespace smartgt {

// Cross-checks of the characterization theorems: both sides of each
// equivalence are evaluated per enumerated family and any disagreement
// is reported. The audit is deliberately the arbiter of the dual /
// deduplication conventions.

struct AuditCounterexample {
  std::string equivalence;
  Family family;
};

struct AuditReport {
  int n = 0;
  std::uint64_t checked = 0;
  std::vector<AuditCounterexample> counterexamples;
  bool clean() const { return counterexamples.empty(); }
};

namespace detail {

/// Lemma-char right side: completely separating, and every three
/// distinct elements a,b,c admit a member with a and exactly one of b,c.
inline bool char_condition(const Family& f) {
  if (!is_completely_separating(f)) return false;
  for (int a = 1; a <= f.n; ++a)
    for (int b = 1; b <= f.n; ++b)
      for (int c = b + 1; c <= f.n; ++c) {
        if (a == b || a == c) continue;
        if (!distinguishes(f, a, b, c)) return false;
      }
  return true;
}

/// Claim-canc right side: for any three distinct members A,B,C, at
/// least two of {A&B not subset of C, A&C not subset of B, B&C not
/// subset of A} hold.
inline bool two_of_three_condition(const Family& f) {
  std::vector<ElemSet> distinct;
  for (const auto& s : f.sets)
    if (std::find(distinct.begin(), distinct.end(), s) == distinct.end()) distinct.push_back(s);
  std::size_t m = distinct.size();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      for (std::size_t c = b + 1; c < m; ++c) {
        const auto &A = distinct[a], &B = distinct[b], &C = distinct[c];
        int holds = 0;
        holds += !(A & B).subset_of(C);
        holds += !(A & C).subset_of(B);
        holds += !(B & C).subset_of(A);
        if (holds < 2) return false;
      }
  return true;
}

inline void audit_one(const Family& f, AuditReport& rep) {
  auto record = [&](const char* name) { rep.counterexamples.push_back({name, f}); };

  bool intcan = is_intersection_cancellative(f);
  if (intcan != is_cancellative(complement_family(f))) record("fact-intcan");
  if (is_completely_separating(f) != is_sperner(dual(f))) record("theorem-compsep");

  bool model2 = solves(f, ModelSpec::model2());
  if (model2 != char_condition(f)) record("lemma-char");
  // Sperner on the indexed dual (duplicate traces fail), intersection-
  // cancellative on the deduplicated dual.
  IndexedDual d = dual(f);
  if (model2 != (is_sperner(d) && is_intersection_cancellative(d))) record("theorem-model3");

  if (intcan != two_of_three_condition(f)) record("claim-canc");
  ++rep.checked;
}

/// Decode the mask whose bit k includes subset mask (k+1) of [n];
/// subsets in colex order, matching the search module's enumeration.
inline Family family_from_selector(int n, std::uint64_t selector) {
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m < (std::uint32_t{1} << n); ++m)
    if (selector >> (m - 1) & 1) masks.push_back(m);
  return family_from_masks(n, masks);
}

}  // namespace detail

/// Exhaustive audit over all 2^(2^n - 1) families; n <= 4.
inline AuditReport equivalence_audit(int n, std::uint64_t budget = default_budget()) {
  if (n < 1 || n > 4) throw std::invalid_argument("exhaustive audit supports 1 <= n <= 4");
  std::uint64_t total = std::uint64_t{1} << ((std::uint64_t{1} << n) - 1);
  if (total > budget) throw BudgetError(total);
  AuditReport rep;
  rep.n = n;
  for (std::uint64_t sel = 0; sel < total; ++sel)
    detail::audit_one(detail::family_from_selector(n, sel), rep);
  return rep;
}

/// Sampled audit for 5 <= n <= 8: uniformly random families (each
/// nonempty subset of [n] included independently with probability 1/2),
/// mt19937_64 seeded as given. The selector stream is drawn up front so
/// results are identical for every thread count.
inline AuditReport equivalence_audit_sampled(int n, std::uint64_t samples, std::uint64_t seed = 0,
                                             int threads = 1) {
  if (n < 5 || n > 8) throw std::invalid_argument("sampled audit supports 5 <= n <= 8");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  int bits = (1 << n) - 1;
  int words = (bits + 63) / 64;
  std::mt19937_64 gen(seed);
  std::vector<std::uint64_t> selectors(samples * words);
  for (auto& w : selectors) w = gen();
  int rem = bits % 64;
  if (rem)
    for (std::uint64_t s = 0; s < samples; ++s)
      selectors[s * words + words - 1] &= (~std::uint64_t{0}) >> (64 - rem);

  auto build = [&](std::uint64_t s) {
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 1; m <= static_cast<std::uint32_t>(bits); ++m)
      if (selectors[s * words + (m - 1) / 64] >> ((m - 1) % 64) & 1) masks.push_back(m);
    return detail::family_from_masks(n, masks);
  };

  std::vector<AuditReport> parts(threads);
  auto worker = [&](int t) {
    parts[t].n = n;
    for (std::uint64_t s = t; s < samples; s += threads) detail::audit_one(build(s), parts[t]);
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  AuditReport rep;
  rep.n = n;
  for (auto& p : parts) {
    rep.checked += p.checked;
    for (auto& c : p.counterexamples) rep.counterexamples.push_back(std::move(c));
  }
  return rep;
}

}  // namespace smartgt
