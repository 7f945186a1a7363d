#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smartgt/knowledge.hpp"

namespace smartgt {

// The adaptive setting: only the Questioner adapts; elements receive the
// family of queries containing them, with the answers, at the end.

struct TranscriptStep {
  ElemSet query;
  Answer answer = Answer::No;
};

struct Transcript {
  int n = 0;
  std::vector<TranscriptStep> steps;
};

/// Defectives consistent with every answer so far.
inline ElemSet consistency_set(const Transcript& t) {
  ElemSet c = ElemSet::full(t.n);
  for (const auto& s : t.steps) c = (s.answer == Answer::Yes) ? (c & s.query) : (c - s.query);
  return c;
}

/// Deterministic rule (n, transcript-so-far) -> next query or stop.
class Strategy {
public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  virtual std::optional<ElemSet> next(const Transcript& t) const = 0;
};

class Answerer {
public:
  virtual ~Answerer() = default;
  virtual Answer answer(const ElemSet& query) = 0;
  virtual bool honest() const { return false; }
  /// Honest: the fixed defective. Adversarial: the lexicographically
  /// smallest still-consistent defective (the post-hoc commitment).
  virtual int committed_defective() const = 0;
};

class FixedDefective : public Answerer {
public:
  explicit FixedDefective(int d) : d_(d) {
    if (d < 1) throw std::invalid_argument("defective must be >= 1");
  }
  Answer answer(const ElemSet& q) override { return q.contains(d_) ? Answer::Yes : Answer::No; }
  bool honest() const override { return true; }
  int committed_defective() const override { return d_; }

private:
  int d_;
};

/// Answers YES unless that would contradict the earlier answers.
class YesUnlessContradiction : public Answerer {
public:
  explicit YesUnlessContradiction(int n) : c_(ElemSet::full(n)) {}
  Answer answer(const ElemSet& q) override {
    if (c_.intersects(q)) {
      c_ = c_ & q;
      return Answer::Yes;
    }
    return Answer::No;  // q is disjoint from the consistency set
  }
  int committed_defective() const override { return c_.first(); }

private:
  ElemSet c_;
};

/// Answers NO unless that would contradict the earlier answers.
class NoUnlessContradiction : public Answerer {
public:
  explicit NoUnlessContradiction(int n) : c_(ElemSet::full(n)) {}
  Answer answer(const ElemSet& q) override {
    if (!(c_ - q).empty()) {
      c_ = c_ - q;
      return Answer::No;
    }
    return Answer::Yes;  // c_ is inside q already
  }
  int committed_defective() const override { return c_.first(); }

private:
  ElemSet c_;
};

/// Replay the strategy against the answerer until it stops. An honest
/// run must end with the Questioner's consistency set = {d}; a strategy
/// asking more than 4n queries trips the non-termination guard.
inline Transcript run(const Strategy& strat, Answerer& ans, int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  Transcript t;
  t.n = n;
  while (true) {
    auto q = strat.next(t);
    if (!q) break;
    if (q->universe() != n)
      throw std::invalid_argument("strategy emitted a query over the wrong ground set");
    if (static_cast<int>(t.steps.size()) >= 4 * n)
      throw std::runtime_error("strategy exceeded the 4n query cap");
    Answer a = ans.answer(*q);
    t.steps.push_back({*q, a});
  }
  if (ans.honest() && consistency_set(t) != ElemSet::single(n, ans.committed_defective()))
    throw std::runtime_error("invalid strategy: the Questioner cannot identify the defective");
  return t;
}

/// What a coalition receives at the end: the unordered multiset of
/// (query, answer) pairs over queries meeting it. Positions in the
/// transcript are deliberately erased.
using Observation = std::vector<std::pair<ElemSet, Answer>>;

inline Observation observed(const Transcript& t, const ElemSet& coalition) {
  Observation o;
  for (const auto& s : t.steps)
    if (s.query.intersects(coalition)) o.emplace_back(s.query, s.answer);
  std::sort(o.begin(), o.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return static_cast<int>(a.second) < static_cast<int>(b.second);
  });
  return o;
}

/// Elements the coalition cannot rule out given a realized transcript:
/// those consistent with every observed (query, answer) pair. The
/// composition of queries the coalition never saw is not usable
/// evidence, and positions were already erased by observed().
inline ElemSet posthoc_candidates_against(const Transcript& t, const ElemSet& coalition) {
  if (coalition.empty()) throw std::invalid_argument("coalition must be nonempty");
  ElemSet out = ElemSet::full(t.n);
  for (const auto& [query, answer] : observed(t, coalition))
    out = (answer == Answer::Yes) ? (out & query) : (out - query);
  return out;
}

inline ElemSet posthoc_candidates(const Strategy& strat, int n, int d, const ElemSet& coalition) {
  FixedDefective fd(d);
  Transcript td = run(strat, fd, n);
  return posthoc_candidates_against(td, coalition);
}

/// Adaptive analogue of the Model-4(i,j) check: every j-coalition
/// identifies the defective posthoc; every i-coalition avoiding the
/// defective keeps at least two candidates.
inline bool check_adaptive_model4(const Strategy& strat, int n, int i, int j) {
  if (!(1 <= i && i < j && j <= n)) throw std::invalid_argument("need 1 <= i < j <= n");
  std::vector<Transcript> tr;
  tr.reserve(n);
  for (int d = 1; d <= n; ++d) {
    FixedDefective fd(d);
    tr.push_back(run(strat, fd, n));
  }
  for (int d = 1; d <= n; ++d) {
    bool ok = detail::for_each_subset(n, j, [&](const std::vector<int>& idx) {
      return posthoc_candidates_against(tr[d - 1], ElemSet::of_range(n, idx)) ==
             ElemSet::single(n, d);
    });
    if (!ok) return false;
    ok = detail::for_each_subset(n, i, [&](const std::vector<int>& idx) {
      ElemSet coal = ElemSet::of_range(n, idx);
      if (coal.contains(d)) return true;  // the defective cooperates
      return posthoc_candidates_against(tr[d - 1], coal).size() >= 2;
    });
    if (!ok) return false;
  }
  return true;
}

namespace detail {

inline unsigned __int128 binom128(int m, int k) {
  if (k < 0 || k > m) return 0;
  k = std::min(k, m - k);
  unsigned __int128 r = 1;
  for (int t = 1; t <= k; ++t) r = r * static_cast<unsigned>(m - k + t) / static_cast<unsigned>(t);
  return r;
}

}  // namespace detail

/// The necessary condition (n-1) * C(j-1, i) >= C(n-1, i) for an
/// adaptive Model-4(i,j) solution. Exact integer arithmetic; n <= 128.
inline bool counting_bound(int n, int i, int j) {
  if (!(1 <= i && i < j && j <= n)) throw std::invalid_argument("need 1 <= i < j <= n");
  if (n > 128) throw std::invalid_argument("counting_bound supports n <= 128");
  return static_cast<unsigned __int128>(n - 1) * detail::binom128(j - 1, i) >=
         detail::binom128(n - 1, i);
}

// ---------------------------------------------------------------------------
// Built-in strategies

namespace detail {

inline int ceil_log2(int n) {
  int m = 0;
  while ((1ll << m) < n) ++m;
  return m;
}

/// The unique YES singleton among the first n steps; used by the
/// singleton-phase strategies to locate the defective.
inline int singleton_defective(const Transcript& t) {
  for (int s = 0; s < t.n; ++s)
    if (t.steps[s].answer == Answer::Yes) return s + 1;
  throw std::runtime_error("inconsistent answers: no singleton was answered YES");
}

}  // namespace detail

/// Binary search, then the two reveal queries [n] \ {d} and {d} (always
/// asked, so every element learns the defective). Length ceil(log2 n)+2.
class SepThenReveal : public Strategy {
public:
  std::string name() const override { return "sep-then-reveal"; }

  std::optional<ElemSet> next(const Transcript& t) const override {
    int n = t.n;
    int m = detail::ceil_log2(n);
    int k = static_cast<int>(t.steps.size());
    if (k < m) {
      ElemSet q(n);
      for (int e = 1; e <= n; ++e)
        if ((e - 1) >> k & 1) q.add(e);
      return q;
    }
    if (k >= m + 2) return std::nullopt;
    ElemSet c = ElemSet::full(n);
    for (int s = 0; s < m; ++s)
      c = (t.steps[s].answer == Answer::Yes) ? (c & t.steps[s].query) : (c - t.steps[s].query);
    if (c.size() != 1) throw std::runtime_error("inconsistent answers in the binary phase");
    int d = c.first();
    if (k == m) return ElemSet::full(n) - ElemSet::single(n, d);
    return ElemSet::single(n, d);
  }
};

/// Halve the live set (YES side keeps the first ceil(|S|/2) elements)
/// until it is smaller than 6, then ask all but one of its singletons.
/// Length <= ceil(log2 n)+1; satisfies the Model-3' property posthoc.
class HalvingModel3Prime : public Strategy {
public:
  std::string name() const override { return "halving-model3p"; }

  std::optional<ElemSet> next(const Transcript& t) const override {
    int n = t.n;
    ElemSet live = ElemSet::full(n);
    std::size_t idx = 0;
    while (live.size() >= 6) {
      ElemSet half = first_half(live);
      if (idx == t.steps.size()) return half;
      live = (t.steps[idx].answer == Answer::Yes) ? half : (live - half);
      ++idx;
    }
    auto elems = live.elements();
    std::size_t asked = t.steps.size() - idx;
    if (asked + 1 < elems.size()) return ElemSet::single(n, elems[asked]);
    return std::nullopt;
  }

private:
  static ElemSet first_half(const ElemSet& s) {
    auto elems = s.elements();
    ElemSet h(s.universe());
    for (std::size_t i = 0; i < (elems.size() + 1) / 2; ++i) h.add(elems[i]);
    return h;
  }
};

namespace detail {

/// After the singleton phase, the elements other than d in ascending
/// order — the pool the pairing/partition strategies draw from.
inline std::vector<int> remaining_elements(const Transcript& t, int d) {
  std::vector<int> r;
  r.reserve(t.n - 1);
  for (int e = 1; e <= t.n; ++e)
    if (e != d) r.push_back(e);
  return r;
}

}  // namespace detail

/// All n singletons, then the remaining n-1 elements paired
/// lexicographically and asked together with d. Requires n odd.
class SingletonsPairs : public Strategy {
public:
  std::string name() const override { return "singletons-pairs"; }

  std::optional<ElemSet> next(const Transcript& t) const override {
    int n = t.n;
    if (n % 2 == 0) throw std::invalid_argument("singletons-pairs requires n odd");
    int k = static_cast<int>(t.steps.size());
    if (k < n) return ElemSet::single(n, k + 1);
    int d = detail::singleton_defective(t);
    auto r = detail::remaining_elements(t, d);
    int p = k - n;
    if (2 * p + 1 < static_cast<int>(r.size()))
      return ElemSet::of(n, {r[2 * p], r[2 * p + 1], d});
    return std::nullopt;
  }
};

/// Even-n variant: all n singletons, one triple asked with d, then
/// pairs with d. Requires n even, n >= 4.
class SingletonsTriple : public Strategy {
public:
  std::string name() const override { return "singletons-triple"; }

  std::optional<ElemSet> next(const Transcript& t) const override {
    int n = t.n;
    if (n % 2 != 0 || n < 4) throw std::invalid_argument("singletons-triple requires even n >= 4");
    int k = static_cast<int>(t.steps.size());
    if (k < n) return ElemSet::single(n, k + 1);
    int d = detail::singleton_defective(t);
    auto r = detail::remaining_elements(t, d);
    int p = k - n;
    if (p == 0) return ElemSet::of(n, {r[0], r[1], r[2], d});
    int q = p - 1;
    if (3 + 2 * q + 1 < static_cast<int>(r.size()))
      return ElemSet::of(n, {r[3 + 2 * q], r[4 + 2 * q], d});
    return std::nullopt;
  }
};

/// All n singletons, then the other n-1 elements split into i+1
/// balanced parts (without d), each asked as one query.
class PartitionBalanced : public Strategy {
public:
  explicit PartitionBalanced(int i) : i_(i) {
    if (i < 1) throw std::invalid_argument("partition-balanced requires i >= 1");
  }

  std::string name() const override { return "partition-balanced(" + std::to_string(i_) + ")"; }

  std::optional<ElemSet> next(const Transcript& t) const override {
    int n = t.n;
    if (n - 1 < i_ + 1)
      throw std::invalid_argument("partition-balanced requires n - 1 >= i + 1 nonempty parts");
    int k = static_cast<int>(t.steps.size());
    if (k < n) return ElemSet::single(n, k + 1);
    int d = detail::singleton_defective(t);
    auto r = detail::remaining_elements(t, d);
    int parts = i_ + 1;
    int p = k - n;
    if (p >= parts) return std::nullopt;
    int base = (n - 1) / parts, extra = (n - 1) % parts;
    int begin = p * base + std::min(p, extra);
    int len = base + (p < extra ? 1 : 0);
    ElemSet q(n);
    for (int idx = begin; idx < begin + len; ++idx) q.add(r[idx]);
    return q;
  }

private:
  int i_;
};

}  // namespace smartgt
