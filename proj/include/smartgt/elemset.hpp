#pragma once

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace smartgt {

/// Subset of the ground set [n] = {1,..,n}, stored as a bitmask.
/// Element e lives in bit (e-1). All operands of binary ops must share
/// the same universe size.
class ElemSet {
public:
  ElemSet() = default;

  explicit ElemSet(int n) : n_(check_n(n)), words_((n + 63) / 64, 0) {}

  static ElemSet full(int n) {
    ElemSet s(n);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  static ElemSet single(int n, int e) {
    ElemSet s(n);
    s.add(e);
    return s;
  }

  static ElemSet of(int n, std::initializer_list<int> elems) {
    ElemSet s(n);
    for (int e : elems) s.add(e);
    return s;
  }

  template <typename Range>
  static ElemSet of_range(int n, const Range& elems) {
    ElemSet s(n);
    for (int e : elems) s.add(e);
    return s;
  }

  int universe() const { return n_; }

  bool contains(int e) const {
    check_elem(e);
    return words_[(e - 1) / 64] >> ((e - 1) % 64) & 1;
  }

  void add(int e) {
    check_elem(e);
    words_[(e - 1) / 64] |= std::uint64_t{1} << ((e - 1) % 64);
  }

  void remove(int e) {
    check_elem(e);
    words_[(e - 1) / 64] &= ~(std::uint64_t{1} << ((e - 1) % 64));
  }

  int size() const {
    int c = 0;
    for (auto w : words_) c += __builtin_popcountll(w);
    return c;
  }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  /// Smallest element, or 0 if empty.
  int first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<int>(i * 64 + __builtin_ctzll(words_[i]) + 1);
    return 0;
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        out.push_back(static_cast<int>(i * 64 + __builtin_ctzll(w) + 1));
        w &= w - 1;
      }
    }
    return out;
  }

  ElemSet operator&(const ElemSet& o) const { return zip(o, [](auto a, auto b) { return a & b; }); }
  ElemSet operator|(const ElemSet& o) const { return zip(o, [](auto a, auto b) { return a | b; }); }
  /// Set difference.
  ElemSet operator-(const ElemSet& o) const { return zip(o, [](auto a, auto b) { return a & ~b; }); }

  ElemSet complement() const {
    ElemSet r(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    r.trim();
    return r;
  }

  bool subset_of(const ElemSet& o) const {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool intersects(const ElemSet& o) const {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  bool operator==(const ElemSet& o) const { return n_ == o.n_ && words_ == o.words_; }
  bool operator!=(const ElemSet& o) const { return !(*this == o); }

  /// Colex order: compare highest differing bit. Gives a total, stable order.
  bool operator<(const ElemSet& o) const {
    check_same(o);
    for (std::size_t i = words_.size(); i-- > 0;)
      if (words_[i] != o.words_[i]) return words_[i] < o.words_[i];
    return false;
  }

  std::uint64_t word(std::size_t i) const { return i < words_.size() ? words_[i] : 0; }
  std::size_t word_count() const { return words_.size(); }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto w : words_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

private:
  static int check_n(int n) {
    if (n < 1) throw std::invalid_argument("ground set size must be >= 1");
    return n;
  }

  void check_elem(int e) const {
    if (e < 1 || e > n_) throw std::invalid_argument("element outside ground set [n]");
  }

  void check_same(const ElemSet& o) const {
    if (n_ != o.n_) throw std::invalid_argument("universe size mismatch");
  }

  void trim() {
    int rem = n_ % 64;
    if (rem) words_.back() &= (~std::uint64_t{0}) >> (64 - rem);
  }

  template <typename Op>
  ElemSet zip(const ElemSet& o, Op op) const {
    check_same(o);
    ElemSet r(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = op(words_[i], o.words_[i]);
    return r;
  }

  int n_ = 0;
  // Inline storage up to n = 256 keeps set algebra allocation-free in
  // the enumeration-heavy paths (audits, searches).
  boost::container::small_vector<std::uint64_t, 4> words_;
};

struct ElemSetHash {
  std::size_t operator()(const ElemSet& s) const { return s.hash(); }
};

}  // namespace smartgt
