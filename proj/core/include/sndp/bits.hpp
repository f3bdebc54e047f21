#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace sndp {

// Dense index set over a fixed universe 0..n-1, packed into 64-bit words.
// Used both for vertex sets and for edge-id sets.  Operands of a binary op
// must share the universe size.
class Bits {
 public:
  Bits() = default;
  explicit Bits(uint32_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static Bits full(uint32_t n) {
    Bits b(n);
    for (uint32_t v = 0; v < n; ++v) b.add(v);
    return b;
  }
  static Bits of(uint32_t n, std::initializer_list<uint32_t> xs) {
    Bits b(n);
    for (uint32_t v : xs) b.add(v);
    return b;
  }

  uint32_t universe() const { return n_; }

  bool contains(uint32_t v) const {
    assert(v < n_);
    return (w_[v >> 6] >> (v & 63)) & 1u;
  }
  void add(uint32_t v) {
    assert(v < n_);
    w_[v >> 6] |= uint64_t{1} << (v & 63);
  }
  void remove(uint32_t v) {
    assert(v < n_);
    w_[v >> 6] &= ~(uint64_t{1} << (v & 63));
  }

  uint32_t size() const {
    uint32_t c = 0;
    for (uint64_t w : w_) c += static_cast<uint32_t>(__builtin_popcountll(w));
    return c;
  }
  bool empty() const {
    for (uint64_t w : w_)
      if (w) return false;
    return true;
  }

  Bits& operator|=(const Bits& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  // set difference
  Bits& operator-=(const Bits& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator-(Bits a, const Bits& b) { return a -= b; }

  bool subset_of(const Bits& o) const {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const Bits& o) const {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const Bits& o) const { return !(*this == o); }

  // Total order for canonical sorting: treat the words as one big unsigned
  // integer, most significant word first.  Arbitrary but fixed.
  int compare(const Bits& o) const {
    assert(n_ == o.n_);
    for (size_t i = w_.size(); i-- > 0;) {
      if (w_[i] != o.w_[i]) return w_[i] < o.w_[i] ? -1 : 1;
    }
    return 0;
  }

  size_t hash() const {
    size_t h = 0x9e3779b97f4a7c15ull ^ n_;
    for (uint64_t w : w_) h = (h ^ w) * 0x100000001b3ull;
    return h;
  }

  std::vector<uint32_t> to_list() const {
    std::vector<uint32_t> out;
    for_each([&](uint32_t v) { out.push_back(v); });
    return out;
  }

  template <class F>
  void for_each(F f) const {  // ascending order
    for (size_t i = 0; i < w_.size(); ++i) {
      uint64_t w = w_[i];
      while (w) {
        uint32_t b = static_cast<uint32_t>(__builtin_ctzll(w));
        f(static_cast<uint32_t>(i * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::string str() const {  // "{0,3,5}"
    std::string s = "{";
    bool first = true;
    for_each([&](uint32_t v) {
      if (!first) s += ",";
      s += std::to_string(v);
      first = false;
    });
    return s + "}";
  }

 private:
  uint32_t n_ = 0;
  std::vector<uint64_t> w_;
};

using VertexSet = Bits;
using EdgeSet = Bits;  // indices into a graph's edge list

}  // namespace sndp
