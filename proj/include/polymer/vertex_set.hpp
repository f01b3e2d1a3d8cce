#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

#ifndef POLYMER_MAX_VERTICES
#define POLYMER_MAX_VERTICES 256
#endif

namespace polymer {

using Vertex = std::uint32_t;

inline constexpr std::size_t kMaxVertices = POLYMER_MAX_VERTICES;

// Fixed-width bitset over vertex ids in [0, kMaxVertices).
class VertexSet {
 public:
  static constexpr std::size_t kWords = (kMaxVertices + 63) / 64;

  constexpr VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> vs) {
    for (Vertex v : vs) insert(v);
  }

  static VertexSet singleton(Vertex v) {
    VertexSet s;
    s.insert(v);
    return s;
  }
  // {0, ..., n-1}
  static VertexSet prefix(std::size_t n) {
    VertexSet s;
    for (std::size_t w = 0; w < kWords && n > 0; ++w) {
      std::size_t take = n < 64 ? n : 64;
      s.words_[w] = take == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << take) - 1);
      n -= take;
    }
    return s;
  }

  void insert(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }

  std::size_t size() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  // Smallest member; kMaxVertices when empty.
  Vertex min() const {
    for (std::size_t w = 0; w < kWords; ++w)
      if (words_[w]) return static_cast<Vertex>(w * 64 + std::countr_zero(words_[w]));
    return static_cast<Vertex>(kMaxVertices);
  }

  bool intersects(const VertexSet& o) const {
    for (std::size_t w = 0; w < kWords; ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }
  bool subset_of(const VertexSet& o) const {
    for (std::size_t w = 0; w < kWords; ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }

  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
    return *this;
  }
  // Set difference.
  VertexSet& operator-=(const VertexSet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= ~o.words_[w];
    return *this;
  }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  // Canonical order: the set holding the smallest element of the symmetric
  // difference comes first. Agrees with lexicographic order for equal sizes.
  friend bool operator<(const VertexSet& a, const VertexSet& b) {
    for (std::size_t w = 0; w < kWords; ++w) {
      std::uint64_t diff = a.words_[w] ^ b.words_[w];
      if (diff) {
        std::uint64_t low = diff & (~diff + 1);
        // The set holding the lowest differing element sorts first.
        return (a.words_[w] & low) != 0;
      }
    }
    return false;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < kWords; ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(static_cast<Vertex>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }
  std::vector<Vertex> to_vector() const {
    std::vector<Vertex> out;
    out.reserve(size());
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto w : words_) h = (h ^ w) * 0x100000001b3ULL;
    return h;
  }

  const std::array<std::uint64_t, kWords>& words() const { return words_; }

 private:
  std::array<std::uint64_t, kWords> words_{};
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace polymer
