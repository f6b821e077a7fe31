#pragma once

#include <atomic>
#include <cstdint>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "loc5arc/errors.hpp"

namespace loc5arc {

using Point = uint16_t;

// Dense permutation of [0, n). Composition is left-to-right throughout:
// (g * h) maps x to h[g[x]], i.e. g acts first.
class Perm {
public:
  Perm() = default;

  explicit Perm(uint32_t n) : img_(n) {
    for (uint32_t i = 0; i < n; ++i)
      img_[i] = static_cast<Point>(i);
  }

  explicit Perm(std::vector<Point> images) : img_(std::move(images)) {}

  Perm(const Perm &o) : img_(o.img_) { sign_.store(o.sign_.load()); }
  Perm(Perm &&o) noexcept : img_(std::move(o.img_)) {
    sign_.store(o.sign_.load());
  }
  Perm &operator=(const Perm &o) {
    img_ = o.img_;
    sign_.store(o.sign_.load());
    return *this;
  }
  Perm &operator=(Perm &&o) noexcept {
    img_ = std::move(o.img_);
    sign_.store(o.sign_.load());
    return *this;
  }

  uint32_t degree() const { return static_cast<uint32_t>(img_.size()); }
  Point operator[](uint32_t x) const { return img_[x]; }
  const std::vector<Point> &images() const { return img_; }

  bool is_identity() const {
    for (uint32_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i)
        return false;
    return true;
  }

  bool operator==(const Perm &o) const { return img_ == o.img_; }
  bool operator!=(const Perm &o) const { return img_ != o.img_; }

  bool valid() const {
    std::vector<bool> seen(img_.size(), false);
    for (Point p : img_) {
      if (p >= img_.size() || seen[p])
        return false;
      seen[p] = true;
    }
    return true;
  }

  // sign of the permutation, cached after first computation
  int sign() const {
    int8_t s = sign_.load(std::memory_order_relaxed);
    if (s != 0)
      return s;
    int computed = compute_sign();
    sign_.store(static_cast<int8_t>(computed), std::memory_order_relaxed);
    return computed;
  }

  int compute_sign() const {
    // (-1)^(n - number of cycles)
    std::vector<bool> seen(img_.size(), false);
    uint32_t cycles = 0;
    for (uint32_t i = 0; i < img_.size(); ++i) {
      if (seen[i])
        continue;
      ++cycles;
      uint32_t j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = img_[j];
      }
    }
    return ((img_.size() - cycles) % 2 == 0) ? +1 : -1;
  }

  std::vector<uint32_t> cycle_lengths() const {
    std::vector<bool> seen(img_.size(), false);
    std::vector<uint32_t> lens;
    for (uint32_t i = 0; i < img_.size(); ++i) {
      if (seen[i])
        continue;
      uint32_t len = 0, j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = img_[j];
        ++len;
      }
      lens.push_back(len);
    }
    return lens;
  }

  uint64_t order() const {
    uint64_t o = 1;
    for (uint32_t len : cycle_lengths())
      o = std::lcm<uint64_t>(o, len);
    return o;
  }

  uint64_t hash() const {
    // FNV-1a over the image bytes; stable across platforms
    uint64_t h = 1469598103934665603ull;
    for (Point p : img_) {
      h ^= static_cast<uint64_t>(p & 0xff);
      h *= 1099511628211ull;
      h ^= static_cast<uint64_t>(p >> 8);
      h *= 1099511628211ull;
    }
    return h;
  }

  void serialize(std::ostream &os) const {
    uint32_t n = degree();
    unsigned char hdr[4] = {static_cast<unsigned char>(n & 0xff),
                            static_cast<unsigned char>((n >> 8) & 0xff),
                            static_cast<unsigned char>((n >> 16) & 0xff),
                            static_cast<unsigned char>((n >> 24) & 0xff)};
    os.write(reinterpret_cast<const char *>(hdr), 4);
    for (Point p : img_) {
      unsigned char b[2] = {static_cast<unsigned char>(p & 0xff),
                            static_cast<unsigned char>(p >> 8)};
      os.write(reinterpret_cast<const char *>(b), 2);
    }
  }

  static Perm deserialize(std::istream &is) {
    unsigned char hdr[4];
    is.read(reinterpret_cast<char *>(hdr), 4);
    if (!is)
      throw IOFailure("truncated permutation header");
    uint32_t n = hdr[0] | (hdr[1] << 8) | (hdr[2] << 16) |
                 (static_cast<uint32_t>(hdr[3]) << 24);
    std::vector<Point> img(n);
    for (uint32_t i = 0; i < n; ++i) {
      unsigned char b[2];
      is.read(reinterpret_cast<char *>(b), 2);
      if (!is)
        throw IOFailure("truncated permutation body");
      img[i] = static_cast<Point>(b[0] | (b[1] << 8));
    }
    Perm p(std::move(img));
    if (!p.valid())
      throw IOFailure("deserialized image array is not a bijection");
    return p;
  }

private:
  std::vector<Point> img_;
  mutable std::atomic<int8_t> sign_{0};
};

inline void check_same_degree(const Perm &g, const Perm &h) {
  if (g.degree() != h.degree())
    throw DegreeMismatch("permutation degrees differ: " +
                         std::to_string(g.degree()) + " vs " +
                         std::to_string(h.degree()));
}

// g then h
inline Perm compose(const Perm &g, const Perm &h) {
  check_same_degree(g, h);
  std::vector<Point> img(g.degree());
  const auto &gi = g.images();
  const auto &hi = h.images();
  for (uint32_t x = 0; x < img.size(); ++x)
    img[x] = hi[gi[x]];
  return Perm(std::move(img));
}

inline Perm operator*(const Perm &g, const Perm &h) { return compose(g, h); }

inline Perm inverse(const Perm &g) {
  std::vector<Point> img(g.degree());
  const auto &gi = g.images();
  for (uint32_t x = 0; x < img.size(); ++x)
    img[gi[x]] = static_cast<Point>(x);
  return Perm(std::move(img));
}

// h^-1 g h
inline Perm conjugate(const Perm &g, const Perm &h) {
  check_same_degree(g, h);
  std::vector<Point> img(g.degree());
  const auto &gi = g.images();
  const auto &hi = h.images();
  for (uint32_t x = 0; x < img.size(); ++x)
    img[hi[x]] = hi[gi[x]];
  return Perm(std::move(img));
}

// [g, h] = g^-1 h^-1 g h
inline Perm commutator(const Perm &g, const Perm &h) {
  return inverse(g) * inverse(h) * g * h;
}

inline Point apply(const Perm &g, Point x) { return g[x]; }

} // namespace loc5arc
