#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loc5arc/errors.hpp"
#include "loc5arc/perm.hpp"

namespace loc5arc {

using BigInt = boost::multiprecision::cpp_int;

class Group;
using GroupHandle = std::shared_ptr<const Group>;

// Deterministic Schreier-Sims stabilizer chain. Base points are either taken
// from the seed or chosen as the smallest point moved; all processing orders
// are fixed, so identical generator lists produce identical chains.
class Group {
public:
  struct Level {
    Point base = 0;
    std::vector<uint32_t> gens; // indices into the strong generator pool
    std::vector<Point> orbit;   // BFS order, orbit[0] = base
    std::vector<int32_t> pos;   // point -> orbit position, -1 outside
    // Schreier vector: how each non-root orbit point was first reached
    std::vector<int32_t> from_gen; // pool index, -1 for the root
    std::vector<Point> from_pt;
    // optional explicit transversals aligned with orbit (small levels only)
    std::vector<Perm> tv, tv_inv;
    bool tv_live = false; // caches maintained incrementally during build
    // incremental processing counter: pairs (orbit[i], gens[j]) with
    // j < processed[i] have had their Schreier generator handled
    std::vector<uint32_t> processed;
  };

  static GroupHandle build(std::vector<Perm> generators,
                           std::vector<Point> seed_base = {},
                           size_t transversal_cache_bytes = kDefaultCacheBytes) {
    auto g = std::shared_ptr<Group>(new Group());
    g->construct(std::move(generators), std::move(seed_base),
                 transversal_cache_bytes);
    return g;
  }

  static GroupHandle trivial(uint32_t degree) {
    return build({Perm(degree)});
  }

  uint32_t degree() const { return degree_; }
  const std::vector<Perm> &generators() const { return gens_; }
  const BigInt &order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }

  // strong generators at chain level 0 form a small generating set
  std::vector<Perm> reduced_generators() const {
    std::vector<Perm> out;
    if (levels_.empty())
      return {Perm(degree_)};
    for (uint32_t idx : levels_[0].gens)
      out.push_back(pool_[idx]);
    if (out.empty())
      out.push_back(Perm(degree_));
    return out;
  }

  const std::vector<Point> &base() const { return base_; }
  const std::vector<Level> &levels() const { return levels_; }
  const std::vector<Perm> &strong_generators() const { return pool_; }

  bool contains(const Perm &p) const {
    if (p.degree() != degree_)
      throw DegreeMismatch("membership test across different degrees");
    auto [residue, level] = sift(p, 0);
    (void)level;
    return residue.is_identity();
  }

  std::pair<Perm, size_t> sift(Perm g, size_t from_level) const {
    for (size_t l = from_level; l < levels_.size(); ++l) {
      const Level &L = levels_[l];
      Point p = g[L.base];
      if (p == L.base)
        continue;
      if (L.pos[p] < 0)
        return {std::move(g), l};
      g = g * transversal_inv(l, p);
    }
    return {std::move(g), levels_.size()};
  }

  // coset representative u with base(level)^u = p
  Perm transversal(size_t level, Point p) const {
    const Level &L = levels_[level];
    int32_t pidx = L.pos[p];
    if (pidx < 0)
      throw InvalidParameter("point outside level orbit");
    if (!L.tv.empty())
      return L.tv[pidx];
    std::vector<int32_t> path;
    Point x = p;
    while (x != L.base) {
      int32_t i = L.pos[x];
      path.push_back(L.from_gen[i]);
      x = L.from_pt[i];
    }
    Perm u(degree_);
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      u = u * pool_[*it];
    return u;
  }

  Perm transversal_inv(size_t level, Point p) const {
    const Level &L = levels_[level];
    int32_t pidx = L.pos[p];
    if (pidx < 0)
      throw InvalidParameter("point outside level orbit");
    if (!L.tv_inv.empty())
      return L.tv_inv[pidx];
    Perm u(degree_);
    Point x = p;
    while (x != L.base) {
      int32_t i = L.pos[x];
      u = u * pool_inv_[L.from_gen[i]];
      x = L.from_pt[i];
    }
    return u;
  }

  // depth-first enumeration of all elements via the transversals; callback
  // returning false aborts the walk
  template <typename F> bool enumerate(F &&callback, BigInt cap) const {
    if (order_ > cap)
      throw CapExceeded("group order " + order_.str() +
                        " exceeds enumeration cap " + cap.str());
    Perm acc(degree_);
    return enumerate_rec(levels_.size(), acc, callback);
  }

  uint64_t generator_hash() const { return gen_hash_; }

  void save(const std::string &path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os)
      throw IOFailure("cannot open cache file for writing: " + path);
    os.write(kCacheMagic, 8);
    write_u32(os, kCacheVersion);
    write_u32(os, degree_);
    write_u64(os, gen_hash_);
    write_u32(os, static_cast<uint32_t>(base_.size()));
    for (Point b : base_)
      write_u32(os, b);
    write_u32(os, static_cast<uint32_t>(pool_.size()));
    for (const Perm &p : pool_)
      p.serialize(os);
    for (const Level &L : levels_) {
      write_u32(os, static_cast<uint32_t>(L.gens.size()));
      for (uint32_t g : L.gens)
        write_u32(os, g);
      write_u32(os, static_cast<uint32_t>(L.orbit.size()));
      for (size_t i = 0; i < L.orbit.size(); ++i) {
        write_u32(os, L.orbit[i]);
        write_u32(os, static_cast<uint32_t>(L.from_gen[i] + 1));
        write_u32(os, L.from_pt[i]);
      }
    }
    if (!os)
      throw IOFailure("write failure on cache file: " + path);
  }

  // Rebuilds a handle from a cache file; the stored chain is revalidated
  // against the given generator list (degree, hash, membership of every
  // generator) before it is accepted.
  static GroupHandle load(const std::string &path,
                          const std::vector<Perm> &generators,
                          size_t transversal_cache_bytes = kDefaultCacheBytes) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
      throw IOFailure("cannot open cache file: " + path);
    char magic[8];
    is.read(magic, 8);
    if (!is || std::string(magic, 8) != kCacheMagic)
      throw IOFailure("bad cache magic");
    if (read_u32(is) != kCacheVersion)
      throw IOFailure("cache version mismatch");
    auto g = std::shared_ptr<Group>(new Group());
    g->degree_ = read_u32(is);
    g->gens_ = generators;
    g->gen_hash_ = hash_generators(generators);
    if (read_u64(is) != g->gen_hash_)
      throw IOFailure("cache generator hash mismatch");
    for (const Perm &p : generators)
      if (p.degree() != g->degree_)
        throw IOFailure("cache degree mismatch");
    uint32_t blen = read_u32(is);
    for (uint32_t i = 0; i < blen; ++i)
      g->base_.push_back(static_cast<Point>(read_u32(is)));
    uint32_t psz = read_u32(is);
    for (uint32_t i = 0; i < psz; ++i) {
      Perm p = Perm::deserialize(is);
      if (p.degree() != g->degree_)
        throw IOFailure("cache strong generator degree mismatch");
      g->pool_.push_back(std::move(p));
      g->pool_inv_.push_back(inverse(g->pool_.back()));
    }
    for (uint32_t l = 0; l < blen; ++l) {
      Level L;
      L.base = g->base_[l];
      uint32_t ng = read_u32(is);
      for (uint32_t i = 0; i < ng; ++i) {
        uint32_t gi = read_u32(is);
        if (gi >= psz)
          throw IOFailure("cache generator index out of range");
        L.gens.push_back(gi);
      }
      uint32_t osz = read_u32(is);
      L.pos.assign(g->degree_, -1);
      for (uint32_t i = 0; i < osz; ++i) {
        Point pt = static_cast<Point>(read_u32(is));
        int32_t fg = static_cast<int32_t>(read_u32(is)) - 1;
        Point fp = static_cast<Point>(read_u32(is));
        L.orbit.push_back(pt);
        L.from_gen.push_back(fg);
        L.from_pt.push_back(fp);
        L.pos[pt] = static_cast<int32_t>(i);
      }
      if (L.orbit.empty() || L.orbit[0] != L.base)
        throw IOFailure("cache orbit malformed");
      g->levels_.push_back(std::move(L));
    }
    g->recompute_order();
    // revalidate: orbits closed under level generators, all original
    // generators are members
    for (size_t l = 0; l < g->levels_.size(); ++l) {
      const Level &L = g->levels_[l];
      for (Point x : L.orbit)
        for (uint32_t gi : L.gens)
          if (L.pos[g->pool_[gi][x]] < 0)
            throw IOFailure("cache orbit not closed");
    }
    for (const Perm &p : generators)
      if (!p.is_identity() && !g->contains(p))
        throw IOFailure("cache chain rejects a generator");
    g->fill_transversal_caches(transversal_cache_bytes);
    return g;
  }

  static uint64_t hash_generators(const std::vector<Perm> &gens) {
    uint64_t h = 14695981039346656037ull;
    for (const Perm &p : gens) {
      uint64_t ph = p.hash();
      for (int i = 0; i < 8; ++i) {
        h ^= (ph >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
      }
    }
    return h;
  }

  static constexpr size_t kDefaultCacheBytes = 48u << 20;

private:
  Group() = default;

  void construct(std::vector<Perm> generators, std::vector<Point> seed_base,
                 size_t cache_bytes) {
    if (generators.empty())
      throw InvalidParameter("generator list must be nonempty");
    degree_ = generators[0].degree();
    for (const Perm &p : generators)
      if (p.degree() != degree_)
        throw DegreeMismatch("generators of unequal degree");
    gens_ = std::move(generators);
    gen_hash_ = hash_generators(gens_);
    for (Point b : seed_base)
      append_level(b);
    for (const Perm &p : gens_)
      add_generator(p);
    recompute_order();
    for (const Perm &p : gens_)
      if (!p.is_identity() && !contains(p))
        throw std::logic_error("stabilizer chain rejects its own generator");
    fill_transversal_caches(cache_bytes);
  }

  void add_generator(const Perm &p) {
    if (p.is_identity())
      return;
    if (levels_.empty())
      append_level(first_moved(p));
    auto [residue, drop] = sift(p, 0);
    if (residue.is_identity())
      return;
    insert_residue(std::move(residue), 0, drop);
  }

  // Adjoin a residue that fixes base[0..drop-1]; it becomes a strong
  // generator at levels origin..drop, then those levels are reprocessed
  // deepest-first.
  void insert_residue(Perm residue, size_t origin, size_t drop) {
    if (drop == levels_.size()) {
      if (residue.is_identity())
        return;
      append_level(first_moved(residue));
    }
    uint32_t idx = static_cast<uint32_t>(pool_.size());
    pool_inv_.push_back(inverse(residue));
    pool_.push_back(std::move(residue));
    for (size_t l = origin; l <= drop && l < levels_.size(); ++l)
      levels_[l].gens.push_back(idx);
    for (size_t l = std::min(drop, levels_.size() - 1) + 1; l-- > origin;)
      process_level(l);
  }

  // Note: recursive insert_residue calls grow levels_ and pool_, so all
  // state is re-fetched through indices after any potential mutation.
  void process_level(size_t l) {
    for (size_t i = 0; i < levels_[l].orbit.size(); ++i) {
      while (levels_[l].processed[i] < levels_[l].gens.size()) {
        Level &L = levels_[l];
        uint32_t j = L.gens[L.processed[i]++];
        Point x = L.orbit[i];
        Point y = pool_[j][x];
        int32_t ypos = L.pos[y];
        if (ypos < 0) {
          L.pos[y] = static_cast<int32_t>(L.orbit.size());
          L.orbit.push_back(y);
          L.from_gen.push_back(static_cast<int32_t>(j));
          L.from_pt.push_back(x);
          L.processed.push_back(0);
          if (L.tv_live) {
            size_t need = 2 * sizeof(Point) * degree_;
            if (build_cache_used_ + need > kBuildCacheBytes) {
              L.tv_live = false;
              build_cache_used_ -= 2 * sizeof(Point) * degree_ * L.tv.size();
              L.tv.clear();
              L.tv.shrink_to_fit();
              L.tv_inv.clear();
              L.tv_inv.shrink_to_fit();
            } else {
              build_cache_used_ += need;
              L.tv.push_back(L.tv[static_cast<size_t>(L.pos[x])] * pool_[j]);
              L.tv_inv.push_back(pool_inv_[j] *
                                 L.tv_inv[static_cast<size_t>(L.pos[x])]);
            }
          }
          continue;
        }
        // tree edges yield trivial Schreier generators
        if (L.from_gen[ypos] == static_cast<int32_t>(j) && L.from_pt[ypos] == x)
          continue;
        Perm s = transversal(l, x) * pool_[j] * transversal_inv(l, y);
        auto [residue, dropped] = sift(std::move(s), l + 1);
        if (!residue.is_identity())
          insert_residue(std::move(residue), l + 1, dropped);
      }
    }
  }

  void append_level(Point b) {
    Level L;
    L.base = b;
    L.pos.assign(degree_, -1);
    L.orbit.push_back(b);
    L.pos[b] = 0;
    L.from_gen.push_back(-1);
    L.from_pt.push_back(b);
    L.processed.push_back(0);
    base_.push_back(b);
    levels_.push_back(std::move(L));
  }

  Point first_moved(const Perm &p) const {
    for (uint32_t x = 0; x < degree_; ++x)
      if (p[x] != x)
        return static_cast<Point>(x);
    throw std::logic_error("identity has no moved point");
  }

  void recompute_order() {
    order_ = 1;
    for (const Level &L : levels_)
      order_ *= static_cast<unsigned long>(L.orbit.size());
  }

  void fill_transversal_caches(size_t budget) {
    size_t used = 0;
    for (Level &L : levels_) {
      size_t need = 2 * L.orbit.size() * degree_ * sizeof(Point);
      if (used + need > budget)
        break;
      used += need;
      L.tv.reserve(L.orbit.size());
      L.tv_inv.reserve(L.orbit.size());
      for (size_t i = 0; i < L.orbit.size(); ++i) {
        if (L.from_gen[i] < 0) {
          L.tv.emplace_back(degree_);
          L.tv_inv.emplace_back(degree_);
        } else {
          const Perm &prev = L.tv[L.pos[L.from_pt[i]]];
          const Perm &prev_inv = L.tv_inv[L.pos[L.from_pt[i]]];
          L.tv.push_back(prev * pool_[L.from_gen[i]]);
          L.tv_inv.push_back(pool_inv_[L.from_gen[i]] * prev_inv);
        }
      }
    }
  }

  template <typename F>
  bool enumerate_rec(size_t levels_left, Perm &acc, F &callback) const {
    if (levels_left == 0)
      return callback(static_cast<const Perm &>(acc));
    size_t l = levels_.size() - levels_left;
    const Level &L = levels_[l];
    for (size_t i = 0; i < L.orbit.size(); ++i) {
      Perm next = (i == 0) ? acc : transversal(l, L.orbit[i]) * acc;
      if (!enumerate_rec(levels_left - 1, next, callback))
        return false;
    }
    return true;
  }

  static void write_u32(std::ostream &os, uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char *>(b), 4);
  }
  static void write_u64(std::ostream &os, uint64_t v) {
    write_u32(os, static_cast<uint32_t>(v & 0xffffffffu));
    write_u32(os, static_cast<uint32_t>(v >> 32));
  }
  static uint32_t read_u32(std::istream &is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char *>(b), 4);
    if (!is)
      throw IOFailure("truncated cache file");
    return b[0] | (b[1] << 8) | (b[2] << 16) |
           (static_cast<uint32_t>(b[3]) << 24);
  }
  static uint64_t read_u64(std::istream &is) {
    uint64_t lo = read_u32(is);
    uint64_t hi = read_u32(is);
    return lo | (hi << 32);
  }

  static constexpr const char *kCacheMagic = "L5ABSGS1";
  static constexpr uint32_t kCacheVersion = 1;

  uint32_t degree_ = 0;
  std::vector<Perm> gens_;
  uint64_t gen_hash_ = 0;
  std::vector<Point> base_;
  std::vector<Perm> pool_, pool_inv_;
  std::vector<Level> levels_;
  BigInt order_ = 1;
};

} // namespace loc5arc
