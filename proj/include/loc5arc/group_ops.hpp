#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>
#include <vector>

#include "loc5arc/group.hpp"

namespace loc5arc {

// ---- canonical coset representatives ----------------------------------

// The unique element of H*g minimizing the image sequence of H's base
// lexicographically. Greedy walk down the chain: at each level the candidates
// still available form a coset of the next stabilizer, and the reachable
// images of the base point are exactly the level orbit mapped through the
// current element.
inline Perm canonical_coset_rep(const Group &H, const Perm &g) {
  Perm cur = g;
  for (size_t l = 0; l < H.levels().size(); ++l) {
    const auto &L = H.levels()[l];
    Point best_src = L.orbit[0];
    Point best_img = cur[best_src];
    for (size_t i = 1; i < L.orbit.size(); ++i) {
      Point img = cur[L.orbit[i]];
      if (img < best_img) {
        best_img = img;
        best_src = L.orbit[i];
      }
    }
    if (best_src != L.base)
      cur = H.transversal(l, best_src) * cur;
  }
  return cur;
}

// Exact coset key: the canonical representative's image vector. Base images
// alone do not separate cosets, so the full vector is kept.
inline std::vector<Point> canonical_coset_key(const Group &H, const Perm &g) {
  return canonical_coset_rep(H, g).images();
}

struct PointVectorHash {
  size_t operator()(const std::vector<Point> &v) const {
    uint64_t h = 1469598103934665603ull;
    for (Point p : v) {
      h ^= static_cast<uint64_t>(p & 0xff);
      h *= 1099511628211ull;
      h ^= static_cast<uint64_t>(p >> 8);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

// ---- orbit of a coset under right multiplication -----------------------

// Orbit of the right coset N*t under right multiplication by X, together
// with the stabilizer Stab_X(N*t) generated by the Schreier generators.
// When N is normalized by X inside <X,N>, the stabilizer coincides with the
// kernel of X acting on the N-cosets it reaches.
struct CosetOrbit {
  std::vector<Perm> access; // w in X with orbit element N*t*w
  std::vector<std::vector<Point>> keys;
  GroupHandle stabilizer;
};

inline CosetOrbit coset_orbit_stabilizer(const Group &X, const Group &N,
                                         const Perm &t, uint64_t max_orbit) {
  if (X.degree() != N.degree())
    throw DegreeMismatch("coset orbit across different degrees");
  std::vector<Perm> gens = X.reduced_generators();
  CosetOrbit out;
  std::unordered_map<std::vector<Point>, uint32_t, PointVectorHash> index;
  std::vector<Perm> schreier;
  out.access.push_back(Perm(X.degree()));
  out.keys.push_back(canonical_coset_key(N, t));
  index.emplace(out.keys[0], 0);
  for (uint32_t i = 0; i < out.access.size(); ++i) {
    for (const Perm &s : gens) {
      Perm w = out.access[i] * s;
      auto key = canonical_coset_key(N, t * w);
      auto it = index.find(key);
      if (it == index.end()) {
        if (out.access.size() >= max_orbit)
          throw IndexOverflow("coset orbit exceeds bound " +
                              std::to_string(max_orbit));
        index.emplace(key, static_cast<uint32_t>(out.access.size()));
        out.access.push_back(std::move(w));
        out.keys.push_back(std::move(key));
      } else {
        Perm sg = w * inverse(out.access[it->second]);
        if (!sg.is_identity())
          schreier.push_back(std::move(sg));
      }
    }
  }
  if (schreier.empty())
    schreier.push_back(Perm(X.degree()));
  out.stabilizer = Group::build(std::move(schreier));
  return out;
}

// ---- subgroup predicates ------------------------------------------------

inline bool is_subgroup(const Group &H, const Group &G) {
  for (const Perm &h : H.generators())
    if (!G.contains(h))
      return false;
  return true;
}

inline bool is_normal_in(const Group &H, const Group &G) {
  for (const Perm &g : G.reduced_generators())
    for (const Perm &h : H.reduced_generators())
      if (!H.contains(conjugate(h, g)))
        return false;
  return true;
}

inline bool same_group(const Group &A, const Group &B) {
  return A.order() == B.order() && is_subgroup(A, B);
}

// ---- normal closure and derived subgroup --------------------------------

// smallest subgroup of <H, B> containing B and normalized by H
inline GroupHandle normal_closure(const Group &B, const Group &H) {
  std::vector<Perm> gens = B.reduced_generators();
  if (gens.empty() || (gens.size() == 1 && gens[0].is_identity()))
    return Group::trivial(H.degree());
  std::vector<Perm> hgens = H.reduced_generators();
  GroupHandle cur = Group::build(gens);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Perm> next = gens;
    for (const Perm &x : cur->reduced_generators())
      for (const Perm &h : hgens) {
        Perm c = conjugate(x, h);
        if (!cur->contains(c)) {
          next.push_back(std::move(c));
          grew = true;
        }
      }
    if (grew) {
      gens = std::move(next);
      cur = Group::build(gens);
    }
  }
  return cur;
}

inline GroupHandle derived_subgroup(const Group &G) {
  std::vector<Perm> gens = G.reduced_generators();
  std::vector<Perm> comms;
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j) {
      Perm c = commutator(gens[i], gens[j]);
      if (!c.is_identity())
        comms.push_back(std::move(c));
    }
  if (comms.empty())
    return Group::trivial(G.degree());
  return normal_closure(*Group::build(comms), G);
}

// the group [X, Y] = <[x,y]>^{<X,Y>}
inline GroupHandle commutator_subgroup(const Group &X, const Group &Y) {
  std::vector<Perm> comms;
  for (const Perm &x : X.reduced_generators())
    for (const Perm &y : Y.reduced_generators()) {
      Perm c = commutator(x, y);
      if (!c.is_identity())
        comms.push_back(std::move(c));
    }
  if (comms.empty())
    return Group::trivial(X.degree());
  std::vector<Perm> join = X.reduced_generators();
  for (const Perm &y : Y.reduced_generators())
    join.push_back(y);
  return normal_closure(*Group::build(comms), *Group::build(join));
}

// ---- intersections via the product formula ------------------------------

inline void require_product_group(const Group &H, const Group &N) {
  for (const Perm &h : H.reduced_generators())
    for (const Perm &n : N.reduced_generators())
      if (!N.contains(conjugate(n, h)))
        throw NotAProductGroup(
            "second argument is not normalized by the first; HN is not "
            "guaranteed to be a group");
}

inline GroupHandle join_group(const Group &H, const Group &N) {
  std::vector<Perm> gens = H.reduced_generators();
  for (const Perm &n : N.reduced_generators())
    gens.push_back(n);
  return Group::build(gens);
}

inline BigInt intersection_order(const Group &H, const Group &N) {
  require_product_group(H, N);
  GroupHandle join = join_group(H, N);
  return H.order() * N.order() / join->order();
}

inline GroupHandle intersection(const Group &H, const Group &N,
                                uint64_t max_index = 1000000) {
  require_product_group(H, N);
  CosetOrbit co = coset_orbit_stabilizer(H, N, Perm(H.degree()), max_index);
  BigInt expect = intersection_order(H, N);
  if (co.stabilizer->order() != expect)
    throw std::logic_error("intersection order disagrees with product formula");
  return co.stabilizer;
}

// stabilizer in X of the right coset N*t (no normality requirement)
inline GroupHandle coset_stabilizer(const Group &X, const Group &N,
                                    const Perm &t,
                                    uint64_t max_orbit = 1000000) {
  return coset_orbit_stabilizer(X, N, t, max_orbit).stabilizer;
}

// ---- coset tables and action kernels ------------------------------------

struct CosetTable {
  GroupHandle parent;
  GroupHandle subgroup;
  std::vector<Perm> representatives;
  // induced permutation of representative indices per reduced parent
  // generator, aligned with parent->reduced_generators()
  std::vector<Perm> action;
};

inline CosetTable coset_table(GroupHandle G, GroupHandle H,
                              uint64_t max_index) {
  if (!is_subgroup(*H, *G))
    throw InvalidParameter("coset table requires H <= G");
  CosetOrbit co = coset_orbit_stabilizer(*G, *H, Perm(G->degree()), max_index);
  CosetTable t;
  t.parent = G;
  t.subgroup = H;
  std::unordered_map<std::vector<Point>, uint32_t, PointVectorHash> index;
  for (uint32_t i = 0; i < co.keys.size(); ++i)
    index.emplace(co.keys[i], i);
  t.representatives = std::move(co.access);
  uint32_t m = static_cast<uint32_t>(t.representatives.size());
  for (const Perm &s : G->reduced_generators()) {
    std::vector<Point> img(m);
    for (uint32_t i = 0; i < m; ++i) {
      auto key = canonical_coset_key(*H, t.representatives[i] * s);
      img[i] = static_cast<Point>(index.at(key));
    }
    t.action.emplace_back(std::move(img));
  }
  return t;
}

// kernel of the action of the parent on the cosets, via iterated coset
// stabilizers; equals the core of the subgroup in the parent
inline GroupHandle action_kernel(const CosetTable &t) {
  GroupHandle cur = t.parent;
  for (const Perm &rep : t.representatives) {
    bool all_fix = true;
    for (const Perm &g : cur->reduced_generators())
      if (canonical_coset_key(*t.subgroup, rep * g) !=
          canonical_coset_key(*t.subgroup, rep)) {
        all_fix = false;
        break;
      }
    if (all_fix)
      continue;
    cur = coset_stabilizer(*cur, *t.subgroup, rep,
                           t.representatives.size() + 1);
  }
  return cur;
}

// group induced by the table's action permutations
inline GroupHandle induced_action_group(const CosetTable &t) {
  if (t.action.empty())
    return Group::trivial(1);
  return Group::build(t.action);
}

// orbit of the ordered pair (0, 1) under the induced action; 2-transitivity
// on m points amounts to this orbit having size m(m-1)
inline uint64_t ordered_pair_orbit_size(const std::vector<Perm> &action) {
  if (action.empty() || action[0].degree() < 2)
    return 0;
  uint32_t m = action[0].degree();
  std::vector<bool> seen(static_cast<size_t>(m) * m, false);
  std::vector<std::pair<Point, Point>> frontier{{0, 1}};
  seen[1] = true;
  uint64_t count = 1;
  while (!frontier.empty()) {
    auto [a, b] = frontier.back();
    frontier.pop_back();
    for (const Perm &s : action) {
      Point na = s[a], nb = s[b];
      size_t idx = static_cast<size_t>(na) * m + nb;
      if (!seen[idx]) {
        seen[idx] = true;
        ++count;
        frontier.emplace_back(na, nb);
      }
    }
  }
  return count;
}

// ---- centers and centralizers -------------------------------------------

// exhaustive element scan; requires |G| <= cap
inline GroupHandle centralizer_scan(const Group &G,
                                    const std::vector<Perm> &targets,
                                    BigInt cap = 10000000) {
  std::vector<Perm> cgens;
  G.enumerate(
      [&](const Perm &g) {
        for (const Perm &t : targets)
          if (!(g * t == t * g))
            return true;
        if (!g.is_identity())
          cgens.push_back(g);
        return true;
      },
      cap);
  if (cgens.empty())
    return Group::trivial(G.degree());
  return Group::build(cgens);
}

inline GroupHandle center_scan(const Group &G, BigInt cap = 10000000) {
  return centralizer_scan(G, G.reduced_generators(), cap);
}

// Exact centralizer from the orbit-stabilizer theorem applied to the
// conjugation action on the tuple of targets. Orbit elements are keyed by a
// 128-bit hash of the conjugated tuple.
struct TupleKey {
  uint64_t a, b;
  bool operator==(const TupleKey &o) const { return a == o.a && b == o.b; }
};
struct TupleKeyHash {
  size_t operator()(const TupleKey &k) const {
    return static_cast<size_t>(k.a ^ (k.b * 0x9e3779b97f4a7c15ull));
  }
};

inline TupleKey tuple_key(const std::vector<Perm> &tuple) {
  uint64_t h1 = 1469598103934665603ull, h2 = 0xcbf29ce484222325ull;
  for (const Perm &p : tuple)
    for (Point x : p.images()) {
      h1 = (h1 ^ (x & 0xff)) * 1099511628211ull;
      h1 = (h1 ^ (x >> 8)) * 1099511628211ull;
      h2 = (h2 ^ (x >> 8)) * 0x100000001b3ull;
      h2 = (h2 ^ (x & 0xff)) * 0x100000001b3ull;
    }
  return {h1, h2};
}

struct ConjOrbit {
  uint64_t orbit_size = 0;
  GroupHandle stabilizer; // the centralizer of the tuple in G
};

inline ConjOrbit centralizer_conj_orbit(const Group &G,
                                        const std::vector<Perm> &targets,
                                        uint64_t max_orbit = 50000000) {
  std::vector<Perm> gens = G.reduced_generators();
  std::unordered_map<TupleKey, uint32_t, TupleKeyHash> index;
  std::vector<Perm> access{Perm(G.degree())};
  std::vector<Perm> schreier;
  index.emplace(tuple_key(targets), 0);
  auto conj_tuple = [&](const Perm &w) {
    std::vector<Perm> t;
    t.reserve(targets.size());
    for (const Perm &p : targets)
      t.push_back(conjugate(p, w));
    return t;
  };
  for (uint32_t i = 0; i < access.size(); ++i) {
    for (const Perm &s : gens) {
      Perm w = access[i] * s;
      TupleKey key = tuple_key(conj_tuple(w));
      auto it = index.find(key);
      if (it == index.end()) {
        if (access.size() >= max_orbit)
          throw CapExceeded("conjugation orbit exceeds bound");
        index.emplace(key, static_cast<uint32_t>(access.size()));
        access.push_back(std::move(w));
      } else {
        Perm sg = w * inverse(access[it->second]);
        if (!sg.is_identity())
          schreier.push_back(std::move(sg));
      }
    }
  }
  ConjOrbit out;
  out.orbit_size = access.size();
  if (schreier.empty())
    schreier.push_back(Perm(G.degree()));
  out.stabilizer = Group::build(std::move(schreier));
  return out;
}

// claimed-value verification: claimed centralizes the generators of G and
// |claimed| equals |G| / |conjugation orbit of the generator tuple|
inline bool verify_center_claim(const Group &G, const Group &claimed) {
  std::vector<Perm> gens = G.reduced_generators();
  for (const Perm &c : claimed.reduced_generators())
    for (const Perm &g : gens)
      if (!(c * g == g * c))
        return false;
  if (!is_subgroup(claimed, G))
    return false;
  ConjOrbit co = centralizer_conj_orbit(G, gens);
  return claimed.order() * co.orbit_size == G.order();
}

// ---- structural predicates ----------------------------------------------

inline bool elementary_abelian_p(const Group &G, unsigned p) {
  std::vector<Perm> gens = G.reduced_generators();
  for (size_t i = 0; i < gens.size(); ++i) {
    Perm pw(G.degree());
    for (unsigned k = 0; k < p; ++k)
      pw = pw * gens[i];
    if (!pw.is_identity())
      return false;
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (!(gens[i] * gens[j] == gens[j] * gens[i]))
        return false;
  }
  BigInt o = G.order();
  while (o % p == 0)
    o /= p;
  return o == 1;
}

inline bool is_p_group(const Group &G, unsigned p) {
  BigInt o = G.order();
  while (o % p == 0)
    o /= p;
  return o == 1;
}

inline BigInt p_part(BigInt n, unsigned p) {
  BigInt out = 1;
  while (n % p == 0) {
    n /= p;
    out *= p;
  }
  return out;
}

// O_p(G) equals `claimed` whenever claimed is a normal p-subgroup whose order
// is the full p-part of |G| (a normal Sylow p-subgroup contains every normal
// p-subgroup)
inline bool verify_normal_sylow_is_Op(const Group &G, const Group &claimed,
                                      unsigned p) {
  return is_p_group(claimed, p) && is_subgroup(claimed, G) &&
         is_normal_in(claimed, G) &&
         claimed.order() == p_part(G.order(), p);
}

// multiset of element orders of G/N (requires N normal, index small)
inline std::map<uint64_t, uint64_t> quotient_profile(GroupHandle G,
                                                     GroupHandle N,
                                                     uint64_t max_index) {
  if (!is_normal_in(*N, *G))
    throw NotNormal("quotient profile requires a normal subgroup");
  CosetTable t = coset_table(G, N, max_index);
  // close the induced group by multiplication; it is G/N and small
  std::vector<Perm> elems{Perm(static_cast<uint32_t>(t.representatives.size()))};
  std::unordered_map<uint64_t, std::vector<uint32_t>> seen;
  seen[elems[0].hash()].push_back(0);
  for (uint32_t i = 0; i < elems.size(); ++i)
    for (const Perm &s : t.action) {
      Perm x = elems[i] * s;
      uint64_t h = x.hash();
      bool found = false;
      for (uint32_t k : seen[h])
        if (elems[k] == x) {
          found = true;
          break;
        }
      if (!found) {
        seen[h].push_back(static_cast<uint32_t>(elems.size()));
        elems.push_back(std::move(x));
      }
    }
  std::map<uint64_t, uint64_t> profile;
  for (const Perm &e : elems)
    ++profile[e.order()];
  return profile;
}

// ---- seeded random products (property tests, probes) ---------------------

inline Perm random_product(const std::vector<Perm> &gens, std::mt19937_64 &rng,
                           unsigned length) {
  Perm acc(gens.at(0).degree());
  std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
  for (unsigned i = 0; i < length; ++i)
    acc = acc * gens[pick(rng)];
  return acc;
}

} // namespace loc5arc
