#pragma once

#include <cctype>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "loc5arc/group.hpp"
#include "loc5arc/group_ops.hpp"
#include "loc5arc/omega.hpp"

namespace loc5arc {

// Registry of the named subgroups of Sym(q^3) used throughout the toolkit,
// memoized per name. Entries are immutable once built; heavyweight chains are
// persisted to the cache directory when one is configured.
//
// Generator recipes follow the defining parameter sweeps verbatim for
// q <= 9. For q = 27 the registry substitutes the spanning basis subset
// (the swept family is far too large to materialize) and verify_sweep()
// offers a seeded membership audit of the full family instead.
class GroupRegistry {
public:
  explicit GroupRegistry(const Field &field, std::string cache_dir = "")
      : field_(&field), omega_(field), cache_dir_(std::move(cache_dir)) {}

  const Field &field() const { return *field_; }
  const Omega &omega() const { return omega_; }
  uint32_t q() const { return field_->q(); }
  uint32_t degree() const { return omega_.degree(); }

  Perm perm(const GenSpec &g) const { return perm_from_genspec(g, omega_); }

  Perm alpha(Scalar u, Scalar v, Scalar w) const {
    return perm(gen::Alpha{u, v, w});
  }
  Perm beta(Scalar l, Scalar m) const { return perm(gen::Beta{l, m}); }
  Perm gamma(Scalar e) const { return perm(gen::Gamma{e}); }
  Perm delta() const { return perm(gen::Delta{}); }
  Perm tau(Scalar d) const { return perm(gen::Tau{d}); }
  Perm sigma() const { return perm(gen::Sigma{}); }
  Perm theta() const { return perm(gen::Theta{}); }

  // generator of the cyclic torus S, beta(zeta^2, zeta)
  Perm s_generator() const {
    Scalar z = field_->primitive_root();
    return beta(field_->mul(z, z), z);
  }

  GroupHandle get(const std::string &name) {
    auto it = memo_.find(name);
    if (it != memo_.end())
      return it->second;
    GroupHandle h = build_named(name);
    memo_.emplace(name, h);
    return h;
  }

  GroupHandle Qr(uint32_t r) { return get("Q_" + std::to_string(r)); }

  GroupHandle Sd(uint32_t d) {
    if (d == 0 || (q() - 1) % d != 0)
      throw InvalidParameter("S^(d) requires d | q-1");
    return get("Sd_" + std::to_string(d));
  }

  // join of named groups, memoized under the comma-joined key
  GroupHandle join(const std::vector<std::string> &names) {
    std::string key;
    for (const auto &n : names)
      key += (key.empty() ? "" : ",") + n;
    auto it = memo_.find(key);
    if (it != memo_.end())
      return it->second;
    std::vector<Perm> gens;
    for (const auto &n : names)
      for (const Perm &p : get(n)->generators())
        gens.push_back(p);
    GroupHandle h = build_with_cache(key, std::move(gens));
    memo_.emplace(key, h);
    return h;
  }

  // all Q_r together with Q_*; the block family is handled by BlockSystem
  std::vector<GroupHandle> lambda_family() {
    std::vector<GroupHandle> fam;
    for (uint32_t r = 0; r < q(); ++r)
      fam.push_back(Qr(r));
    return fam;
  }

  // audit that the full defining parameter sweep of a named family lies in
  // the built handle; exhaustive when the sweep is materialized, seeded
  // sampling otherwise
  bool verify_sweep(const std::string &name, unsigned samples = 2000,
                    uint64_t seed = 20260810) {
    GroupHandle h = get(name);
    bool exhaustive = q() <= 9;
    std::mt19937_64 rng(seed);
    auto check = [&](const Perm &p) { return h->contains(p); };
    std::uniform_int_distribution<uint32_t> fq(0, q() - 1);
    auto sample_scalar = [&]() { return static_cast<Scalar>(fq(rng)); };
    if (name == "A" || name == "Q" || name == "P") {
      // sweep of A; Q and P contain A with the same swept alpha family
      if (exhaustive) {
        for (uint32_t u = 0; u < q(); ++u)
          for (uint32_t v = 0; v < q(); ++v)
            for (uint32_t w = 0; w < q(); ++w)
              if (!check(alpha(static_cast<Scalar>(u), static_cast<Scalar>(v),
                               static_cast<Scalar>(w))))
                return false;
        return true;
      }
      for (unsigned i = 0; i < samples; ++i)
        if (!check(alpha(sample_scalar(), sample_scalar(), sample_scalar())))
          return false;
      return true;
    }
    if (name.rfind("Q_", 0) == 0 && name != "Q_*") {
      uint32_t r = static_cast<uint32_t>(std::stoul(name.substr(2)));
      auto member = [&](Scalar t, Scalar u, Scalar w) {
        return gamma(field_->mul(t, static_cast<Scalar>(r))) * alpha(u, t, w);
      };
      if (exhaustive) {
        for (uint32_t t = 0; t < q(); ++t)
          for (uint32_t u = 0; u < q(); ++u)
            for (uint32_t w = 0; w < q(); ++w)
              if (!check(member(static_cast<Scalar>(t), static_cast<Scalar>(u),
                                static_cast<Scalar>(w))))
                return false;
        return true;
      }
      for (unsigned i = 0; i < samples; ++i)
        if (!check(member(sample_scalar(), sample_scalar(), sample_scalar())))
          return false;
      return true;
    }
    throw InvalidParameter("no sweep audit registered for " + name);
  }

  // name -> order table for every plain named group
  std::vector<std::pair<std::string, BigInt>> order_table() {
    std::vector<std::pair<std::string, BigInt>> out;
    for (const char *n :
         {"A", "V", "F", "Z0", "Z", "C", "R", "S", "T", "D", "E", "Sigma", "M",
          "Q", "Qstar", "P", "K1", "K2", "K12", "G1", "G2", "G12", "SSigma"})
      out.emplace_back(n, get(n)->order());
    for (uint32_t r = 0; r < q(); ++r)
      out.emplace_back("Q_" + std::to_string(r), Qr(r)->order());
    return out;
  }

private:
  std::vector<Perm> alpha_family(bool fix_u, bool fix_v, bool fix_w) const {
    // sweep of alpha over the non-fixed coordinates, or the basis subset at
    // q = 27
    std::vector<Perm> out;
    if (q() <= 9) {
      for (uint32_t u = 0; u < (fix_u ? 1u : q()); ++u)
        for (uint32_t v = 0; v < (fix_v ? 1u : q()); ++v)
          for (uint32_t w = 0; w < (fix_w ? 1u : q()); ++w) {
            if (u == 0 && v == 0 && w == 0)
              continue;
            out.push_back(alpha(static_cast<Scalar>(u), static_cast<Scalar>(v),
                                static_cast<Scalar>(w)));
          }
      return out;
    }
    for (unsigned i = 0; i < field_->r(); ++i) {
      Scalar t = 1;
      for (unsigned k = 0; k < i; ++k)
        t = field_->mul(t, static_cast<Scalar>(3)); // x^i in the index encoding
      if (!fix_u)
        out.push_back(alpha(t, 0, 0));
      if (!fix_v)
        out.push_back(alpha(0, t, 0));
      if (!fix_w)
        out.push_back(alpha(0, 0, t));
    }
    return out;
  }

  std::vector<Perm> scalar_family(auto &&make) const {
    // sweep over all of GF(q); collapses to the additive basis at q = 27
    std::vector<Perm> out;
    if (q() <= 9) {
      for (uint32_t e = 1; e < q(); ++e)
        out.push_back(make(static_cast<Scalar>(e)));
      return out;
    }
    for (unsigned i = 0; i < field_->r(); ++i) {
      Scalar t = 1;
      for (unsigned k = 0; k < i; ++k)
        t = field_->mul(t, static_cast<Scalar>(3));
      out.push_back(make(t));
    }
    return out;
  }

  std::vector<Perm> unit_family(auto &&make) const {
    // sweep over the multiplicative group; cyclic generator at q = 27
    std::vector<Perm> out;
    if (q() <= 9) {
      for (uint32_t m = 1; m < q(); ++m)
        out.push_back(make(static_cast<Scalar>(m)));
      return out;
    }
    out.push_back(make(field_->primitive_root()));
    return out;
  }

  GroupHandle build_named(const std::string &name) {
    const Field &F = *field_;
    if (name == "A")
      return build_with_cache(name, alpha_family(false, false, false));
    if (name == "V")
      return build_with_cache(name, alpha_family(false, false, true));
    if (name == "F")
      return build_with_cache(name, alpha_family(true, true, false));
    if (name == "Z0")
      return build_with_cache(name, alpha_family(false, true, false));
    if (name == "Z")
      return build_with_cache(name, alpha_family(false, true, true));
    if (name == "C")
      return build_with_cache(
          name, scalar_family([&](Scalar e) { return gamma(e); }));
    if (name == "E")
      return build_with_cache(name,
                              scalar_family([&](Scalar d) { return tau(d); }));
    if (name == "R")
      return build_with_cache(
          name, unit_family([&](Scalar m) { return beta(m, m); }));
    if (name == "S")
      return build_with_cache(name, unit_family([&](Scalar m) {
        return beta(F.mul(m, m), m);
      }));
    if (name == "T")
      return build_with_cache(
          name, unit_family([&](Scalar m) { return beta(m, F.inv(m)); }));
    if (name == "D")
      return build_with_cache(name, {delta()});
    if (name == "Sigma")
      return build_with_cache(name, {sigma()});
    if (name == "Theta")
      return build_with_cache(name, {theta()});
    if (name == "F0") {
      // generated by the translation by zeta in the third coordinate
      return build_with_cache(name, {alpha(0, 0, F.primitive_root())});
    }
    if (name == "M")
      return join({"C", "D", "T"});
    if (name == "Q")
      return join({"A", "C"});
    if (name == "P")
      return join({"Q", "E"});
    if (name == "Qstar")
      return join({"C", "Z0"});
    if (name == "K1")
      return join({"V", "M"});
    if (name == "K2")
      return join({"V", "C", "E", "T"});
    if (name == "K12")
      return join({"V", "C", "T"});
    if (name == "K")
      return join({"K1", "K2"});
    if (name == "G1")
      return join({"A", "M", "S", "Sigma"});
    if (name == "G2")
      return join({"Q", "S", "E", "T", "Sigma"});
    if (name == "G12")
      return join({"Q", "S", "T", "Sigma"});
    if (name == "SSigma")
      return join({"S", "Sigma"});
    if (name == "FSSigma")
      return join({"F", "S", "Sigma"});
    if (name.rfind("Q_", 0) == 0) {
      uint32_t r = static_cast<uint32_t>(std::stoul(name.substr(2)));
      if (r >= q())
        throw InvalidParameter("Q_r index out of range");
      std::vector<Perm> gens;
      if (q() <= 9) {
        for (uint32_t t = 0; t < q(); ++t)
          for (uint32_t u = 0; u < q(); ++u)
            for (uint32_t w = 0; w < q(); ++w) {
              if (t == 0 && u == 0 && w == 0)
                continue;
              gens.push_back(
                  gamma(F.mul(static_cast<Scalar>(t), static_cast<Scalar>(r))) *
                  alpha(static_cast<Scalar>(u), static_cast<Scalar>(t),
                        static_cast<Scalar>(w)));
            }
      } else {
        for (unsigned i = 0; i < F.r(); ++i) {
          Scalar t = 1;
          for (unsigned k = 0; k < i; ++k)
            t = F.mul(t, static_cast<Scalar>(3));
          gens.push_back(gamma(F.mul(t, static_cast<Scalar>(r))) *
                         alpha(0, t, 0));
          gens.push_back(alpha(t, 0, 0));
          gens.push_back(alpha(0, 0, t));
        }
      }
      return build_with_cache(name, std::move(gens));
    }
    if (name.rfind("Sd_", 0) == 0) {
      uint32_t d = static_cast<uint32_t>(std::stoul(name.substr(3)));
      if (d == 0 || (q() - 1) % d != 0)
        throw InvalidParameter("S^(d) requires d | q-1");
      Perm zd(degree());
      Perm zs = s_generator();
      for (uint32_t i = 0; i < d; ++i)
        zd = zd * zs;
      return build_with_cache(name, {zd});
    }
    throw InvalidParameter("unknown group name: " + name);
  }

  GroupHandle build_with_cache(const std::string &name,
                               std::vector<Perm> gens) {
    if (cache_dir_.empty())
      return Group::build(std::move(gens));
    uint64_t h = Group::hash_generators(gens);
    std::ostringstream fn;
    fn << "bsgs_q" << q() << "_" << sanitize(name) << "_" << std::hex << h
       << ".bin";
    std::filesystem::path path =
        std::filesystem::path(cache_dir_) / fn.str();
    if (std::filesystem::exists(path)) {
      try {
        return Group::load(path.string(), gens);
      } catch (const IOFailure &) {
        // stale or corrupt cache entry; rebuild below
      }
    }
    GroupHandle built = Group::build(std::move(gens));
    std::error_code ec;
    std::filesystem::create_directories(cache_dir_, ec);
    try {
      built->save(path.string());
    } catch (const IOFailure &) {
      // cache write failures are not fatal
    }
    return built;
  }

  static std::string sanitize(const std::string &s) {
    std::string out;
    for (char c : s)
      out += (std::isalnum(static_cast<unsigned char>(c))) ? c : '_';
    return out;
  }

  const Field *field_;
  Omega omega_;
  std::string cache_dir_;
  std::map<std::string, GroupHandle> memo_;
};

} // namespace loc5arc
