#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "loc5arc/field.hpp"
#include "loc5arc/perm.hpp"

namespace loc5arc {

// Omega = GF(q)^3; a point (a,b,c) is encoded as a + q*b + q^2*c.
struct OmegaPoint {
  Scalar a = 0, b = 0, c = 0;
  bool operator==(const OmegaPoint &) const = default;
};

class Omega {
public:
  explicit Omega(const Field &f) : field_(&f) {
    if (f.r() > 3)
      throw UnsupportedDegree("permutation domain limited to q <= 27");
    q_ = f.q();
    n_ = q_ * q_ * q_;
  }

  const Field &field() const { return *field_; }
  uint32_t q() const { return q_; }
  uint32_t degree() const { return n_; }

  Point encode(OmegaPoint p) const {
    return static_cast<Point>(p.a + q_ * p.b + q_ * q_ * p.c);
  }
  OmegaPoint decode(Point x) const {
    OmegaPoint p;
    p.a = static_cast<Scalar>(x % q_);
    p.b = static_cast<Scalar>((x / q_) % q_);
    p.c = static_cast<Scalar>(x / (q_ * q_));
    return p;
  }

private:
  const Field *field_;
  uint32_t q_ = 0, n_ = 0;
};

// The generator alphabet. Beta requires nonzero parameters; Theta exists only
// when q = 1 (mod 4).
namespace gen {
struct Alpha {
  Scalar u, v, w;
};
struct Beta {
  Scalar lambda, mu;
};
struct Gamma {
  Scalar e;
};
struct Delta {};
struct Tau {
  Scalar d;
};
struct Sigma {};
struct Theta {};
} // namespace gen

using GenSpec = std::variant<gen::Alpha, gen::Beta, gen::Gamma, gen::Delta,
                             gen::Tau, gen::Sigma, gen::Theta>;

inline Perm perm_from_genspec(const GenSpec &spec, const Omega &om) {
  const Field &F = om.field();
  const uint32_t n = om.degree();
  std::vector<Point> img(n);

  auto fill = [&](auto &&point_map) {
    for (uint32_t x = 0; x < n; ++x)
      img[x] = om.encode(point_map(om.decode(static_cast<Point>(x))));
  };

  if (std::holds_alternative<gen::Alpha>(spec)) {
    auto g = std::get<gen::Alpha>(spec);
    fill([&](OmegaPoint p) {
      return OmegaPoint{F.add(p.a, g.u), F.add(p.b, g.v), F.add(p.c, g.w)};
    });
  } else if (std::holds_alternative<gen::Beta>(spec)) {
    auto g = std::get<gen::Beta>(spec);
    if (g.lambda == 0 || g.mu == 0)
      throw InvalidGenSpec("beta parameters must be nonzero");
    Scalar lm = F.mul(g.lambda, g.mu);
    Scalar e = F.eps_pow(lm);
    Scalar lm2e = F.mul(e, e); // (lambda*mu)^(2*epsilon)
    fill([&](OmegaPoint p) {
      return OmegaPoint{F.mul(g.lambda, p.a), F.mul(g.mu, p.b),
                        F.mul(lm2e, p.c)};
    });
  } else if (std::holds_alternative<gen::Gamma>(spec)) {
    auto g = std::get<gen::Gamma>(spec);
    fill([&](OmegaPoint p) {
      return OmegaPoint{F.add(p.a, F.mul(g.e, p.b)), p.b, p.c};
    });
  } else if (std::holds_alternative<gen::Delta>(spec)) {
    fill([&](OmegaPoint p) { return OmegaPoint{p.b, F.neg(p.a), p.c}; });
  } else if (std::holds_alternative<gen::Tau>(spec)) {
    auto g = std::get<gen::Tau>(spec);
    Scalar de = F.eps_pow(g.d);
    fill([&](OmegaPoint p) {
      Scalar t = F.add(F.mul(g.d, F.mul(p.b, p.b)), F.mul(de, p.c));
      return OmegaPoint{F.add(p.a, t), p.b, p.c};
    });
  } else if (std::holds_alternative<gen::Sigma>(spec)) {
    fill([&](OmegaPoint p) {
      return OmegaPoint{F.frobenius(p.a), F.frobenius(p.b), F.frobenius(p.c)};
    });
  } else {
    // theta, defined for q = 1 (mod 4): scales (a,b) by (zeta^2, zeta) off the
    // b = 0 plane and by (zeta^m, 0) on it, where q - 1 = 2^l * m with m odd
    if (F.q() % 4 != 1)
      throw InvalidGenSpec("theta requires q = 1 (mod 4)");
    Scalar z = F.primitive_root();
    uint32_t m = F.q() - 1;
    while (m % 2 == 0)
      m /= 2;
    Scalar z2 = F.mul(z, z);
    Scalar zm = F.pow(z, m);
    fill([&](OmegaPoint p) {
      if (p.b != 0)
        return OmegaPoint{F.mul(z2, p.a), F.mul(z, p.b), p.c};
      return OmegaPoint{F.mul(zm, p.a), static_cast<Scalar>(0), p.c};
    });
  }
  return Perm(std::move(img));
}

inline std::string genspec_name(const GenSpec &spec) {
  struct V {
    std::string operator()(const gen::Alpha &g) const {
      return "alpha(" + std::to_string(g.u) + "," + std::to_string(g.v) + "," +
             std::to_string(g.w) + ")";
    }
    std::string operator()(const gen::Beta &g) const {
      return "beta(" + std::to_string(g.lambda) + "," + std::to_string(g.mu) +
             ")";
    }
    std::string operator()(const gen::Gamma &g) const {
      return "gamma(" + std::to_string(g.e) + ")";
    }
    std::string operator()(const gen::Delta &) const { return "delta"; }
    std::string operator()(const gen::Tau &g) const {
      return "tau(" + std::to_string(g.d) + ")";
    }
    std::string operator()(const gen::Sigma &) const { return "sigma"; }
    std::string operator()(const gen::Theta &) const { return "theta"; }
  };
  return std::visit(V{}, spec);
}

// The partition of Omega into the q planes of constant third coordinate.
class BlockSystem {
public:
  explicit BlockSystem(const Omega &om) : om_(&om) {}

  uint32_t block_of(Point x) const { return om_->decode(x).c; }

  // induced permutation of block labels, or nullopt when some block is not
  // mapped onto a single block
  std::optional<std::vector<uint32_t>> induced(const Perm &g) const {
    const uint32_t q = om_->q();
    std::vector<uint32_t> map(q);
    for (uint32_t c = 0; c < q; ++c) {
      uint32_t target = block_of(g[om_->encode(
          {static_cast<Scalar>(0), static_cast<Scalar>(0), static_cast<Scalar>(c)})]);
      map[c] = target;
    }
    for (uint32_t x = 0; x < om_->degree(); ++x)
      if (block_of(g[x]) != map[block_of(static_cast<Point>(x))])
        return std::nullopt;
    return map;
  }

  bool acts_trivially(const Perm &g) const {
    auto m = induced(g);
    if (!m)
      return false;
    for (uint32_t c = 0; c < m->size(); ++c)
      if ((*m)[c] != c)
        return false;
    return true;
  }

  // restriction of g to block c as a permutation of q^2 points (a + q*b),
  // valid only when g maps the block to itself
  Perm restriction(const Perm &g, uint32_t c) const {
    const uint32_t q = om_->q();
    std::vector<Point> img(q * q);
    for (uint32_t b = 0; b < q; ++b)
      for (uint32_t a = 0; a < q; ++a) {
        OmegaPoint p{static_cast<Scalar>(a), static_cast<Scalar>(b),
                     static_cast<Scalar>(c)};
        OmegaPoint t = om_->decode(g[om_->encode(p)]);
        if (t.c != c)
          throw InvalidParameter("permutation does not stabilize block");
        img[a + q * b] = static_cast<Point>(t.a + q * t.b);
      }
    return Perm(std::move(img));
  }

private:
  const Omega *om_;
};

} // namespace loc5arc
