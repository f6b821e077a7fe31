#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <random>
#include <set>
#include <unordered_map>

#include "loc5arc/group.hpp"
#include "loc5arc/group_ops.hpp"
#include "loc5arc/named_groups.hpp"

using namespace loc5arc;

namespace {

// independent oracle: full closure by breadth-first multiplication
uint64_t naive_closure_size(const std::vector<Perm> &gens, uint64_t cap) {
  std::vector<Perm> elems{Perm(gens.at(0).degree())};
  std::unordered_map<uint64_t, std::vector<uint32_t>> seen;
  seen[elems[0].hash()].push_back(0);
  for (uint32_t i = 0; i < elems.size(); ++i)
    for (const Perm &s : gens) {
      Perm x = elems[i] * s;
      uint64_t h = x.hash();
      bool found = false;
      for (uint32_t k : seen[h])
        if (elems[k] == x) {
          found = true;
          break;
        }
      if (!found) {
        if (elems.size() >= cap)
          throw std::runtime_error("closure oracle cap exceeded");
        seen[h].push_back(static_cast<uint32_t>(elems.size()));
        elems.push_back(std::move(x));
      }
    }
  return elems.size();
}

} // namespace

TEST_CASE("single identity generator gives the trivial group") {
  GroupHandle g = Group::build({Perm(10)});
  CHECK(g->order() == 1);
  CHECK(g->contains(Perm(10)));
}

TEST_CASE("chain order matches the naive closure oracle at q=3") {
  Field F(1);
  GroupRegistry reg(F);
  for (const char *name : {"A", "V", "C", "S", "T", "D", "M", "Q", "P", "K1",
                           "K12", "G1", "G2", "G12"}) {
    GroupHandle g = reg.get(name);
    CAPTURE(name);
    CHECK(g->order() == naive_closure_size(g->generators(), 200000));
  }
}

TEST_CASE("expected orders of elementary groups at q=3") {
  Field F(1);
  GroupRegistry reg(F);
  CHECK(reg.get("A")->order() == 27);
  CHECK(reg.get("M")->order() == 24); // SL_2(3)
  CHECK(reg.get("D")->order() == 4);
  CHECK(reg.get("Sigma")->order() == 1);
}

TEST_CASE("deterministic rebuild") {
  Field F(2);
  GroupRegistry reg(F);
  GroupHandle a = reg.get("M");
  GroupHandle b = Group::build(a->generators());
  CHECK(a->base() == b->base());
  CHECK(a->order() == b->order());
  REQUIRE(a->levels().size() == b->levels().size());
  for (size_t i = 0; i < a->levels().size(); ++i)
    CHECK(a->levels()[i].orbit == b->levels()[i].orbit);
}

TEST_CASE("membership sifting: 1000 seeded random generator products") {
  Field F(2);
  GroupRegistry reg(F);
  GroupHandle g = reg.get("G1");
  std::mt19937_64 rng(42);
  auto gens = g->generators();
  for (int i = 0; i < 1000; ++i)
    REQUIRE(g->contains(random_product(gens, rng, 8)));
  // and something outside
  CHECK_FALSE(g->contains(reg.tau(1)));
}

TEST_CASE("alpha group excludes delta; sift oracle example") {
  Field F(1);
  GroupRegistry reg(F);
  CHECK_FALSE(reg.get("A")->contains(reg.delta()));
}

TEST_CASE("canonical coset representatives") {
  Field F(1);
  GroupRegistry reg(F);
  GroupHandle H = reg.get("G1");
  std::mt19937_64 rng(2024);
  std::vector<Perm> ambient{reg.delta(), reg.tau(1), reg.gamma(1),
                            reg.alpha(1, 2, 0), reg.beta(1, 2)};
  for (int i = 0; i < 1000; ++i) {
    Perm g = random_product(ambient, rng, 6);
    Perm h = random_product(H->generators(), rng, 4);
    CHECK(canonical_coset_rep(*H, g) == canonical_coset_rep(*H, h * g));
    CHECK(canonical_coset_key(*H, g) == canonical_coset_key(*H, h * g));
  }
  // distinct cosets get distinct keys: G1*tau_1 vs G1*tau_2
  CHECK(canonical_coset_key(*H, reg.tau(1)) !=
        canonical_coset_key(*H, reg.tau(2)));
  // rep of a member is the canonical form of H itself
  CHECK(canonical_coset_rep(*H, reg.alpha(1, 0, 0)) ==
        canonical_coset_rep(*H, Perm(H->degree())));
}

TEST_CASE("subgroup orders divide parent orders across the registry") {
  Field F(1);
  GroupRegistry reg(F);
  GroupHandle G1 = reg.get("G1");
  GroupHandle G2 = reg.get("G2");
  for (const char *n : {"A", "V", "M", "S"})
    CHECK(G1->order() % reg.get(n)->order() == 0);
  for (const char *n : {"Q", "E", "T"})
    CHECK(G2->order() % reg.get(n)->order() == 0);
}

TEST_CASE("normal closure examples") {
  Field F(1);
  GroupRegistry reg(F);
  GroupHandle Z = reg.get("Z");
  GroupHandle Q = reg.get("Q");
  GroupHandle cl = normal_closure(*Z, *Q);
  CHECK(same_group(*cl, *Z));
  GroupHandle triv = Group::trivial(Q->degree());
  CHECK(normal_closure(*triv, *Q)->order() == 1);
}

TEST_CASE("derived subgroups") {
  Field F(1);
  GroupRegistry reg(F);
  // [Q,Q] = Z
  GroupHandle dq = derived_subgroup(*reg.get("Q"));
  CHECK(same_group(*dq, *reg.get("Z")));
  // A abelian
  CHECK(derived_subgroup(*reg.get("A"))->order() == 1);
  // [M,M] has order 8 inside SL_2(3)
  CHECK(derived_subgroup(*reg.get("M"))->order() == 8);
}

TEST_CASE("intersection via product formula and coset action") {
  Field F(1);
  GroupRegistry reg(F);
  // T and S meet trivially
  CHECK(intersection_order(*reg.get("T"), *reg.get("S")) == 1);
  // H = N gives |H|
  CHECK(intersection_order(*reg.get("Q"), *reg.get("Q")) ==
        reg.get("Q")->order());
  // Q_r cap Q_s = Z0 of order q^2
  GroupHandle q1 = reg.Qr(1), q2 = reg.Qr(2);
  CHECK(intersection_order(*q1, *q2) == 9);
  GroupHandle inter = intersection(*q1, *q2);
  CHECK(same_group(*inter, *reg.get("Z0")));
  // MS cap A = 1
  GroupHandle MS = reg.join({"M", "S"});
  CHECK(intersection_order(*MS, *reg.get("A")) == 1);
}

TEST_CASE("coset tables and kernels") {
  Field F(1);
  GroupRegistry reg(F);
  GroupHandle G1 = reg.get("G1");
  GroupHandle G12 = reg.get("G12");
  CosetTable t = coset_table(G1, G12, 100);
  CHECK(t.representatives.size() == 4); // q + 1
  CHECK(BigInt(t.representatives.size()) * G12->order() == G1->order());

  CosetTable t2 = coset_table(reg.get("G2"), G12, 100);
  CHECK(t2.representatives.size() == 3); // q

  // kernel of G1 on its q+1 cosets is AR
  GroupHandle k1 = action_kernel(t);
  CHECK(k1->order() == 27 * 2); // q^3 (q-1)
  GroupHandle AR = reg.join({"A", "R"});
  CHECK(same_group(*k1, *AR));

  // kernel of a regular action is trivial
  GroupHandle Ahandle = reg.get("A");
  CosetTable reg_table =
      coset_table(Ahandle, Group::trivial(Ahandle->degree()), 100);
  CHECK(action_kernel(reg_table)->order() == 1);

  // (G, G) has one coset
  CHECK(coset_table(G1, G1, 10).representatives.size() == 1);

  // index overflow reported
  CHECK_THROWS_AS(coset_table(G1, reg.get("A"), 3), IndexOverflow);
}

TEST_CASE("center and centralizer computations at q=3") {
  Field F(1);
  GroupRegistry reg(F);
  // Z(Q) = Z0 by exhaustive scan
  GroupHandle zq = center_scan(*reg.get("Q"));
  CHECK(same_group(*zq, *reg.get("Z0")));
  // abelian group is its own center
  GroupHandle A = reg.get("A");
  CHECK(center_scan(*A)->order() == A->order());
  // claimed-value mode agrees
  CHECK(verify_center_claim(*reg.get("Q"), *reg.get("Z0")));
  CHECK_FALSE(verify_center_claim(*reg.get("Q"), *reg.get("Z")));
  // exact conjugation-orbit centralizer agrees with the scan
  GroupHandle P = reg.get("P");
  ConjOrbit co = centralizer_conj_orbit(*P, reg.get("Z")->reduced_generators());
  GroupHandle sc = centralizer_scan(*P, reg.get("Z")->reduced_generators());
  CHECK(co.stabilizer->order() == sc->order());
  // cap policy
  CHECK_THROWS_AS(center_scan(*reg.get("G1"), BigInt(10)), CapExceeded);
}

TEST_CASE("elementary abelian and quotient profiles") {
  Field F(1);
  GroupRegistry reg(F);
  CHECK(elementary_abelian_p(*reg.get("E"), 3));
  CHECK(elementary_abelian_p(*reg.get("A"), 3));
  CHECK_FALSE(elementary_abelian_p(*reg.get("D"), 3));
  CHECK_FALSE(elementary_abelian_p(*reg.get("M"), 3));

  // Q / Z0 is elementary abelian of order q^2: all 9 cosets have order <= 3
  auto prof = quotient_profile(reg.get("Q"), reg.get("Z0"), 100);
  CHECK(prof[1] == 1);
  CHECK(prof[3] == 8);

  CHECK_THROWS_AS(quotient_profile(reg.get("G1"), reg.get("S"), 1000),
                  NotNormal);
}

TEST_CASE("O_p verification via normal Sylow") {
  Field F(1);
  GroupRegistry reg(F);
  GroupHandle AR = reg.join({"A", "R"});
  CHECK(verify_normal_sylow_is_Op(*AR, *reg.get("A"), 3));
  GroupHandle QS = reg.join({"Q", "S"});
  CHECK(verify_normal_sylow_is_Op(*QS, *reg.get("Q"), 3));
  CHECK_FALSE(verify_normal_sylow_is_Op(*QS, *reg.get("Z0"), 3));
}

TEST_CASE("disk cache round-trip") {
  Field F(2);
  GroupRegistry reg(F);
  GroupHandle m = reg.get("M");
  std::filesystem::path tmp =
      std::filesystem::temp_directory_path() / "loc5arc_test_cache.bin";
  m->save(tmp.string());
  GroupHandle loaded = Group::load(tmp.string(), m->generators());
  CHECK(loaded->order() == m->order());
  CHECK(loaded->base() == m->base());
  // wrong generators are rejected
  CHECK_THROWS_AS(Group::load(tmp.string(), {reg.delta()}), IOFailure);
  std::filesystem::remove(tmp);
}

TEST_CASE("coset stabilizer extracts arc stabilizers") {
  Field F(1);
  GroupRegistry reg(F);
  GroupHandle G1 = reg.get("G1");
  GroupHandle G2 = reg.get("G2");
  // stabilizer of the coset G2 in G1 is the edge stabilizer of order 324
  GroupHandle st = coset_stabilizer(*G1, *G2, Perm(G1->degree()), 100);
  CHECK(st->order() == 324);
  CHECK(same_group(*st, *reg.get("G12")));
}
