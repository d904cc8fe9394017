#include "doctest.h"
#include "fixtures.hpp"
#include "kmn/classifiers.hpp"
#include "oracle.hpp"

using namespace kmn;

namespace {

IdealEngine engine(const Structure& s) { return IdealEngine(Hyperring::verify(s)); }

std::vector<ElementSet> proper(const IdealEngine& e) {
  std::vector<ElementSet> out;
  for (auto q : e.lattice().members())
    if (q != e.carrier()) out.push_back(q);
  return out;
}

}  // namespace

TEST_CASE("J-hyperideals of small rings") {
  const IdealEngine z4 = engine(fixtures::zmod(4));
  CHECK(is_j_hyperideal(z4, ElementSet{0}).holds());
  CHECK(is_j_hyperideal(z4, ElementSet{0, 2}).holds());
  CHECK(is_j_hyperideal(z4, z4.carrier()).verdict == Verdict::Improper);

  const IdealEngine v = engine(fixtures::z2xz2());
  const auto r = is_j_hyperideal(v, ElementSet{0});
  CHECK(r.verdict == Verdict::False);
  REQUIRE(r.witness);
  CHECK(replay_witness(v, ElementSet{0}, nullptr, 0, *r.witness));
  // every proper ideal of Z2xZ2 is deltaR-J, but the maximal ones are not J
  const Expansion full = Expansion::full(v.lattice());
  for (auto q : proper(v)) CHECK(is_delta_j(v, q, full).holds());
  CHECK_FALSE(is_j_hyperideal(v, ElementSet{0, 2}).holds());
}

TEST_CASE("J is undefined without a scalar identity") {
  const IdealEngine r = engine(fixtures::builtin("example-Z2xK").structure);
  CHECK(is_j_hyperideal(r, ElementSet{0}).verdict == Verdict::NotApplicable);
  CHECK(is_delta_j(r, ElementSet{0}, Expansion::identity(r.lattice())).verdict == Verdict::NotApplicable);
  // the absorbing predicate does not use 1_R
  CHECK(is_kn_absorbing_delta_j(r, ElementSet{0}, Expansion::identity(r.lattice()), 2).verdict != Verdict::NotApplicable);
}

TEST_CASE("predicates agree with the definitional oracle on the catalog") {
  for (const auto& e : fixtures::catalog()) {
    if (!e.verified()) continue;
    CAPTURE(e.structure.name());
    const IdealEngine x = engine(e.structure);
    const auto exps = standard_expansions(x);
    for (auto q : proper(x)) {
      for (const auto& d : exps) {
        CAPTURE(d.name());
        const std::uint64_t dq = d(q).bits();
        if (x.has_identity()) {
          const auto r = is_delta_j(x, q, d);
          CHECK(r.holds() == oracle::is_delta_j(e.structure, q.bits(), dq));
          if (r.witness) CHECK(replay_witness(x, q, &d, 0, *r.witness));
        }
        for (int k = 2; k <= 3; ++k) {
          const auto r = is_kn_absorbing_delta_j(x, q, d, k);
          REQUIRE(r.verdict != Verdict::Truncated);
          CHECK(r.holds() == oracle::is_kn_absorbing(e.structure, q.bits(), dq, k));
          if (r.witness) CHECK(replay_witness(x, q, &d, k, *r.witness));
        }
      }
    }
  }
}

TEST_CASE("delta-primary uses every index") {
  const IdealEngine z = engine(fixtures::zmod(8));
  const Expansion d0 = Expansion::identity(z.lattice());
  // 2*4 = 0: neither factor is in {0}, so {0} is not delta0-primary
  const auto r = is_delta_primary(z, ElementSet{0}, d0);
  CHECK(r.verdict == Verdict::False);
  REQUIRE(r.witness);
  CHECK(replay_witness(z, ElementSet{0}, &d0, 0, *r.witness));
  CHECK(is_delta_primary(z, ElementSet{0}, Expansion::radical(z)).holds());
}

TEST_CASE("absorbing cap truncates") {
  const IdealEngine z = engine(fixtures::zmod(4));
  AbsorbingOptions tiny;
  tiny.tuple_cap = 5;
  CHECK(is_kn_absorbing_delta_j(z, ElementSet{0}, Expansion::identity(z.lattice()), 2, tiny).verdict ==
        Verdict::Truncated);
  CHECK_THROWS_AS(is_kn_absorbing_delta_j(z, ElementSet{0}, Expansion::identity(z.lattice()), 1), PreconditionError);
}

TEST_CASE("classify reports every predicate in a fixed order") {
  const IdealEngine z = engine(fixtures::zmod(9));
  const auto rep = classify(z, ElementSet{0, 3, 6}, standard_expansions(z), 3);
  std::vector<std::string> names;
  for (const auto& [n, r] : rep.verdicts) names.push_back(n);
  REQUIRE(names.size() >= 4);
  CHECK(names[0] == "prime");
  CHECK(names[3] == "J");
  CHECK(rep.find("maximal")->holds());
  CHECK(rep.find("J")->holds());
  CHECK(rep.find("(3,n)-absorbing-delta-J[deltaR]")->holds());
}

TEST_CASE("non-members are refused") {
  const IdealEngine z = engine(fixtures::zmod(4));
  CHECK_THROWS_AS(is_j_hyperideal(z, ElementSet{0, 1}), PreconditionError);
}
