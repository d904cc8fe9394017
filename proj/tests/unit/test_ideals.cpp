#include "doctest.h"
#include "fixtures.hpp"
#include "kmn/ideals.hpp"
#include "oracle.hpp"

using namespace kmn;

namespace {

IdealEngine engine(const Structure& s) { return IdealEngine(Hyperring::verify(s)); }

std::vector<std::uint64_t> bits(const std::vector<ElementSet>& v) {
  std::vector<std::uint64_t> out;
  for (auto e : v) out.push_back(e.bits());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("lattice of Z4 and Z2xZ2") {
  const IdealEngine z4 = engine(fixtures::zmod(4));
  CHECK(z4.lattice().size() == 3);
  CHECK(z4.jacobson() == ElementSet{0, 2});
  CHECK(z4.is_local());

  const IdealEngine v = engine(fixtures::z2xz2());
  CHECK(v.lattice().size() == 4);
  CHECK(v.lattice().maximal().size() == 2);
  CHECK(v.jacobson() == ElementSet{0});
  CHECK_FALSE(v.is_local());
}

TEST_CASE("a one-element structure is not local") {
  const IdealEngine t = engine(fixtures::zmod(1));
  CHECK(t.lattice().size() == 1);
  CHECK(t.lattice().maximal().empty());
  CHECK(t.jacobson() == t.carrier());
  CHECK_FALSE(t.is_local());
}

TEST_CASE("lattices agree with a subset scan oracle on the catalog") {
  for (const auto& e : fixtures::catalog()) {
    if (!e.verified()) continue;
    CAPTURE(e.structure.name());
    const IdealEngine x = engine(e.structure);
    auto want = oracle::lattice(e.structure);
    std::sort(want.begin(), want.end());
    CHECK(bits(x.lattice().members()) == want);
    CHECK(x.jacobson().bits() == oracle::jacobson(e.structure));
    auto mx = oracle::maximal(e.structure);
    std::sort(mx.begin(), mx.end());
    CHECK(bits(x.lattice().maximal_ideals()) == mx);
    // canonical order: by size then ids
    const auto& m = x.lattice().members();
    for (std::size_t i = 1; i < m.size(); ++i) CHECK(canonical_less(m[i - 1], m[i]));
  }
}

TEST_CASE("closure strategy matches subset scanning") {
  for (const auto& e : fixtures::catalog()) {
    if (!e.verified()) continue;
    LatticeOptions scan, closure;
    scan.strategy = EnumerationStrategy::SubsetScan;
    closure.strategy = EnumerationStrategy::Closure;
    const Hyperring h = Hyperring::verify(e.structure);
    CHECK(IdealLattice::compute(h, scan).members() == IdealLattice::compute(h, closure).members());
  }
}

TEST_CASE("non-hyperideal witnesses replay") {
  for (const auto& e : fixtures::catalog()) {
    const Structure& s = e.structure;
    const std::uint64_t all = s.carrier().bits();
    for (std::uint64_t b = 1; b <= all; ++b) {
      const ElementSet sub(b);
      const IdealCheck c = check_hyperideal(s, sub);
      CHECK(c.ok == oracle::is_hyperideal(s, b));
      if (!c.ok) CHECK(replay_ideal_witness(s, sub, c));
    }
  }
}

TEST_CASE("example A: {0} is a hyperideal, {0,x} fails solvability") {
  const Structure& a = fixtures::builtin("example-A").structure;
  const Elem x = *a.find_label("x");
  CHECK(is_hyperideal(a, ElementSet{0}));
  const IdealCheck c = check_hyperideal(a, ElementSet{0, x});
  CHECK_FALSE(c.ok);
  CHECK(c.clause == "solvability");
  CHECK(replay_ideal_witness(a, ElementSet{0, x}, c));
  CHECK_FALSE(oracle::is_hyperideal(a, ElementSet{0, x}.bits()));
}

TEST_CASE("radicals: primes, powers and the ideal-wise oracle agree") {
  for (const auto& e : fixtures::catalog()) {
    if (!e.verified()) continue;
    CAPTURE(e.structure.name());
    const IdealEngine x = engine(e.structure);
    for (auto q : x.lattice().members()) {
      CHECK(x.radical(q).bits() == oracle::radical(e.structure, q.bits()));
      if (x.has_identity()) CHECK(x.radical_by_powers(q) == x.radical(q));
    }
  }
}

TEST_CASE("element and ideal primeness") {
  for (const auto& e : fixtures::catalog()) {
    if (!e.verified()) continue;
    const IdealEngine x = engine(e.structure);
    for (auto p : x.lattice().members()) {
      if (p == x.carrier()) {
        CHECK_THROWS_AS(x.is_prime(p), PreconditionError);
        continue;
      }
      const bool elem = x.is_prime(p).holds();
      const bool ideal = x.is_prime_by_ideals(p).holds();
      CHECK(ideal == oracle::is_prime(e.structure, p.bits()));
      if (elem) CHECK(ideal);
      if (x.has_identity()) CHECK(elem == ideal);
      const auto r = x.is_prime(p);
      if (r.witness) CHECK(replay_prime_witness(x, p, *r.witness));
    }
  }
}

TEST_CASE("maximal ideals in rings with identity are prime") {
  for (const auto& e : fixtures::catalog()) {
    if (!e.verified()) continue;
    const IdealEngine x = engine(e.structure);
    if (!x.has_identity()) continue;
    for (auto m : x.lattice().maximal_ideals()) CHECK(x.is_prime(m).holds());
  }
}

TEST_CASE("principal ideals and residuals in Z6-like rings") {
  const IdealEngine z = engine(fixtures::zmod(6));
  CHECK(z.principal_ideal(2).ideal == ElementSet{0, 2, 4});
  CHECK(z.principal_ideal(3).generated == ElementSet{0, 3});
  CHECK(z.principal_ideal(1).ideal == z.carrier());
  // U_{2} for Q = {0,3}: x with 2x in {0,3} -> {0,3}
  CHECK(z.residual(ElementSet{0, 3}, ElementSet{2}) == ElementSet{0, 3});
  CHECK(z.residual(ElementSet{0, 2, 4}, ElementSet{3}) == ElementSet{0, 2, 4});
  CHECK_THROWS_AS(engine(fixtures::builtin("example-Z2xK").structure).principal_ideal(1), PreconditionError);
}

TEST_CASE("primary ideals of Z8") {
  const IdealEngine z = engine(fixtures::zmod(8));
  CHECK(z.is_primary(ElementSet{0}).holds());
  CHECK(z.is_primary(ElementSet{0, 4}).holds());
  const IdealEngine w = engine(fixtures::zmod(6));
  CHECK_FALSE(w.is_primary(ElementSet{0}).holds());
}
