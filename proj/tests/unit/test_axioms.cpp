#include "doctest.h"
#include "fixtures.hpp"
#include "kmn/axioms.hpp"
#include "oracle.hpp"

using namespace kmn;

TEST_CASE("rings and hyperfields are Krasner") {
  for (const Structure& s : {fixtures::zmod(2), fixtures::zmod(4), fixtures::zmod(5, 3, 3), fixtures::z2xz2(),
                             fixtures::krasner_k(), fixtures::sign_hyperfield()}) {
    CAPTURE(s.name());
    const AxiomReport r = verify_krasner(s);
    CHECK(r.passed());
    CHECK(is_krasner(s));
    CHECK(oracle::krasner(s));
  }
}

TEST_CASE("example A fails distributivity with a replayable witness") {
  const Structure& a = fixtures::builtin("example-A").structure;
  const AxiomReport r = verify_krasner(a);
  CHECK_FALSE(r.passed());
  const AxiomResult* d = r.find("distributivity");
  REQUIRE(d);
  CHECK(d->status == AxiomStatus::Fail);
  CHECK(replay_axiom_witness(a, *d));
  CHECK_FALSE(oracle::distributive(a));
  // the additive part is fine
  CHECK(verify_canonical_hypergroup(a).passed());
  CHECK(oracle::canonical_hypergroup(a));
}

TEST_CASE("example Z2xK is Krasner and its additive part canonical") {
  const Structure& r = fixtures::builtin("example-Z2xK").structure;
  CHECK(verify_canonical_hypergroup(r).passed());
  CHECK(verify_krasner(r).passed());
  CHECK(oracle::krasner(r));
}

TEST_CASE("report verdicts agree with the brute-force oracle on the catalog") {
  for (const auto& e : fixtures::catalog()) {
    CAPTURE(e.structure.name());
    CHECK(e.report.passed() == oracle::krasner(e.structure));
    CHECK(is_krasner(e.structure) == e.report.passed());
    CHECK(e.report.scalar_identities == oracle::identities(e.structure));
  }
}

TEST_CASE("perturbed tables fail and their witnesses replay") {
  // Z3 with one product entry changed breaks associativity or distributivity.
  const Structure z = fixtures::zmod(3);
  auto fv = z.f_multiset_values();
  auto gv = z.g_multiset_values();
  for (std::size_t i = 0; i < gv.size(); ++i) {
    for (Elem v = 0; v < 3; ++v) {
      if (v == gv[i]) continue;
      auto g2 = gv;
      g2[i] = v;
      const Structure s = Structure::from_multiset_values("p", z.labels(), 2, 2, 0, fv, g2);
      const AxiomReport r = verify_krasner(s);
      CHECK(r.passed() == oracle::krasner(s));
      for (const auto* f : r.failures())
        if (f->status == AxiomStatus::Fail) CHECK(replay_axiom_witness(s, *f));
    }
  }
  for (std::size_t i = 0; i < fv.size(); ++i) {
    auto f2 = fv;
    f2[i] = z.carrier();
    const Structure s = Structure::from_multiset_values("q", z.labels(), 2, 2, 0, f2, gv);
    const AxiomReport r = verify_krasner(s);
    CHECK(r.passed() == oracle::krasner(s));
    CHECK(verify_canonical_hypergroup(s).passed() == oracle::canonical_hypergroup(s));
    for (const auto* f : r.failures())
      if (f->status == AxiomStatus::Fail) CHECK(replay_axiom_witness(s, *f));
  }
}

TEST_CASE("Hyperring::verify refuses failing structures") {
  CHECK_THROWS_AS(Hyperring::verify(fixtures::builtin("example-A").structure), PreconditionError);
  CHECK(Hyperring::verify(fixtures::zmod(3)).verified());
  CHECK_FALSE(Hyperring::unchecked(fixtures::builtin("example-A").structure).verified());
}

TEST_CASE("additive inverses and invertibility") {
  const Structure z = fixtures::zmod(5);
  for (Elem x = 0; x < 5; ++x) CHECK(additive_inverse(z, x) == Elem((5 - x) % 5));
  CHECK(is_invertible(z, 2));
  CHECK(inverse_of_g(z, 2) == Elem{3});
  CHECK_FALSE(is_invertible(fixtures::zmod(4), 2));
  CHECK_THROWS_AS(is_invertible(fixtures::builtin("example-Z2xK").structure, 1), PreconditionError);
}
