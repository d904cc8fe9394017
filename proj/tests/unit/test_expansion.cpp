#include "doctest.h"
#include "fixtures.hpp"
#include "kmn/expansion.hpp"

using namespace kmn;

TEST_CASE("standard expansions validate on the catalog") {
  for (const auto& e : fixtures::catalog()) {
    if (!e.verified()) continue;
    const IdealEngine x(Hyperring::verify(e.structure));
    for (const auto& d : standard_expansions(x)) {
      CAPTURE(d.name());
      CHECK(validate_expansion(x.lattice(), d).passed());
      for (auto q : x.lattice().members()) CHECK(q.subset_of(d(q)));
    }
  }
}

TEST_CASE("composition is pointwise") {
  const IdealEngine z(Hyperring::verify(fixtures::zmod(8)));
  const Expansion d1 = Expansion::radical(z);
  const Expansion r = Expansion::full(z.lattice());
  const Expansion c = compose(r, d1);
  CHECK(c.name() == "deltaRodelta1");
  for (auto q : z.lattice().members()) CHECK(c(q) == z.carrier());
  const Expansion d11 = compose(d1, d1);
  for (auto q : z.lattice().members()) CHECK(d11(q) == d1(q));
}

TEST_CASE("user tables are checked") {
  const IdealEngine z(Hyperring::verify(fixtures::zmod(4)));
  const auto& lat = z.lattice();
  // shrinking map is not inflationary
  std::vector<std::pair<ElementSet, ElementSet>> bad{
      {ElementSet{0}, ElementSet{0}}, {ElementSet{0, 2}, ElementSet{0}}, {z.carrier(), z.carrier()}};
  const Expansion e = Expansion::from_table("shrink", lat, bad);
  const AxiomReport r = validate_expansion(lat, e);
  CHECK_FALSE(r.passed());
  CHECK(r.find("expansion.inflationary")->status == AxiomStatus::Fail);
  std::vector<std::pair<ElementSet, ElementSet>> partial{{ElementSet{0}, ElementSet{0}}};
  CHECK_THROWS_AS(Expansion::from_table("partial", lat, partial), PreconditionError);
}

TEST_CASE("intersection preservation") {
  const IdealEngine v(Hyperring::verify(fixtures::z2xz2()));
  CHECK(preserves_intersections(v.lattice(), Expansion::identity(v.lattice())));
  CHECK(preserves_intersections(v.lattice(), Expansion::full(v.lattice())));
  CHECK(preserves_intersections(v.lattice(), Expansion::radical(v)));
  // {0,e} meet {0,f} = {0}; mapping {0} to itself but both others to R breaks it
  std::vector<std::pair<ElementSet, ElementSet>> t{{ElementSet{0}, ElementSet{0}},
                                                   {ElementSet{0, 2}, v.carrier()},
                                                   {ElementSet{0, 3}, v.carrier()},
                                                   {v.carrier(), v.carrier()}};
  const Expansion e = Expansion::from_table("up", v.lattice(), t);
  CHECK(validate_expansion(v.lattice(), e).passed());
  CHECK(intersection_violation(v.lattice(), e).has_value());
}

TEST_CASE("lookup by name") {
  const IdealEngine z(Hyperring::verify(fixtures::zmod(4)));
  CHECK(expansion_by_name(z, "delta1")(ElementSet{0}) == ElementSet({0, 2}));
  CHECK_THROWS_AS(expansion_by_name(z, "delta9"), PreconditionError);
}
