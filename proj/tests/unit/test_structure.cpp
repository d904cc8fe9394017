#include "doctest.h"
#include "fixtures.hpp"
#include "kmn/structure_io.hpp"

using namespace kmn;

TEST_CASE("multisets are sorted and counted by stars and bars") {
  const auto ms = multisets(3, 2);
  CHECK(ms.size() == 6);
  CHECK(ms.front() == Tuple{0, 0});
  CHECK(ms.back() == Tuple{2, 2});
  CHECK(multisets(4, 3).size() == 20);
  CHECK(multisets(1, 5).size() == 1);
}

TEST_CASE("for_each_tuple visits size^k tuples in order") {
  std::vector<Tuple> seen;
  for_each_tuple(2, 3, [&](const Tuple& t) {
    seen.push_back(t);
    return true;
  });
  REQUIRE(seen.size() == 8);
  CHECK(seen[5] == Tuple{1, 0, 1});
}

TEST_CASE("tables are symmetric in their arguments") {
  const Structure z = fixtures::zmod(5, 3, 3);
  for_each_tuple(5, 3, [&](const Tuple& t) {
    Tuple r(t.rbegin(), t.rend());
    CHECK(z.f(t) == z.f(r));
    CHECK(z.g(t) == z.g(r));
    return true;
  });
  CHECK(z.f(Tuple{2, 2, 3}) == ElementSet::singleton(2));
  CHECK(z.g(Tuple{2, 2, 3}) == 2);
}

TEST_CASE("scalar identity is detected") {
  CHECK(fixtures::zmod(4).one() == Elem{1});
  CHECK(fixtures::z2xz2().one() == Elem{1});
  CHECK(fixtures::builtin("example-Z2xK").structure.one() == std::nullopt);
  CHECK(fixtures::builtin("example-A").structure.one() == Elem{1});
}

TEST_CASE("example A tables match the transcription") {
  const Structure& a = fixtures::builtin("example-A").structure;
  const Elem one = *a.find_label("1"), x = *a.find_label("x");
  CHECK(a.f(Tuple{one, one, x}) == a.carrier());
  CHECK(a.m() == 3);
  CHECK(a.n() == 3);
}

TEST_CASE("example Z2xK tables match the transcription") {
  const Structure& r = fixtures::builtin("example-Z2xK").structure;
  const Elem zero = 0, one = *r.find_label("1"), al = *r.find_label("alpha"), be = *r.find_label("beta");
  CHECK(r.f(Tuple{al, be}) == ElementSet::singleton(one));
  CHECK(r.g(Tuple{one, al, be, al}) == zero);
  CHECK(r.g(Tuple{al, be, al, be}) == al);
}

TEST_CASE("permuted relabels consistently") {
  const Structure z = fixtures::zmod(3);
  const Tuple perm{0, 2, 1};
  const Structure p = z.permuted(perm);
  for_each_tuple(3, 2, [&](const Tuple& t) {
    Tuple u{perm[t[0]], perm[t[1]]};
    CHECK(p.g(u) == perm[z.g(t)]);
    return true;
  });
  CHECK(p.permuted(perm) == z);
}

TEST_CASE("from_entries rejects conflicts and gaps") {
  const std::vector<std::string> labels{"0", "1"};
  std::vector<HyperEntry> f{{{0, 0}, ElementSet{0}}, {{0, 1}, ElementSet{1}}, {{1, 1}, ElementSet{0}}};
  std::vector<OpEntry> g{{{0, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 1}};
  CHECK_NOTHROW(Structure::from_entries("z2", labels, 2, 2, 0, std::nullopt, f, g));

  auto conflict = f;
  conflict.push_back({{1, 0}, ElementSet{0}});
  CHECK_THROWS_AS(Structure::from_entries("z2", labels, 2, 2, 0, std::nullopt, conflict, g), StructureError);

  auto gap = g;
  gap.pop_back();
  CHECK_THROWS_WITH_AS(Structure::from_entries("z2", labels, 2, 2, 0, std::nullopt, f, gap),
                       doctest::Contains("incomplete table"), StructureError);

  CHECK_THROWS_AS(Structure::from_entries("z2", labels, 2, 2, 0, Elem{0}, f, g), StructureError);
}
