#include "doctest.h"
#include "fixtures.hpp"
#include "kmn/audit.hpp"

using namespace kmn;

namespace {

std::vector<CatalogEntry> small_catalog() {
  std::vector<CatalogEntry> c;
  for (const Structure& s : {fixtures::zmod(4), fixtures::z2xz2(), fixtures::zmod(8), fixtures::krasner_k(),
                             fixtures::sign_hyperfield(), fixtures::zmod(3, 3, 3)})
    c.push_back(make_entry(s, Provenance::File));
  for (auto& e : builtin_examples()) c.push_back(std::move(e));
  return c;
}

const AuditCell& cell(const AuditReport& r, const std::string& s, const std::string& t) {
  for (const auto& c : r.cells)
    if (c.structure == s && c.theorem == t) return c;
  throw std::runtime_error("no cell");
}

}  // namespace

TEST_CASE("registry lists T01..T27 in order") {
  const auto& reg = theorem_registry();
  REQUIRE(reg.size() == 27);
  for (std::size_t i = 0; i < reg.size(); ++i) {
    char id[4];
    std::snprintf(id, sizeof id, "T%02zu", i + 1);
    CHECK(reg[i].id == id);
    CHECK_FALSE(reg[i].statement.empty());
  }
}

TEST_CASE("audit of small rings") {
  const auto cat = small_catalog();
  const AuditReport r = run_audit(cat);
  CHECK(r.cells.size() == cat.size() * 27);

  // structures failing verification are skipped with the failed axioms
  const AuditCell& a = cell(r, "example-A", "T01");
  CHECK(a.status == CellStatus::Skip);
  CHECK(a.reason.find("distributivity") != std::string::npos);
  // no identity: J theorems skip, absorbing ones run
  CHECK(cell(r, "example-Z2xK", "T09").reason == "no scalar identity");
  CHECK(cell(r, "example-Z2xK", "T22").status == CellStatus::Skip);
  CHECK(cell(r, "example-Z2xK", "T23").status != CellStatus::Skip);

  // deltaR on the non-local Z2xZ2 separates delta-J from Q inside J(R)
  const AuditCell& t16 = cell(r, "Z2xZ2", "T16");
  CHECK(t16.status == CellStatus::Fail);
  REQUIRE(t16.instance);
  CHECK(t16.instance->delta == "deltaR");
  CHECK(t16.replayed);
  CHECK(cell(r, "Z2xZ2", "T17").status == CellStatus::Fail);
  CHECK(cell(r, "Z4", "T16").status == CellStatus::Pass);
  CHECK(cell(r, "Z4", "T17").status == CellStatus::Pass);

  for (const auto& c : r.cells) {
    CAPTURE(c.structure);
    CAPTURE(c.theorem);
    if (c.status == CellStatus::Skip) CHECK_FALSE(c.reason.empty());
    if (c.status == CellStatus::Fail) {
      CHECK(c.replayed);
      CHECK(replay_cell(cat, c));
      CHECK(c.violations > 0);
    }
  }
  // theorems that the small rings cannot break
  for (const char* t : {"T01", "T03", "T04", "T05", "T06", "T09", "T22", "T23", "T25", "T26"})
    CHECK(cell(r, "Z8", t).status == CellStatus::Pass);
}

TEST_CASE("tampered cells do not replay") {
  const auto cat = small_catalog();
  AuditOptions o;
  o.theorems = {"T16"};
  const AuditReport r = run_audit(cat, o);
  const AuditCell& c = cell(r, "Z2xZ2", "T16");
  REQUIRE(c.status == CellStatus::Fail);
  AuditCell bad = c;
  bad.instance->delta = "delta0";
  bad.evidence.reset();
  CHECK_FALSE(replay_cell(cat, bad));
  AuditCell pass = cell(r, "Z4", "T16");
  CHECK_FALSE(replay_cell(cat, pass));
}

TEST_CASE("reports are byte-identical across runs") {
  const auto cat = small_catalog();
  const std::string serial = run_audit(cat).to_jsonl();
  CHECK(serial == run_audit(cat).to_jsonl());
  AuditOptions threaded;
  threaded.jobs = 3;
  CHECK(serial == run_audit(cat, threaded).to_jsonl());
  CHECK(catalog_hash(cat) == catalog_hash(small_catalog()));
  auto other = cat;
  other.pop_back();
  CHECK(catalog_hash(other) != catalog_hash(cat));
}

TEST_CASE("unknown theorem ids are rejected") {
  AuditOptions o;
  o.theorems = {"T99"};
  CHECK_THROWS_AS(run_audit(small_catalog(), o), PreconditionError);
}

TEST_CASE("report records") {
  AuditOptions o;
  o.theorems = {"T01", "T16"};
  const AuditReport r = run_audit(small_catalog(), o);
  const std::string j = r.to_jsonl();
  CHECK(j.rfind("{\"record\":\"header\"", 0) == 0);
  CHECK(j.find("\"record\":\"summary\"") != std::string::npos);
  CHECK(j.find("\"record\":\"claim\"") != std::string::npos);
  CHECK(j.find("\"causes\"") != std::string::npos);
  const std::string txt = r.summary_text();
  CHECK(txt.find("T16") != std::string::npos);
  CHECK(txt.find("discrepancies") != std::string::npos);
}
