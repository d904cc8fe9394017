// Exit gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <filesystem>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "kmn/audit.hpp"
#include "kmn/catalog.hpp"
#include "kmn/cli.hpp"
#include "kmn/ideals.hpp"
#include "kmn/search.hpp"
#include "kmn/structure_io.hpp"

using namespace kmn;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.ok && secs > budget_s) o.fail("over the " + std::to_string(budget_s) + " s budget");
  std::printf("[%s] %d %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, title, secs, o.note.empty() ? "" : ": ",
              o.note.c_str());
  std::fflush(stdout);
  failures += !o.ok;
}

const CatalogEntry& builtin(const std::vector<CatalogEntry>& b, const std::string& name) {
  for (const auto& e : b)
    if (e.structure.name() == name) return e;
  throw std::runtime_error("no builtin " + name);
}

// A claim is settled when the verifier agrees or the disagreement carries a
// witness that replays.
void settle_claims(const CatalogEntry& e, const std::string& kind, Outcome& o, std::ostringstream& log) {
  for (const auto& c : evaluate_claims(e)) {
    if (c.claim.kind != kind) continue;
    if (!c.agrees) log << e.structure.name() << " " << c.claim.id << " -> " << c.witness_kind << "; ";
    if (!c.agrees && !c.witness_replays)
      o.fail(e.structure.name() + " " + c.claim.id + " disagrees without a replayable witness");
  }
}

}  // namespace

int main() {
  const auto builtins = builtin_examples();

  criterion(1, "axioms of example A and the additive part of example Z2xK", 1.0, [&] {
    Outcome o;
    std::ostringstream log;
    const auto& a = builtin(builtins, "example-A");
    const auto& k = builtin(builtins, "example-Z2xK");
    for (const auto* r : a.report.failures()) {
      log << "A " << r->axiom << " fails; ";
      if (!replay_axiom_witness(a.structure, *r)) o.fail("A " + r->axiom + " witness does not replay");
    }
    const AxiomReport hg = verify_canonical_hypergroup(k.structure);
    for (const auto* r : hg.failures())
      if (!replay_axiom_witness(k.structure, *r)) o.fail("Z2xK " + r->axiom + " witness does not replay");
    log << "Z2xK hypergroup " << (hg.passed() ? "pass" : "fail") << "; ";
    settle_claims(a, "krasner", o, log);
    settle_claims(k, "krasner", o, log);
    settle_claims(k, "hypergroup", o, log);
    if (o.ok) o.note = log.str();
    return o;
  });

  criterion(2, "J-hyperideal claims for example A and example Z2xK", 1.0, [&] {
    Outcome o;
    std::ostringstream log;
    for (const auto& e : builtins) settle_claims(e, "j-hyperideal", o, log);
    // The same verdicts through the command line.
    const auto dir = std::filesystem::temp_directory_path() / "kmn_acceptance";
    std::filesystem::create_directories(dir);
    for (const auto& e : builtins) save_structure(e.structure, dir / (e.structure.name() + ".kmn"));
    struct Case {
      std::string file, ideal, expect;
    };
    for (const Case& c : {Case{"example-A", "0", "J: true"},
                          Case{"example-A", "0,x", "solvability fails at (0,x,0)"},
                          Case{"example-Z2xK", "0", "scalar identity: none"}}) {
      std::ostringstream out, err;
      const std::string path = (dir / (c.file + ".kmn")).string();
      const int code = run_cli({"classify", path, "--ideal", c.ideal, "--delta", "delta0", "--kmax", "2"}, out, err);
      const std::string text = out.str();
      const bool settled = text.find("J: true") != std::string::npos ||
                           text.find("replays: yes") != std::string::npos;
      if (code > 1 || text.find(c.expect) == std::string::npos || !settled)
        o.fail("classify " + c.file + " {" + c.ideal + "} printed: " + text + err.str());
    }
    std::filesystem::remove_all(dir);
    if (o.ok) o.note = log.str();
    return o;
  });

  const auto t_cat = std::chrono::steady_clock::now();
  const auto catalog = default_catalog();
  const double cat_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_cat).count();
  std::printf("default catalog: %zu structures (%.2f s)\n", catalog.size(), cat_secs);

  criterion(3, "radical by primes equals radical by powers", 60.0, [&] {
    Outcome o;
    std::size_t checked = 0;
    for (const auto& e : catalog) {
      if (!e.verified() || !e.structure.one()) continue;
      const IdealEngine eng(Hyperring::verify(e.structure));
      for (ElementSet q : eng.lattice().members()) {
        ++checked;
        if (eng.radical(q) != eng.radical_by_powers(q))
          o.fail(e.structure.name() + " " + e.structure.format(q));
      }
    }
    if (o.ok) o.note = std::to_string(checked) + " ideals";
    return o;
  });

  AuditReport report;
  criterion(4, "theorem audit over the default catalog", 600.0, [&] {
    Outcome o;
    report = run_audit(catalog);
    for (const auto& c : report.cells) {
      if (c.status == CellStatus::Skip && c.reason.empty()) o.fail(c.structure + " " + c.theorem + " skip without reason");
      if (c.status == CellStatus::Fail && !(c.replayed && replay_cell(catalog, c)))
        o.fail(c.structure + " " + c.theorem + " fails without a replaying witness");
    }
    o.note = std::to_string(report.cells.size()) + " cells, pass " + std::to_string(report.count(CellStatus::Pass)) +
             ", fail " + std::to_string(report.count(CellStatus::Fail)) + " (replayed), skip " +
             std::to_string(report.count(CellStatus::Skip));
    return o;
  });

  criterion(5, "delta0-J coincides with J; deltaR makes proper ideals delta-J and absorbing", 60.0, [&] {
    Outcome o;
    std::size_t checked = 0;
    for (const auto& e : catalog) {
      if (!e.verified()) continue;
      const IdealEngine eng(Hyperring::verify(e.structure));
      const Expansion d0 = expansion_by_name(eng, "delta0");
      const Expansion dr = expansion_by_name(eng, "deltaR");
      for (ElementSet q : eng.lattice().members()) {
        if (q == eng.carrier()) continue;
        ++checked;
        const std::string at = e.structure.name() + " " + e.structure.format(q);
        // Both J-type predicates are defined only where g has a scalar identity.
        if (eng.has_identity()) {
          if (is_delta_j(eng, q, d0).verdict != is_j_hyperideal(eng, q).verdict) o.fail(at + ": delta0-J differs from J");
          if (!is_delta_j(eng, q, dr).holds()) o.fail(at + ": not deltaR-J");
        }
        for (int k = 2; k <= 3; ++k)
          if (!is_kn_absorbing_delta_j(eng, q, dr, k).holds())
            o.fail(at + ": not (" + std::to_string(k) + ",n)-absorbing for deltaR");
      }
    }
    if (o.ok) o.note = std::to_string(checked) + " proper ideals";
    return o;
  });

  criterion(6, "delta-J implies (2,n)-absorbing implies (3,n)-absorbing", 120.0, [&] {
    Outcome o;
    std::size_t undecided = 0;
    for (const char* d : {"delta0", "delta1", "deltaR"}) {
      const std::string D = d;
      for (const std::string spec : {"delta-J[" + D + "] => absorbing[2," + D + "]",
                                     "absorbing[2," + D + "] => absorbing[3," + D + "]"}) {
        const SearchResult r = search_counterexample(parse_implication(spec), catalog);
        undecided += r.undecided;
        if (r.counterexample)
          o.fail(spec + ": " + r.counterexample->structure + " " + r.counterexample->ideal_text);
      }
    }
    if (o.ok) o.note = "no counterexample; " + std::to_string(undecided) + " undecided pairs";
    return o;
  });

  criterion(7, "transfer theorems T20, T21, T27 over the fixtures", 1.0, [&] {
    Outcome o;
    std::size_t fails = 0;
    std::map<std::string, std::size_t> causes;
    for (const auto& c : report.cells) {
      if (c.theorem != "T20" && c.theorem != "T21" && c.theorem != "T27") continue;
      if (c.status != CellStatus::Fail) continue;
      ++fails;
      for (const auto& [k, v] : c.causes) causes[k] += v;
      if (!c.replayed || c.causes.empty()) o.fail(c.structure + " " + c.theorem + " unexplained");
    }
    std::string tally;
    for (const auto& [k, v] : causes) tally += " " + k + "=" + std::to_string(v);
    o.note = std::to_string(fails) + " replayed failing cells;" + tally;
    return o;
  });

  criterion(8, "two audit runs (1 and 4 workers) are byte-identical", 120.0, [&] {
    Outcome o;
    const std::string first = report.to_jsonl();
    AuditOptions threaded;
    threaded.jobs = 4;
    const std::string second = run_audit(default_catalog(), threaded).to_jsonl();
    if (first != second) o.fail("reports differ");
    if (first.empty()) o.fail("empty report");
    return o;
  });

  std::printf("%s\n", failures ? "acceptance: FAIL" : "acceptance: PASS");
  return failures ? 1 : 0;
}
