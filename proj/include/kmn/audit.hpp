#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kmn/catalog.hpp"
#include "kmn/classifiers.hpp"

namespace kmn {

struct TheoremInfo {
  std::string id;
  /// Hypothesis and conclusion in formula words.
  std::string statement;
  /// Applicability clauses checked before any instance is scanned.
  std::string requires_;
};

/// T01..T27 in order.
const std::vector<TheoremInfo>& theorem_registry();

/// One instance of a theorem: the ideals, expansions, k and (for the
/// transfer theorems) the homomorphism it was evaluated on. Enough to
/// evaluate the instance again from scratch.
struct Instance {
  std::vector<ElementSet> ideals;
  std::string delta;
  std::string gamma;
  int k = 0;
  /// "", "identity", "projection" or "map".
  std::string fixture;
  /// Target structure name for "map"; the modulus for "projection".
  std::string target;
  ElementSet modulus;
  Tuple map;
  /// 1 or 2 for the two transfer directions.
  int direction = 0;
};

/// Evidence that a predicate in the conclusion failed: which side, which
/// ideal, and the predicate witness.
struct PredicateEvidence {
  std::string side;
  ElementSet ideal;
  std::string delta;
  int k = 0;
  Witness witness;
};

enum class CellStatus { Pass, Fail, Skip };
const char* to_string(CellStatus s);

struct AuditCell {
  std::string structure;
  std::string theorem;
  CellStatus status = CellStatus::Pass;
  std::size_t instances = 0;
  std::size_t hypotheses_met = 0;
  /// Instances whose verdicts were truncated or not applicable.
  std::size_t inconclusive = 0;
  /// Instances with hypotheses met and conclusion false.
  std::size_t violations = 0;
  /// Violations grouped by kind ("conclusion", "improper-preimage", ...).
  std::map<std::string, std::size_t> causes;
  std::string reason;
  /// Set on Fail: the first violating instance.
  std::optional<Instance> instance;
  std::optional<PredicateEvidence> evidence;
  std::string detail;
  bool replayed = false;
};

struct AuditOptions {
  /// Theorem ids to run; empty means all. Unknown ids throw.
  std::vector<std::string> theorems;
  int k_max = 3;
  /// Largest carrier used for enumerated homomorphism fixtures.
  std::size_t fixture_order = 3;
  /// Maps enumerated per (source, target) pair at most |T|^|S|.
  std::uint64_t map_limit = 1'000'000;
  AbsorbingOptions absorbing;
  /// Worker threads; each owns its caches, so the report does not depend on it.
  unsigned jobs = 1;
};

inline constexpr const char* kToolVersion = "0.1.0";

struct AuditReport {
  std::string version = kToolVersion;
  std::string catalog_hash;
  std::vector<std::string> structures;
  std::vector<std::string> theorems;
  std::vector<AuditCell> cells;
  std::vector<ClaimOutcome> claims;
  /// Structures that failed verification, with their failed axioms.
  std::vector<std::pair<std::string, std::string>> unverified;

  std::size_t count(CellStatus s) const;
  /// Line-delimited JSON: header, claims, cells, summary.
  std::string to_jsonl() const;
  /// Per-theorem pass/fail/skip table.
  std::string summary_text() const;
};

/// FNV-1a over the exported catalog, hex.
std::string catalog_hash(const std::vector<CatalogEntry>& catalog);

AuditReport run_audit(const std::vector<CatalogEntry>& catalog, const AuditOptions& opts = {});

/// Evaluates a failing cell's instance again on a fresh context. True iff the
/// hypotheses still hold, the conclusion still fails, and the predicate
/// witness (when present) still shows the violation.
bool replay_cell(const std::vector<CatalogEntry>& catalog, const AuditCell& cell, const AuditOptions& opts = {});

/// Expansion names used for every structure: delta0, delta1, deltaR.
const std::vector<std::string>& registry_expansions();

}  // namespace kmn
