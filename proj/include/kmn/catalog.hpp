#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kmn/axioms.hpp"

namespace kmn {

enum class Provenance { WorkedExample, Enumerated, File };
const char* to_string(Provenance p);

/// A property the source text asserts about a built-in example. Claims are
/// evaluated and compared, never assumed.
struct ExpectedClaim {
  std::string id;
  /// "krasner", "hypergroup" or "j-hyperideal".
  std::string kind;
  /// Element labels of the ideal for "j-hyperideal".
  std::vector<std::string> ideal;
  std::string description;
};

struct CatalogEntry {
  Structure structure;
  Provenance provenance = Provenance::Enumerated;
  AxiomReport report;
  std::vector<ExpectedClaim> claims;

  bool verified() const { return report.passed(); }
};

CatalogEntry make_entry(Structure s, Provenance p, std::vector<ExpectedClaim> claims = {});

/// The two worked examples: "example-A" ((3,3), carrier {0,1,x}) and
/// "example-Z2xK" ((2,4), carrier {0,1,alpha,beta}).
std::vector<CatalogEntry> builtin_examples();

/// Result of comparing one expected claim with the verifier. A disagreement
/// carries a witness and whether replaying it reproduces the violation.
struct ClaimOutcome {
  std::string structure;
  ExpectedClaim claim;
  bool agrees = false;
  std::string observed;
  /// "axiom:<name>", "hyperideal:<clause>", "predicate:<name>" or
  /// "scalar-identity"; empty when the claim holds.
  std::string witness_kind;
  Tuple witness;
  int index = -1;
  std::string detail;
  bool witness_replays = false;
};

std::vector<ClaimOutcome> evaluate_claims(const CatalogEntry& entry);

/// Pairs (u, x) with g(u^(n-1), x) != x, one per element u, or fewer pairs
/// when some u is a scalar identity.
Tuple scalar_identity_failures(const Structure& s);
/// True iff `w` holds one such pair for every element and each still fails.
bool replay_scalar_identity_failures(const Structure& s, const Tuple& w);

struct EnumerationOptions {
  int m = 2;
  int n = 2;
  std::size_t order = 2;
  /// Keep only tables that are lexicographically least under permutations
  /// fixing zero. Without it every labelling with zero at 0 is produced.
  bool symmetry_breaking = true;
  /// Candidate f tables examined before the stream stops with a notice.
  std::uint64_t candidate_cap = 50'000'000;
  std::size_t max_order = 4;
};

struct EnumerationResult {
  std::vector<Structure> structures;
  std::uint64_t f_candidates = 0;
  std::uint64_t hypergroups = 0;
  bool truncated = false;
  std::string notice;
};

/// Every Krasner (m,n)-hyperring of the given order with zero at element 0,
/// in ascending table order. Throws PreconditionError above `max_order`.
EnumerationResult enumerate_structures(const EnumerationOptions& opts);

/// Limits read from KMN_MAX_ORDER and KMN_ENUM_CAP when set.
EnumerationOptions enumeration_defaults();

/// Table key of the structure relabelled by the permutation (fixing zero at
/// position 0) that makes it least: f values in multiset order, then g.
std::vector<std::uint64_t> canonical_key(const Structure& s);
/// The structure relabelled by that least permutation; labels travel with
/// their elements.
Structure canonical_form(const Structure& s);
bool isomorphic(const Structure& a, const Structure& b);
/// Number of isomorphism classes among `structures`.
std::size_t count_classes(const std::vector<Structure>& structures);

struct CatalogOptions {
  bool builtin = true;
  std::vector<std::pair<int, int>> arities = {{2, 2}, {3, 2}, {2, 3}, {3, 3}};
  std::size_t max_order = 3;
  /// Structures drawn from the order-4 (2,2) enumeration; 0 disables.
  std::size_t order4_sample = 16;
  std::uint64_t seed = 0;
};

/// Built-in examples followed by verified enumerated structures.
std::vector<CatalogEntry> default_catalog(const CatalogOptions& opts = {});

}  // namespace kmn
