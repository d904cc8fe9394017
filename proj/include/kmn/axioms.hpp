#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmn/structure.hpp"

namespace kmn {

enum class AxiomStatus { Pass, Fail, NotEvaluated };

const char* to_string(AxiomStatus s);

/// Outcome of one axiom. A failed axiom carries the lexicographically least
/// offending tuple; `position` selects the bracket position (associativity) or
/// the argument index (reversibility) where that matters.
struct AxiomResult {
  std::string axiom;
  AxiomStatus status = AxiomStatus::Pass;
  Tuple witness;
  int position = -1;
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  /// Every scalar identity of g, ascending; the first one is used as 1_R.
  std::vector<Elem> scalar_identities;

  bool passed() const;
  const AxiomResult* find(const std::string& axiom) const;
  std::vector<const AxiomResult*> failures() const;
};

/// Checks that (R, f) is a canonical m-ary hypergroup with the structure's
/// zero as its scalar neutral element: commutativity, associativity,
/// neutral element, unique inverses, reversibility, reproduction.
AxiomReport verify_canonical_hypergroup(const Structure& s);

/// Hypergroup axioms plus g-associativity, g-commutativity, distributivity
/// and zero absorption. Results are sorted by axiom name.
AxiomReport verify_krasner(const Structure& s);

/// Cheaper passes used by the enumerator: no report, first failure stops.
bool is_canonical_hypergroup(const Structure& s);
/// g-associativity, g-commutativity, distributivity, zero absorption.
bool satisfies_g_axioms(const Structure& s);
bool is_krasner(const Structure& s);

/// Re-evaluates a failed axiom on its witness. True iff the witness still
/// exhibits a violation.
bool replay_axiom_witness(const Structure& s, const AxiomResult& failure);

/// The unique y with zero in f(x, y, zero^(m-2)), if exactly one exists.
std::optional<Elem> additive_inverse(const Structure& s, Elem x);

/// Throws PreconditionError when the structure has no scalar identity.
bool is_invertible(const Structure& s, Elem x);
std::optional<Elem> inverse_of_g(const Structure& s, Elem x);

/// A structure paired with its axiom report. Everything downstream of the
/// axiom checker takes a Hyperring; `verify` is the normal way in and refuses
/// structures that fail an axiom.
class Hyperring {
 public:
  /// Throws PreconditionError listing the failed axioms.
  static Hyperring verify(Structure s);
  /// Keeps a failing structure for diagnostics (discrepancies in the worked examples).
  static Hyperring unchecked(Structure s);

  const Structure& structure() const { return structure_; }
  const AxiomReport& report() const { return report_; }
  bool verified() const { return report_.passed(); }

 private:
  Hyperring(Structure s, AxiomReport r) : structure_(std::move(s)), report_(std::move(r)) {}
  Structure structure_;
  AxiomReport report_;
};

}  // namespace kmn
