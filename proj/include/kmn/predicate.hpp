#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmn/structure.hpp"

namespace kmn {

/// Verdict of a hyperideal predicate. `NotApplicable` (no scalar identity)
/// and `Improper` (Q = R) are distinct from `False`; `Truncated` means the
/// tuple space exceeded the configured cap and no violation was seen in the
/// scanned part.
enum class Verdict { True, False, NotApplicable, Improper, Truncated };

const char* to_string(Verdict v);

/// Replayable evidence for a negative verdict.
struct Witness {
  std::string predicate;
  Tuple tuple;
  /// Argument index (0-based) for drop-one-factor clauses, -1 otherwise.
  int index = -1;
  std::string detail;
};

struct PredicateResult {
  Verdict verdict = Verdict::True;
  std::optional<Witness> witness;
  std::string note;

  bool holds() const { return verdict == Verdict::True; }
  static PredicateResult yes() { return {}; }
  static PredicateResult no(Witness w) { return {Verdict::False, std::move(w), {}}; }
  static PredicateResult na(std::string why) { return {Verdict::NotApplicable, std::nullopt, std::move(why)}; }
  static PredicateResult improper() { return {Verdict::Improper, std::nullopt, "Q = R"}; }
};

}  // namespace kmn
