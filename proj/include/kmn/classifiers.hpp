#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kmn/expansion.hpp"

namespace kmn {

// The J-type predicates. All quantify over ordered tuples in lexicographic
// order and report the least violating tuple. Q must be a lattice member
// (PreconditionError otherwise); Q = R yields Verdict::Improper and a missing
// scalar identity yields Verdict::NotApplicable where 1_R is used.

/// g(x) in Q and x_i outside J(R) force g(x with x_i replaced by 1) in Q.
PredicateResult is_j_hyperideal(const IdealEngine& engine, ElementSet q);

/// g(x) in Q forces, for every i, x_i in J(R) or the drop-i product in
/// delta(Q).
PredicateResult is_delta_j(const IdealEngine& engine, ElementSet q, const Expansion& delta);

/// g(x) in Q forces, for every i, x_i in Q or the drop-i product in delta(Q).
PredicateResult is_delta_primary(const IdealEngine& engine, ElementSet q, const Expansion& delta);

struct AbsorbingOptions {
  /// Largest tuple space scanned before the verdict becomes Truncated.
  std::uint64_t tuple_cap = 10'000'000;
};

/// (k,n)-absorbing delta-J: for x of length k(n-1)+1 with g(x) in Q, the
/// product of the leading (k-1)(n-1)+1 factors lies in J(R) or the product
/// over some other index subset of that size lies in delta(Q). k >= 2.
PredicateResult is_kn_absorbing_delta_j(const IdealEngine& engine, ElementSet q, const Expansion& delta, int k,
                                        const AbsorbingOptions& opts = {});

/// Re-evaluates a witness returned by one of the predicates above. `delta`
/// may be null for the J predicate; `k` is only read for the absorbing one.
bool replay_witness(const IdealEngine& engine, ElementSet q, const Expansion* delta, int k, const Witness& w);

struct ClassificationReport {
  ElementSet ideal;
  bool proper = true;
  /// Predicate name -> verdict, in a fixed order: prime, primary, maximal,
  /// J, then per expansion delta-J, delta-primary and (k,n)-absorbing.
  std::vector<std::pair<std::string, PredicateResult>> verdicts;

  const PredicateResult* find(const std::string& predicate) const;
};

ClassificationReport classify(const IdealEngine& engine, ElementSet q, const std::vector<Expansion>& registry,
                              int k_max, const AbsorbingOptions& opts = {});

}  // namespace kmn
