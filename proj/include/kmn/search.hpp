#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmn/catalog.hpp"
#include "kmn/classifiers.hpp"

namespace kmn {

/// One predicate of an implication, applied to a proper hyperideal Q.
///
///   J | prime | primary | maximal | jacobson-subset
///   delta-J[NAME] | delta-primary[NAME] | absorbing[K,NAME]
///
/// NAME is delta0, delta1, deltaR or a composite such as deltaRodelta1.
struct Atom {
  std::string kind;
  std::string delta;
  int k = 0;

  std::string text() const;
};

/// LHS => RHS, each a conjunction joined by '&'. "⇒" and "∧" are accepted
/// as well, and "Q ⊆ J(R)" is an alias for jacobson-subset.
struct Implication {
  std::vector<Atom> lhs;
  std::vector<Atom> rhs;

  std::string text() const;
};

/// Throws PreconditionError naming the offending token.
Implication parse_implication(const std::string& spec);

struct Counterexample {
  std::string structure;
  ElementSet ideal;
  std::string ideal_text;
  /// First right-hand atom that failed, with its witness when it has one.
  std::string failed_atom;
  std::optional<Witness> witness;
};

struct SearchResult {
  std::optional<Counterexample> counterexample;
  std::size_t structures_scanned = 0;
  std::size_t ideals_checked = 0;
  /// (structure, ideal) pairs where some atom was not applicable or truncated.
  std::size_t undecided = 0;
};

/// Scans verified entries in catalog order and their proper hyperideals in
/// lattice order; stops at the first pair where every LHS atom holds and
/// some RHS atom fails. Unverified entries are passed over.
SearchResult search_counterexample(const Implication& imp, const std::vector<CatalogEntry>& catalog,
                                   const AbsorbingOptions& opts = {});

}  // namespace kmn
