#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kmn/ideals.hpp"

namespace kmn {

/// A hyperideal expansion: a map on the hyperideal lattice of one structure.
/// Construction only checks totality; `validate_expansion` checks the
/// inflationary and monotone conditions.
class Expansion {
 public:
  Expansion(std::string name, std::vector<ElementSet> domain, std::vector<ElementSet> images);

  /// delta0: I -> I.
  static Expansion identity(const IdealLattice& lattice);
  /// delta1: I -> radical of I (intersection of primes containing I).
  static Expansion radical(const IdealEngine& engine);
  /// deltaR: I -> R.
  static Expansion full(const IdealLattice& lattice);
  /// User table; throws PreconditionError unless every lattice member has
  /// exactly one image.
  static Expansion from_table(std::string name, const IdealLattice& lattice,
                              const std::vector<std::pair<ElementSet, ElementSet>>& table);

  const std::string& name() const { return name_; }
  const std::vector<ElementSet>& domain() const { return domain_; }
  const std::vector<ElementSet>& images() const { return images_; }
  /// Throws PreconditionError when `ideal` is outside the domain.
  ElementSet operator()(ElementSet ideal) const;

 private:
  std::string name_;
  std::vector<ElementSet> domain_;
  std::vector<ElementSet> images_;
};

/// Clauses "expansion.total", "expansion.inflationary",
/// "expansion.monotone". Witness tuples hold lattice indices.
AxiomReport validate_expansion(const IdealLattice& lattice, const Expansion& delta);

/// gamma after delta, pointwise. Throws PreconditionError if either map
/// leaves the lattice or the result fails validation.
Expansion compose(const Expansion& gamma, const Expansion& delta);

/// First pair (I, J) with delta(I meet J) != delta(I) meet delta(J).
std::optional<std::pair<ElementSet, ElementSet>> intersection_violation(const IdealLattice& lattice,
                                                                        const Expansion& delta);
inline bool preserves_intersections(const IdealLattice& lattice, const Expansion& delta) {
  return !intersection_violation(lattice, delta).has_value();
}

/// delta0, delta1, deltaR in that order.
std::vector<Expansion> standard_expansions(const IdealEngine& engine);
/// Looks up "delta0", "delta1" or "deltaR".
Expansion expansion_by_name(const IdealEngine& engine, const std::string& name);

}  // namespace kmn
