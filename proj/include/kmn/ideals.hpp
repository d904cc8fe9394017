#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kmn/axioms.hpp"
#include "kmn/predicate.hpp"

namespace kmn {

/// Result of the hyperideal test: on failure, the first violated clause
/// ("zero", "f.closure", "solvability", "absorption") and its tuple.
struct IdealCheck {
  bool ok = true;
  std::string clause;
  Tuple witness;
  std::string detail;
};

IdealCheck check_hyperideal(const Structure& s, ElementSet subset);
/// True iff the failure's witness still violates its clause.
bool replay_ideal_witness(const Structure& s, ElementSet subset, const IdealCheck& failure);
inline bool is_hyperideal(const Structure& s, ElementSet subset) { return check_hyperideal(s, subset).ok; }

/// Smallest superset of `gens` containing zero and closed under f, additive
/// inverses, and absorption by g.
ElementSet ideal_closure(const Structure& s, ElementSet gens);

enum class EnumerationStrategy { Auto, SubsetScan, Closure };

struct LatticeOptions {
  EnumerationStrategy strategy = EnumerationStrategy::Auto;
  /// Subset scanning is used up to this carrier size under Auto.
  std::size_t scan_limit = 12;
  /// Carriers above this size are refused.
  std::size_t max_carrier = 24;
  /// Permit structures that failed verification (diagnostics only).
  bool allow_unverified = false;
};

/// Every hyperideal of a structure, sorted canonically (by size, then by
/// member ids), with maximal ideals and the Jacobson radical.
class IdealLattice {
 public:
  static IdealLattice compute(const Hyperring& ring, const LatticeOptions& opts = {});

  const std::vector<ElementSet>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const ElementSet& operator[](std::size_t i) const { return members_[i]; }
  std::optional<std::size_t> index_of(ElementSet ideal) const;
  bool contains(ElementSet ideal) const { return index_of(ideal).has_value(); }
  ElementSet carrier() const { return carrier_; }

  /// Indices of maximal proper hyperideals.
  const std::vector<std::size_t>& maximal() const { return maximal_; }
  std::vector<ElementSet> maximal_ideals() const;
  bool is_maximal(ElementSet ideal) const;
  /// Intersection of maximal hyperideals, or R when there is none.
  ElementSet jacobson() const { return jacobson_; }
  /// Exactly one maximal hyperideal. A one-element structure is not local.
  bool is_local() const { return maximal_.size() == 1; }
  /// Smallest member containing `subset`.
  ElementSet smallest_containing(ElementSet subset) const;

 private:
  std::vector<ElementSet> members_;
  std::vector<std::size_t> maximal_;
  ElementSet jacobson_;
  ElementSet carrier_;
};

struct PrincipalIdeal {
  /// {g(r, x, 1^(n-2)) | r in R}.
  ElementSet generated;
  /// `generated` if it is a hyperideal, otherwise the smallest hyperideal
  /// containing it.
  ElementSet ideal;
  bool formula_closed = true;
};

/// A verified structure with its hyperideal lattice and cached radicals: the
/// context every classifier runs in.
class IdealEngine {
 public:
  explicit IdealEngine(Hyperring ring, const LatticeOptions& opts = {});

  const Hyperring& ring() const { return ring_; }
  const Structure& structure() const { return ring_.structure(); }
  const IdealLattice& lattice() const { return lattice_; }
  ElementSet jacobson() const { return lattice_.jacobson(); }
  bool has_identity() const { return structure().one().has_value(); }
  ElementSet carrier() const { return structure().carrier(); }

  /// Throws PreconditionError when there is no scalar identity.
  PrincipalIdeal principal_ideal(Elem x) const;

  /// Element test: g(x) in P forces some x_i in P. Throws on P = R or
  /// non-members of the lattice.
  PredicateResult is_prime(ElementSet p) const;
  /// Ideal test: g(U_1..U_n) subset of P forces some U_i subset of P, over
  /// lattice members. Witness tuple holds lattice indices.
  PredicateResult is_prime_by_ideals(ElementSet p) const;

  /// Intersection of the primes containing I, or R when there is none.
  ElementSet radical(ElementSet ideal) const;
  ElementSet radical_by_primes(ElementSet ideal) const { return radical(ideal); }
  /// Elements with some power g(x^(t), 1^(n-t)) (t <= n) or g_(l)(x^(t))
  /// (t = l(n-1)+1) in I, for t up to `power_bound()`. Needs 1_R.
  ElementSet radical_by_powers(ElementSet ideal) const;
  std::size_t power_bound() const { return structure().size() * (structure().n() - 1) + 1; }

  /// Throws PreconditionError on P = R or missing scalar identity.
  PredicateResult is_primary(ElementSet q) const;

  /// {x | g(x, s, 1^(n-2)) in Q for all s in T}. Needs 1_R, nonempty T.
  ElementSet residual(ElementSet q, ElementSet t) const;

  bool is_local() const { return lattice_.is_local(); }

 private:
  void require_member(ElementSet ideal, const char* what) const;
  void require_identity(const char* what) const;

  Hyperring ring_;
  IdealLattice lattice_;
  std::vector<bool> prime_;
  std::vector<ElementSet> radical_;
};

/// Re-evaluates a prime or primary witness. True iff it still shows a
/// violation.
bool replay_prime_witness(const IdealEngine& engine, ElementSet p, const Witness& w);

}  // namespace kmn
