#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmn/expansion.hpp"

namespace kmn {

/// A problem found while building a quotient: which clause and the offending
/// coset indices / representatives.
struct QuotientIssue {
  std::string clause;
  Tuple witness;
  std::string detail;
};

/// R/I with cosets f(r, I, 0^(m-2)). When the cosets fail to partition R or
/// an induced operation depends on representatives, `structure` is empty and
/// `issues` says why.
struct Quotient {
  ElementSet modulus;
  /// Distinct cosets ordered by least representative.
  std::vector<ElementSet> cosets;
  /// Element -> coset index.
  std::vector<Elem> projection;
  std::optional<Structure> structure;
  std::vector<QuotientIssue> issues;
  /// Every set f(x_1..x_{m-1}, I) is one of the cosets above.
  bool general_cosets_agree = true;

  bool well_defined() const { return structure.has_value(); }
};

/// Throws PreconditionError when `modulus` is not a hyperideal.
Quotient quotient(const Structure& s, ElementSet modulus);

/// A homomorphism check result: the first failing clause and tuple.
struct HomCheck {
  bool ok = true;
  std::string clause;
  Tuple witness;
};

/// h(f1(x)) = f2(h(x)) as sets for every m-tuple and h(g1(y)) = g2(h(y)) for
/// every n-tuple.
HomCheck check_homomorphism(const Structure& source, const Structure& target, std::span<const Elem> map);
bool replay_hom_witness(const Structure& source, const Structure& target, std::span<const Elem> map,
                        const HomCheck& failure);

ElementSet kernel(const Structure& source, const Structure& target, std::span<const Elem> map);
ElementSet image(std::span<const Elem> map, ElementSet subset);
ElementSet preimage(std::span<const Elem> map, ElementSet subset);
bool is_injective(std::span<const Elem> map, std::size_t target_size);
bool is_surjective(std::span<const Elem> map, std::size_t target_size);

/// Outcome of the delta-gamma identity check over every target hyperideal.
struct DeltaGammaCheck {
  bool ok = true;
  /// Target hyperideal I2 where delta(h^-1(I2)) != h^-1(gamma(I2)), or whose
  /// preimage is not a source hyperideal.
  std::optional<ElementSet> witness;
  std::string detail;
};

/// Throws PreconditionError when `map` is not a homomorphism.
DeltaGammaCheck check_delta_gamma(const IdealEngine& source, const IdealEngine& target, std::span<const Elem> map,
                                  const Expansion& delta, const Expansion& gamma);

/// delta_q on the quotient lattice: K -> pi(delta(pi^-1(K))). Throws
/// PreconditionError when some image is not a quotient hyperideal or some
/// quotient hyperideal has a preimage that is not a hyperideal of R.
Expansion quotient_expansion(const IdealEngine& base, const Quotient& q, const IdealEngine& quotient_engine,
                             const Expansion& delta);

}  // namespace kmn
