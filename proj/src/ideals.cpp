#include "kmn/ideals.hpp"

#include <algorithm>
#include <set>

namespace kmn {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::True:
      return "true";
    case Verdict::False:
      return "false";
    case Verdict::NotApplicable:
      return "not-applicable";
    case Verdict::Improper:
      return "improper";
    case Verdict::Truncated:
      return "truncated";
  }
  return "?";
}

IdealCheck check_hyperideal(const Structure& s, ElementSet subset) {
  IdealCheck out;
  if (!subset.subset_of(s.carrier())) return {false, "carrier", {}, "subset has foreign elements"};
  if (!subset.contains(s.zero())) return {false, "zero", {}, "zero is not a member"};
  const int m = s.m();
  const int n = s.n();
  const std::vector<Elem> members = subset.elements();

  // f-closure over members^m.
  for_each_tuple(members.size(), m, [&](const Tuple& idx) {
    Tuple t(m);
    for (int i = 0; i < m; ++i) t[i] = members[idx[i]];
    if (!s.f_unchecked(t.data()).subset_of(subset)) {
      out = {false, "f.closure", t, "f(t) leaves the subset"};
      return false;
    }
    return true;
  });
  if (!out.ok) return out;

  // Solvability: for b_1..b_{m-1}, b in the subset there is x in the subset
  // with b in f(b_1..b_{m-1}, x).
  for_each_tuple(members.size(), m - 1, [&](const Tuple& idx) {
    Tuple t(m);
    for (int i = 0; i < m - 1; ++i) t[i] = members[idx[i]];
    ElementSet reach;
    for (Elem x : members) {
      t[m - 1] = x;
      reach |= s.f_unchecked(t.data());
    }
    if (!subset.subset_of(reach)) {
      Tuple w(t.begin(), t.end() - 1);
      w.push_back(subset.minus(reach).first());
      out = {false, "solvability", w, "b in f(b_1..b_{m-1}, x) has no solution x in the subset"};
      return false;
    }
    return true;
  });
  if (!out.ok) return out;

  // Absorption: g(x_1..x_{n-1}, i) in the subset (g is commutative).
  for_each_tuple(s.size(), n - 1, [&](const Tuple& x) {
    Tuple t = x;
    t.push_back(0);
    for (Elem i : members) {
      t[n - 1] = i;
      if (!subset.contains(s.g_unchecked(t.data()))) {
        out = {false, "absorption", t, "g(x_1..x_{n-1}, i) leaves the subset"};
        return false;
      }
    }
    return true;
  });
  return out;
}

bool replay_ideal_witness(const Structure& s, ElementSet subset, const IdealCheck& failure) {
  if (failure.ok) return false;
  const auto& w = failure.witness;
  for (Elem e : w)
    if (e >= s.size()) return false;
  const auto m = static_cast<std::size_t>(s.m());
  const auto n = static_cast<std::size_t>(s.n());
  if (failure.clause == "carrier") return !subset.subset_of(s.carrier());
  if (failure.clause == "zero") return !subset.contains(s.zero());
  if (failure.clause == "f.closure") {
    if (w.size() != m) return false;
    for (Elem e : w)
      if (!subset.contains(e)) return false;
    return !s.f(w).subset_of(subset);
  }
  if (failure.clause == "solvability") {
    if (w.size() != m) return false;
    for (Elem e : w)
      if (!subset.contains(e)) return false;
    Tuple t(w.begin(), w.end());
    for (Elem x : subset) {
      t[m - 1] = x;
      if (s.f(t).contains(w[m - 1])) return false;
    }
    return true;
  }
  if (failure.clause == "absorption") {
    if (w.size() != n || !subset.contains(w[n - 1])) return false;
    return !subset.contains(s.g(w));
  }
  return false;
}

ElementSet ideal_closure(const Structure& s, ElementSet gens) {
  ElementSet cur = gens | ElementSet::singleton(s.zero());
  const int m = s.m();
  const int n = s.n();
  while (true) {
    ElementSet next = cur;
    const auto members = cur.elements();
    for_each_tuple(members.size(), m, [&](const Tuple& idx) {
      Tuple t(m);
      for (int i = 0; i < m; ++i) t[i] = members[idx[i]];
      next |= s.f_unchecked(t.data());
      return true;
    });
    for (Elem x : members)
      if (auto inv = additive_inverse(s, x)) next.insert(*inv);
    for_each_tuple(s.size(), n - 1, [&](const Tuple& x) {
      Tuple t = x;
      t.push_back(0);
      for (Elem i : members) {
        t[n - 1] = i;
        next.insert(s.g_unchecked(t.data()));
      }
      return true;
    });
    if (next == cur) return cur;
    cur = next;
  }
}

IdealLattice IdealLattice::compute(const Hyperring& ring, const LatticeOptions& opts) {
  const Structure& s = ring.structure();
  if (!ring.verified() && !opts.allow_unverified)
    throw PreconditionError("structure '" + s.name() + "' has not passed Krasner verification");
  if (s.size() > opts.max_carrier)
    throw PreconditionError("carrier of " + std::to_string(s.size()) + " elements exceeds the enumeration cap of " +
                            std::to_string(opts.max_carrier));
  EnumerationStrategy strategy = opts.strategy;
  if (strategy == EnumerationStrategy::Auto)
    strategy = s.size() <= opts.scan_limit ? EnumerationStrategy::SubsetScan : EnumerationStrategy::Closure;

  IdealLattice lat;
  lat.carrier_ = s.carrier();
  if (strategy == EnumerationStrategy::SubsetScan) {
    const std::uint64_t total = std::uint64_t{1} << s.size();
    const std::uint64_t zero_bit = std::uint64_t{1} << s.zero();
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      if (!(bits & zero_bit)) continue;
      if (is_hyperideal(s, ElementSet(bits))) lat.members_.push_back(ElementSet(bits));
    }
  } else {
    std::set<std::uint64_t> seen;
    std::vector<ElementSet> frontier{ideal_closure(s, {})};
    seen.insert(frontier.front().bits());
    while (!frontier.empty()) {
      ElementSet c = frontier.back();
      frontier.pop_back();
      for (Elem r : s.carrier().minus(c)) {
        ElementSet next = ideal_closure(s, c | ElementSet::singleton(r));
        if (seen.insert(next.bits()).second) frontier.push_back(next);
      }
    }
    for (std::uint64_t bits : seen)
      if (is_hyperideal(s, ElementSet(bits))) lat.members_.push_back(ElementSet(bits));
  }
  std::sort(lat.members_.begin(), lat.members_.end(), canonical_less);

  for (std::size_t i = 0; i < lat.members_.size(); ++i) {
    const ElementSet mi = lat.members_[i];
    if (mi == lat.carrier_) continue;
    bool maximal = true;
    for (const ElementSet& other : lat.members_)
      if (other != mi && other != lat.carrier_ && mi.subset_of(other)) maximal = false;
    if (maximal) lat.maximal_.push_back(i);
  }
  lat.jacobson_ = lat.carrier_;
  for (std::size_t i : lat.maximal_) lat.jacobson_ &= lat.members_[i];
  return lat;
}

std::optional<std::size_t> IdealLattice::index_of(ElementSet ideal) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), ideal, canonical_less);
  if (it != members_.end() && *it == ideal) return static_cast<std::size_t>(it - members_.begin());
  return std::nullopt;
}

std::vector<ElementSet> IdealLattice::maximal_ideals() const {
  std::vector<ElementSet> out;
  for (std::size_t i : maximal_) out.push_back(members_[i]);
  return out;
}

bool IdealLattice::is_maximal(ElementSet ideal) const {
  auto idx = index_of(ideal);
  return idx && std::find(maximal_.begin(), maximal_.end(), *idx) != maximal_.end();
}

ElementSet IdealLattice::smallest_containing(ElementSet subset) const {
  ElementSet out = carrier_;
  for (const auto& mbr : members_)
    if (subset.subset_of(mbr)) out &= mbr;
  return out;
}

IdealEngine::IdealEngine(Hyperring ring, const LatticeOptions& opts)
    : ring_(std::move(ring)), lattice_(IdealLattice::compute(ring_, opts)) {
  const Structure& s = structure();
  const int n = s.n();
  prime_.resize(lattice_.size());
  for (std::size_t i = 0; i < lattice_.size(); ++i) {
    const ElementSet p = lattice_[i];
    if (p == lattice_.carrier()) continue;
    const std::vector<Elem> outside = s.carrier().minus(p).elements();
    prime_[i] = for_each_tuple(outside.size(), n, [&](const Tuple& idx) {
      Tuple t(n);
      for (int k = 0; k < n; ++k) t[k] = outside[idx[k]];
      return !p.contains(s.g_unchecked(t.data()));
    });
  }
  radical_.resize(lattice_.size());
  for (std::size_t i = 0; i < lattice_.size(); ++i) {
    ElementSet r = lattice_.carrier();
    for (std::size_t j = 0; j < lattice_.size(); ++j)
      if (prime_[j] && lattice_[i].subset_of(lattice_[j])) r &= lattice_[j];
    radical_[i] = r;
  }
}

void IdealEngine::require_member(ElementSet ideal, const char* what) const {
  if (!lattice_.contains(ideal))
    throw PreconditionError(std::string(what) + ": " + structure().format(ideal) + " is not a hyperideal of '" +
                            structure().name() + "'");
}

void IdealEngine::require_identity(const char* what) const {
  if (!has_identity())
    throw PreconditionError(std::string(what) + " needs a scalar identity; '" + structure().name() + "' has none");
}

PrincipalIdeal IdealEngine::principal_ideal(Elem x) const {
  require_identity("principal_ideal");
  const Structure& s = structure();
  if (x >= s.size()) throw StructureError("principal_ideal: foreign element");
  PrincipalIdeal out;
  for (std::size_t r = 0; r < s.size(); ++r) out.generated.insert(s.g_pair(static_cast<Elem>(r), x));
  out.formula_closed = lattice_.contains(out.generated);
  out.ideal = out.formula_closed ? out.generated : lattice_.smallest_containing(out.generated);
  return out;
}

PredicateResult IdealEngine::is_prime(ElementSet p) const {
  require_member(p, "is_prime");
  if (p == lattice_.carrier()) throw PreconditionError("is_prime: P = R");
  if (prime_[*lattice_.index_of(p)]) return PredicateResult::yes();
  const Structure& s = structure();
  const int n = s.n();
  const std::vector<Elem> outside = s.carrier().minus(p).elements();
  Witness w{"prime", {}, -1, "g(x) in P with no x_i in P"};
  for_each_tuple(outside.size(), n, [&](const Tuple& idx) {
    Tuple t(n);
    for (int k = 0; k < n; ++k) t[k] = outside[idx[k]];
    if (p.contains(s.g_unchecked(t.data()))) {
      w.tuple = t;
      return false;
    }
    return true;
  });
  return PredicateResult::no(w);
}

PredicateResult IdealEngine::is_prime_by_ideals(ElementSet p) const {
  require_member(p, "is_prime_by_ideals");
  if (p == lattice_.carrier()) throw PreconditionError("is_prime_by_ideals: P = R");
  const Structure& s = structure();
  const int n = s.n();
  std::vector<Elem> candidates;
  for (std::size_t i = 0; i < lattice_.size(); ++i)
    if (!lattice_[i].subset_of(p)) candidates.push_back(static_cast<Elem>(i));
  std::optional<Witness> found;
  std::vector<ElementSet> sets(n);
  for_each_tuple(candidates.size(), n, [&](const Tuple& idx) {
    Tuple t(n);
    for (int k = 0; k < n; ++k) {
      t[k] = candidates[idx[k]];
      sets[k] = lattice_[t[k]];
    }
    if (s.g_sets(sets).subset_of(p)) {
      found = Witness{"prime-by-ideals", t, -1, "g(U_1..U_n) inside P with no U_i inside P (lattice indices)"};
      return false;
    }
    return true;
  });
  return found ? PredicateResult::no(*found) : PredicateResult::yes();
}

ElementSet IdealEngine::radical(ElementSet ideal) const {
  require_member(ideal, "radical");
  return radical_[*lattice_.index_of(ideal)];
}

ElementSet IdealEngine::radical_by_powers(ElementSet ideal) const {
  require_identity("radical_by_powers");
  require_member(ideal, "radical_by_powers");
  const Structure& s = structure();
  const std::size_t n = static_cast<std::size_t>(s.n());
  const Elem one = *s.one();
  ElementSet out;
  for (std::size_t x = 0; x < s.size(); ++x) {
    const Elem e = static_cast<Elem>(x);
    bool hit = false;
    for (std::size_t t = 1; t <= n && !hit; ++t) {
      Tuple args(n, one);
      std::fill(args.begin(), args.begin() + t, e);
      hit = ideal.contains(s.g_unchecked(args.data()));
    }
    for (std::size_t t = 2 * n - 1; t <= power_bound() && !hit; t += n - 1)
      hit = ideal.contains(s.g_iter(Tuple(t, e)));
    if (hit) out.insert(e);
  }
  return out;
}

PredicateResult IdealEngine::is_primary(ElementSet q) const {
  require_identity("is_primary");
  require_member(q, "is_primary");
  if (q == lattice_.carrier()) throw PreconditionError("is_primary: Q = R");
  const Structure& s = structure();
  const ElementSet rad = radical(q);
  std::optional<Witness> found;
  for_each_tuple(s.size(), s.n(), [&](const Tuple& x) {
    if (!q.contains(s.g_unchecked(x.data()))) return true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (q.contains(x[i])) continue;
      if (!rad.contains(s.g_drop(x, i))) {
        found = Witness{"primary", x, static_cast<int>(i), "g(x) in Q, x_i not in Q, drop-i product not in rad Q"};
        return false;
      }
    }
    return true;
  });
  return found ? PredicateResult::no(*found) : PredicateResult::yes();
}

ElementSet IdealEngine::residual(ElementSet q, ElementSet t) const {
  require_identity("residual");
  require_member(q, "residual");
  if (t.empty()) throw PreconditionError("residual: T must be nonempty");
  const Structure& s = structure();
  ElementSet out;
  for (std::size_t x = 0; x < s.size(); ++x) {
    bool all = true;
    for (Elem e : t) all = all && q.contains(s.g_pair(static_cast<Elem>(x), e));
    if (all) out.insert(static_cast<Elem>(x));
  }
  return out;
}

bool replay_prime_witness(const IdealEngine& engine, ElementSet p, const Witness& w) {
  const Structure& s = engine.structure();
  if (w.predicate == "prime") {
    if (w.tuple.size() != static_cast<std::size_t>(s.n())) return false;
    if (!p.contains(s.g(w.tuple))) return false;
    return std::none_of(w.tuple.begin(), w.tuple.end(), [&](Elem e) { return p.contains(e); });
  }
  if (w.predicate == "prime-by-ideals") {
    const auto& lat = engine.lattice();
    std::vector<ElementSet> sets;
    for (Elem i : w.tuple) {
      if (i >= lat.size()) return false;
      if (lat[i].subset_of(p)) return false;
      sets.push_back(lat[i]);
    }
    return sets.size() == static_cast<std::size_t>(s.n()) && s.g_sets(sets).subset_of(p);
  }
  if (w.predicate == "primary") {
    if (w.tuple.size() != static_cast<std::size_t>(s.n()) || w.index < 0) return false;
    const auto i = static_cast<std::size_t>(w.index);
    return p.contains(s.g(w.tuple)) && !p.contains(w.tuple[i]) && !engine.radical(p).contains(s.g_drop(w.tuple, i));
  }
  return false;
}

}  // namespace kmn
