#include "kmn/classifiers.hpp"

namespace kmn {

namespace {

void require_member(const IdealEngine& engine, ElementSet q, const char* what) {
  if (!engine.lattice().contains(q))
    throw PreconditionError(std::string(what) + ": " + engine.structure().format(q) + " is not a hyperideal");
}

// Shared scan for the three drop-one-factor predicates: a violation is a
// tuple with g(x) in Q and an index i where `excused(x_i)` fails and the
// drop-i product is outside `target`.
template <class Excused>
PredicateResult drop_scan(const IdealEngine& engine, ElementSet q, ElementSet target, const char* name,
                          Excused excused) {
  const Structure& s = engine.structure();
  std::optional<Witness> found;
  for_each_tuple(s.size(), s.n(), [&](const Tuple& x) {
    if (!q.contains(s.g_unchecked(x.data()))) return true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (excused(x[i])) continue;
      if (!target.contains(s.g_drop(x, i))) {
        found = Witness{name, x, static_cast<int>(i), "g(x) in Q but the drop-i product misses the target ideal"};
        return false;
      }
    }
    return true;
  });
  return found ? PredicateResult::no(*found) : PredicateResult::yes();
}

std::vector<std::vector<std::size_t>> index_subsets(std::size_t total, std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(size);
  for (std::size_t i = 0; i < size; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = size;
    while (i > 0 && cur[i - 1] == total - size + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < size; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::string kn_name(int k, const Expansion& delta) {
  return "(" + std::to_string(k) + ",n)-absorbing-delta-J[" + delta.name() + "]";
}

}  // namespace

PredicateResult is_j_hyperideal(const IdealEngine& engine, ElementSet q) {
  require_member(engine, q, "is_j_hyperideal");
  if (q == engine.carrier()) return PredicateResult::improper();
  if (!engine.has_identity()) return PredicateResult::na("no scalar identity");
  const ElementSet jac = engine.jacobson();
  return drop_scan(engine, q, q, "J", [&](Elem e) { return jac.contains(e); });
}

PredicateResult is_delta_j(const IdealEngine& engine, ElementSet q, const Expansion& delta) {
  require_member(engine, q, "is_delta_j");
  if (q == engine.carrier()) return PredicateResult::improper();
  if (!engine.has_identity()) return PredicateResult::na("no scalar identity");
  const ElementSet jac = engine.jacobson();
  return drop_scan(engine, q, delta(q), "delta-J", [&](Elem e) { return jac.contains(e); });
}

PredicateResult is_delta_primary(const IdealEngine& engine, ElementSet q, const Expansion& delta) {
  require_member(engine, q, "is_delta_primary");
  if (q == engine.carrier()) return PredicateResult::improper();
  if (!engine.has_identity()) return PredicateResult::na("no scalar identity");
  return drop_scan(engine, q, delta(q), "delta-primary", [&](Elem e) { return q.contains(e); });
}

PredicateResult is_kn_absorbing_delta_j(const IdealEngine& engine, ElementSet q, const Expansion& delta, int k,
                                        const AbsorbingOptions& opts) {
  require_member(engine, q, "is_kn_absorbing_delta_j");
  if (k < 2) throw PreconditionError("(k,n)-absorbing predicates need k >= 2");
  if (q == engine.carrier()) return PredicateResult::improper();
  const Structure& s = engine.structure();
  const std::size_t step = static_cast<std::size_t>(s.n() - 1);
  const std::size_t len = static_cast<std::size_t>(k) * step + 1;
  const std::size_t sub = static_cast<std::size_t>(k - 1) * step + 1;
  const ElementSet jac = engine.jacobson();
  const ElementSet target = delta(q);
  auto subsets = index_subsets(len, sub);
  subsets.erase(subsets.begin());  // the leading prefix

  std::uint64_t space = 1;
  bool truncated = false;
  for (std::size_t i = 0; i < len && !truncated; ++i) {
    space *= s.size();
    truncated = space > opts.tuple_cap;
  }
  std::uint64_t scanned = 0;
  std::optional<Witness> found;
  Tuple part(sub);
  for_each_tuple(s.size(), len, [&](const Tuple& x) {
    if (truncated && scanned >= opts.tuple_cap) return false;
    ++scanned;
    if (!q.contains(s.g_iter(x))) return true;
    if (jac.contains(s.g_iter(std::span<const Elem>(x.data(), sub)))) return true;
    for (const auto& idx : subsets) {
      for (std::size_t j = 0; j < sub; ++j) part[j] = x[idx[j]];
      if (target.contains(s.g_iter(part))) return true;
    }
    found = Witness{kn_name(k, delta), x, -1,
                    "g(x) in Q, leading product outside J(R), no other subproduct in delta(Q)"};
    return false;
  });
  if (found) return PredicateResult::no(*found);
  if (truncated)
    return {Verdict::Truncated, std::nullopt,
            "tuple space " + std::to_string(s.size()) + "^" + std::to_string(len) + " exceeds cap " +
                std::to_string(opts.tuple_cap) + "; scanned " + std::to_string(scanned) + " tuples"};
  return PredicateResult::yes();
}

bool replay_witness(const IdealEngine& engine, ElementSet q, const Expansion* delta, int k, const Witness& w) {
  const Structure& s = engine.structure();
  for (Elem e : w.tuple)
    if (e >= s.size()) return false;
  const ElementSet jac = engine.jacobson();
  if (w.predicate == "J" || w.predicate == "delta-J" || w.predicate == "delta-primary") {
    if (w.tuple.size() != static_cast<std::size_t>(s.n()) || w.index < 0 || w.index >= s.n() || !s.one()) return false;
    const ElementSet target = w.predicate == "J" ? q : (delta ? (*delta)(q) : q);
    const Elem xi = w.tuple[static_cast<std::size_t>(w.index)];
    const bool excused = w.predicate == "delta-primary" ? q.contains(xi) : jac.contains(xi);
    return q.contains(s.g(w.tuple)) && !excused && !target.contains(s.g_drop(w.tuple, w.index));
  }
  if (w.predicate.find("absorbing") != std::string::npos) {
    if (!delta || k < 2) return false;
    const std::size_t step = static_cast<std::size_t>(s.n() - 1);
    const std::size_t len = static_cast<std::size_t>(k) * step + 1;
    const std::size_t sub = static_cast<std::size_t>(k - 1) * step + 1;
    if (w.tuple.size() != len) return false;
    if (!q.contains(s.g_iter(w.tuple))) return false;
    if (jac.contains(s.g_iter(std::span<const Elem>(w.tuple.data(), sub)))) return false;
    const ElementSet target = (*delta)(q);
    auto subsets = index_subsets(len, sub);
    Tuple part(sub);
    for (std::size_t i = 1; i < subsets.size(); ++i) {
      for (std::size_t j = 0; j < sub; ++j) part[j] = w.tuple[subsets[i][j]];
      if (target.contains(s.g_iter(part))) return false;
    }
    return true;
  }
  return false;
}

const PredicateResult* ClassificationReport::find(const std::string& predicate) const {
  for (const auto& [name, result] : verdicts)
    if (name == predicate) return &result;
  return nullptr;
}

ClassificationReport classify(const IdealEngine& engine, ElementSet q, const std::vector<Expansion>& registry,
                              int k_max, const AbsorbingOptions& opts) {
  require_member(engine, q, "classify");
  ClassificationReport rep;
  rep.ideal = q;
  rep.proper = q != engine.carrier();
  auto add = [&](std::string name, PredicateResult r) { rep.verdicts.emplace_back(std::move(name), std::move(r)); };
  if (!rep.proper) {
    for (const char* p : {"prime", "primary", "maximal", "J"}) add(p, PredicateResult::improper());
    for (const auto& d : registry) {
      add("delta-J[" + d.name() + "]", PredicateResult::improper());
      add("delta-primary[" + d.name() + "]", PredicateResult::improper());
      for (int k = 2; k <= k_max; ++k) add(kn_name(k, d), PredicateResult::improper());
    }
    return rep;
  }
  add("prime", engine.is_prime(q));
  add("primary", engine.has_identity() ? engine.is_primary(q) : PredicateResult::na("no scalar identity"));
  add("maximal", engine.lattice().is_maximal(q)
                     ? PredicateResult::yes()
                     : PredicateResult{Verdict::False, std::nullopt, "a proper hyperideal contains Q strictly"});
  add("J", is_j_hyperideal(engine, q));
  for (const auto& d : registry) {
    add("delta-J[" + d.name() + "]", is_delta_j(engine, q, d));
    add("delta-primary[" + d.name() + "]", is_delta_primary(engine, q, d));
    for (int k = 2; k <= k_max; ++k) add(kn_name(k, d), is_kn_absorbing_delta_j(engine, q, d, k, opts));
  }
  return rep;
}

}  // namespace kmn
