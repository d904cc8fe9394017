#include "kmn/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "kmn/classifiers.hpp"

namespace kmn {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::WorkedExample:
      return "worked-example";
    case Provenance::Enumerated:
      return "enumerated";
    case Provenance::File:
      return "file";
  }
  return "?";
}

CatalogEntry make_entry(Structure s, Provenance p, std::vector<ExpectedClaim> claims) {
  AxiomReport report = verify_krasner(s);
  return CatalogEntry{std::move(s), p, std::move(report), std::move(claims)};
}

namespace {

ElementSet set_of(std::initializer_list<Elem> xs) {
  ElementSet s;
  for (Elem x : xs) s.insert(x);
  return s;
}

Structure example_a() {
  // 0, 1, x
  constexpr Elem O = 0, I = 1, X = 2;
  const ElementSet all = set_of({O, I, X});
  std::vector<HyperEntry> f = {
      {{O, O, O}, set_of({O})}, {{O, O, I}, set_of({I})}, {{O, I, I}, set_of({I})}, {{I, I, I}, set_of({I})},
      {{I, I, X}, all},         {{O, I, X}, all},         {{O, O, X}, set_of({X})}, {{O, X, X}, set_of({X})},
      {{I, X, X}, all},         {{X, X, X}, set_of({X})},
  };
  std::vector<OpEntry> g = {{{I, I, I}, I}, {{I, I, X}, X}, {{I, X, X}, X}, {{X, X, X}, X}};
  for_each_multiset(3, 2, [&](const Tuple& t) {
    g.push_back({{O, t[0], t[1]}, O});
    return true;
  });
  return Structure::from_entries("example-A", {"0", "1", "x"}, 3, 3, O, std::nullopt, f, g);
}

Structure example_z2xk() {
  constexpr Elem O = 0, I = 1, Al = 2, Be = 3;
  const ElementSet a = set_of({O, I});
  const ElementSet b = set_of({Al, Be});
  std::vector<HyperEntry> f = {
      {{O, O}, set_of({O})},   {{O, I}, set_of({I})},  {{O, Al}, set_of({Al})}, {{O, Be}, set_of({Be})},
      {{I, I}, a},             {{I, Al}, set_of({Be})}, {{I, Be}, b},            {{Al, Al}, set_of({O})},
      {{Al, Be}, set_of({I})}, {{Be, Be}, a},
  };
  std::vector<OpEntry> g;
  for_each_multiset(4, 4, [&](const Tuple& t) {
    const bool all_b = std::all_of(t.begin(), t.end(), [&](Elem e) { return b.contains(e); });
    g.push_back({t, all_b ? Al : O});
    return true;
  });
  return Structure::from_entries("example-Z2xK", {"0", "1", "alpha", "beta"}, 2, 4, O, std::nullopt, f, g);
}

ClaimOutcome axiom_claim(const CatalogEntry& e, const ExpectedClaim& c, const AxiomReport& r) {
  ClaimOutcome out;
  out.structure = e.structure.name();
  out.claim = c;
  out.agrees = r.passed();
  if (out.agrees) {
    out.observed = "all axioms pass";
    return out;
  }
  const AxiomResult* first = nullptr;
  std::string failed;
  for (const AxiomResult* f : r.failures()) {
    failed += (failed.empty() ? "" : ",") + f->axiom;
    if (!first && f->status == AxiomStatus::Fail) first = f;
  }
  out.observed = "failed: " + failed;
  if (first) {
    out.witness_kind = "axiom:" + first->axiom;
    out.witness = first->witness;
    out.index = first->position;
    out.detail = first->detail;
    out.witness_replays = replay_axiom_witness(e.structure, *first);
  }
  return out;
}

ClaimOutcome j_claim(const CatalogEntry& e, const ExpectedClaim& c) {
  const Structure& s = e.structure;
  ClaimOutcome out;
  out.structure = s.name();
  out.claim = c;
  ElementSet q;
  for (const auto& l : c.ideal) {
    auto id = s.find_label(l);
    if (!id) throw StructureError("claim " + c.id + " names unknown element '" + l + "'");
    q.insert(*id);
  }
  const IdealCheck ic = check_hyperideal(s, q);
  if (!ic.ok) {
    out.observed = s.format(q) + " is not a hyperideal";
    out.witness_kind = "hyperideal:" + ic.clause;
    out.witness = ic.witness;
    out.detail = ic.detail;
    out.witness_replays = replay_ideal_witness(s, q, ic);
    return out;
  }
  LatticeOptions lo;
  lo.allow_unverified = true;
  const IdealEngine engine(Hyperring::unchecked(s), lo);
  const PredicateResult r = is_j_hyperideal(engine, q);
  const std::string suffix = e.verified() ? "" : " (lattice computed without the failing axioms)";
  switch (r.verdict) {
    case Verdict::True:
      out.agrees = true;
      out.observed = "J-hyperideal" + suffix;
      break;
    case Verdict::False:
      out.observed = "not a J-hyperideal" + suffix;
      out.witness_kind = "predicate:" + r.witness->predicate;
      out.witness = r.witness->tuple;
      out.index = r.witness->index;
      out.detail = r.witness->detail;
      out.witness_replays = replay_witness(engine, q, nullptr, 0, *r.witness);
      break;
    case Verdict::NotApplicable:
      out.observed = "J-hyperideal undefined: g has no scalar identity";
      out.witness_kind = "scalar-identity";
      out.witness = scalar_identity_failures(s);
      out.detail = "pairs (u, x) with g(u^(n-1), x) != x, one per candidate u";
      out.witness_replays = replay_scalar_identity_failures(s, out.witness);
      break;
    default:
      out.observed = std::string("verdict ") + to_string(r.verdict);
      break;
  }
  return out;
}

}  // namespace

Tuple scalar_identity_failures(const Structure& s) {
  Tuple out;
  Tuple t(s.n());
  for (std::size_t u = 0; u < s.size(); ++u) {
    std::fill(t.begin(), t.end() - 1, static_cast<Elem>(u));
    for (std::size_t x = 0; x < s.size(); ++x) {
      t.back() = static_cast<Elem>(x);
      if (s.g_unchecked(t.data()) != x) {
        out.push_back(static_cast<Elem>(u));
        out.push_back(static_cast<Elem>(x));
        break;
      }
    }
  }
  return out;
}

bool replay_scalar_identity_failures(const Structure& s, const Tuple& w) {
  if (w.size() != 2 * s.size()) return false;
  Tuple t(s.n());
  for (std::size_t i = 0; i < w.size(); i += 2) {
    if (w[i] != i / 2 || w[i + 1] >= s.size()) return false;
    std::fill(t.begin(), t.end() - 1, w[i]);
    t.back() = w[i + 1];
    if (s.g(t) == w[i + 1]) return false;
  }
  return true;
}

std::vector<CatalogEntry> builtin_examples() {
  std::vector<CatalogEntry> out;
  out.push_back(make_entry(example_a(), Provenance::WorkedExample,
                           {
                               {"A.krasner", "krasner", {}, "A is a Krasner (3,3)-hyperring"},
                               {"A.J.{0}", "j-hyperideal", {"0"}, "{0} is an n-ary J-hyperideal of A"},
                               {"A.J.{0,x}", "j-hyperideal", {"0", "x"}, "{0,x} is an n-ary J-hyperideal of A"},
                           }));
  out.push_back(make_entry(example_z2xk(), Provenance::WorkedExample,
                           {
                               {"Z2xK.hypergroup", "hypergroup", {}, "(R, +) is a canonical 2-ary hypergroup"},
                               {"Z2xK.krasner", "krasner", {}, "(R, +, g) is a Krasner (2,4)-hyperring"},
                               {"Z2xK.J.{0}", "j-hyperideal", {"0"}, "{0} is a 4-ary J-hyperideal"},
                           }));
  return out;
}

std::vector<ClaimOutcome> evaluate_claims(const CatalogEntry& entry) {
  std::vector<ClaimOutcome> out;
  for (const auto& c : entry.claims) {
    if (c.kind == "krasner")
      out.push_back(axiom_claim(entry, c, verify_krasner(entry.structure)));
    else if (c.kind == "hypergroup")
      out.push_back(axiom_claim(entry, c, verify_canonical_hypergroup(entry.structure)));
    else if (c.kind == "j-hyperideal")
      out.push_back(j_claim(entry, c));
    else
      throw PreconditionError("unknown claim kind '" + c.kind + "'");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relabelling and canonical forms

namespace {

struct PermutedLayout {
  std::vector<Elem> perm;
  std::vector<std::size_t> f_index;  // multiset index -> permuted multiset index
  std::vector<std::size_t> g_index;
};

std::vector<std::size_t> permute_indices(const std::vector<Tuple>& keys, const std::map<Tuple, std::size_t>& pos,
                                         const std::vector<Elem>& perm) {
  std::vector<std::size_t> out(keys.size());
  Tuple t;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    t.clear();
    for (Elem e : keys[i]) t.push_back(perm[e]);
    std::sort(t.begin(), t.end());
    out[i] = pos.at(t);
  }
  return out;
}

std::map<Tuple, std::size_t> positions(const std::vector<Tuple>& keys) {
  std::map<Tuple, std::size_t> pos;
  for (std::size_t i = 0; i < keys.size(); ++i) pos.emplace(keys[i], i);
  return pos;
}

// Every permutation sending `zero` to 0, identity first when zero == 0.
std::vector<PermutedLayout> layouts(std::size_t size, int m, int n, Elem zero) {
  const auto fkeys = multisets(size, m);
  const auto gkeys = multisets(size, n);
  const auto fpos = positions(fkeys);
  const auto gpos = positions(gkeys);
  std::vector<Elem> rest;
  for (std::size_t i = 1; i < size; ++i) rest.push_back(static_cast<Elem>(i));
  std::vector<Elem> others;
  for (std::size_t i = 0; i < size; ++i)
    if (i != zero) others.push_back(static_cast<Elem>(i));
  std::vector<PermutedLayout> out;
  do {
    std::vector<Elem> perm(size);
    perm[zero] = 0;
    for (std::size_t i = 0; i < others.size(); ++i) perm[others[i]] = rest[i];
    out.push_back({perm, permute_indices(fkeys, fpos, perm), permute_indices(gkeys, gpos, perm)});
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

std::uint64_t permute_bits(ElementSet s, const std::vector<Elem>& perm) {
  std::uint64_t out = 0;
  for (Elem e : s) out |= std::uint64_t{1} << perm[e];
  return out;
}

void apply(const PermutedLayout& p, const std::vector<ElementSet>& f, const std::vector<Elem>& g,
           std::vector<std::uint64_t>& key) {
  key.assign(f.size() + g.size(), 0);
  for (std::size_t i = 0; i < f.size(); ++i) key[p.f_index[i]] = permute_bits(f[i], p.perm);
  for (std::size_t i = 0; i < g.size(); ++i) key[f.size() + p.g_index[i]] = p.perm[g[i]];
}

constexpr std::size_t kCanonicalLimit = 8;

std::pair<std::vector<std::uint64_t>, std::vector<Elem>> least_relabelling(const Structure& s) {
  if (s.size() > kCanonicalLimit)
    throw PreconditionError("canonical forms are limited to " + std::to_string(kCanonicalLimit) + " elements");
  const auto f = s.f_multiset_values();
  const auto g = s.g_multiset_values();
  std::vector<std::uint64_t> best, key;
  std::vector<Elem> best_perm;
  for (const auto& p : layouts(s.size(), s.m(), s.n(), s.zero())) {
    apply(p, f, g, key);
    if (best_perm.empty() || key < best) {
      best = key;
      best_perm = p.perm;
    }
  }
  return {best, best_perm};
}

}  // namespace

std::vector<std::uint64_t> canonical_key(const Structure& s) { return least_relabelling(s).first; }

Structure canonical_form(const Structure& s) { return s.permuted(least_relabelling(s).second); }

bool isomorphic(const Structure& a, const Structure& b) {
  return a.m() == b.m() && a.n() == b.n() && a.size() == b.size() && canonical_key(a) == canonical_key(b);
}

std::size_t count_classes(const std::vector<Structure>& structures) {
  std::set<std::tuple<int, int, std::size_t, std::vector<std::uint64_t>>> seen;
  for (const auto& s : structures) seen.emplace(s.m(), s.n(), s.size(), canonical_key(s));
  return seen.size();
}

// ---------------------------------------------------------------------------
// Enumeration

EnumerationOptions enumeration_defaults() {
  EnumerationOptions o;
  if (const char* v = std::getenv("KMN_MAX_ORDER")) o.max_order = std::strtoull(v, nullptr, 10);
  if (const char* v = std::getenv("KMN_ENUM_CAP")) o.candidate_cap = std::strtoull(v, nullptr, 10);
  return o;
}

namespace {

std::string enum_name(int m, int n, std::size_t order, std::size_t index) {
  std::string idx = std::to_string(index);
  if (idx.size() < 4) idx.insert(0, 4 - idx.size(), '0');
  return "enum-m" + std::to_string(m) + "n" + std::to_string(n) + "-o" + std::to_string(order) + "-" + idx;
}

std::vector<std::string> enum_labels(std::size_t order) {
  std::vector<std::string> out{"0"};
  for (std::size_t i = 1; i < order; ++i) out.push_back(std::string(1, static_cast<char>('a' + i - 1)));
  return out;
}

// Advances an odometer over `slots` of `values`; false once it wraps.
template <class T>
bool advance(std::vector<T>& values, const std::vector<std::size_t>& slots, T lo, T hi) {
  for (std::size_t i = slots.size(); i-- > 0;) {
    T& v = values[slots[i]];
    if (v < hi) {
      ++v;
      return true;
    }
    v = lo;
  }
  return false;
}

// -1 when `key` is beaten by a relabelling, 0 when tied by some non-identity
// relabelling, 1 when strictly least.
int compare_with_perms(const std::vector<PermutedLayout>& perms, const std::vector<ElementSet>& f,
                       const std::vector<Elem>& g, std::vector<std::uint64_t>& own, std::vector<std::uint64_t>& tmp) {
  own.clear();
  for (auto v : f) own.push_back(v.bits());
  for (auto v : g) own.push_back(v);
  int result = 1;
  for (std::size_t i = 1; i < perms.size(); ++i) {
    apply(perms[i], f, g, tmp);
    if (tmp < own) return -1;
    if (tmp == own) result = 0;
  }
  return result;
}

}  // namespace

EnumerationResult enumerate_structures(const EnumerationOptions& opts) {
  if (opts.order == 0) throw PreconditionError("order must be at least 1");
  if (opts.order > opts.max_order)
    throw PreconditionError("order " + std::to_string(opts.order) + " exceeds the configured maximum " +
                            std::to_string(opts.max_order));
  if (opts.m < 2 || opts.n < 2) throw PreconditionError("arities must be at least 2");
  const std::size_t k = opts.order;
  const int m = opts.m;
  const int n = opts.n;
  const auto fkeys = multisets(k, m);
  const auto gkeys = multisets(k, n);
  const auto labels = enum_labels(k);

  std::vector<ElementSet> fvals(fkeys.size());
  std::vector<std::size_t> free_f;
  for (std::size_t i = 0; i < fkeys.size(); ++i) {
    const auto zeros = static_cast<int>(std::count(fkeys[i].begin(), fkeys[i].end(), Elem{0}));
    if (zeros >= m - 1)
      fvals[i] = ElementSet::singleton(fkeys[i].back());
    else {
      free_f.push_back(i);
      fvals[i] = ElementSet::singleton(0);
    }
  }
  std::vector<Elem> gvals(gkeys.size(), 0);
  std::vector<std::size_t> free_g;
  for (std::size_t i = 0; i < gkeys.size(); ++i)
    if (gkeys[i].front() != 0) {
      free_g.push_back(i);
      gvals[i] = 0;
    }
  const std::vector<Elem> zero_g(gkeys.size(), 0);

  std::vector<PermutedLayout> perms;
  if (opts.symmetry_breaking) perms = layouts(k, m, n, 0);
  std::vector<PermutedLayout> stabiliser;
  std::vector<std::uint64_t> own, tmp;

  EnumerationResult out;
  const ElementSet lo = ElementSet::singleton(0);
  const ElementSet hi = ElementSet::full(k);
  // ElementSet values run over nonempty subsets in ascending bit order.
  auto next_f = [&]() {
    for (std::size_t i = free_f.size(); i-- > 0;) {
      ElementSet& v = fvals[free_f[i]];
      if (v != hi) {
        v = ElementSet(v.bits() + 1);
        return true;
      }
      v = lo;
    }
    return false;
  };

  bool more = true;
  while (more) {
    if (out.f_candidates >= opts.candidate_cap) {
      out.truncated = true;
      out.notice = "candidate cap " + std::to_string(opts.candidate_cap) + " reached; stream truncated";
      break;
    }
    ++out.f_candidates;
    bool keep = true;
    if (opts.symmetry_breaking) {
      // Compare f alone: g is all zero here, which every relabelling fixes.
      keep = compare_with_perms(perms, fvals, zero_g, own, tmp) >= 0;
    }
    if (keep) {
      Structure hyper = Structure::from_multiset_values("candidate", labels, m, n, 0, fvals, zero_g);
      if (is_canonical_hypergroup(hyper)) {
        ++out.hypergroups;
        if (opts.symmetry_breaking) {
          stabiliser.assign(1, perms.front());
          for (std::size_t i = 1; i < perms.size(); ++i) {
            apply(perms[i], fvals, zero_g, tmp);
            apply(perms.front(), fvals, zero_g, own);
            if (tmp == own) stabiliser.push_back(perms[i]);
          }
        }
        std::fill(gvals.begin(), gvals.end(), Elem{0});
        bool more_g = true;
        while (more_g) {
          bool keep_g = true;
          if (opts.symmetry_breaking && stabiliser.size() > 1)
            keep_g = compare_with_perms(stabiliser, fvals, gvals, own, tmp) >= 0;
          if (keep_g) {
            Structure s = Structure::from_multiset_values(enum_name(m, n, k, out.structures.size()), labels, m,
                                                          n, 0, fvals, gvals);
            if (satisfies_g_axioms(s)) out.structures.push_back(std::move(s));
          }
          more_g = advance<Elem>(gvals, free_g, 0, static_cast<Elem>(k - 1));
        }
      }
    }
    more = next_f();
  }
  return out;
}

std::vector<CatalogEntry> default_catalog(const CatalogOptions& opts) {
  std::vector<CatalogEntry> out;
  if (opts.builtin)
    for (auto& e : builtin_examples()) out.push_back(std::move(e));
  EnumerationOptions eo = enumeration_defaults();
  for (const auto& [m, n] : opts.arities) {
    for (std::size_t order = 1; order <= opts.max_order; ++order) {
      eo.m = m;
      eo.n = n;
      eo.order = order;
      for (auto& s : enumerate_structures(eo).structures) out.push_back(make_entry(std::move(s), Provenance::Enumerated));
    }
  }
  if (opts.order4_sample > 0 && opts.max_order < 4 && eo.max_order >= 4) {
    eo.m = 2;
    eo.n = 2;
    eo.order = 4;
    auto all = enumerate_structures(eo).structures;
    // Partial Fisher-Yates with raw engine output keeps the draw identical
    // across standard libraries.
    std::mt19937_64 rng(opts.seed);
    std::vector<std::size_t> idx(all.size());
    std::iota(idx.begin(), idx.end(), 0);
    const std::size_t take = std::min(opts.order4_sample, idx.size());
    for (std::size_t i = 0; i < take; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng() % (idx.size() - i));
      std::swap(idx[i], idx[j]);
    }
    idx.resize(take);
    std::sort(idx.begin(), idx.end());
    for (std::size_t i : idx) out.push_back(make_entry(std::move(all[i]), Provenance::Enumerated));
  }
  return out;
}

}  // namespace kmn
