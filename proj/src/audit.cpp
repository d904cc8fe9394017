#include "kmn/audit.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "kmn/morphology.hpp"
#include "kmn/structure_io.hpp"

namespace kmn {

const char* to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Pass:
      return "pass";
    case CellStatus::Fail:
      return "fail";
    case CellStatus::Skip:
      return "skip";
  }
  return "?";
}

const std::vector<std::string>& registry_expansions() {
  static const std::vector<std::string> names{"delta0", "delta1", "deltaR"};
  return names;
}

namespace {

// ---------------------------------------------------------------------------
// Per-structure context with memoised predicates.

enum class Pred { J, DeltaJ, DeltaPrimary, Absorbing, Prime };

class Ctx {
 public:
  Ctx(Structure s, const AbsorbingOptions& abs) : engine_(Hyperring::verify(std::move(s))), abs_(abs) {
    for (const auto& e : standard_expansions(engine_)) exps_.emplace(e.name(), e);
  }

  const IdealEngine& engine() const { return engine_; }
  const Structure& s() const { return engine_.structure(); }
  const IdealLattice& lattice() const { return engine_.lattice(); }
  ElementSet carrier() const { return engine_.carrier(); }
  ElementSet jac() const { return engine_.jacobson(); }
  bool member(ElementSet q) const { return lattice().contains(q); }
  bool has_identity() const { return engine_.has_identity(); }

  std::vector<ElementSet> proper() const {
    std::vector<ElementSet> out;
    for (auto q : lattice().members())
      if (q != carrier()) out.push_back(q);
    return out;
  }

  void add_expansion(Expansion e) { exps_.insert_or_assign(e.name(), std::move(e)); }

  const Expansion& exp(const std::string& name) {
    auto it = exps_.find(name);
    if (it != exps_.end()) return it->second;
    const auto o = name.find('o');
    if (o == std::string::npos) throw PreconditionError("unknown expansion '" + name + "'");
    const Expansion& gamma = exp(name.substr(0, o));
    const Expansion& delta = exp(name.substr(o + 1));
    return exps_.emplace(name, compose(gamma, delta)).first->second;
  }

  const PredicateResult& pred(Pred p, ElementSet q, const std::string& delta = {}, int k = 0) {
    const auto key = std::make_tuple(static_cast<int>(p), delta, k, q.bits());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    PredicateResult r;
    switch (p) {
      case Pred::J:
        r = is_j_hyperideal(engine_, q);
        break;
      case Pred::DeltaJ:
        r = is_delta_j(engine_, q, exp(delta));
        break;
      case Pred::DeltaPrimary:
        r = is_delta_primary(engine_, q, exp(delta));
        break;
      case Pred::Absorbing:
        r = is_kn_absorbing_delta_j(engine_, q, exp(delta), k, abs_);
        break;
      case Pred::Prime:
        r = q == carrier() ? PredicateResult::improper() : engine_.is_prime(q);
        break;
    }
    return memo_.emplace(key, std::move(r)).first->second;
  }

  bool preserves(const std::string& delta) {
    auto it = preserves_.find(delta);
    if (it == preserves_.end()) it = preserves_.emplace(delta, preserves_intersections(lattice(), exp(delta))).first;
    return it->second;
  }

 private:
  IdealEngine engine_;
  AbsorbingOptions abs_;
  std::map<std::string, Expansion> exps_;
  std::map<std::tuple<int, std::string, int, std::uint64_t>, PredicateResult> memo_;
  std::map<std::string, bool> preserves_;
};

struct Fixture {
  std::string kind;
  std::string target;
  ElementSet modulus;
  Tuple map;
  Ctx* tgt = nullptr;
};

struct QuotientFixture {
  std::unique_ptr<Ctx> ctx;
  Quotient q;
  std::string why;  // empty when usable
};

// ---------------------------------------------------------------------------
// Environment: contexts for every catalog entry, quotient contexts and
// homomorphism fixtures, all built lazily.

class Env {
 public:
  Env(const std::vector<CatalogEntry>& catalog, const AuditOptions& opts) : catalog_(catalog), opts_(opts) {
    ctxs_.resize(catalog.size());
    built_.assign(catalog.size(), false);
    for (std::size_t i = 0; i < catalog.size(); ++i) index_.emplace(catalog[i].structure.name(), i);
  }

  const AuditOptions& opts() const { return opts_; }
  const std::vector<CatalogEntry>& catalog() const { return catalog_; }

  Ctx* ctx(std::size_t i) {
    if (!built_[i]) {
      built_[i] = true;
      if (catalog_[i].verified()) ctxs_[i] = std::make_unique<Ctx>(catalog_[i].structure, opts_.absorbing);
    }
    return ctxs_[i].get();
  }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  QuotientFixture& quotient_of(std::size_t src, ElementSet modulus) {
    auto key = std::make_pair(src, modulus.bits());
    auto it = quotients_.find(key);
    if (it != quotients_.end()) return it->second;
    QuotientFixture qf;
    Ctx* base = ctx(src);
    qf.q = quotient(base->s(), modulus);
    if (!qf.q.well_defined()) {
      qf.why = "quotient by " + base->s().format(modulus) + " is ill-defined (" + qf.q.issues.front().clause + ")";
    } else if (!verify_krasner(*qf.q.structure).passed()) {
      qf.why = "quotient by " + base->s().format(modulus) + " fails the Krasner axioms";
    } else {
      qf.ctx = std::make_unique<Ctx>(*qf.q.structure, opts_.absorbing);
      for (const auto& d : registry_expansions()) {
        try {
          qf.ctx->add_expansion(quotient_expansion(base->engine(), qf.q, qf.ctx->engine(), base->exp(d)));
        } catch (const PreconditionError&) {
          // deltaq[d] stays undefined; instances using it are inconclusive.
        }
      }
    }
    return quotients_.emplace(key, std::move(qf)).first->second;
  }

  const std::vector<Fixture>& fixtures(std::size_t src) {
    auto it = fixtures_.find(src);
    if (it != fixtures_.end()) return it->second;
    std::vector<Fixture> out;
    Ctx* c = ctx(src);
    const Structure& s = c->s();
    Tuple id(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) id[i] = static_cast<Elem>(i);
    out.push_back({"identity", s.name(), {}, id, c});
    for (auto modulus : c->lattice().members()) {
      auto& qf = quotient_of(src, modulus);
      if (qf.ctx) out.push_back({"projection", qf.q.structure->name(), modulus, qf.q.projection, qf.ctx.get()});
    }
    if (s.size() <= opts_.fixture_order) {
      for (std::size_t j = 0; j < catalog_.size(); ++j) {
        const Structure& t = catalog_[j].structure;
        if (!catalog_[j].verified() || t.m() != s.m() || t.n() != s.n() || t.size() > opts_.fixture_order) continue;
        std::uint64_t space = 1;
        for (std::size_t i = 0; i < s.size() && space <= opts_.map_limit; ++i) space *= t.size();
        if (space > opts_.map_limit) continue;
        Ctx* tc = ctx(j);
        for_each_tuple(t.size(), s.size(), [&](const Tuple& map) {
          if (j == src && map == id) return true;
          if (!is_injective(map, t.size()) && !is_surjective(map, t.size())) return true;
          if (check_homomorphism(s, t, map).ok) out.push_back({"map", t.name(), {}, map, tc});
          return true;
        });
      }
    }
    return fixtures_.emplace(src, std::move(out)).first->second;
  }

  // Rebuilds one fixture from its description (for replay).
  std::optional<Fixture> fixture_of(std::size_t src, const Instance& in) {
    Ctx* c = ctx(src);
    if (in.fixture == "identity") {
      Tuple id(c->s().size());
      for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<Elem>(i);
      return Fixture{"identity", c->s().name(), {}, id, c};
    }
    if (in.fixture == "projection") {
      auto& qf = quotient_of(src, in.modulus);
      if (!qf.ctx) return std::nullopt;
      return Fixture{"projection", qf.q.structure->name(), in.modulus, qf.q.projection, qf.ctx.get()};
    }
    if (in.fixture == "map") {
      auto j = find(in.target);
      if (!j || !ctx(*j)) return std::nullopt;
      if (!check_homomorphism(c->s(), ctx(*j)->s(), in.map).ok) return std::nullopt;
      return Fixture{"map", in.target, {}, in.map, ctx(*j)};
    }
    return std::nullopt;
  }

  // delta-gamma check memoised per fixture and expansion pair.
  bool delta_gamma(Ctx& src, const Fixture& f, const std::string& delta, const std::string& gamma) {
    auto key = std::make_tuple(&src, f.kind, f.target, f.map, delta, gamma);
    auto it = dg_.find(key);
    if (it != dg_.end()) return it->second;
    bool ok = false;
    try {
      ok = check_delta_gamma(src.engine(), f.tgt->engine(), f.map, src.exp(delta), f.tgt->exp(gamma)).ok;
    } catch (const PreconditionError&) {
      ok = false;
    }
    return dg_.emplace(key, ok).first->second;
  }

 private:
  const std::vector<CatalogEntry>& catalog_;
  AuditOptions opts_;
  std::vector<std::unique_ptr<Ctx>> ctxs_;
  std::vector<bool> built_;
  std::map<std::string, std::size_t> index_;
  std::map<std::pair<std::size_t, std::uint64_t>, QuotientFixture> quotients_;
  std::map<std::size_t, std::vector<Fixture>> fixtures_;
  std::map<std::tuple<const Ctx*, std::string, std::string, Tuple, std::string, std::string>, bool> dg_;
};

// ---------------------------------------------------------------------------
// Instance outcomes.

struct Outcome {
  bool inconclusive = false;
  bool hyp = false;
  bool concl = true;
  std::string detail;
  /// Short tag for the kind of violation; empty means a false conclusion.
  std::string cause;
  std::optional<PredicateEvidence> evidence;
};

// True / False, with Improper read as false (the predicates are defined on
// proper ideals only); NotApplicable and Truncated are unknown.
std::optional<bool> truth(const PredicateResult& r) {
  switch (r.verdict) {
    case Verdict::True:
      return true;
    case Verdict::False:
    case Verdict::Improper:
      return false;
    default:
      return std::nullopt;
  }
}

// Records evidence for a failed conclusion predicate.
void blame(Outcome& o, const PredicateResult& r, const std::string& side, ElementSet q, const std::string& delta,
           int k) {
  if (!o.evidence && r.witness) o.evidence = PredicateEvidence{side, q, delta, k, *r.witness};
}

std::string fmt(const Ctx& c, ElementSet q) { return c.s().format(q); }

using Emit = std::function<void(const Instance&)>;

struct TheoremImpl {
  TheoremInfo info;
  bool needs_identity = true;
  std::function<std::optional<std::string>(Ctx&)> skip;
  std::function<void(Env&, std::size_t, Ctx&, const Emit&)> instances;
  std::function<Outcome(Env&, std::size_t, Ctx&, const Instance&)> eval;
};

// Reads a predicate into an outcome slot; unknown verdicts mark the outcome
// inconclusive.
bool read(Outcome& o, const PredicateResult& r) {
  auto t = truth(r);
  if (!t) {
    o.inconclusive = true;
    return false;
  }
  return *t;
}

Instance with_ideals(std::vector<ElementSet> ideals) {
  Instance in;
  in.ideals = std::move(ideals);
  return in;
}

void each_ideal(Ctx& c, const Emit& emit) {
  for (auto q : c.proper()) emit(with_ideals({q}));
}

void each_ideal_delta(Ctx& c, const Emit& emit) {
  for (auto q : c.proper())
    for (const auto& d : registry_expansions()) {
      Instance in = with_ideals({q});
      in.delta = d;
      emit(in);
    }
}

ElementSet meet(const std::vector<ElementSet>& xs, ElementSet all) {
  ElementSet out = all;
  for (auto x : xs) out = out & x;
  return out;
}

// Smallest proper J-hyperideal strictly above q, if any.
std::optional<ElementSet> larger_j(Ctx& c, ElementSet q, bool* unknown) {
  for (auto p : c.proper()) {
    if (p == q || !q.subset_of(p)) continue;
    auto t = truth(c.pred(Pred::J, p));
    if (!t) *unknown = true;
    if (t && *t) return p;
  }
  return std::nullopt;
}

ElementSet g_of_sets(const Structure& s, const std::vector<ElementSet>& sets) { return s.g_sets(sets); }

std::vector<Tuple> multiset_indices(std::size_t count, std::size_t k) { return multisets(count, k); }

// Transfer helpers shared by the homomorphism theorems.
std::optional<Elem> one_image(const Ctx& src, const Fixture& f) {
  if (!src.s().one()) return std::nullopt;
  return f.map[*src.s().one()];
}

std::vector<TheoremImpl> build_registry() {
  std::vector<TheoremImpl> r;
  const auto& D = registry_expansions();

  r.push_back({{"T01", "Q J-hyperideal => Q subset of J(R)", "scalar identity"},
               true,
               nullptr,
               [](Env&, std::size_t, Ctx& c, const Emit& e) { each_ideal(c, e); },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 const ElementSet q = in.ideals[0];
                 o.hyp = read(o, c.pred(Pred::J, q));
                 o.concl = q.subset_of(c.jac());
                 if (!o.concl) o.detail = fmt(c, q) + " has elements outside J(R) = " + fmt(c, c.jac());
                 return o;
               }});

  r.push_back({{"T02", "R local <=> every proper hyperideal is J", "scalar identity, |R| > 1"},
               true,
               [](Ctx& c) -> std::optional<std::string> {
                 if (c.s().size() < 2) return "one-element structure has no proper hyperideal";
                 return std::nullopt;
               },
               [](Env&, std::size_t, Ctx&, const Emit& e) { e(Instance{}); },
               [](Env&, std::size_t, Ctx& c, const Instance&) {
                 Outcome o;
                 o.hyp = true;
                 const bool local = c.lattice().is_local();
                 bool all = true;
                 std::optional<ElementSet> bad;
                 for (auto q : c.proper()) {
                   const auto& pr = c.pred(Pred::J, q);
                   if (!read(o, pr) && !o.inconclusive) {
                     all = false;
                     if (!bad) {
                       bad = q;
                       blame(o, pr, "source", q, "", 0);
                     }
                   }
                 }
                 o.concl = local == all;
                 if (!o.concl)
                   o.detail = local ? "local, but " + fmt(c, *bad) + " is not J"
                                    : "not local (" + std::to_string(c.lattice().maximal().size()) +
                                          " maximal hyperideals), yet every proper hyperideal is J";
                 if (o.concl) o.evidence.reset();
                 return o;
               }});

  r.push_back({{"T03", "Q1, Q2 J-hyperideals => Q1 meet Q2 is J", "scalar identity"},
               true,
               nullptr,
               [](Env&, std::size_t, Ctx& c, const Emit& e) {
                 const auto p = c.proper();
                 for (std::size_t i = 0; i < p.size(); ++i)
                   for (std::size_t j = i; j < p.size(); ++j) e(with_ideals({p[i], p[j]}));
               },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 o.hyp = read(o, c.pred(Pred::J, in.ideals[0])) && read(o, c.pred(Pred::J, in.ideals[1]));
                 if (!o.hyp) return o;
                 const ElementSet x = in.ideals[0] & in.ideals[1];
                 if (!c.member(x)) {
                   o.concl = false;
                   o.detail = "intersection " + fmt(c, x) + " is not a hyperideal";
                   o.cause = "not-a-hyperideal";
                   return o;
                 }
                 const auto& pr = c.pred(Pred::J, x);
                 o.concl = read(o, pr);
                 if (!o.concl) {
                   o.detail = "intersection " + fmt(c, x) + " is not J";
                   blame(o, pr, "source", x, "", 0);
                 }
                 return o;
               }});

  r.push_back({{"T04", "Q J <=> U_x = Q for every x outside J(R)", "scalar identity"},
               true,
               nullptr,
               [](Env&, std::size_t, Ctx& c, const Emit& e) { each_ideal(c, e); },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 o.hyp = true;
                 const ElementSet q = in.ideals[0];
                 const bool lhs = read(o, c.pred(Pred::J, q));
                 bool rhs = true;
                 std::string where;
                 for (Elem x : c.carrier().minus(c.jac())) {
                   const ElementSet u = c.engine().residual(q, ElementSet::singleton(x));
                   if (u != q) {
                     rhs = false;
                     where = "U_" + c.s().label(x) + " = " + fmt(c, u);
                     break;
                   }
                 }
                 o.concl = lhs == rhs;
                 if (!o.concl) o.detail = std::string(lhs ? "J but " : "not J yet U_x = Q for all x; ") + where;
                 return o;
               }});

  r.push_back({{"T05", "Q J <=> U_x inside J(R) for every x outside Q", "scalar identity"},
               true,
               nullptr,
               [](Env&, std::size_t, Ctx& c, const Emit& e) { each_ideal(c, e); },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 o.hyp = true;
                 const ElementSet q = in.ideals[0];
                 const bool lhs = read(o, c.pred(Pred::J, q));
                 bool rhs = true;
                 std::string where;
                 for (Elem x : c.carrier().minus(q)) {
                   const ElementSet u = c.engine().residual(q, ElementSet::singleton(x));
                   if (!u.subset_of(c.jac())) {
                     rhs = false;
                     where = "U_" + c.s().label(x) + " = " + fmt(c, u);
                     break;
                   }
                 }
                 o.concl = lhs == rhs;
                 if (!o.concl) o.detail = std::string(lhs ? "J but " : "not J yet every U_x lies in J(R); ") + where;
                 return o;
               }});

  r.push_back({{"T06", "Q J, S nonempty, S not inside Q => U_S is J", "scalar identity"},
               true,
               [](Ctx& c) -> std::optional<std::string> {
                 if (c.s().size() > 12) return "subset scan limited to 12 elements";
                 return std::nullopt;
               },
               [](Env&, std::size_t, Ctx& c, const Emit& e) {
                 const std::uint64_t full = c.carrier().bits();
                 for (auto q : c.proper())
                   for (std::uint64_t b = 1; b <= full; ++b) {
                     const ElementSet sset(b);
                     if (!sset.subset_of(q)) e(with_ideals({q, sset}));
                   }
               },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 o.hyp = read(o, c.pred(Pred::J, in.ideals[0]));
                 if (!o.hyp) return o;
                 const ElementSet u = c.engine().residual(in.ideals[0], in.ideals[1]);
                 if (!c.member(u)) {
                   o.concl = false;
                   o.detail = "U_S = " + fmt(c, u) + " is not a hyperideal";
                   o.cause = "not-a-hyperideal";
                   return o;
                 }
                 const auto& pr = c.pred(Pred::J, u);
                 o.concl = read(o, pr);
                 if (!o.concl) {
                   o.detail = "U_S = " + fmt(c, u) + " is not J";
                   blame(o, pr, "source", u, "", 0);
                 }
                 return o;
               }});

  r.push_back({{"T07", "Q J and no J-hyperideal strictly above Q => Q prime", "scalar identity"},
               true,
               nullptr,
               [](Env&, std::size_t, Ctx& c, const Emit& e) { each_ideal(c, e); },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 const ElementSet q = in.ideals[0];
                 bool unknown = false;
                 o.hyp = read(o, c.pred(Pred::J, q)) && !larger_j(c, q, &unknown);
                 if (unknown) o.inconclusive = true;
                 if (!o.hyp) return o;
                 const auto& pr = c.pred(Pred::Prime, q);
                 o.concl = read(o, pr);
                 if (!o.concl) {
                   o.detail = fmt(c, q) + " is maximal among J-hyperideals but not prime";
                   blame(o, pr, "source", q, "", 0);
                 }
                 return o;
               }});

  r.push_back({{"T08", "J(R) prime => J(R) is J and maximal among J-hyperideals", "scalar identity"},
               true,
               nullptr,
               [](Env&, std::size_t, Ctx&, const Emit& e) { e(Instance{}); },
               [](Env&, std::size_t, Ctx& c, const Instance&) {
                 Outcome o;
                 const ElementSet j = c.jac();
                 o.hyp = j != c.carrier() && read(o, c.pred(Pred::Prime, j));
                 if (!o.hyp) return o;
                 const auto& pr = c.pred(Pred::J, j);
                 bool unknown = false;
                 const bool is_j = read(o, pr);
                 auto above = larger_j(c, j, &unknown);
                 if (unknown) o.inconclusive = true;
                 o.concl = is_j && !above;
                 if (!is_j) {
                   o.detail = "J(R) = " + fmt(c, j) + " is not J";
                   blame(o, pr, "source", j, "", 0);
                 } else if (above) {
                   o.detail = "J-hyperideal " + fmt(c, *above) + " strictly contains J(R)";
                 }
                 return o;
               }});

  r.push_back({{"T09", "delta(Q) J => Q delta-J", "scalar identity"},
               true,
               nullptr,
               [](Env&, std::size_t, Ctx& c, const Emit& e) { each_ideal_delta(c, e); },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 const ElementSet q = in.ideals[0];
                 o.hyp = read(o, c.pred(Pred::J, c.exp(in.delta)(q)));
                 if (!o.hyp) return o;
                 const auto& pr = c.pred(Pred::DeltaJ, q, in.delta);
                 o.concl = read(o, pr);
                 if (!o.concl) blame(o, pr, "source", q, in.delta, 0);
                 return o;
               }});

  r.push_back({{"T10", "Q delta1-J => radical of Q is J", "scalar identity"},
               true,
               nullptr,
               [](Env&, std::size_t, Ctx& c, const Emit& e) { each_ideal(c, e); },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 const ElementSet q = in.ideals[0];
                 o.hyp = read(o, c.pred(Pred::DeltaJ, q, "delta1"));
                 if (!o.hyp) return o;
                 const ElementSet rad = c.engine().radical(q);
                 const auto& pr = c.pred(Pred::J, rad);
                 o.concl = read(o, pr);
                 if (!o.concl) {
                   o.detail = "radical " + fmt(c, rad) + " is not a J-hyperideal";
                   blame(o, pr, "source", rad, "", 0);
                 }
                 return o;
               }});

  r.push_back({{"T11", "delta(Q) gamma-J => Q (gamma o delta)-J", "scalar identity"},
               true,
               nullptr,
               [D](Env&, std::size_t, Ctx& c, const Emit& e) {
                 for (auto q : c.proper())
                   for (const auto& d : D)
                     for (const auto& g : D) {
                       Instance in = with_ideals({q});
                       in.delta = d;
                       in.gamma = g;
                       e(in);
                     }
               },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 const ElementSet q = in.ideals[0];
                 o.hyp = read(o, c.pred(Pred::DeltaJ, c.exp(in.delta)(q), in.gamma));
                 if (!o.hyp) return o;
                 const std::string comp = in.gamma + "o" + in.delta;
                 const auto& pr = c.pred(Pred::DeltaJ, q, comp);
                 o.concl = read(o, pr);
                 if (!o.concl) blame(o, pr, "source", q, comp, 0);
                 return o;
               }});

  r.push_back({{"T12", "Q1 <= Q2 <= Q3, Q3 delta-J, delta(Q1) = delta(Q3) => Q2 delta-J", "scalar identity"},
               true,
               nullptr,
               [D](Env&, std::size_t, Ctx& c, const Emit& e) {
                 const auto p = c.proper();
                 for (auto q1 : p)
                   for (auto q2 : p)
                     for (auto q3 : p)
                       if (q1.subset_of(q2) && q2.subset_of(q3))
                         for (const auto& d : D) {
                           Instance in = with_ideals({q1, q2, q3});
                           in.delta = d;
                           e(in);
                         }
               },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 const auto& d = c.exp(in.delta);
                 o.hyp = read(o, c.pred(Pred::DeltaJ, in.ideals[2], in.delta)) && d(in.ideals[0]) == d(in.ideals[2]);
                 if (!o.hyp) return o;
                 const auto& pr = c.pred(Pred::DeltaJ, in.ideals[1], in.delta);
                 o.concl = read(o, pr);
                 if (!o.concl) blame(o, pr, "source", in.ideals[1], in.delta, 0);
                 return o;
               }});

  r.push_back({{"T13", "Q delta-J, rad(delta(Q)) <= delta(rad Q) => rad Q delta-J", "scalar identity"},
               true,
               nullptr,
               [](Env&, std::size_t, Ctx& c, const Emit& e) { each_ideal_delta(c, e); },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 const ElementSet q = in.ideals[0];
                 const auto& d = c.exp(in.delta);
                 const ElementSet rad = c.engine().radical(q);
                 o.hyp = read(o, c.pred(Pred::DeltaJ, q, in.delta)) && c.engine().radical(d(q)).subset_of(d(rad));
                 if (!o.hyp) return o;
                 const auto& pr = c.pred(Pred::DeltaJ, rad, in.delta);
                 o.concl = read(o, pr);
                 if (!o.concl) {
                   o.detail = "radical " + fmt(c, rad) + " is not delta-J";
                   blame(o, pr, "source", rad, in.delta, 0);
                 }
                 return o;
               }});

  r.push_back({{"T14", "delta preserves meets, Q_1..Q_n delta-J => their meet is delta-J", "scalar identity"},
               true,
               nullptr,
               [D](Env&, std::size_t, Ctx& c, const Emit& e) {
                 const auto p = c.proper();
                 for (const auto& d : D) {
                   std::vector<ElementSet> dj;
                   for (auto q : p)
                     if (truth(c.pred(Pred::DeltaJ, q, d)).value_or(false)) dj.push_back(q);
                   for (const auto& idx : multiset_indices(dj.size(), static_cast<std::size_t>(c.s().n()))) {
                     Instance in;
                     for (auto i : idx) in.ideals.push_back(dj[i]);
                     in.delta = d;
                     e(in);
                   }
                 }
               },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 o.hyp = c.preserves(in.delta);
                 for (auto q : in.ideals) o.hyp = o.hyp && read(o, c.pred(Pred::DeltaJ, q, in.delta));
                 if (!o.hyp) return o;
                 const ElementSet x = meet(in.ideals, c.carrier());
                 if (!c.member(x)) {
                   o.concl = false;
                   o.detail = "meet " + fmt(c, x) + " is not a hyperideal";
                   o.cause = "not-a-hyperideal";
                   return o;
                 }
                 const auto& pr = c.pred(Pred::DeltaJ, x, in.delta);
                 o.concl = read(o, pr);
                 if (!o.concl) blame(o, pr, "source", x, in.delta, 0);
                 return o;
               }});

  r.push_back({{"T15", "delta-J <=> ideal-wise condition with x <=> ideal-wise condition with Q_i", "scalar identity"},
               true,
               nullptr,
               [](Env&, std::size_t, Ctx& c, const Emit& e) { each_ideal_delta(c, e); },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 o.hyp = true;
                 const ElementSet q = in.ideals[0];
                 const ElementSet dq = c.exp(in.delta)(q);
                 const Structure& s = c.s();
                 const ElementSet one = ElementSet::singleton(*s.one());
                 const auto& mem = c.lattice().members();
                 const auto n = static_cast<std::size_t>(s.n());
                 const bool a = read(o, c.pred(Pred::DeltaJ, q, in.delta));
                 bool b = true;
                 for (const auto& idx : multisets(mem.size(), n - 1)) {
                   std::vector<ElementSet> args;
                   for (auto i : idx) args.push_back(mem[i]);
                   args.push_back(one);
                   const bool with_one = g_of_sets(s, args).subset_of(dq);
                   for (Elem x = 0; x < s.size() && b; ++x) {
                     args.back() = ElementSet::singleton(x);
                     if (g_of_sets(s, args).subset_of(q) && !c.jac().contains(x) && !with_one) b = false;
                   }
                   if (!b) break;
                 }
                 bool cc = true;
                 for (const auto& idx : multisets(mem.size(), n)) {
                   std::vector<ElementSet> args;
                   for (auto i : idx) args.push_back(mem[i]);
                   if (!g_of_sets(s, args).subset_of(q)) continue;
                   for (std::size_t i = 0; i < n && cc; ++i) {
                     if (args[i].subset_of(c.jac())) continue;
                     auto dropped = args;
                     dropped[i] = one;
                     if (!g_of_sets(s, dropped).subset_of(dq)) cc = false;
                   }
                   if (!cc) break;
                 }
                 o.concl = a == b && b == cc;
                 if (!o.concl)
                   o.detail = std::string("element-wise ") + (a ? "true" : "false") + ", with x " + (b ? "true" : "false") +
                              ", with Q_i " + (cc ? "true" : "false");
                 return o;
               }});

  r.push_back({{"T16", "delta-J <=> Q inside J(R) and x_i in the meet of maximals over Q or drop in delta(Q)",
                "scalar identity"},
               true,
               nullptr,
               [](Env&, std::size_t, Ctx& c, const Emit& e) { each_ideal_delta(c, e); },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 o.hyp = true;
                 const ElementSet q = in.ideals[0];
                 const ElementSet dq = c.exp(in.delta)(q);
                 const Structure& s = c.s();
                 ElementSet mq = c.carrier();
                 for (auto m : c.lattice().maximal_ideals())
                   if (q.subset_of(m)) mq = mq & m;
                 const bool lhs = read(o, c.pred(Pred::DeltaJ, q, in.delta));
                 bool rhs = q.subset_of(c.jac());
                 Tuple bad;
                 if (rhs) {
                   for_each_tuple(s.size(), s.n(), [&](const Tuple& x) {
                     if (!q.contains(s.g_unchecked(x.data()))) return true;
                     for (std::size_t i = 0; i < x.size(); ++i)
                       if (!mq.contains(x[i]) && !dq.contains(s.g_drop(x, i))) {
                         rhs = false;
                         bad = x;
                         return false;
                       }
                     return true;
                   });
                 }
                 o.concl = lhs == rhs;
                 if (!o.concl)
                   o.detail = lhs ? (q.subset_of(c.jac()) ? "delta-J but tuple " + s.format(bad) + " breaks the second form"
                                                          : "delta-J but " + fmt(c, q) + " is not inside J(R) = " +
                                                                fmt(c, c.jac()))
                                  : "second form holds but Q is not delta-J";
                 return o;
               }});

  r.push_back({{"T17", "local with J(R) maximal <=> proper principal hyperideals delta-J <=> proper hyperideals delta-J",
                "scalar identity, |R| > 1"},
               true,
               [](Ctx& c) -> std::optional<std::string> {
                 if (c.s().size() < 2) return "one-element structure has no proper hyperideal";
                 return std::nullopt;
               },
               [D](Env&, std::size_t, Ctx&, const Emit& e) {
                 for (const auto& d : D) {
                   Instance in;
                   in.delta = d;
                   e(in);
                 }
               },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 o.hyp = true;
                 const bool a = c.lattice().is_local() && c.lattice().maximal_ideals().front() == c.jac();
                 bool b = true;
                 for (std::size_t x = 0; x < c.s().size(); ++x) {
                   const ElementSet p = c.engine().principal_ideal(static_cast<Elem>(x)).ideal;
                   if (p == c.carrier()) continue;
                   if (!read(o, c.pred(Pred::DeltaJ, p, in.delta))) b = false;
                 }
                 bool cc = true;
                 std::optional<ElementSet> bad;
                 for (auto q : c.proper())
                   if (!read(o, c.pred(Pred::DeltaJ, q, in.delta))) {
                     cc = false;
                     if (!bad) bad = q;
                   }
                 o.concl = a == b && b == cc;
                 if (!o.concl)
                   o.detail = std::string("local ") + (a ? "true" : "false") + ", principal " + (b ? "true" : "false") +
                              ", all " + (cc ? "true" : "false") + " (" +
                              std::to_string(c.lattice().maximal().size()) + " maximal hyperideals)";
                 return o;
               }});

  r.push_back({{"T18", "Q delta-primary => (Q delta-J <=> Q inside J(R))", "scalar identity"},
               true,
               nullptr,
               [](Env&, std::size_t, Ctx& c, const Emit& e) { each_ideal_delta(c, e); },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 const ElementSet q = in.ideals[0];
                 o.hyp = read(o, c.pred(Pred::DeltaPrimary, q, in.delta));
                 if (!o.hyp) return o;
                 const auto& pr = c.pred(Pred::DeltaJ, q, in.delta);
                 const bool dj = read(o, pr);
                 o.concl = dj == q.subset_of(c.jac());
                 if (!o.concl) {
                   o.detail = dj ? "delta-J but not inside J(R)" : "inside J(R) but not delta-J";
                   if (!dj) blame(o, pr, "source", q, in.delta, 0);
                 }
                 return o;
               }});

  r.push_back({{"T19", "Q maximal => (Q delta-J <=> Q = J(R))", "scalar identity"},
               true,
               nullptr,
               [](Env&, std::size_t, Ctx& c, const Emit& e) { each_ideal_delta(c, e); },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 const ElementSet q = in.ideals[0];
                 o.hyp = c.lattice().is_maximal(q);
                 if (!o.hyp) return o;
                 const auto& pr = c.pred(Pred::DeltaJ, q, in.delta);
                 const bool dj = read(o, pr);
                 o.concl = dj == (q == c.jac());
                 if (!o.concl) {
                   o.detail = dj ? "delta-J but differs from J(R) = " + fmt(c, c.jac()) : "equals J(R) but not delta-J";
                   if (!dj) blame(o, pr, "source", q, in.delta, 0);
                 }
                 return o;
               }});

  // Transfer theorems: instances run over fixtures, expansion pairs,
  // directions and ideals (target ideals for direction 1, source ideals
  // for direction 2).
  auto transfer_instances = [D](bool absorbing) {
    return [D, absorbing](Env& env, std::size_t src, Ctx& c, const Emit& e) {
      const int kmax = absorbing ? env.opts().k_max : 0;
      for (const auto& f : env.fixtures(src)) {
        std::vector<std::string> gammas = D;
        if (f.kind == "projection")
          for (const auto& d : D) gammas.push_back("deltaq[" + d + "]");
        for (int k = absorbing ? 2 : 0; k <= kmax; ++k)
          for (const auto& d : D)
            for (const auto& g : gammas)
              for (int dir = 1; dir <= 2; ++dir) {
                const auto ideals = dir == 1 ? f.tgt->proper() : c.proper();
                for (auto q : ideals) {
                  Instance in = with_ideals({q});
                  in.delta = d;
                  in.gamma = g;
                  in.k = k;
                  in.fixture = f.kind;
                  in.target = f.kind == "map" ? f.target : "";
                  in.modulus = f.modulus;
                  in.map = f.kind == "map" ? f.map : Tuple{};
                  in.direction = dir;
                  e(in);
                }
              }
      }
    };
  };

  auto transfer_eval = [](bool absorbing) {
    return [absorbing](Env& env, std::size_t src, Ctx& c, const Instance& in) {
      Outcome o;
      auto f = env.fixture_of(src, in);
      if (!f) {
        o.inconclusive = true;
        o.detail = "fixture unavailable";
        return o;
      }
      Ctx& t = *f->tgt;
      if (!absorbing) {
        if (!t.has_identity()) {
          o.inconclusive = true;
          return o;
        }
        if (one_image(c, *f) != t.s().one()) return o;  // h(1) != 1: hypotheses unmet
      }
      const Pred p = absorbing ? Pred::Absorbing : Pred::DeltaJ;
      const bool injective = is_injective(f->map, t.s().size());
      const bool surjective = is_surjective(f->map, t.s().size());
      try {
        t.exp(in.gamma);
      } catch (const PreconditionError&) {
        o.inconclusive = true;
        return o;
      }
      const ElementSet q = in.ideals[0];
      if (in.direction == 1) {
        if (!injective) return o;
        if (!env.delta_gamma(c, *f, in.delta, in.gamma)) return o;
        o.hyp = read(o, t.pred(p, q, in.gamma, in.k));
        if (!o.hyp) return o;
        const ElementSet pre = preimage(f->map, q);
        if (pre == c.carrier()) {
          o.concl = false;
          o.cause = "improper-preimage";
          o.detail = "h maps all of " + c.s().name() + " into " + fmt(t, q) + ", so the preimage is not proper";
          return o;
        }
        if (!c.member(pre)) {
          o.concl = false;
          o.detail = "preimage " + fmt(c, pre) + " is not a hyperideal";
          o.cause = "not-a-hyperideal";
          return o;
        }
        const auto& pr = c.pred(p, pre, in.delta, in.k);
        o.concl = read(o, pr);
        if (!o.concl) {
          o.detail = "preimage " + fmt(c, pre) + " of " + fmt(t, q) + " fails";
          blame(o, pr, "source", pre, in.delta, in.k);
        }
      } else {
        if (!surjective) return o;
        if (!env.delta_gamma(c, *f, in.delta, in.gamma)) return o;
        if (!kernel(c.s(), t.s(), f->map).subset_of(q)) return o;
        o.hyp = read(o, c.pred(p, q, in.delta, in.k));
        if (!o.hyp) return o;
        const ElementSet img = image(f->map, q);
        if (!t.member(img)) {
          o.concl = false;
          o.detail = "image " + fmt(t, img) + " is not a hyperideal";
          o.cause = "not-a-hyperideal";
          return o;
        }
        const auto& pr = t.pred(p, img, in.gamma, in.k);
        o.concl = read(o, pr);
        if (!o.concl) {
          o.detail = "image " + fmt(t, img) + " of " + fmt(c, q) + " fails";
          blame(o, pr, "target", img, in.gamma, in.k);
        }
      }
      return o;
    };
  };

  r.push_back({{"T20", "delta-gamma monomorphism pulls back gamma-J; epimorphism with kernel inside I pushes delta-J forward",
                "scalar identities, h(1) = 1"},
               true,
               nullptr,
               transfer_instances(false),
               transfer_eval(false)});

  r.push_back({{"T21", "I inside Q, Q delta-J => Q/I delta_q-J in R/I", "scalar identity, well-defined quotient"},
               true,
               nullptr,
               [D](Env&, std::size_t, Ctx& c, const Emit& e) {
                 for (auto i : c.lattice().members())
                   for (auto q : c.proper())
                     if (i.subset_of(q))
                       for (const auto& d : D) {
                         Instance in = with_ideals({q});
                         in.delta = d;
                         in.fixture = "projection";
                         in.modulus = i;
                         e(in);
                       }
               },
               [](Env& env, std::size_t src, Ctx& c, const Instance& in) {
                 Outcome o;
                 const ElementSet q = in.ideals[0];
                 o.hyp = read(o, c.pred(Pred::DeltaJ, q, in.delta));
                 if (!o.hyp) return o;
                 auto& qf = env.quotient_of(src, in.modulus);
                 if (!qf.ctx) {
                   o.inconclusive = true;
                   o.detail = qf.why;
                   return o;
                 }
                 Ctx& t = *qf.ctx;
                 const std::string dq = "deltaq[" + in.delta + "]";
                 try {
                   t.exp(dq);
                 } catch (const PreconditionError&) {
                   o.inconclusive = true;
                   o.detail = dq + " undefined";
                   return o;
                 }
                 if (!t.has_identity()) {
                   o.inconclusive = true;
                   return o;
                 }
                 const ElementSet img = image(qf.q.projection, q);
                 if (!t.member(img)) {
                   o.concl = false;
                   o.detail = "Q/I = " + fmt(t, img) + " is not a hyperideal of the quotient";
                   o.cause = "not-a-hyperideal";
                   return o;
                 }
                 const auto& pr = t.pred(Pred::DeltaJ, img, dq);
                 o.concl = read(o, pr);
                 if (!o.concl) {
                   o.detail = "Q/I = " + fmt(t, img) + " is not " + dq + "-J";
                   blame(o, pr, "target", img, dq, 0);
                 }
                 return o;
               }});

  r.push_back({{"T22", "Q delta-J => Q (2,n)-absorbing delta-J", "scalar identity"},
               true,
               nullptr,
               [](Env&, std::size_t, Ctx& c, const Emit& e) { each_ideal_delta(c, e); },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 const ElementSet q = in.ideals[0];
                 o.hyp = read(o, c.pred(Pred::DeltaJ, q, in.delta));
                 if (!o.hyp) return o;
                 const auto& pr = c.pred(Pred::Absorbing, q, in.delta, 2);
                 o.concl = read(o, pr);
                 if (!o.concl) blame(o, pr, "source", q, in.delta, 2);
                 return o;
               }});

  auto each_ideal_delta_k = [D](int lo, int hi_offset) {
    return [D, lo, hi_offset](Env& env, std::size_t, Ctx& c, const Emit& e) {
      for (int k = lo; k <= env.opts().k_max - hi_offset; ++k)
        for (auto q : c.proper())
          for (const auto& d : D) {
            Instance in = with_ideals({q});
            in.delta = d;
            in.k = k;
            e(in);
          }
    };
  };

  r.push_back({{"T23", "(k,n)-absorbing delta-J => (k+1,n)-absorbing delta-J", "none"},
               false,
               nullptr,
               each_ideal_delta_k(2, 1),
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 const ElementSet q = in.ideals[0];
                 o.hyp = read(o, c.pred(Pred::Absorbing, q, in.delta, in.k));
                 if (!o.hyp) return o;
                 const auto& pr = c.pred(Pred::Absorbing, q, in.delta, in.k + 1);
                 o.concl = read(o, pr);
                 if (!o.concl) blame(o, pr, "source", q, in.delta, in.k + 1);
                 return o;
               }});

  // The radical is only defined in the presence of a scalar identity.
  r.push_back({{"T24", "Q (k,n)-absorbing J => rad Q (k,n)-absorbing delta-J", "scalar identity"},
               true,
               nullptr,
               each_ideal_delta_k(2, 0),
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 const ElementSet q = in.ideals[0];
                 o.hyp = read(o, c.pred(Pred::Absorbing, q, "delta0", in.k));
                 if (!o.hyp) return o;
                 const ElementSet rad = c.engine().radical(q);
                 const auto& pr = c.pred(Pred::Absorbing, rad, in.delta, in.k);
                 o.concl = read(o, pr);
                 if (!o.concl) {
                   o.detail = "radical " + fmt(c, rad) + " fails";
                   blame(o, pr, "source", rad, in.delta, in.k);
                 }
                 return o;
               }});

  r.push_back({{"T25", "delta(Q) (2,n)-absorbing J => Q (3,n)-absorbing delta-J", "none"},
               false,
               nullptr,
               [](Env&, std::size_t, Ctx& c, const Emit& e) { each_ideal_delta(c, e); },
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 const ElementSet q = in.ideals[0];
                 o.hyp = read(o, c.pred(Pred::Absorbing, c.exp(in.delta)(q), "delta0", 2));
                 if (!o.hyp) return o;
                 const auto& pr = c.pred(Pred::Absorbing, q, in.delta, 3);
                 o.concl = read(o, pr);
                 if (!o.concl) blame(o, pr, "source", q, in.delta, 3);
                 return o;
               }});

  r.push_back({{"T26", "delta(Q) (k+1,n)-absorbing delta-J => Q (k+1,n)-absorbing delta-J", "none"},
               false,
               nullptr,
               each_ideal_delta_k(2, 0),
               [](Env&, std::size_t, Ctx& c, const Instance& in) {
                 Outcome o;
                 const ElementSet q = in.ideals[0];
                 o.hyp = read(o, c.pred(Pred::Absorbing, c.exp(in.delta)(q), in.delta, in.k));
                 if (!o.hyp) return o;
                 const auto& pr = c.pred(Pred::Absorbing, q, in.delta, in.k);
                 o.concl = read(o, pr);
                 if (!o.concl) blame(o, pr, "source", q, in.delta, in.k);
                 return o;
               }});

  r.push_back({{"T27",
                "delta-gamma monomorphism pulls back (k,n)-absorbing gamma-J; epimorphism with kernel inside Q pushes "
                "(k,n)-absorbing delta-J forward",
                "none"},
               false,
               nullptr,
               transfer_instances(true),
               transfer_eval(true)});
  return r;
}

const std::vector<TheoremImpl>& registry() {
  static const std::vector<TheoremImpl> r = build_registry();
  return r;
}

const TheoremImpl& theorem(const std::string& id) {
  for (const auto& t : registry())
    if (t.info.id == id) return t;
  throw PreconditionError("unknown theorem id '" + id + "'");
}

std::optional<std::string> skip_reason(const CatalogEntry& entry, Ctx* c, const TheoremImpl& t) {
  if (!c) {
    std::string failed;
    for (const auto* f : entry.report.failures()) failed += (failed.empty() ? "" : ",") + f->axiom;
    return "structure fails the Krasner axioms (" + failed + ")";
  }
  if (t.needs_identity && !c->has_identity()) return "no scalar identity";
  if (t.skip) return t.skip(*c);
  return std::nullopt;
}

bool replay_evidence(Env& env, std::size_t src, Ctx& c, const Instance& in, const PredicateEvidence& ev) {
  Ctx* side = &c;
  if (ev.side == "target") {
    if (in.fixture == "projection") {
      auto& qf = env.quotient_of(src, in.modulus);
      if (!qf.ctx) return false;
      side = qf.ctx.get();
    } else {
      auto f = env.fixture_of(src, in);
      if (!f) return false;
      side = f->tgt;
    }
  }
  if (ev.witness.predicate == "prime" || ev.witness.predicate == "prime-by-ideals")
    return replay_prime_witness(side->engine(), ev.ideal, ev.witness);
  const Expansion* d = ev.delta.empty() ? nullptr : &side->exp(ev.delta);
  return replay_witness(side->engine(), ev.ideal, d, ev.k, ev.witness);
}

bool replay_in(Env& env, std::size_t src, const AuditCell& cell) {
  if (cell.status != CellStatus::Fail || !cell.instance) return false;
  Ctx* c = env.ctx(src);
  if (!c) return false;
  const auto& t = theorem(cell.theorem);
  const Outcome o = t.eval(env, src, *c, *cell.instance);
  if (o.inconclusive || !o.hyp || o.concl) return false;
  if (cell.evidence) return replay_evidence(env, src, *c, *cell.instance, *cell.evidence);
  return true;
}

AuditCell run_cell(Env& env, std::size_t src, const TheoremImpl& t) {
  const CatalogEntry& entry = env.catalog()[src];
  AuditCell cell;
  cell.structure = entry.structure.name();
  cell.theorem = t.info.id;
  Ctx* c = env.ctx(src);
  if (auto why = skip_reason(entry, c, t)) {
    cell.status = CellStatus::Skip;
    cell.reason = *why;
    return cell;
  }
  std::set<std::string> notes;
  t.instances(env, src, *c, [&](const Instance& in) {
    ++cell.instances;
    Outcome o = t.eval(env, src, *c, in);
    if (o.inconclusive) {
      ++cell.inconclusive;
      if (!o.detail.empty()) notes.insert(o.detail);
      return;
    }
    if (!o.hyp) return;
    ++cell.hypotheses_met;
    if (o.concl) return;
    ++cell.violations;
    ++cell.causes[o.cause.empty() ? "conclusion" : o.cause];
    if (!cell.instance) {
      cell.instance = in;
      cell.evidence = o.evidence;
      cell.detail = o.detail;
    }
  });
  if (cell.violations > 0) {
    cell.status = CellStatus::Fail;
    cell.reason = std::to_string(cell.violations) + " violating instance(s)";
    cell.replayed = replay_in(env, src, cell);
  } else if (cell.hypotheses_met == 0) {
    cell.reason = "hypotheses never met";
  }
  if (!notes.empty()) {
    std::string joined;
    for (const auto& n : notes) joined += (joined.empty() ? "" : "; ") + n;
    cell.reason += (cell.reason.empty() ? "" : "; ") + std::string("inconclusive: ") + joined;
  }
  return cell;
}

// ---------------------------------------------------------------------------
// Serialisation.

using ojson = nlohmann::ordered_json;

ojson ids(ElementSet s) {
  ojson a = ojson::array();
  for (Elem e : s) a.push_back(e);
  return a;
}

ojson ids(const Tuple& t) {
  ojson a = ojson::array();
  for (Elem e : t) a.push_back(e);
  return a;
}

ojson instance_json(const Instance& in) {
  ojson j;
  ojson ideals = ojson::array();
  for (auto q : in.ideals) ideals.push_back(ids(q));
  j["ideals"] = ideals;
  if (!in.delta.empty()) j["delta"] = in.delta;
  if (!in.gamma.empty()) j["gamma"] = in.gamma;
  if (in.k) j["k"] = in.k;
  if (!in.fixture.empty()) {
    j["fixture"] = in.fixture;
    if (!in.target.empty()) j["target"] = in.target;
    if (in.fixture == "projection") j["modulus"] = ids(in.modulus);
    if (!in.map.empty()) j["map"] = ids(in.map);
    j["direction"] = in.direction;
  }
  return j;
}

ojson evidence_json(const PredicateEvidence& e) {
  ojson j;
  j["side"] = e.side;
  j["ideal"] = ids(e.ideal);
  if (!e.delta.empty()) j["delta"] = e.delta;
  if (e.k) j["k"] = e.k;
  j["predicate"] = e.witness.predicate;
  j["tuple"] = ids(e.witness.tuple);
  if (e.witness.index >= 0) j["index"] = e.witness.index;
  return j;
}

}  // namespace

const std::vector<TheoremInfo>& theorem_registry() {
  static const std::vector<TheoremInfo> infos = [] {
    std::vector<TheoremInfo> out;
    for (const auto& t : registry()) out.push_back(t.info);
    return out;
  }();
  return infos;
}

std::string catalog_hash(const std::vector<CatalogEntry>& catalog) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& e : catalog) feed(export_structure(e.structure));
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = hex[h & 0xF];
  return out;
}

std::size_t AuditReport::count(CellStatus s) const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [&](const AuditCell& c) { return c.status == s; }));
}

AuditReport run_audit(const std::vector<CatalogEntry>& catalog, const AuditOptions& opts) {
  std::vector<const TheoremImpl*> chosen;
  if (opts.theorems.empty()) {
    for (const auto& t : registry()) chosen.push_back(&t);
  } else {
    for (const auto& id : opts.theorems) chosen.push_back(&theorem(id));
  }
  if (opts.k_max < 3) throw PreconditionError("k_max must be at least 3");
  AuditReport rep;
  rep.catalog_hash = catalog_hash(catalog);
  for (const auto* t : chosen) rep.theorems.push_back(t->info.id);
  for (const auto& e : catalog) {
    rep.structures.push_back(e.structure.name());
    if (!e.verified()) {
      std::string failed;
      for (const auto* f : e.report.failures()) failed += (failed.empty() ? "" : ",") + f->axiom;
      rep.unverified.emplace_back(e.structure.name(), failed);
    }
    for (auto& c : evaluate_claims(e)) rep.claims.push_back(std::move(c));
  }
  // Structures are dealt round-robin to workers; cells land in fixed slots.
  const std::size_t width = chosen.size();
  rep.cells.resize(catalog.size() * width);
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(catalog.size())));
  std::vector<std::exception_ptr> errors(jobs);
  auto work = [&](unsigned w) {
    try {
      Env env(catalog, opts);
      for (std::size_t i = w; i < catalog.size(); i += jobs)
        for (std::size_t t = 0; t < width; ++t) rep.cells[i * width + t] = run_cell(env, i, *chosen[t]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rep;
}

bool replay_cell(const std::vector<CatalogEntry>& catalog, const AuditCell& cell, const AuditOptions& opts) {
  Env env(catalog, opts);
  auto src = env.find(cell.structure);
  if (!src) return false;
  return replay_in(env, *src, cell);
}

std::string AuditReport::to_jsonl() const {
  std::ostringstream os;
  ojson header;
  header["record"] = "header";
  header["tool"] = "kmn";
  header["version"] = version;
  header["catalog_hash"] = catalog_hash;
  header["structures"] = structures.size();
  header["theorems"] = theorems;
  os << header.dump() << '\n';
  for (const auto& [name, failed] : unverified) {
    ojson j;
    j["record"] = "unverified";
    j["structure"] = name;
    j["failed_axioms"] = failed;
    os << j.dump() << '\n';
  }
  for (const auto& c : claims) {
    ojson j;
    j["record"] = "claim";
    j["structure"] = c.structure;
    j["claim"] = c.claim.id;
    j["expected"] = c.claim.description;
    j["status"] = c.agrees ? "agrees" : "discrepancy";
    j["observed"] = c.observed;
    if (!c.agrees && !c.witness_kind.empty()) {
      j["witness_kind"] = c.witness_kind;
      j["witness"] = ids(c.witness);
      if (c.index >= 0) j["index"] = c.index;
      j["detail"] = c.detail;
      j["replayed"] = c.witness_replays;
    }
    os << j.dump() << '\n';
  }
  for (const auto& c : cells) {
    ojson j;
    j["record"] = "cell";
    j["structure"] = c.structure;
    j["theorem"] = c.theorem;
    j["status"] = to_string(c.status);
    j["instances"] = c.instances;
    j["hypotheses_met"] = c.hypotheses_met;
    j["inconclusive"] = c.inconclusive;
    j["violations"] = c.violations;
    if (!c.reason.empty()) j["reason"] = c.reason;
    if (c.instance) j["instance"] = instance_json(*c.instance);
    if (c.evidence) j["evidence"] = evidence_json(*c.evidence);
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (c.status == CellStatus::Fail) {
      ojson causes = ojson::object();
      for (const auto& [tag, count] : c.causes) causes[tag] = count;
      j["causes"] = causes;
      j["replayed"] = c.replayed;
    }
    os << j.dump() << '\n';
  }
  ojson summary;
  summary["record"] = "summary";
  summary["cells"] = cells.size();
  summary["pass"] = count(CellStatus::Pass);
  summary["fail"] = count(CellStatus::Fail);
  summary["skip"] = count(CellStatus::Skip);
  summary["fail_replayed"] = std::count_if(cells.begin(), cells.end(),
                                           [](const AuditCell& c) { return c.status == CellStatus::Fail && c.replayed; });
  summary["claims"] = claims.size();
  summary["discrepancies"] = std::count_if(claims.begin(), claims.end(), [](const ClaimOutcome& c) { return !c.agrees; });
  os << summary.dump() << '\n';
  return os.str();
}

std::string AuditReport::summary_text() const {
  std::ostringstream os;
  os << "theorem  pass  fail  skip  replayed\n";
  for (const auto& id : theorems) {
    std::size_t p = 0, f = 0, s = 0, r = 0;
    for (const auto& c : cells) {
      if (c.theorem != id) continue;
      p += c.status == CellStatus::Pass;
      f += c.status == CellStatus::Fail;
      s += c.status == CellStatus::Skip;
      r += c.status == CellStatus::Fail && c.replayed;
    }
    char line[96];
    std::snprintf(line, sizeof line, "%-7s %5zu %5zu %5zu %9zu\n", id.c_str(), p, f, s, r);
    os << line;
  }
  std::size_t disc = 0;
  for (const auto& c : claims) disc += !c.agrees;
  os << "cells: " << cells.size() << " (pass " << count(CellStatus::Pass) << ", fail " << count(CellStatus::Fail)
     << ", skip " << count(CellStatus::Skip) << ")\n";
  os << "example claims: " << claims.size() << " (" << disc << " discrepancies)\n";
  for (const auto& c : claims)
    if (!c.agrees)
      os << "  " << c.structure << " " << c.claim.id << ": " << c.observed
         << (c.witness_kind.empty() ? "" : " [" + c.witness_kind + (c.witness_replays ? ", replays]" : ", NOT replayed]"))
         << "\n";
  return os.str();
}

}  // namespace kmn
