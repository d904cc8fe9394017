#include "kmn/search.hpp"

#include <map>
#include <regex>

namespace kmn {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) s.replace(p, from.size(), to);
  return s;
}

bool known_delta(const std::string& name) {
  if (name == "delta0" || name == "delta1" || name == "deltaR") return true;
  const auto o = name.find('o');
  return o != std::string::npos && known_delta(name.substr(0, o)) && known_delta(name.substr(o + 1));
}

Atom parse_atom(const std::string& raw) {
  const std::string t = trim(raw);
  static const std::regex bracket(R"(([A-Za-z-]+)\[\s*(?:(\d+)\s*,\s*)?([A-Za-z0-9]+)\s*\])");
  std::smatch mt;
  Atom a;
  if (t == "J" || t == "prime" || t == "primary" || t == "maximal" || t == "jacobson-subset") {
    a.kind = t;
  } else if (t == "Q ⊆ J(R)" || t == "Q⊆J(R)" || t == "Q <= J(R)" || t == "Q<=J(R)") {
    a.kind = "jacobson-subset";
  } else if (std::regex_match(t, mt, bracket)) {
    a.kind = mt[1];
    a.delta = mt[3];
    if (mt[2].matched) a.k = std::stoi(mt[2]);
    const bool needs_k = a.kind == "absorbing";
    if (a.kind != "delta-J" && a.kind != "delta-primary" && !needs_k)
      throw PreconditionError("unknown predicate '" + a.kind + "'");
    if (needs_k != mt[2].matched) throw PreconditionError("'" + t + "': only absorbing takes k");
    if (needs_k && a.k < 2) throw PreconditionError("'" + t + "': k must be at least 2");
    if (!known_delta(a.delta)) throw PreconditionError("unknown expansion '" + a.delta + "'");
  } else {
    throw PreconditionError("cannot parse predicate '" + t + "'");
  }
  return a;
}

std::vector<Atom> parse_side(const std::string& side) {
  std::vector<Atom> out;
  std::size_t start = 0;
  while (true) {
    const auto amp = side.find('&', start);
    const std::string part = side.substr(start, amp == std::string::npos ? std::string::npos : amp - start);
    if (trim(part).empty()) throw PreconditionError("empty predicate in '" + trim(side) + "'");
    out.push_back(parse_atom(part));
    if (amp == std::string::npos) break;
    start = amp + 1;
  }
  return out;
}

std::string join(const std::vector<Atom>& atoms) {
  std::string out;
  for (const auto& a : atoms) out += (out.empty() ? "" : " & ") + a.text();
  return out;
}

class Expansions {
 public:
  explicit Expansions(const IdealEngine& e) {
    for (auto& x : standard_expansions(e)) map_.emplace(x.name(), std::move(x));
  }
  const Expansion& get(const std::string& name) {
    if (auto it = map_.find(name); it != map_.end()) return it->second;
    const auto o = name.find('o');
    const Expansion c = compose(get(name.substr(0, o)), get(name.substr(o + 1)));
    return map_.emplace(name, c).first->second;
  }

 private:
  std::map<std::string, Expansion> map_;
};

PredicateResult evaluate(const IdealEngine& e, Expansions& x, const Atom& a, ElementSet q,
                         const AbsorbingOptions& opts) {
  auto from_bool = [](bool b) { return b ? PredicateResult::yes() : PredicateResult{Verdict::False, {}, {}}; };
  if (a.kind == "J") return is_j_hyperideal(e, q);
  if (a.kind == "prime") return e.is_prime(q);
  if (a.kind == "primary") {
    if (!e.has_identity()) return PredicateResult::na("no scalar identity");
    return e.is_primary(q);
  }
  if (a.kind == "maximal") return from_bool(e.lattice().is_maximal(q));
  if (a.kind == "jacobson-subset") return from_bool(q.subset_of(e.jacobson()));
  if (a.kind == "delta-J") return is_delta_j(e, q, x.get(a.delta));
  if (a.kind == "delta-primary") return is_delta_primary(e, q, x.get(a.delta));
  return is_kn_absorbing_delta_j(e, q, x.get(a.delta), a.k, opts);
}

}  // namespace

std::string Atom::text() const {
  if (kind == "absorbing") return "absorbing[" + std::to_string(k) + "," + delta + "]";
  if (!delta.empty()) return kind + "[" + delta + "]";
  return kind;
}

std::string Implication::text() const { return join(lhs) + " => " + join(rhs); }

Implication parse_implication(const std::string& spec) {
  std::string s = replace_all(replace_all(spec, "⇒", "=>"), "∧", "&");
  const auto arrow = s.find("=>");
  if (arrow == std::string::npos) throw PreconditionError("implication needs '=>'");
  if (s.find("=>", arrow + 2) != std::string::npos) throw PreconditionError("implication has more than one '=>'");
  return {parse_side(s.substr(0, arrow)), parse_side(s.substr(arrow + 2))};
}

SearchResult search_counterexample(const Implication& imp, const std::vector<CatalogEntry>& catalog,
                                   const AbsorbingOptions& opts) {
  SearchResult out;
  for (const auto& entry : catalog) {
    if (!entry.verified()) continue;
    ++out.structures_scanned;
    const IdealEngine engine(Hyperring::verify(entry.structure));
    Expansions x(engine);
    for (auto q : engine.lattice().members()) {
      if (q == engine.carrier()) continue;
      ++out.ideals_checked;
      bool lhs = true;
      bool undecided = false;
      for (const auto& a : imp.lhs) {
        const auto r = evaluate(engine, x, a, q, opts);
        if (r.verdict == Verdict::NotApplicable || r.verdict == Verdict::Truncated) undecided = true;
        if (!r.holds()) {
          lhs = false;
          break;
        }
      }
      if (!lhs) {
        out.undecided += undecided;
        continue;
      }
      for (const auto& a : imp.rhs) {
        auto r = evaluate(engine, x, a, q, opts);
        if (r.holds()) continue;
        if (r.verdict != Verdict::False) {
          undecided = true;
          continue;
        }
        out.counterexample = Counterexample{entry.structure.name(), q, entry.structure.format(q), a.text(),
                                            std::move(r.witness)};
        return out;
      }
      out.undecided += undecided;
    }
  }
  return out;
}

}  // namespace kmn
