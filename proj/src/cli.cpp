#include "kmn/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "kmn/audit.hpp"
#include "kmn/morphology.hpp"
#include "kmn/search.hpp"
#include "kmn/structure_io.hpp"

namespace kmn {

namespace {

struct UsageError : Error {
  using Error::Error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

ElementSet parse_labels(const Structure& s, const std::string& text) {
  ElementSet out;
  for (const auto& l : split_list(text)) {
    auto e = s.find_label(l);
    if (!e) throw UsageError("unknown element label '" + l + "' (elements: " + s.format(s.carrier()) + ")");
    out.insert(*e);
  }
  return out;
}

std::string witness_text(const Structure& s, const Tuple& t, int index) {
  std::string out = s.format(t);
  if (index >= 0) out += " at position " + std::to_string(index + 1);
  return out;
}

void print_report(const Structure& s, const AxiomReport& rep, std::ostream& out) {
  for (const auto& r : rep.results) {
    out << "  " << r.axiom << ": " << to_string(r.status);
    if (r.status == AxiomStatus::Fail) {
      out << " " << witness_text(s, r.witness, r.position);
      if (!r.detail.empty()) out << " (" << r.detail << ")";
      out << " replays: " << (replay_axiom_witness(s, r) ? "yes" : "no");
    }
    out << "\n";
  }
}

std::string verdict_text(const PredicateResult& r) {
  switch (r.verdict) {
    case Verdict::True:
      return "true";
    case Verdict::False:
      return "false";
    default:
      return to_string(r.verdict);
  }
}

// Engine for a structure that may have failed verification; the caller is
// told through `verified`.
IdealEngine engine_for(const Structure& s, bool& verified) {
  Hyperring h = Hyperring::unchecked(s);
  verified = h.verified();
  LatticeOptions lo;
  lo.allow_unverified = true;
  return IdealEngine(std::move(h), lo);
}

void warn_unverified(const Structure& s, std::ostream& out) {
  std::string failed;
  const AxiomReport rep = verify_krasner(s);
  for (const auto* f : rep.failures()) failed += (failed.empty() ? "" : ", ") + f->axiom;
  out << "discrepancy: " << s.name() << " fails the Krasner axioms (" << failed
      << "); results below are diagnostic\n";
}

int cmd_verify(const std::string& file, bool hypergroup_only, std::ostream& out) {
  const Structure s = load_structure(file);
  out << s.name() << ": (" << s.m() << "," << s.n() << "), " << s.size() << " elements\n";
  const AxiomReport rep = hypergroup_only ? verify_canonical_hypergroup(s) : verify_krasner(s);
  print_report(s, rep, out);
  if (!hypergroup_only) {
    out << "scalar identity: ";
    if (rep.scalar_identities.empty()) {
      out << "none\n";
    } else {
      out << s.label(rep.scalar_identities.front());
      if (rep.scalar_identities.size() > 1) out << " (" << rep.scalar_identities.size() << " candidates)";
      out << "\n";
    }
  }
  out << (hypergroup_only ? "Canonical hypergroup axioms: " : "Krasner axioms: ") << (rep.passed() ? "pass" : "fail")
      << "\n";
  return rep.passed() ? kExitClean : kExitNegative;
}

int cmd_ideals(const std::string& file, std::ostream& out) {
  const Structure s = load_structure(file);
  bool verified = false;
  const IdealEngine e = engine_for(s, verified);
  if (!verified) warn_unverified(s, out);
  const auto& lat = e.lattice();
  out << lat.size() << " hyperideals\n";
  for (auto q : lat.members()) {
    out << "  " << s.format(q);
    if (q == e.carrier()) out << "  (R)";
    if (lat.is_maximal(q)) out << "  maximal";
    out << "\n";
  }
  out << "J(R) = " << s.format(e.jacobson()) << "\n";
  out << "local: " << (lat.is_local() ? "yes" : "no") << "\n";
  return verified ? kExitClean : kExitNegative;
}

int cmd_jacobson(const std::string& file, std::ostream& out) {
  const Structure s = load_structure(file);
  bool verified = false;
  const IdealEngine e = engine_for(s, verified);
  if (!verified) warn_unverified(s, out);
  out << "maximal hyperideals:";
  const auto maxes = e.lattice().maximal_ideals();
  if (maxes.empty()) out << " none";
  for (auto m : maxes) out << " " << s.format(m);
  out << "\nJ(R) = " << s.format(e.jacobson()) << "\n";
  return verified ? kExitClean : kExitNegative;
}

// Checks that `q` is a hyperideal; prints the failing clause otherwise.
bool require_ideal(const Structure& s, ElementSet q, std::ostream& out) {
  const IdealCheck c = check_hyperideal(s, q);
  if (c.ok) return true;
  out << s.format(q) << " is not a hyperideal: " << c.clause << " fails at " << s.format(c.witness);
  if (!c.detail.empty()) out << " (" << c.detail << ")";
  out << " replays: " << (replay_ideal_witness(s, q, c) ? "yes" : "no") << "\n";
  return false;
}

int cmd_classify(const std::string& file, const std::string& labels, const std::string& delta, int kmax,
                 std::ostream& out) {
  const Structure s = load_structure(file);
  if (kmax < 2) throw UsageError("--kmax must be at least 2");
  const ElementSet q = parse_labels(s, labels);
  bool verified = false;
  const IdealEngine e = engine_for(s, verified);
  if (!verified) warn_unverified(s, out);
  if (!require_ideal(s, q, out)) return kExitNegative;
  std::vector<Expansion> registry;
  if (delta.empty()) {
    registry = standard_expansions(e);
  } else {
    try {
      registry.push_back(expansion_by_name(e, delta));
    } catch (const PreconditionError& ex) {
      throw UsageError(ex.what());
    }
  }
  out << "ideal " << s.format(q) << " in " << s.name() << "\n";
  if (!s.one()) {
    const Tuple w = scalar_identity_failures(s);
    out << "scalar identity: none; g(u^(n-1),x) != x at";
    for (std::size_t i = 0; i < w.size(); i += 2) out << " (" << s.label(w[i]) << "," << s.label(w[i + 1]) << ")";
    out << " replays: " << (replay_scalar_identity_failures(s, w) ? "yes" : "no") << "\n";
  }
  const ClassificationReport rep = classify(e, q, registry, kmax);
  for (const auto& [name, r] : rep.verdicts) {
    out << name << ": " << verdict_text(r);
    if (r.witness) {
      const Expansion* d = nullptr;
      for (const auto& x : registry)
        if (name.find("[" + x.name() + "]") != std::string::npos) d = &x;
      int k = 0;
      if (auto p = name.find('('); p != std::string::npos) k = std::atoi(name.c_str() + p + 1);
      out << "  witness " << witness_text(s, r.witness->tuple, r.witness->index);
      if (!r.witness->detail.empty()) out << " (" << r.witness->detail << ")";
      if (r.witness->predicate != "prime" && r.witness->predicate != "primary")
        out << " replays: " << (replay_witness(e, q, d, k, *r.witness) ? "yes" : "no");
    } else if (!r.note.empty() && r.verdict != Verdict::True) {
      out << "  (" << r.note << ")";
    }
    out << "\n";
  }
  return verified ? kExitClean : kExitNegative;
}

int cmd_radical(const std::string& file, const std::string& labels, std::ostream& out) {
  const Structure s = load_structure(file);
  const ElementSet q = parse_labels(s, labels);
  bool verified = false;
  const IdealEngine e = engine_for(s, verified);
  if (!verified) warn_unverified(s, out);
  if (!require_ideal(s, q, out)) return kExitNegative;
  const ElementSet by_primes = e.radical(q);
  out << "radical (primes) = " << s.format(by_primes) << "\n";
  if (e.has_identity()) {
    const ElementSet by_powers = e.radical_by_powers(q);
    out << "radical (powers) = " << s.format(by_powers) << "\n";
    out << "agree: " << (by_primes == by_powers ? "yes" : "no") << "\n";
  } else {
    out << "radical (powers) = n/a (no scalar identity)\n";
  }
  return verified ? kExitClean : kExitNegative;
}

int cmd_quotient(const std::string& file, const std::string& labels, const std::string& out_path, std::ostream& out) {
  const Structure s = load_structure(file);
  const ElementSet q = parse_labels(s, labels);
  if (!require_ideal(s, q, out)) return kExitNegative;
  const Quotient qt = quotient(s, q);
  out << "cosets of " << s.format(q) << ":\n";
  for (std::size_t i = 0; i < qt.cosets.size(); ++i) out << "  [" << i << "] " << s.format(qt.cosets[i]) << "\n";
  out << "position-independent cosets: " << (qt.general_cosets_agree ? "yes" : "no") << "\n";
  for (const auto& is : qt.issues) out << "issue: " << is.clause << " " << is.detail << "\n";
  if (!qt.well_defined()) {
    out << "quotient: ill-defined\n";
    return kExitNegative;
  }
  const AxiomReport rep = verify_krasner(*qt.structure);
  out << "quotient " << qt.structure->name() << ": Krasner axioms " << (rep.passed() ? "pass" : "fail") << "\n";
  if (!rep.passed()) print_report(*qt.structure, rep, out);
  if (!out_path.empty()) save_structure(*qt.structure, out_path);
  return rep.passed() ? kExitClean : kExitNegative;
}

struct CatalogFlags {
  std::vector<std::string> files;
  bool builtin = false;
  std::vector<int> enumerate;
  std::uint64_t seed = 0;
};

std::vector<CatalogEntry> build_catalog(const CatalogFlags& f) {
  std::vector<CatalogEntry> cat;
  const bool any = !f.files.empty() || f.builtin || !f.enumerate.empty();
  if (!any) {
    CatalogOptions co;
    co.seed = f.seed;
    return default_catalog(co);
  }
  if (f.builtin)
    for (auto& e : builtin_examples()) cat.push_back(std::move(e));
  for (const auto& file : f.files) cat.push_back(make_entry(load_structure(file), Provenance::File));
  if (!f.enumerate.empty()) {
    EnumerationOptions eo = enumeration_defaults();
    eo.m = f.enumerate[0];
    eo.n = f.enumerate[1];
    if (eo.m < 2 || eo.n < 2 || f.enumerate[2] < 1) throw UsageError("--enumerate needs m >= 2, n >= 2, order >= 1");
    eo.order = static_cast<std::size_t>(f.enumerate[2]);
    if (eo.order > eo.max_order) throw UsageError("order above the configured maximum (KMN_MAX_ORDER)");
    auto res = enumerate_structures(eo);
    if (res.truncated) std::cerr << "notice: " << res.notice << "\n";
    for (auto& s : res.structures) cat.push_back(make_entry(std::move(s), Provenance::Enumerated));
  }
  return cat;
}

int cmd_audit(const CatalogFlags& flags, const std::string& theorems, const std::string& out_path, int kmax,
              unsigned jobs, std::ostream& out) {
  AuditOptions opts;
  opts.jobs = jobs ? jobs : std::max(1u, std::thread::hardware_concurrency());
  if (!theorems.empty()) {
    opts.theorems = split_list(theorems);
    std::vector<std::string> known;
    for (const auto& t : theorem_registry()) known.push_back(t.id);
    for (const auto& id : opts.theorems)
      if (std::find(known.begin(), known.end(), id) == known.end()) throw UsageError("unknown theorem id '" + id + "'");
  }
  if (kmax < 3) throw UsageError("--kmax must be at least 3");
  opts.k_max = kmax;
  const auto catalog = build_catalog(flags);
  const AuditReport rep = run_audit(catalog, opts);
  out << "catalog: " << catalog.size() << " structures, hash " << rep.catalog_hash << "\n";
  out << rep.summary_text();
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error("cannot write " + out_path);
    f << rep.to_jsonl();
  }
  return kExitClean;
}

int cmd_catalog_export(const std::string& dir, bool builtin_only, std::ostream& out) {
  std::filesystem::create_directories(dir);
  std::vector<CatalogEntry> cat;
  if (builtin_only) {
    cat = builtin_examples();
  } else {
    cat = default_catalog();
  }
  for (const auto& e : cat) save_structure(e.structure, std::filesystem::path(dir) / (e.structure.name() + ".kmn"));
  out << "wrote " << cat.size() << " structures to " << dir << "\n";
  return kExitClean;
}

int cmd_search(const std::string& spec, const CatalogFlags& flags, std::ostream& out) {
  Implication imp;
  try {
    imp = parse_implication(spec);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  const auto catalog = build_catalog(flags);
  const SearchResult r = search_counterexample(imp, catalog);
  out << "implication: " << imp.text() << "\n";
  out << "scanned " << r.structures_scanned << " structures, " << r.ideals_checked << " proper hyperideals ("
      << r.undecided << " undecided)\n";
  if (!r.counterexample) {
    out << "counterexample: none\n";
    return kExitClean;
  }
  const auto& c = *r.counterexample;
  out << "counterexample: " << c.structure << " Q = " << c.ideal_text << " fails " << c.failed_atom << "\n";
  if (c.witness) {
    for (const auto& e : catalog)
      if (e.structure.name() == c.structure) {
        out << "witness: " << witness_text(e.structure, c.witness->tuple, c.witness->index);
        if (!c.witness->detail.empty()) out << " (" << c.witness->detail << ")";
        out << "\n";
        break;
      }
  }
  return kExitNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for finite Krasner (m,n)-hyperrings", "kmn"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string file, labels, delta, out_path, theorems, spec, dir;
  int kmax = 3;
  unsigned jobs = 0;
  bool hypergroup_only = false, builtin_only = false;
  CatalogFlags flags;

  auto* verify = app.add_subcommand("verify", "Check the Krasner axioms");
  verify->add_option("FILE", file)->required();
  verify->add_flag("--hypergroup", hypergroup_only, "Only the canonical hypergroup axioms for f");

  auto* ideals = app.add_subcommand("ideals", "List every hyperideal");
  ideals->add_option("FILE", file)->required();

  auto* classify_cmd = app.add_subcommand("classify", "Evaluate every predicate on one hyperideal");
  classify_cmd->add_option("FILE", file)->required();
  classify_cmd->add_option("--ideal", labels, "Comma-separated element labels")->required();
  classify_cmd->add_option("--delta", delta, "delta0, delta1 or deltaR (default: all)");
  classify_cmd->add_option("--kmax", kmax, "Largest k for (k,n)-absorbing");

  auto* jacobson = app.add_subcommand("jacobson", "Maximal hyperideals and J(R)");
  jacobson->add_option("FILE", file)->required();

  auto* radical = app.add_subcommand("radical", "Radical by primes and by powers");
  radical->add_option("FILE", file)->required();
  radical->add_option("--ideal", labels)->required();

  auto* quotient_cmd = app.add_subcommand("quotient", "Quotient by a hyperideal");
  quotient_cmd->add_option("FILE", file)->required();
  quotient_cmd->add_option("--ideal", labels)->required();
  quotient_cmd->add_option("--out", out_path, "Write the quotient structure here");

  auto add_catalog_flags = [&](CLI::App* sub) {
    sub->add_option("FILES", flags.files, "Structure files");
    sub->add_flag("--builtin", flags.builtin, "Include the two worked examples");
    sub->add_option("--enumerate", flags.enumerate, "m n order")->expected(3);
    sub->add_option("--seed", flags.seed, "Seed for the sampled order-4 slice");
  };

  auto* audit = app.add_subcommand("audit", "Run the theorem audit (default catalog when no source is given)");
  add_catalog_flags(audit);
  audit->add_option("--theorems", theorems, "Comma-separated ids, e.g. T01,T22");
  audit->add_option("--out", out_path, "Line-delimited JSON report");
  audit->add_option("--kmax", kmax, "Largest k for the absorbing theorems");
  audit->add_option("--jobs", jobs, "Worker threads (default: one per core)");

  auto* catalog = app.add_subcommand("catalog", "Catalog operations");
  catalog->require_subcommand(1);
  auto* exporter = catalog->add_subcommand("export", "Write the default catalog as .kmn files");
  exporter->add_option("DIR", dir)->required();
  exporter->add_flag("--builtin-only", builtin_only);

  auto* search = app.add_subcommand("search", "Look for a counterexample to an implication");
  search->add_option("--implication", spec, "e.g. \"J => prime\"")->required();
  add_catalog_flags(search);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitClean : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(file, hypergroup_only, out);
    if (*ideals) return cmd_ideals(file, out);
    if (*classify_cmd) return cmd_classify(file, labels, delta, kmax, out);
    if (*jacobson) return cmd_jacobson(file, out);
    if (*radical) return cmd_radical(file, labels, out);
    if (*quotient_cmd) return cmd_quotient(file, labels, out_path, out);
    if (*audit) return cmd_audit(flags, theorems, out_path, kmax, jobs, out);
    if (*exporter) return cmd_catalog_export(dir, builtin_only, out);
    if (*search) return cmd_search(spec, flags, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StructureError& e) {
    err << "error: " << e.what() << "\n";
    return *audit ? kExitTool : kExitNegative;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitTool;
  }
  return kExitUsage;
}

}  // namespace kmn
