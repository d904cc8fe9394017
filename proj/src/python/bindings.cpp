#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kmn/audit.hpp"
#include "kmn/morphology.hpp"
#include "kmn/search.hpp"
#include "kmn/structure_io.hpp"

namespace py = pybind11;
using namespace kmn;

namespace {

Tuple tuple_of(const Structure& s, const std::vector<std::string>& labels) {
  Tuple t;
  for (const auto& l : labels) {
    auto e = s.find_label(l);
    if (!e) throw py::value_error("unknown element label '" + l + "'");
    t.push_back(*e);
  }
  return t;
}

std::vector<std::string> labels_of(const Structure& s, ElementSet set) {
  std::vector<std::string> out;
  for (Elem e : set) out.push_back(s.label(e));
  return out;
}

ElementSet set_of(const Structure& s, const std::vector<std::string>& labels) {
  ElementSet out;
  for (Elem e : tuple_of(s, labels)) out.insert(e);
  return out;
}

IdealEngine engine_of(const Structure& s) {
  LatticeOptions lo;
  lo.allow_unverified = true;
  return IdealEngine(Hyperring::unchecked(s), lo);
}

py::dict axiom_dict(const Structure& s, const AxiomReport& rep) {
  py::dict d;
  py::dict results;
  for (const auto& r : rep.results) {
    py::dict row;
    row["status"] = to_string(r.status);
    if (r.status == AxiomStatus::Fail) {
      std::vector<std::string> w;
      for (Elem e : r.witness) w.push_back(s.label(e));
      row["witness"] = w;
      row["position"] = r.position;
      row["replays"] = replay_axiom_witness(s, r);
    }
    results[r.axiom.c_str()] = row;
  }
  d["passed"] = rep.passed();
  d["axioms"] = results;
  std::vector<std::string> ids;
  for (Elem e : rep.scalar_identities) ids.push_back(s.label(e));
  d["scalar_identities"] = ids;
  return d;
}

}  // namespace

PYBIND11_MODULE(_kmn, m) {
  m.doc() = "Finite Krasner (m,n)-hyperring workbench";
  m.attr("__version__") = kToolVersion;

  py::register_exception<Error>(m, "KmnError");

  py::class_<Structure>(m, "Structure")
      .def_property_readonly("name", &Structure::name)
      .def_property_readonly("m", &Structure::m)
      .def_property_readonly("n", &Structure::n)
      .def_property_readonly("labels", &Structure::labels)
      .def_property_readonly("zero", [](const Structure& s) { return s.label(s.zero()); })
      .def_property_readonly("one",
                             [](const Structure& s) -> std::optional<std::string> {
                               if (!s.one()) return std::nullopt;
                               return s.label(*s.one());
                             })
      .def("__len__", &Structure::size)
      .def("f",
           [](const Structure& s, const std::vector<std::string>& args) { return labels_of(s, s.f(tuple_of(s, args))); })
      .def("g",
           [](const Structure& s, const std::vector<std::string>& args) { return s.label(s.g(tuple_of(s, args))); })
      .def("export", &export_structure)
      .def("__eq__", &Structure::operator==)
      .def("__repr__", [](const Structure& s) {
        return "<Structure " + s.name() + " (" + std::to_string(s.m()) + "," + std::to_string(s.n()) + ") order " +
               std::to_string(s.size()) + ">";
      });

  m.def("parse", [](const std::string& text) { return parse_structure(text); }, "Parse a .kmn document");
  m.def("load", [](const std::string& path) { return load_structure(path); }, "Load a .kmn file");
  m.def("builtin_examples", [] {
    std::vector<Structure> out;
    for (auto& e : builtin_examples()) out.push_back(e.structure);
    return out;
  });
  m.def("enumerate", [](int mm, int nn, std::size_t order) {
    EnumerationOptions eo = enumeration_defaults();
    eo.m = mm;
    eo.n = nn;
    eo.order = order;
    return enumerate_structures(eo).structures;
  }, py::arg("m"), py::arg("n"), py::arg("order"));

  m.def("verify", [](const Structure& s) { return axiom_dict(s, verify_krasner(s)); });
  m.def("verify_hypergroup", [](const Structure& s) { return axiom_dict(s, verify_canonical_hypergroup(s)); });

  m.def("ideals", [](const Structure& s) {
    const IdealEngine e = engine_of(s);
    std::vector<std::vector<std::string>> out;
    for (auto q : e.lattice().members()) out.push_back(labels_of(s, q));
    return out;
  });
  m.def("jacobson", [](const Structure& s) { return labels_of(s, engine_of(s).jacobson()); });
  m.def("is_hyperideal", [](const Structure& s, const std::vector<std::string>& ideal) {
    return is_hyperideal(s, set_of(s, ideal));
  });
  m.def("radical", [](const Structure& s, const std::vector<std::string>& ideal) {
    return labels_of(s, engine_of(s).radical(set_of(s, ideal)));
  });
  m.def(
      "classify",
      [](const Structure& s, const std::vector<std::string>& ideal, int kmax) {
        const IdealEngine e = engine_of(s);
        const ElementSet q = set_of(s, ideal);
        if (!is_hyperideal(s, q)) throw py::value_error("not a hyperideal");
        py::dict out;
        for (const auto& [name, r] : classify(e, q, standard_expansions(e), kmax).verdicts)
          out[name.c_str()] = to_string(r.verdict);
        return out;
      },
      py::arg("structure"), py::arg("ideal"), py::arg("kmax") = 3);

  m.def("theorems", [] {
    std::vector<std::string> ids;
    for (const auto& t : theorem_registry()) ids.push_back(t.id);
    return ids;
  });
  m.def(
      "audit",
      [](const std::vector<Structure>& structures, const std::vector<std::string>& theorems) {
        std::vector<CatalogEntry> cat;
        for (const auto& s : structures) cat.push_back(make_entry(s, Provenance::File));
        AuditOptions o;
        o.theorems = theorems;
        return run_audit(cat, o).to_jsonl();
      },
      py::arg("structures"), py::arg("theorems") = std::vector<std::string>{},
      "Audit the given structures; returns the line-delimited JSON report");
  m.def(
      "search",
      [](const std::string& implication, const std::vector<Structure>& structures) -> py::object {
        std::vector<CatalogEntry> cat;
        for (const auto& s : structures) cat.push_back(make_entry(s, Provenance::File));
        const auto r = search_counterexample(parse_implication(implication), cat);
        if (!r.counterexample) return py::none();
        py::dict d;
        d["structure"] = r.counterexample->structure;
        d["ideal"] = r.counterexample->ideal_text;
        d["fails"] = r.counterexample->failed_atom;
        return d;
      },
      py::arg("implication"), py::arg("structures"));
}
