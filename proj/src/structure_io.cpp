#include "kmn/structure_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace kmn {

namespace {

using json = nlohmann::json;

const json& field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw StructureError(std::string("missing field '") + key + "'");
  return *it;
}

std::string text_of(const json& v, const std::string& where) {
  if (!v.is_string()) throw StructureError(where + " must be a string");
  return v.get<std::string>();
}

Elem resolve(const std::vector<std::string>& labels, const json& v, const std::string& where) {
  const std::string l = text_of(v, where);
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == l) return static_cast<Elem>(i);
  throw StructureError(where + ": unknown element label '" + l + "'");
}

Tuple resolve_args(const std::vector<std::string>& labels, const json& entry, const std::string& where) {
  const json& args = field(entry, "args");
  if (!args.is_array()) throw StructureError(where + ".args must be an array");
  Tuple out;
  for (const auto& a : args) out.push_back(resolve(labels, a, where));
  return out;
}

int arity(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number_integer()) throw StructureError(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

std::string quoted(const std::string& s) { return json(s).dump(); }

}  // namespace

Structure parse_structure(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw StructureError(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw StructureError("document must be a JSON object");
  if (auto it = doc.find("format"); it != doc.end() && *it != "kmn/1")
    throw StructureError("unsupported format " + it->dump());
  const std::string name = doc.contains("name") ? text_of(doc["name"], "name") : std::string("unnamed");
  const int m = arity(doc, "m");
  const int n = arity(doc, "n");
  const json& elements = field(doc, "elements");
  if (!elements.is_array()) throw StructureError("'elements' must be an array");
  std::vector<std::string> labels;
  for (const auto& e : elements) labels.push_back(text_of(e, "element"));
  if (labels.size() > kMaxCarrier) throw StructureError("carrier exceeds 64 elements");

  const Elem zero = resolve(labels, field(doc, "zero"), "zero");
  std::optional<Elem> one;
  if (doc.contains("one") && !doc["one"].is_null()) one = resolve(labels, doc["one"], "one");

  std::vector<HyperEntry> f;
  const json& fs = field(doc, "f");
  if (!fs.is_array()) throw StructureError("'f' must be an array");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string where = "f[" + std::to_string(i) + "]";
    HyperEntry e{resolve_args(labels, fs[i], where), {}};
    const json& v = field(fs[i], "value");
    if (!v.is_array()) throw StructureError(where + ".value must be an array of labels");
    if (v.empty()) {
      std::string shown;
      for (Elem a : e.args) shown += (shown.empty() ? "" : ",") + labels[a];
      throw StructureError("empty value set for f(" + shown + ")");
    }
    for (const auto& x : v) e.value.insert(resolve(labels, x, where));
    f.push_back(std::move(e));
  }
  std::vector<OpEntry> g;
  const json& gs = field(doc, "g");
  if (!gs.is_array()) throw StructureError("'g' must be an array");
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const std::string where = "g[" + std::to_string(i) + "]";
    g.push_back({resolve_args(labels, gs[i], where), resolve(labels, field(gs[i], "value"), where)});
  }
  return Structure::from_entries(name, std::move(labels), m, n, zero, one, f, g);
}

Structure load_structure(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructureError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_structure(buf.str());
}

std::string export_structure(const Structure& s) {
  std::ostringstream os;
  auto args = [&](const Tuple& t) {
    std::string out = "[";
    for (std::size_t i = 0; i < t.size(); ++i) out += (i ? ", " : "") + quoted(s.label(t[i]));
    return out + "]";
  };
  os << "{\n";
  os << "  \"format\": \"kmn/1\",\n";
  os << "  \"name\": " << quoted(s.name()) << ",\n";
  os << "  \"m\": " << s.m() << ",\n";
  os << "  \"n\": " << s.n() << ",\n";
  os << "  \"elements\": [";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << quoted(s.label(static_cast<Elem>(i)));
  os << "],\n";
  os << "  \"zero\": " << quoted(s.label(s.zero())) << ",\n";
  if (s.one()) os << "  \"one\": " << quoted(s.label(*s.one())) << ",\n";
  os << "  \"f\": [\n";
  const auto fkeys = multisets(s.size(), s.m());
  const auto fvals = s.f_multiset_values();
  for (std::size_t i = 0; i < fkeys.size(); ++i)
    os << "    {\"args\": " << args(fkeys[i]) << ", \"value\": " << args(fvals[i].elements()) << "}"
       << (i + 1 < fkeys.size() ? ",\n" : "\n");
  os << "  ],\n";
  os << "  \"g\": [\n";
  const auto gkeys = multisets(s.size(), s.n());
  const auto gvals = s.g_multiset_values();
  for (std::size_t i = 0; i < gkeys.size(); ++i)
    os << "    {\"args\": " << args(gkeys[i]) << ", \"value\": " << quoted(s.label(gvals[i])) << "}"
       << (i + 1 < gkeys.size() ? ",\n" : "\n");
  os << "  ]\n";
  os << "}\n";
  return os.str();
}

void save_structure(const Structure& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StructureError("cannot write " + path.string());
  out << export_structure(s);
}

}  // namespace kmn
