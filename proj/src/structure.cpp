#include "kmn/structure.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace kmn {

bool canonical_less(ElementSet a, ElementSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  // Same cardinality: compare ascending member lists lexicographically. The
  // first differing member decides; the set holding the smaller one is less.
  const std::uint64_t diff = a.bits() ^ b.bits();
  if (diff == 0) return false;
  const std::uint64_t lowest = diff & (~diff + 1);
  return (a.bits() & lowest) != 0;
}

std::vector<Tuple> multisets(std::size_t size, std::size_t k) {
  std::vector<Tuple> out;
  for_each_multiset(size, k, [&](const Tuple& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::string tuple_text(std::span<const Elem> t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << int(t[i]);
  os << ')';
  return os.str();
}

void check_header(const std::vector<std::string>& labels, int m, int n, Elem zero) {
  if (labels.empty()) throw StructureError("carrier is empty");
  if (labels.size() > kMaxCarrier) throw StructureError("carrier exceeds 64 elements");
  if (m < 2 || n < 2) throw StructureError("arities must be at least 2");
  if (zero >= labels.size()) throw StructureError("zero is not a carrier element");
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw StructureError("empty element label");
    if (!seen.insert(l).second) throw StructureError("duplicate element label '" + l + "'");
  }
}

// Multisets and the dense-index -> multiset-index layout are shared by every
// structure of the same size and arity.
struct LayoutCache {
  std::mutex mu;
  std::map<std::pair<std::size_t, int>, std::vector<Tuple>> keys;
  std::map<std::pair<std::size_t, int>, std::vector<std::size_t>> layouts;
};

LayoutCache& layout_cache() {
  static LayoutCache cache;
  return cache;
}

const std::vector<Tuple>& multiset_cache(std::size_t size, int arity) {
  auto& c = layout_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  auto [it, inserted] = c.keys.try_emplace({size, arity});
  if (inserted) it->second = multisets(size, static_cast<std::size_t>(arity));
  return it->second;
}

const std::vector<std::size_t>& dense_layout(std::size_t size, int arity) {
  const auto& keys = multiset_cache(size, arity);
  auto& c = layout_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  auto [it, inserted] = c.layouts.try_emplace({size, arity});
  if (inserted) {
    std::map<Tuple, std::size_t> pos;
    for (std::size_t i = 0; i < keys.size(); ++i) pos.emplace(keys[i], i);
    auto& layout = it->second;
    layout.reserve(ipow(size, arity));
    for_each_tuple(size, static_cast<std::size_t>(arity), [&](const Tuple& t) {
      Tuple key = t;
      std::sort(key.begin(), key.end());
      layout.push_back(pos.at(key));
      return true;
    });
  }
  return it->second;
}

}  // namespace

Structure Structure::from_entries(std::string name, std::vector<std::string> labels, int m, int n, Elem zero,
                                  std::optional<Elem> declared_one, std::span<const HyperEntry> f,
                                  std::span<const OpEntry> g) {
  check_header(labels, m, n, zero);
  const std::size_t size = labels.size();
  std::map<Tuple, ElementSet> fmap;
  for (const auto& e : f) {
    if (e.args.size() != static_cast<std::size_t>(m))
      throw StructureError("f entry " + tuple_text(e.args) + " has wrong arity");
    for (Elem a : e.args)
      if (a >= size) throw StructureError("f entry " + tuple_text(e.args) + " uses unknown element");
    if (e.value.empty()) throw StructureError("empty value set for f" + tuple_text(e.args));
    if (!e.value.subset_of(ElementSet::full(size)))
      throw StructureError("f" + tuple_text(e.args) + " value uses unknown element");
    Tuple key = e.args;
    std::sort(key.begin(), key.end());
    auto [it, inserted] = fmap.emplace(key, e.value);
    if (!inserted && it->second != e.value)
      throw StructureError("conflicting f entries for multiset " + tuple_text(key));
  }
  std::map<Tuple, Elem> gmap;
  for (const auto& e : g) {
    if (e.args.size() != static_cast<std::size_t>(n))
      throw StructureError("g entry " + tuple_text(e.args) + " has wrong arity");
    for (Elem a : e.args)
      if (a >= size) throw StructureError("g entry " + tuple_text(e.args) + " uses unknown element");
    if (e.value >= size) throw StructureError("g" + tuple_text(e.args) + " value is unknown");
    Tuple key = e.args;
    std::sort(key.begin(), key.end());
    auto [it, inserted] = gmap.emplace(key, e.value);
    if (!inserted && it->second != e.value)
      throw StructureError("conflicting g entries for multiset " + tuple_text(key));
  }
  auto shown = [&](const Tuple& key) {
    std::string out = "(";
    for (std::size_t i = 0; i < key.size(); ++i) out += (i ? "," : "") + labels[key[i]];
    return out + ")";
  };
  std::vector<ElementSet> fv;
  for (const auto& key : multisets(size, m)) {
    auto it = fmap.find(key);
    if (it == fmap.end()) throw StructureError("incomplete table: f" + shown(key) + " is missing");
    fv.push_back(it->second);
  }
  std::vector<Elem> gv;
  for (const auto& key : multisets(size, n)) {
    auto it = gmap.find(key);
    if (it == gmap.end()) throw StructureError("incomplete table: g" + shown(key) + " is missing");
    gv.push_back(it->second);
  }
  Structure s = from_multiset_values(std::move(name), std::move(labels), m, n, zero, fv, gv);
  if (declared_one) {
    if (*declared_one >= s.size()) throw StructureError("declared one is not a carrier element");
    auto ids = s.scalar_identities();
    if (std::find(ids.begin(), ids.end(), *declared_one) == ids.end())
      throw StructureError("declared one '" + s.label(*declared_one) + "' is not a scalar identity of g");
    s.one_ = declared_one;
  }
  return s;
}

Structure Structure::from_multiset_values(std::string name, std::vector<std::string> labels, int m, int n,
                                          Elem zero, std::span<const ElementSet> f_values,
                                          std::span<const Elem> g_values) {
  check_header(labels, m, n, zero);
  Structure s;
  s.name_ = std::move(name);
  s.labels_ = std::move(labels);
  s.m_ = m;
  s.n_ = n;
  s.zero_ = zero;
  const std::size_t size = s.size();
  const auto& fkeys = multiset_cache(size, m);
  const auto& gkeys = multiset_cache(size, n);
  if (f_values.size() != fkeys.size()) throw StructureError("f table has wrong number of entries");
  if (g_values.size() != gkeys.size()) throw StructureError("g table has wrong number of entries");
  for (std::size_t i = 0; i < fkeys.size(); ++i) {
    if (f_values[i].empty()) throw StructureError("empty value set for f" + tuple_text(fkeys[i]));
    if (!f_values[i].subset_of(ElementSet::full(size)))
      throw StructureError("f" + tuple_text(fkeys[i]) + " value uses unknown element");
  }
  for (std::size_t i = 0; i < gkeys.size(); ++i)
    if (g_values[i] >= size) throw StructureError("g" + tuple_text(gkeys[i]) + " value is unknown");
  const auto& flayout = dense_layout(size, m);
  s.f_.resize(flayout.size());
  for (std::size_t i = 0; i < flayout.size(); ++i) s.f_[i] = f_values[flayout[i]];
  const auto& glayout = dense_layout(size, n);
  s.g_.resize(glayout.size());
  for (std::size_t i = 0; i < glayout.size(); ++i) s.g_[i] = g_values[glayout[i]];
  s.finish(std::nullopt);
  return s;
}

void Structure::finish(std::optional<Elem> declared_one) {
  if (declared_one) {
    one_ = declared_one;
    return;
  }
  auto ids = scalar_identities();
  one_ = ids.empty() ? std::nullopt : std::optional<Elem>(ids.front());
}

std::optional<Elem> Structure::find_label(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<Elem>(i);
  return std::nullopt;
}

std::string Structure::format(ElementSet s) const {
  std::string out = "{";
  bool first = true;
  for (Elem e : s) {
    if (!first) out += ",";
    out += labels_[e];
    first = false;
  }
  return out + "}";
}

std::string Structure::format(std::span<const Elem> t) const {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += labels_.at(t[i]);
  }
  return out + ")";
}

void Structure::check_args(std::span<const Elem> args, int arity, const char* op) const {
  if (args.size() != static_cast<std::size_t>(arity))
    throw StructureError(std::string(op) + " expects " + std::to_string(arity) + " arguments, got " +
                         std::to_string(args.size()));
  for (Elem a : args)
    if (a >= size()) throw StructureError(std::string(op) + " argument " + std::to_string(a) + " is foreign");
}

ElementSet Structure::f(std::span<const Elem> args) const {
  check_args(args, m_, "f");
  return f_unchecked(args.data());
}

Elem Structure::g(std::span<const Elem> args) const {
  check_args(args, n_, "g");
  return g_unchecked(args.data());
}

ElementSet Structure::f_sets(std::span<const ElementSet> args) const {
  if (args.size() != static_cast<std::size_t>(m_)) throw StructureError("f expects " + std::to_string(m_) + " sets");
  std::vector<std::vector<Elem>> pools;
  for (const auto& a : args) {
    if (a.empty()) throw StructureError("f on subsets requires nonempty arguments");
    if (!a.subset_of(carrier())) throw StructureError("f argument set contains foreign elements");
    pools.push_back(a.elements());
  }
  ElementSet out;
  Tuple t(m_);
  std::vector<std::size_t> pos(m_, 0);
  while (true) {
    for (int i = 0; i < m_; ++i) t[i] = pools[i][pos[i]];
    out |= f_unchecked(t.data());
    int i = m_ - 1;
    while (i >= 0 && ++pos[i] == pools[i].size()) pos[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

ElementSet Structure::f_iter(std::span<const Elem> args) const {
  const std::size_t t = args.size();
  const std::size_t step = static_cast<std::size_t>(m_ - 1);
  if (t == 0 || (t - 1) % step != 0)
    throw StructureError("f_(l) needs l(m-1)+1 arguments, got " + std::to_string(t));
  for (Elem a : args)
    if (a >= size()) throw StructureError("f_(l) argument is foreign");
  if (t == 1) return ElementSet::singleton(args[0]);
  ElementSet acc = f_unchecked(args.data());
  std::vector<ElementSet> sets(m_);
  for (std::size_t pos = m_; pos < t; pos += step) {
    sets[0] = acc;
    for (std::size_t j = 1; j <= step; ++j) sets[j] = ElementSet::singleton(args[pos + j - 1]);
    acc = f_sets(sets);
  }
  return acc;
}

ElementSet Structure::g_sets(std::span<const ElementSet> args) const {
  if (args.size() != static_cast<std::size_t>(n_)) throw StructureError("g expects " + std::to_string(n_) + " sets");
  std::vector<std::vector<Elem>> pools;
  for (const auto& a : args) {
    if (a.empty()) return {};
    pools.push_back(a.elements());
  }
  ElementSet out;
  Tuple t(n_);
  std::vector<std::size_t> pos(n_, 0);
  while (true) {
    for (int i = 0; i < n_; ++i) t[i] = pools[i][pos[i]];
    out.insert(g_unchecked(t.data()));
    int i = n_ - 1;
    while (i >= 0 && ++pos[i] == pools[i].size()) pos[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

Elem Structure::g_iter(std::span<const Elem> args) const {
  const std::size_t t = args.size();
  const std::size_t step = static_cast<std::size_t>(n_ - 1);
  if (t == 0 || (t - 1) % step != 0)
    throw StructureError("g_(l) needs l(n-1)+1 arguments, got " + std::to_string(t));
  for (Elem a : args)
    if (a >= size()) throw StructureError("g_(l) argument is foreign");
  if (t == 1) return args[0];
  Elem acc = g_unchecked(args.data());
  Tuple buf(n_);
  for (std::size_t pos = n_; pos < t; pos += step) {
    buf[0] = acc;
    for (std::size_t j = 1; j <= step; ++j) buf[j] = args[pos + j - 1];
    acc = g_unchecked(buf.data());
  }
  return acc;
}

Elem Structure::g_pair(Elem a, Elem b) const {
  if (!one_) throw PreconditionError("structure '" + name_ + "' has no scalar identity");
  Tuple t(n_, *one_);
  t[0] = a;
  t[1] = b;
  return g_unchecked(t.data());
}

Elem Structure::g_drop(std::span<const Elem> args, std::size_t i) const {
  if (!one_) throw PreconditionError("structure '" + name_ + "' has no scalar identity");
  Tuple t(args.begin(), args.end());
  t.at(i) = *one_;
  return g(t);
}

std::vector<ElementSet> Structure::f_multiset_values() const {
  std::vector<ElementSet> out;
  for_each_multiset(size(), m_, [&](const Tuple& t) {
    out.push_back(f_unchecked(t.data()));
    return true;
  });
  return out;
}

std::vector<Elem> Structure::g_multiset_values() const {
  std::vector<Elem> out;
  for_each_multiset(size(), n_, [&](const Tuple& t) {
    out.push_back(g_unchecked(t.data()));
    return true;
  });
  return out;
}

std::vector<Elem> Structure::scalar_identities() const {
  std::vector<Elem> out;
  Tuple t(n_);
  for (std::size_t u = 0; u < size(); ++u) {
    bool ok = true;
    for (std::size_t x = 0; x < size() && ok; ++x) {
      std::fill(t.begin(), t.end(), static_cast<Elem>(u));
      t[n_ - 1] = static_cast<Elem>(x);
      ok = g_unchecked(t.data()) == x;
    }
    if (ok) out.push_back(static_cast<Elem>(u));
  }
  return out;
}

Structure Structure::permuted(std::span<const Elem> perm) const {
  if (perm.size() != size()) throw StructureError("permutation has wrong length");
  Structure s = *this;
  for (std::size_t i = 0; i < size(); ++i) s.labels_[perm[i]] = labels_[i];
  auto map_set = [&](ElementSet in) {
    ElementSet out;
    for (Elem e : in) out.insert(perm[e]);
    return out;
  };
  Tuple image(std::max(m_, n_));
  for_each_tuple(size(), m_, [&](const Tuple& t) {
    for (int i = 0; i < m_; ++i) image[i] = perm[t[i]];
    s.f_[s.index(image.data(), m_)] = map_set(f_unchecked(t.data()));
    return true;
  });
  for_each_tuple(size(), n_, [&](const Tuple& t) {
    for (int i = 0; i < n_; ++i) image[i] = perm[t[i]];
    s.g_[s.index(image.data(), n_)] = perm[g_unchecked(t.data())];
    return true;
  });
  s.zero_ = perm[zero_];
  s.one_ = one_ ? std::optional<Elem>(perm[*one_]) : std::nullopt;
  return s;
}

Structure Structure::renamed(std::string name) const {
  Structure s = *this;
  s.name_ = std::move(name);
  return s;
}

bool Structure::operator==(const Structure& o) const {
  return name_ == o.name_ && labels_ == o.labels_ && m_ == o.m_ && n_ == o.n_ && zero_ == o.zero_ &&
         one_ == o.one_ && f_ == o.f_ && g_ == o.g_;
}

}  // namespace kmn
