#include "kmn/morphology.hpp"

#include <algorithm>

namespace kmn {

Quotient quotient(const Structure& s, ElementSet modulus) {
  if (!is_hyperideal(s, modulus))
    throw PreconditionError("quotient: " + s.format(modulus) + " is not a hyperideal of '" + s.name() + "'");
  const int m = s.m();
  const int n = s.n();
  const std::size_t size = s.size();
  Quotient q;
  q.modulus = modulus;

  std::vector<ElementSet> coset_of(size);
  Tuple t(m, s.zero());
  for (std::size_t r = 0; r < size; ++r) {
    t[0] = static_cast<Elem>(r);
    for (Elem i : modulus) {
      t[1] = i;
      coset_of[r] |= s.f_unchecked(t.data());
    }
  }
  for (std::size_t r = 0; r < size; ++r) {
    if (!coset_of[r].contains(static_cast<Elem>(r)))
      q.issues.push_back({"partition", {static_cast<Elem>(r)}, "r is not in its own coset"});
    for (std::size_t u = r + 1; u < size; ++u) {
      const ElementSet a = coset_of[r];
      const ElementSet b = coset_of[u];
      if (a != b && !(a & b).empty())
        q.issues.push_back({"partition", {static_cast<Elem>(r), static_cast<Elem>(u)}, "cosets overlap but differ"});
    }
  }
  if (!q.issues.empty()) return q;

  for (std::size_t r = 0; r < size; ++r)
    if (std::find(q.cosets.begin(), q.cosets.end(), coset_of[r]) == q.cosets.end()) q.cosets.push_back(coset_of[r]);
  std::sort(q.cosets.begin(), q.cosets.end(), [](ElementSet a, ElementSet b) { return a.first() < b.first(); });
  q.projection.resize(size);
  for (std::size_t r = 0; r < size; ++r)
    q.projection[r] = static_cast<Elem>(std::find(q.cosets.begin(), q.cosets.end(), coset_of[r]) - q.cosets.begin());

  // f(x_1..x_{m-1}, I) must be one of the cosets.
  Tuple probe(m);
  for_each_tuple(size, m - 1, [&](const Tuple& x) {
    std::copy(x.begin(), x.end(), probe.begin());
    ElementSet gen;
    for (Elem i : modulus) {
      probe[m - 1] = i;
      gen |= s.f_unchecked(probe.data());
    }
    if (std::find(q.cosets.begin(), q.cosets.end(), gen) == q.cosets.end()) {
      q.general_cosets_agree = false;
      return false;
    }
    return true;
  });

  const std::size_t k = q.cosets.size();
  std::vector<std::vector<Elem>> reps;
  for (const auto& c : q.cosets) reps.push_back(c.elements());

  auto project = [&](ElementSet in) {
    ElementSet out;
    for (Elem e : in) out.insert(q.projection[e]);
    return out;
  };

  // Induced tables, checked for representative independence.
  std::vector<ElementSet> fvals;
  for_each_multiset(k, m, [&](const Tuple& cs) {
    std::optional<ElementSet> value;
    Tuple rep(m);
    bool ok = for_each_tuple(size, m, [&](const Tuple& x) {
      for (int i = 0; i < m; ++i)
        if (q.projection[x[i]] != cs[i]) return true;
      ElementSet v = project(s.f_unchecked(x.data()));
      if (!value) {
        value = v;
        rep = x;
      } else if (*value != v) {
        Tuple w = rep;
        w.insert(w.end(), x.begin(), x.end());
        q.issues.push_back({"induced-f", w, "f on cosets depends on representatives"});
        return false;
      }
      return true;
    });
    fvals.push_back(value.value_or(ElementSet{}));
    return ok;
  });
  std::vector<Elem> gvals;
  for_each_multiset(k, n, [&](const Tuple& cs) {
    std::optional<Elem> value;
    Tuple rep(n);
    bool ok = for_each_tuple(size, n, [&](const Tuple& x) {
      for (int i = 0; i < n; ++i)
        if (q.projection[x[i]] != cs[i]) return true;
      Elem v = q.projection[s.g_unchecked(x.data())];
      if (!value) {
        value = v;
        rep = x;
      } else if (*value != v) {
        Tuple w = rep;
        w.insert(w.end(), x.begin(), x.end());
        q.issues.push_back({"induced-g", w, "g on cosets depends on representatives"});
        return false;
      }
      return true;
    });
    gvals.push_back(value.value_or(0));
    return ok;
  });
  if (!q.issues.empty()) return q;

  std::vector<std::string> labels;
  for (const auto& c : q.cosets) labels.push_back("[" + s.label(c.first()) + "]");
  q.structure = Structure::from_multiset_values(s.name() + "/" + s.format(modulus), std::move(labels), m, n,
                                                q.projection[s.zero()], fvals, gvals);
  return q;
}

HomCheck check_homomorphism(const Structure& source, const Structure& target, std::span<const Elem> map) {
  if (source.m() != target.m() || source.n() != target.n()) return {false, "arity", {}};
  if (map.size() != source.size()) return {false, "total", {}};
  for (std::size_t i = 0; i < map.size(); ++i)
    if (map[i] >= target.size()) return {false, "total", {static_cast<Elem>(i)}};
  HomCheck out;
  Tuple img(std::max(source.m(), source.n()));
  for_each_tuple(source.size(), source.m(), [&](const Tuple& x) {
    for (int i = 0; i < source.m(); ++i) img[i] = map[x[i]];
    if (image(map, source.f_unchecked(x.data())) != target.f_unchecked(img.data())) {
      out = {false, "f", x};
      return false;
    }
    return true;
  });
  if (!out.ok) return out;
  for_each_tuple(source.size(), source.n(), [&](const Tuple& y) {
    for (int i = 0; i < source.n(); ++i) img[i] = map[y[i]];
    if (map[source.g_unchecked(y.data())] != target.g_unchecked(img.data())) {
      out = {false, "g", y};
      return false;
    }
    return true;
  });
  return out;
}

bool replay_hom_witness(const Structure& source, const Structure& target, std::span<const Elem> map,
                        const HomCheck& failure) {
  if (failure.ok) return false;
  Tuple img;
  for (Elem e : failure.witness) img.push_back(map[e]);
  if (failure.clause == "f") return image(map, source.f(failure.witness)) != target.f(img);
  if (failure.clause == "g") return map[source.g(failure.witness)] != target.g(img);
  return failure.clause == "arity" || failure.clause == "total";
}

ElementSet image(std::span<const Elem> map, ElementSet subset) {
  ElementSet out;
  for (Elem e : subset) out.insert(map[e]);
  return out;
}

ElementSet preimage(std::span<const Elem> map, ElementSet subset) {
  ElementSet out;
  for (std::size_t i = 0; i < map.size(); ++i)
    if (subset.contains(map[i])) out.insert(static_cast<Elem>(i));
  return out;
}

ElementSet kernel(const Structure& /*source*/, const Structure& target, std::span<const Elem> map) {
  return preimage(map, ElementSet::singleton(target.zero()));
}

bool is_injective(std::span<const Elem> map, std::size_t /*target_size*/) {
  ElementSet seen;
  for (Elem e : map) {
    if (seen.contains(e)) return false;
    seen.insert(e);
  }
  return true;
}

bool is_surjective(std::span<const Elem> map, std::size_t target_size) {
  ElementSet seen;
  for (Elem e : map) seen.insert(e);
  return seen == ElementSet::full(target_size);
}

DeltaGammaCheck check_delta_gamma(const IdealEngine& source, const IdealEngine& target, std::span<const Elem> map,
                                  const Expansion& delta, const Expansion& gamma) {
  if (!check_homomorphism(source.structure(), target.structure(), map).ok)
    throw PreconditionError("check_delta_gamma: map is not a homomorphism");
  for (const ElementSet i2 : target.lattice().members()) {
    const ElementSet pre = preimage(map, i2);
    if (!source.lattice().contains(pre))
      return {false, i2, "preimage " + source.structure().format(pre) + " is not a hyperideal"};
    if (delta(pre) != preimage(map, gamma(i2)))
      return {false, i2, "delta(h^-1(I2)) != h^-1(gamma(I2))"};
  }
  return {};
}

Expansion quotient_expansion(const IdealEngine& base, const Quotient& q, const IdealEngine& quotient_engine,
                             const Expansion& delta) {
  std::vector<ElementSet> images;
  for (const ElementSet k : quotient_engine.lattice().members()) {
    const ElementSet pre = preimage(q.projection, k);
    if (!base.lattice().contains(pre))
      throw PreconditionError("delta_q: preimage of a quotient hyperideal is not a hyperideal");
    const ElementSet img = image(q.projection, delta(pre));
    if (!quotient_engine.lattice().contains(img))
      throw PreconditionError("delta_q: delta(I)/J is not a hyperideal of the quotient");
    images.push_back(img);
  }
  return Expansion("deltaq[" + delta.name() + "]", quotient_engine.lattice().members(), std::move(images));
}

}  // namespace kmn
