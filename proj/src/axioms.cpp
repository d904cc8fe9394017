#include "kmn/axioms.hpp"

#include <algorithm>

namespace kmn {

const char* to_string(AxiomStatus s) {
  switch (s) {
    case AxiomStatus::Pass:
      return "pass";
    case AxiomStatus::Fail:
      return "fail";
    case AxiomStatus::NotEvaluated:
      return "not-evaluated";
  }
  return "?";
}

bool AxiomReport::passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const AxiomResult& r) { return r.status == AxiomStatus::Pass; });
}

const AxiomResult* AxiomReport::find(const std::string& axiom) const {
  for (const auto& r : results)
    if (r.axiom == axiom) return &r;
  return nullptr;
}

std::vector<const AxiomResult*> AxiomReport::failures() const {
  std::vector<const AxiomResult*> out;
  for (const auto& r : results)
    if (r.status != AxiomStatus::Pass) out.push_back(&r);
  return out;
}

namespace {

using Failure = std::optional<AxiomResult>;

AxiomResult fail(std::string axiom, Tuple witness, std::string detail, int position = -1) {
  return AxiomResult{std::move(axiom), AxiomStatus::Fail, std::move(witness), position, std::move(detail)};
}

// f(x_0..x_{p-1}, f(x_p..x_{p+m-1}), x_{p+m}..x_{2m-2}) as a set.
ElementSet f_bracket(const Structure& s, const Tuple& x, int p) {
  const int m = s.m();
  ElementSet inner = s.f_unchecked(x.data() + p);
  Tuple outer(m);
  for (int i = 0; i < p; ++i) outer[i] = x[i];
  for (int i = p + 1; i < m; ++i) outer[i] = x[i + m - 1];
  ElementSet out;
  for (Elem y : inner) {
    outer[p] = y;
    out |= s.f_unchecked(outer.data());
  }
  return out;
}

Elem g_bracket(const Structure& s, const Tuple& x, int p) {
  const int n = s.n();
  Tuple outer(n);
  for (int i = 0; i < p; ++i) outer[i] = x[i];
  outer[p] = s.g_unchecked(x.data() + p);
  for (int i = p + 1; i < n; ++i) outer[i] = x[i + n - 1];
  return s.g_unchecked(outer.data());
}

Failure check_f_commutativity(const Structure& s) {
  Failure out;
  for_each_tuple(s.size(), s.m(), [&](const Tuple& t) {
    Tuple sorted = t;
    std::sort(sorted.begin(), sorted.end());
    if (s.f_unchecked(t.data()) != s.f_unchecked(sorted.data())) {
      out = fail("f.commutativity", t, "f differs from its sorted argument order");
      return false;
    }
    return true;
  });
  return out;
}

Failure check_g_commutativity(const Structure& s) {
  Failure out;
  for_each_tuple(s.size(), s.n(), [&](const Tuple& t) {
    Tuple sorted = t;
    std::sort(sorted.begin(), sorted.end());
    if (s.g_unchecked(t.data()) != s.g_unchecked(sorted.data())) {
      out = fail("g.commutativity", t, "g differs from its sorted argument order");
      return false;
    }
    return true;
  });
  return out;
}

Failure check_f_associativity(const Structure& s) {
  Failure out;
  for_each_tuple(s.size(), 2 * s.m() - 1, [&](const Tuple& x) {
    const ElementSet ref = f_bracket(s, x, 0);
    for (int p = 1; p < s.m(); ++p) {
      if (f_bracket(s, x, p) != ref) {
        out = fail("f.associativity", x, "bracket at position 1 differs from position " + std::to_string(p + 1), p);
        return false;
      }
    }
    return true;
  });
  return out;
}

Failure check_g_associativity(const Structure& s) {
  Failure out;
  for_each_tuple(s.size(), 2 * s.n() - 1, [&](const Tuple& x) {
    const Elem ref = g_bracket(s, x, 0);
    for (int p = 1; p < s.n(); ++p) {
      if (g_bracket(s, x, p) != ref) {
        out = fail("g.associativity", x, "bracket at position 1 differs from position " + std::to_string(p + 1), p);
        return false;
      }
    }
    return true;
  });
  return out;
}

bool is_neutral(const Structure& s, Elem e, Elem* bad = nullptr) {
  Tuple t(s.m(), e);
  for (std::size_t x = 0; x < s.size(); ++x) {
    t[0] = static_cast<Elem>(x);
    if (s.f_unchecked(t.data()) != ElementSet::singleton(static_cast<Elem>(x))) {
      if (bad) *bad = static_cast<Elem>(x);
      return false;
    }
  }
  return true;
}

Failure check_neutral(const Structure& s) {
  Elem bad = 0;
  if (!is_neutral(s, s.zero(), &bad))
    return fail("f.neutral", Tuple{s.zero(), bad}, "f(x, zero^(m-1)) != {x}");
  for (std::size_t e = 0; e < s.size(); ++e)
    if (e != s.zero() && is_neutral(s, static_cast<Elem>(e)))
      return fail("f.neutral", Tuple{static_cast<Elem>(e)}, "second scalar neutral element");
  return std::nullopt;
}

std::size_t inverse_count(const Structure& s, Elem x, Elem* last) {
  Tuple t(s.m(), s.zero());
  t[0] = x;
  std::size_t count = 0;
  for (std::size_t y = 0; y < s.size(); ++y) {
    t[1] = static_cast<Elem>(y);
    if (s.f_unchecked(t.data()).contains(s.zero())) {
      ++count;
      if (last) *last = static_cast<Elem>(y);
    }
  }
  return count;
}

Failure check_inverse(const Structure& s) {
  for (std::size_t x = 0; x < s.size(); ++x) {
    const std::size_t c = inverse_count(s, static_cast<Elem>(x), nullptr);
    if (c != 1)
      return fail("f.inverse", Tuple{static_cast<Elem>(x)},
                  c == 0 ? "no inverse" : std::to_string(c) + " inverses");
  }
  return std::nullopt;
}

Failure check_reversibility(const Structure& s, const std::vector<Elem>& inv) {
  Failure out;
  const int m = s.m();
  Tuple probe(m);
  for_each_tuple(s.size(), m, [&](const Tuple& x) {
    for (Elem a : s.f_unchecked(x.data())) {
      for (int i = 0; i < m; ++i) {
        probe[0] = a;
        int k = 1;
        for (int j = 0; j < m; ++j)
          if (j != i) probe[k++] = inv[x[j]];
        if (!s.f_unchecked(probe.data()).contains(x[i])) {
          Tuple w = x;
          w.push_back(a);
          out = fail("f.reversibility", w, "x_i not in f(a, inverses of the others)", i);
          return false;
        }
      }
    }
    return true;
  });
  return out;
}

Failure check_reproduction(const Structure& s) {
  Failure out;
  const int m = s.m();
  const ElementSet all = s.carrier();
  Tuple t(m);
  for_each_tuple(s.size(), m - 1, [&](const Tuple& a) {
    std::copy(a.begin(), a.end(), t.begin());
    ElementSet reach;
    for (std::size_t x = 0; x < s.size(); ++x) {
      t[m - 1] = static_cast<Elem>(x);
      reach |= s.f_unchecked(t.data());
    }
    if (reach != all) {
      Tuple w = a;
      w.push_back(all.minus(reach).first());
      out = fail("f.reproduction", w, "b in f(a_1..a_{m-1}, x) has no solution x");
      return false;
    }
    return true;
  });
  return out;
}

Failure check_distributivity(const Structure& s) {
  Failure out;
  const int m = s.m();
  const int n = s.n();
  Tuple gargs(n);
  Tuple images(m);
  for_each_tuple(s.size(), n - 1, [&](const Tuple& a) {
    std::copy(a.begin(), a.end(), gargs.begin());
    return for_each_tuple(s.size(), m, [&](const Tuple& x) {
      ElementSet lhs;
      for (Elem y : s.f_unchecked(x.data())) {
        gargs[n - 1] = y;
        lhs.insert(s.g_unchecked(gargs.data()));
      }
      for (int i = 0; i < m; ++i) {
        gargs[n - 1] = x[i];
        images[i] = s.g_unchecked(gargs.data());
      }
      if (lhs != s.f_unchecked(images.data())) {
        Tuple w = a;
        w.insert(w.end(), x.begin(), x.end());
        out = fail("distributivity", w, "g(a, f(x)) != f(g(a,x_1), ..., g(a,x_m))");
        return false;
      }
      return true;
    });
  });
  return out;
}

Failure check_zero(const Structure& s) {
  Failure out;
  Tuple t(s.n());
  for_each_tuple(s.size(), s.n() - 1, [&](const Tuple& x) {
    t[0] = s.zero();
    std::copy(x.begin(), x.end(), t.begin() + 1);
    if (s.g_unchecked(t.data()) != s.zero()) {
      out = fail("zero.absorbing", x, "g(zero, x_2..x_n) != zero");
      return false;
    }
    return true;
  });
  return out;
}

AxiomResult pass(std::string axiom) { return AxiomResult{std::move(axiom), AxiomStatus::Pass, {}, -1, {}}; }

void record(std::vector<AxiomResult>& out, const char* name, const Failure& f) {
  out.push_back(f ? *f : pass(name));
}

std::vector<AxiomResult> hypergroup_results(const Structure& s) {
  std::vector<AxiomResult> out;
  record(out, "f.commutativity", check_f_commutativity(s));
  record(out, "f.associativity", check_f_associativity(s));
  record(out, "f.neutral", check_neutral(s));
  auto inverse = check_inverse(s);
  record(out, "f.inverse", inverse);
  if (inverse || out[2].status != AxiomStatus::Pass) {
    out.push_back(AxiomResult{"f.reversibility", AxiomStatus::NotEvaluated, {}, -1,
                              "requires a neutral element with unique inverses"});
  } else {
    std::vector<Elem> inv(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) inv[x] = *additive_inverse(s, static_cast<Elem>(x));
    record(out, "f.reversibility", check_reversibility(s, inv));
  }
  record(out, "f.reproduction", check_reproduction(s));
  return out;
}

void sort_results(std::vector<AxiomResult>& r) {
  std::stable_sort(r.begin(), r.end(), [](const AxiomResult& a, const AxiomResult& b) { return a.axiom < b.axiom; });
}

}  // namespace

AxiomReport verify_canonical_hypergroup(const Structure& s) {
  AxiomReport rep;
  rep.results = hypergroup_results(s);
  sort_results(rep.results);
  rep.scalar_identities = s.scalar_identities();
  return rep;
}

AxiomReport verify_krasner(const Structure& s) {
  AxiomReport rep;
  rep.results = hypergroup_results(s);
  record(rep.results, "g.associativity", check_g_associativity(s));
  record(rep.results, "g.commutativity", check_g_commutativity(s));
  record(rep.results, "distributivity", check_distributivity(s));
  record(rep.results, "zero.absorbing", check_zero(s));
  sort_results(rep.results);
  rep.scalar_identities = s.scalar_identities();
  return rep;
}

bool is_canonical_hypergroup(const Structure& s) {
  if (check_neutral(s) || check_inverse(s) || check_reproduction(s) || check_f_associativity(s)) return false;
  std::vector<Elem> inv(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) inv[x] = *additive_inverse(s, static_cast<Elem>(x));
  return !check_reversibility(s, inv) && !check_f_commutativity(s);
}

bool satisfies_g_axioms(const Structure& s) {
  return !check_zero(s) && !check_g_commutativity(s) && !check_g_associativity(s) && !check_distributivity(s);
}

bool is_krasner(const Structure& s) { return is_canonical_hypergroup(s) && satisfies_g_axioms(s); }

bool replay_axiom_witness(const Structure& s, const AxiomResult& r) {
  if (r.status != AxiomStatus::Fail) return false;
  const Tuple& w = r.witness;
  for (Elem e : w)
    if (e >= s.size()) return false;
  const int m = s.m();
  const int n = s.n();
  if (r.axiom == "f.commutativity" || r.axiom == "g.commutativity") {
    const int arity = r.axiom[0] == 'f' ? m : n;
    if (w.size() != static_cast<std::size_t>(arity)) return false;
    Tuple sorted = w;
    std::sort(sorted.begin(), sorted.end());
    return r.axiom[0] == 'f' ? s.f(w) != s.f(sorted) : s.g(w) != s.g(sorted);
  }
  if (r.axiom == "f.associativity") {
    if (w.size() != static_cast<std::size_t>(2 * m - 1) || r.position < 1 || r.position >= m) return false;
    return f_bracket(s, w, 0) != f_bracket(s, w, r.position);
  }
  if (r.axiom == "g.associativity") {
    if (w.size() != static_cast<std::size_t>(2 * n - 1) || r.position < 1 || r.position >= n) return false;
    return g_bracket(s, w, 0) != g_bracket(s, w, r.position);
  }
  if (r.axiom == "f.neutral") {
    if (w.size() == 2) {
      Tuple t(m, w[0]);
      t[0] = w[1];
      return w[0] == s.zero() && s.f(t) != ElementSet::singleton(w[1]);
    }
    return w.size() == 1 && w[0] != s.zero() && is_neutral(s, w[0]);
  }
  if (r.axiom == "f.inverse") return w.size() == 1 && inverse_count(s, w[0], nullptr) != 1;
  if (r.axiom == "f.reversibility") {
    if (w.size() != static_cast<std::size_t>(m + 1) || r.position < 0 || r.position >= m) return false;
    Tuple x(w.begin(), w.begin() + m);
    const Elem a = w[m];
    if (!s.f(x).contains(a)) return false;
    Tuple probe{a};
    for (int j = 0; j < m; ++j) {
      if (j == r.position) continue;
      auto inv = additive_inverse(s, x[j]);
      if (!inv) return false;
      probe.push_back(*inv);
    }
    return !s.f(probe).contains(x[r.position]);
  }
  if (r.axiom == "f.reproduction") {
    if (w.size() != static_cast<std::size_t>(m)) return false;
    Tuple t(w.begin(), w.end() - 1);
    t.push_back(0);
    for (std::size_t x = 0; x < s.size(); ++x) {
      t.back() = static_cast<Elem>(x);
      if (s.f(t).contains(w.back())) return false;
    }
    return true;
  }
  if (r.axiom == "distributivity") {
    if (w.size() != static_cast<std::size_t>(n - 1 + m)) return false;
    Tuple gargs(w.begin(), w.begin() + (n - 1));
    gargs.push_back(0);
    Tuple x(w.begin() + (n - 1), w.end());
    ElementSet lhs;
    for (Elem y : s.f(x)) {
      gargs.back() = y;
      lhs.insert(s.g(gargs));
    }
    Tuple images;
    for (Elem xi : x) {
      gargs.back() = xi;
      images.push_back(s.g(gargs));
    }
    return lhs != s.f(images);
  }
  if (r.axiom == "zero.absorbing") {
    if (w.size() != static_cast<std::size_t>(n - 1)) return false;
    Tuple t{s.zero()};
    t.insert(t.end(), w.begin(), w.end());
    return s.g(t) != s.zero();
  }
  return false;
}

std::optional<Elem> additive_inverse(const Structure& s, Elem x) {
  Elem last = 0;
  if (inverse_count(s, x, &last) != 1) return std::nullopt;
  return last;
}

std::optional<Elem> inverse_of_g(const Structure& s, Elem x) {
  if (!s.one()) throw PreconditionError("structure '" + s.name() + "' has no scalar identity");
  for (std::size_t y = 0; y < s.size(); ++y)
    if (s.g_pair(x, static_cast<Elem>(y)) == *s.one()) return static_cast<Elem>(y);
  return std::nullopt;
}

bool is_invertible(const Structure& s, Elem x) { return inverse_of_g(s, x).has_value(); }

Hyperring Hyperring::verify(Structure s) {
  AxiomReport rep = verify_krasner(s);
  if (!rep.passed()) {
    std::string msg = "structure '" + s.name() + "' fails Krasner axioms:";
    for (const auto* f : rep.failures()) msg += " " + f->axiom;
    throw PreconditionError(msg);
  }
  return Hyperring(std::move(s), std::move(rep));
}

Hyperring Hyperring::unchecked(Structure s) {
  AxiomReport rep = verify_krasner(s);
  return Hyperring(std::move(s), std::move(rep));
}

}  // namespace kmn
