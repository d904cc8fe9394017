#pragma once

// Brute-force reference implementations written directly from the
// definitions. They only read table entries through Structure::f and
// Structure::g and share no code with the library's checkers.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "kmn/structure.hpp"

namespace oracle {

using kmn::Elem;
using kmn::ElementSet;
using kmn::Structure;
using kmn::Tuple;

using Bits = std::uint64_t;

inline Bits bit(Elem e) { return Bits{1} << e; }
inline bool has(Bits s, Elem e) { return (s >> e) & 1U; }

inline void tuples(std::size_t size, std::size_t k, const std::function<void(const Tuple&)>& fn) {
  Tuple t(k, 0);
  if (size == 0) return;
  while (true) {
    fn(t);
    std::size_t i = k;
    while (true) {
      if (i == 0) return;
      --i;
      if (++t[i] < size) break;
      t[i] = 0;
    }
  }
}

// Tuples with entries drawn from `allowed`.
inline void tuples_in(Bits allowed, std::size_t size, std::size_t k, const std::function<void(const Tuple&)>& fn) {
  tuples(size, k, [&](const Tuple& t) {
    for (Elem e : t)
      if (!has(allowed, e)) return;
    fn(t);
  });
}

inline Bits f(const Structure& s, const Tuple& t) { return s.f(t).bits(); }
inline Elem g(const Structure& s, const Tuple& t) { return s.g(t); }

// f on sets: union over all choices.
inline Bits f_sets(const Structure& s, const std::vector<Bits>& args) {
  Bits out = 0;
  const std::size_t size = s.size();
  tuples(size, args.size(), [&](const Tuple& t) {
    for (std::size_t i = 0; i < t.size(); ++i)
      if (!has(args[i], t[i])) return;
    out |= f(s, t);
  });
  return out;
}

// Left-nested n-ary product of l(n-1)+1 factors.
inline Elem g_fold(const Structure& s, const Tuple& xs) {
  const std::size_t n = s.n();
  Elem acc = xs[0];
  std::size_t i = 1;
  while (i < xs.size()) {
    Tuple t{acc};
    for (std::size_t j = 0; j + 1 < n; ++j) t.push_back(xs[i + j]);
    acc = g(s, t);
    i += n - 1;
  }
  return acc;
}

inline std::vector<Elem> identities(const Structure& s) {
  std::vector<Elem> out;
  for (Elem u = 0; u < s.size(); ++u) {
    bool ok = true;
    for (Elem x = 0; x < s.size() && ok; ++x) {
      for (std::size_t pos = 0; pos < static_cast<std::size_t>(s.n()) && ok; ++pos) {
        Tuple t(s.n(), u);
        t[pos] = x;
        ok = g(s, t) == x;
      }
    }
    if (ok) out.push_back(u);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Axioms.

inline bool f_commutative(const Structure& s) {
  bool ok = true;
  tuples(s.size(), s.m(), [&](const Tuple& t) {
    Tuple p = t;
    std::sort(p.begin(), p.end());
    do {
      if (f(s, p) != f(s, t)) ok = false;
    } while (ok && std::next_permutation(p.begin(), p.end()));
  });
  return ok;
}

inline bool f_associative(const Structure& s) {
  const std::size_t m = s.m();
  bool ok = true;
  tuples(s.size(), 2 * m - 1, [&](const Tuple& x) {
    if (!ok) return;
    Bits first = 0;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Bits> args;
      for (std::size_t j = 0; j < i; ++j) args.push_back(bit(x[j]));
      args.push_back(f(s, Tuple(x.begin() + i, x.begin() + i + m)));
      for (std::size_t j = i + m; j < x.size(); ++j) args.push_back(bit(x[j]));
      const Bits v = f_sets(s, args);
      if (i == 0) first = v;
      else if (v != first) ok = false;
    }
  });
  return ok;
}

inline bool f_neutral(const Structure& s) {
  const Elem e = s.zero();
  for (Elem x = 0; x < s.size(); ++x)
    for (std::size_t i = 0; i < static_cast<std::size_t>(s.m()); ++i) {
      Tuple t(s.m(), e);
      t[i] = x;
      if (f(s, t) != bit(x)) return false;
    }
  return true;
}

// Unique y with zero in f(x, y, 0^(m-2)); -1 when none or several.
inline int inverse(const Structure& s, Elem x) {
  int found = -1;
  for (Elem y = 0; y < s.size(); ++y) {
    Tuple t(s.m(), s.zero());
    t[0] = x;
    t[1] = y;
    if (has(f(s, t), s.zero())) {
      if (found >= 0) return -1;
      found = y;
    }
  }
  return found;
}

inline bool f_inverses(const Structure& s) {
  for (Elem x = 0; x < s.size(); ++x)
    if (inverse(s, x) < 0) return false;
  return true;
}

// x in f(x_1..x_m) implies x_i in f(x, x_1^-1, .., x_{i-1}^-1, x_{i+1}^-1, .., x_m^-1).
inline bool f_reversible(const Structure& s) {
  bool ok = true;
  tuples(s.size(), s.m(), [&](const Tuple& xs) {
    const Bits v = f(s, xs);
    for (Elem x = 0; x < s.size() && ok; ++x) {
      if (!has(v, x)) continue;
      for (std::size_t i = 0; i < xs.size() && ok; ++i) {
        Tuple t{x};
        for (std::size_t j = 0; j < xs.size(); ++j)
          if (j != i) t.push_back(static_cast<Elem>(inverse(s, xs[j])));
        if (!has(f(s, t), xs[i])) ok = false;
      }
    }
  });
  return ok;
}

inline bool f_reproductive(const Structure& s) {
  const Bits all = s.carrier().bits();
  bool ok = true;
  tuples(s.size(), s.m() - 1, [&](const Tuple& xs) {
    Bits u = 0;
    for (Elem y = 0; y < s.size(); ++y) {
      Tuple t = xs;
      t.push_back(y);
      u |= f(s, t);
    }
    if (u != all) ok = false;
  });
  return ok;
}

inline bool canonical_hypergroup(const Structure& s) {
  return f_commutative(s) && f_associative(s) && f_neutral(s) && f_inverses(s) && f_reversible(s) &&
         f_reproductive(s);
}

inline bool g_commutative(const Structure& s) {
  bool ok = true;
  tuples(s.size(), s.n(), [&](const Tuple& t) {
    Tuple p = t;
    std::sort(p.begin(), p.end());
    do {
      if (g(s, p) != g(s, t)) ok = false;
    } while (ok && std::next_permutation(p.begin(), p.end()));
  });
  return ok;
}

inline bool g_associative(const Structure& s) {
  const std::size_t n = s.n();
  bool ok = true;
  tuples(s.size(), 2 * n - 1, [&](const Tuple& x) {
    if (!ok) return;
    int first = -1;
    for (std::size_t i = 0; i < n; ++i) {
      Tuple outer(x.begin(), x.begin() + i);
      outer.push_back(g(s, Tuple(x.begin() + i, x.begin() + i + n)));
      outer.insert(outer.end(), x.begin() + i + n, x.end());
      const int v = g(s, outer);
      if (first < 0) first = v;
      else if (v != first) ok = false;
    }
  });
  return ok;
}

inline bool zero_absorbing(const Structure& s) {
  bool ok = true;
  tuples(s.size(), s.n() - 1, [&](const Tuple& xs) {
    Tuple t = xs;
    t.push_back(s.zero());
    if (g(s, t) != s.zero()) ok = false;
  });
  return ok;
}

// g(x_1..x_{n-1}, f(a_1..a_m)) = f(g(x, a_1), .., g(x, a_m)) as sets.
inline bool distributive(const Structure& s) {
  bool ok = true;
  tuples(s.size(), s.n() - 1 + s.m(), [&](const Tuple& t) {
    if (!ok) return;
    const Tuple xs(t.begin(), t.begin() + s.n() - 1);
    const Tuple as(t.begin() + s.n() - 1, t.end());
    Bits lhs = 0;
    for (Elem a = 0; a < s.size(); ++a)
      if (has(f(s, as), a)) {
        Tuple u = xs;
        u.push_back(a);
        lhs |= bit(g(s, u));
      }
    Tuple inner;
    for (Elem a : as) {
      Tuple u = xs;
      u.push_back(a);
      inner.push_back(g(s, u));
    }
    if (lhs != f(s, inner)) ok = false;
  });
  return ok;
}

inline bool krasner(const Structure& s) {
  return canonical_hypergroup(s) && g_commutative(s) && g_associative(s) && zero_absorbing(s) && distributive(s);
}

// ---------------------------------------------------------------------------
// Hyperideals.

inline bool is_hyperideal(const Structure& s, Bits I) {
  if (!has(I, s.zero())) return false;
  bool ok = true;
  // (I, f) is a subhypergroup: closed, and f(b_1..b_{m-1}, I) = I.
  tuples_in(I, s.size(), s.m(), [&](const Tuple& t) {
    if (f(s, t) & ~I) ok = false;
  });
  if (!ok) return false;
  tuples_in(I, s.size(), s.m() - 1, [&](const Tuple& bs) {
    Bits u = 0;
    for (Elem x = 0; x < s.size(); ++x)
      if (has(I, x)) {
        Tuple t = bs;
        t.push_back(x);
        u |= f(s, t);
      }
    if (u != I) ok = false;
  });
  if (!ok) return false;
  tuples(s.size(), s.n(), [&](const Tuple& t) {
    for (Elem e : t)
      if (has(I, e)) {
        if (!has(I, g(s, t))) ok = false;
        return;
      }
  });
  return ok;
}

inline std::vector<Bits> lattice(const Structure& s) {
  std::vector<Bits> out;
  const Bits all = s.carrier().bits();
  for (Bits b = 1; b <= all; ++b)
    if (is_hyperideal(s, b)) out.push_back(b);
  return out;
}

inline bool subset(Bits a, Bits b) { return (a & ~b) == 0; }

inline std::vector<Bits> maximal(const Structure& s) {
  const Bits all = s.carrier().bits();
  const auto lat = lattice(s);
  std::vector<Bits> out;
  for (Bits m : lat) {
    if (m == all) continue;
    bool top = true;
    for (Bits n : lat)
      if (n != m && n != all && subset(m, n)) top = false;
    if (top) out.push_back(m);
  }
  return out;
}

inline Bits jacobson(const Structure& s) {
  Bits j = s.carrier().bits();
  for (Bits m : maximal(s)) j &= m;
  return j;
}

// Ideal-wise primeness: g(U_1..U_n) inside P forces some U_i inside P.
inline bool is_prime(const Structure& s, Bits P) {
  if (P == s.carrier().bits()) return false;
  const auto lat = lattice(s);
  bool ok = true;
  tuples(lat.size(), s.n(), [&](const Tuple& idx) {
    if (!ok) return;
    Bits prod = 0;
    tuples(s.size(), s.n(), [&](const Tuple& t) {
      for (std::size_t i = 0; i < t.size(); ++i)
        if (!has(lat[idx[i]], t[i])) return;
      prod |= bit(g(s, t));
    });
    if (!subset(prod, P)) return;
    for (auto i : idx)
      if (subset(lat[i], P)) return;
    ok = false;
  });
  return ok;
}

inline Bits radical(const Structure& s, Bits I) {
  Bits r = s.carrier().bits();
  for (Bits p : lattice(s))
    if (subset(I, p) && is_prime(s, p)) r &= p;
  return r;
}

inline Elem drop(const Structure& s, const Tuple& x, std::size_t i, Elem one) {
  Tuple t = x;
  t[i] = one;
  return g(s, t);
}

// delta-J with expansion value dQ; plain J when dQ == Q.
inline bool is_delta_j(const Structure& s, Bits Q, Bits dQ) {
  const auto ids = identities(s);
  const Elem one = ids.front();
  const Bits J = jacobson(s);
  bool ok = true;
  tuples(s.size(), s.n(), [&](const Tuple& x) {
    if (!ok || !has(Q, g(s, x))) return;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!has(J, x[i]) && !has(dQ, drop(s, x, i, one))) ok = false;
  });
  return ok;
}

// (k,n)-absorbing delta-J, directly from the definition.
inline bool is_kn_absorbing(const Structure& s, Bits Q, Bits dQ, int k) {
  const std::size_t n = s.n();
  const std::size_t len = k * (n - 1) + 1;
  const std::size_t sub = (k - 1) * (n - 1) + 1;
  const Bits J = jacobson(s);
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<bool> pick(len, false);
  std::fill(pick.begin(), pick.begin() + sub, true);
  do {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < len; ++i)
      if (pick[i]) idx.push_back(i);
    subsets.push_back(idx);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  bool ok = true;
  tuples(s.size(), len, [&](const Tuple& x) {
    if (!ok || !has(Q, g_fold(s, x))) return;
    if (has(J, g_fold(s, Tuple(x.begin(), x.begin() + sub)))) return;
    for (std::size_t j = 1; j < subsets.size(); ++j) {
      Tuple y;
      for (auto i : subsets[j]) y.push_back(x[i]);
      if (has(dQ, g_fold(s, y))) return;
    }
    ok = false;
  });
  return ok;
}

}  // namespace oracle
