#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kmn/catalog.hpp"
#include "kmn/structure.hpp"

namespace fixtures {

using kmn::Elem;
using kmn::ElementSet;
using kmn::Structure;
using kmn::Tuple;

// A commutative ring Z_size-like structure given by element-wise + and *,
// lifted to an (m,n)-structure: f is the iterated sum, g the iterated product.
inline Structure ring(const std::string& name, std::size_t size, const std::function<Elem(Elem, Elem)>& add,
                      const std::function<Elem(Elem, Elem)>& mul, int m = 2, int n = 2,
                      std::vector<std::string> labels = {}) {
  if (labels.empty())
    for (std::size_t i = 0; i < size; ++i) labels.push_back(std::to_string(i));
  std::vector<ElementSet> fv;
  for (const auto& t : kmn::multisets(size, m)) {
    Elem acc = t[0];
    for (std::size_t i = 1; i < t.size(); ++i) acc = add(acc, t[i]);
    fv.push_back(ElementSet::singleton(acc));
  }
  std::vector<Elem> gv;
  for (const auto& t : kmn::multisets(size, n)) {
    Elem acc = t[0];
    for (std::size_t i = 1; i < t.size(); ++i) acc = mul(acc, t[i]);
    gv.push_back(acc);
  }
  return Structure::from_multiset_values(name, std::move(labels), m, n, 0, fv, gv);
}

inline Structure zmod(std::size_t k, int m = 2, int n = 2) {
  return ring("Z" + std::to_string(k), k, [k](Elem a, Elem b) { return static_cast<Elem>((a + b) % k); },
              [k](Elem a, Elem b) { return static_cast<Elem>((a * b) % k); }, m, n);
}

// Z2 x Z2 with elements 0=(0,0), 1=(1,1), 2=(1,0), 3=(0,1): not local.
inline Structure z2xz2(int m = 2, int n = 2) {
  auto enc = [](int a, int b) -> Elem {
    if (a == 0 && b == 0) return 0;
    if (a == 1 && b == 1) return 1;
    return a == 1 ? 2 : 3;
  };
  auto dec = [](Elem e, int& a, int& b) {
    static const int A[4] = {0, 1, 1, 0}, B[4] = {0, 1, 0, 1};
    a = A[e];
    b = B[e];
  };
  auto add = [=](Elem x, Elem y) {
    int a, b, c, d;
    dec(x, a, b);
    dec(y, c, d);
    return enc((a + c) % 2, (b + d) % 2);
  };
  auto mul = [=](Elem x, Elem y) {
    int a, b, c, d;
    dec(x, a, b);
    dec(y, c, d);
    return enc(a * c, b * d);
  };
  return ring("Z2xZ2", 4, add, mul, m, n, {"0", "1", "e", "f"});
}

// Krasner hyperfield on {0,1}: 1 + 1 = {0,1}.
inline Structure krasner_k() {
  const std::vector<ElementSet> fv{ElementSet{0}, ElementSet{1}, ElementSet{0, 1}};
  const std::vector<Elem> gv{0, 0, 1};
  return Structure::from_multiset_values("K", {"0", "1"}, 2, 2, 0, fv, gv);
}

// Sign hyperfield {0,1,-1}: 1 + (-1) = all.
inline Structure sign_hyperfield() {
  // multisets of size 2 over {0,1,2} with 2 = -1: 00 01 02 11 12 22
  const std::vector<ElementSet> fv{ElementSet{0}, ElementSet{1}, ElementSet{2},
                                   ElementSet{1}, ElementSet{0, 1, 2}, ElementSet{2}};
  // 00 01 02 11 12 22 -> 0 0 0 1 2 1
  const std::vector<Elem> gv{0, 0, 0, 1, 2, 1};
  return Structure::from_multiset_values("S", {"0", "1", "-1"}, 2, 2, 0, fv, gv);
}

inline const std::vector<kmn::CatalogEntry>& catalog() {
  static const std::vector<kmn::CatalogEntry> c = kmn::default_catalog();
  return c;
}

inline const kmn::CatalogEntry& builtin(const std::string& name) {
  static const std::vector<kmn::CatalogEntry> b = kmn::builtin_examples();
  for (const auto& e : b)
    if (e.structure.name() == name) return e;
  throw std::runtime_error("no builtin " + name);
}

}  // namespace fixtures
