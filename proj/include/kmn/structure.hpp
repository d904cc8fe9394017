#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kmn/element_set.hpp"

namespace kmn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed tables, unknown labels, arity mismatches.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// An operation was asked to run outside its domain (no scalar identity,
/// improper ideal, unverified structure, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

using Tuple = std::vector<Elem>;

/// All non-decreasing tuples of length `k` over `[0, size)`, lexicographic.
std::vector<Tuple> multisets(std::size_t size, std::size_t k);

/// Calls `fn(const Tuple&)` for every ordered tuple of length `k` over
/// `[0, size)` in lexicographic order. Stops early and returns false as soon
/// as `fn` returns false.
template <class Fn>
bool for_each_tuple(std::size_t size, std::size_t k, Fn&& fn) {
  if (size == 0) return true;
  Tuple t(k, 0);
  while (true) {
    if (!fn(static_cast<const Tuple&>(t))) return false;
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++t[i] < size) break;
      t[i] = 0;
      if (i == 0) return true;
    }
    if (k == 0) return true;
  }
}

/// Same as for_each_tuple but only non-decreasing tuples.
template <class Fn>
bool for_each_multiset(std::size_t size, std::size_t k, Fn&& fn) {
  if (size == 0) return true;
  Tuple t(k, 0);
  while (true) {
    if (!fn(static_cast<const Tuple&>(t))) return false;
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (t[i] + 1U < size) {
        ++t[i];
        for (std::size_t j = i + 1; j < k; ++j) t[j] = t[i];
        break;
      }
      if (i == 0) return true;
    }
    if (k == 0) return true;
  }
}

/// One row of a hyperoperation table as read from a file: the argument tuple
/// (any order) and the nonempty value set.
struct HyperEntry {
  Tuple args;
  ElementSet value;
};

/// One row of a single-valued operation table.
struct OpEntry {
  Tuple args;
  Elem value = 0;
};

/// A finite commutative (m,n)-hyperstructure (R, f, g): an m-ary
/// hyperoperation f with nonempty set values and an n-ary single-valued
/// operation g, both stored as dense tables over ordered tuples and filled
/// from multiset-keyed entries. Immutable after construction.
class Structure {
 public:
  /// Builds from table rows. Rows may list arguments in any order; they are
  /// canonicalised to multisets. Throws StructureError on conflicting rows,
  /// missing multisets, empty value sets, or out-of-range ids. `declared_one`,
  /// when given, must be a scalar identity of g.
  static Structure from_entries(std::string name, std::vector<std::string> labels, int m, int n, Elem zero,
                                std::optional<Elem> declared_one, std::span<const HyperEntry> f,
                                std::span<const OpEntry> g);

  /// Builds from values listed in the order produced by `multisets(size, m)`
  /// (resp. `multisets(size, n)`).
  static Structure from_multiset_values(std::string name, std::vector<std::string> labels, int m, int n,
                                        Elem zero, std::span<const ElementSet> f_values,
                                        std::span<const Elem> g_values);

  const std::string& name() const { return name_; }
  std::size_t size() const { return labels_.size(); }
  int m() const { return m_; }
  int n() const { return n_; }
  Elem zero() const { return zero_; }
  /// Scalar identity of g: the declared one if it was given, otherwise the
  /// least element acting as one. Empty when g has none.
  std::optional<Elem> one() const { return one_; }
  ElementSet carrier() const { return ElementSet::full(size()); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Elem e) const { return labels_.at(e); }
  std::optional<Elem> find_label(std::string_view label) const;
  std::string format(ElementSet s) const;
  std::string format(std::span<const Elem> t) const;

  /// f on elements; throws StructureError on arity mismatch or foreign ids.
  ElementSet f(std::span<const Elem> args) const;
  /// f extended to nonempty subsets: union over the Cartesian product.
  ElementSet f_sets(std::span<const ElementSet> args) const;
  /// Iterated hyperoperation f_(l) on t = l(m-1)+1 arguments (left-nested).
  ElementSet f_iter(std::span<const Elem> args) const;

  Elem g(std::span<const Elem> args) const;
  /// Elementwise image {g(a_1..a_n) | a_i in A_i}.
  ElementSet g_sets(std::span<const ElementSet> args) const;
  /// Iterated operation g_(l) on t = l(n-1)+1 arguments (left fold).
  Elem g_iter(std::span<const Elem> args) const;

  /// Unchecked lookups for hot loops; `args` must be valid.
  ElementSet f_unchecked(const Elem* args) const { return f_[index(args, m_)]; }
  Elem g_unchecked(const Elem* args) const { return g_[index(args, n_)]; }

  /// g(a, b, one^(n-2)); requires a scalar identity.
  Elem g_pair(Elem a, Elem b) const;
  /// g(x_1..x_{i-1}, one, x_{i+1}..x_n); requires a scalar identity.
  Elem g_drop(std::span<const Elem> args, std::size_t i) const;

  /// Table values in multiset order (see `multisets`).
  std::vector<ElementSet> f_multiset_values() const;
  std::vector<Elem> g_multiset_values() const;

  /// Every element u with g(u^(n-1), x) = x for all x, ascending.
  std::vector<Elem> scalar_identities() const;

  /// The same tables with element `e` renamed to `perm[e]`. `perm` must be a
  /// permutation; labels move with their elements.
  Structure permuted(std::span<const Elem> perm) const;
  Structure renamed(std::string name) const;

  bool operator==(const Structure& other) const;

 private:
  Structure() = default;
  void finish(std::optional<Elem> declared_one);
  std::size_t index(const Elem* args, int arity) const {
    std::size_t idx = 0;
    for (int i = 0; i < arity; ++i) idx = idx * labels_.size() + args[i];
    return idx;
  }
  void check_args(std::span<const Elem> args, int arity, const char* op) const;

  std::string name_;
  std::vector<std::string> labels_;
  int m_ = 2;
  int n_ = 2;
  Elem zero_ = 0;
  std::optional<Elem> one_;
  std::vector<ElementSet> f_;
  std::vector<Elem> g_;
};

}  // namespace kmn
