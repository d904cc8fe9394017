#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace kmn {

/// Index of an element in a structure's carrier.
using Elem = std::uint8_t;

/// Hard upper bound on carrier size imposed by the bitmask representation.
inline constexpr std::size_t kMaxCarrier = 64;

/// Subset of a carrier of at most 64 elements, stored as a bitmask.
class ElementSet {
 public:
  constexpr ElementSet() = default;
  constexpr explicit ElementSet(std::uint64_t bits) : bits_(bits) {}
  ElementSet(std::initializer_list<Elem> elems) {
    for (Elem e : elems) insert(e);
  }

  static constexpr ElementSet singleton(Elem e) { return ElementSet(std::uint64_t{1} << e); }
  static constexpr ElementSet full(std::size_t size) {
    return ElementSet(size >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size) - 1));
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(Elem e) const { return (bits_ >> e) & 1U; }
  constexpr void insert(Elem e) { bits_ |= std::uint64_t{1} << e; }
  constexpr void erase(Elem e) { bits_ &= ~(std::uint64_t{1} << e); }

  constexpr bool subset_of(ElementSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool is_single() const { return std::has_single_bit(bits_); }
  /// Least element; undefined on the empty set.
  constexpr Elem first() const { return static_cast<Elem>(std::countr_zero(bits_)); }

  constexpr ElementSet operator|(ElementSet o) const { return ElementSet(bits_ | o.bits_); }
  constexpr ElementSet operator&(ElementSet o) const { return ElementSet(bits_ & o.bits_); }
  constexpr ElementSet minus(ElementSet o) const { return ElementSet(bits_ & ~o.bits_); }
  constexpr ElementSet& operator|=(ElementSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr ElementSet& operator&=(ElementSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  constexpr bool operator==(const ElementSet&) const = default;

  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    out.reserve(size());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<Elem>(std::countr_zero(b)));
    return out;
  }

  /// Iteration in ascending carrier order.
  class iterator {
   public:
    using value_type = Elem;
    using difference_type = std::ptrdiff_t;
    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t b) : b_(b) {}
    constexpr Elem operator*() const { return static_cast<Elem>(std::countr_zero(b_)); }
    constexpr iterator& operator++() {
      b_ &= b_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator t = *this;
      ++*this;
      return t;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t b_ = 0;
  };
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

 private:
  std::uint64_t bits_ = 0;
};

/// Canonical order on subsets: by cardinality, then lexicographically on the
/// ascending member lists.
bool canonical_less(ElementSet a, ElementSet b);

}  // namespace kmn
