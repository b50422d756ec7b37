#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "nmr/signature.hpp"

namespace nmr {

// Set of world ids over a universe of `world_count` worlds, stored as a dense
// bitset. Two sets are only comparable when their universes agree.
class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(std::size_t world_count, bool full = false);

  static WorldSet all(const Signature& sig) { return WorldSet(sig.world_count(), true); }
  static WorldSet none(const Signature& sig) { return WorldSet(sig.world_count(), false); }
  static WorldSet of(std::size_t world_count, const std::vector<WorldId>& ids);

  std::size_t universe() const { return universe_; }
  bool contains(WorldId id) const;
  void insert(WorldId id);
  void erase(WorldId id);

  bool empty() const;
  std::size_t count() const;
  bool is_subset_of(const WorldSet& other) const;
  bool intersects(const WorldSet& other) const;

  WorldSet& operator&=(const WorldSet& other);
  WorldSet& operator|=(const WorldSet& other);
  WorldSet& operator-=(const WorldSet& other);
  WorldSet complement() const;

  friend WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
  friend WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }
  friend WorldSet operator-(WorldSet a, const WorldSet& b) { return a -= b; }

  // Ascending world ids.
  std::vector<WorldId> ids() const;
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int bit = __builtin_ctzll(bits);
        fn(static_cast<WorldId>(w * 64 + static_cast<std::size_t>(bit)));
        bits &= bits - 1;
      }
    }
  }

  bool operator==(const WorldSet& other) const = default;
  // Canonical order: lexicographic on the ascending id lists.
  friend bool operator<(const WorldSet& a, const WorldSet& b);

  std::size_t hash() const;

 private:
  void trim();

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace nmr

template <>
struct std::hash<nmr::WorldSet> {
  std::size_t operator()(const nmr::WorldSet& s) const noexcept { return s.hash(); }
};
