#include "nmr/world_set.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace nmr {

WorldSet::WorldSet(std::size_t world_count, bool full)
    : universe_(world_count), words_((world_count + 63) / 64, full ? ~std::uint64_t{0} : 0) {
  trim();
}

WorldSet WorldSet::of(std::size_t world_count, const std::vector<WorldId>& ids) {
  WorldSet s(world_count);
  for (WorldId id : ids) s.insert(id);
  return s;
}

void WorldSet::trim() {
  const std::size_t tail = universe_ % 64;
  if (tail != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << tail) - 1;
}

bool WorldSet::contains(WorldId id) const {
  return id < universe_ && ((words_[id / 64] >> (id % 64)) & 1U) != 0;
}

void WorldSet::insert(WorldId id) {
  assert(id < universe_);
  words_[id / 64] |= std::uint64_t{1} << (id % 64);
}

void WorldSet::erase(WorldId id) {
  assert(id < universe_);
  words_[id / 64] &= ~(std::uint64_t{1} << (id % 64));
}

bool WorldSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t WorldSet::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool WorldSet::is_subset_of(const WorldSet& other) const {
  assert(universe_ == other.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

bool WorldSet::intersects(const WorldSet& other) const {
  assert(universe_ == other.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

WorldSet& WorldSet::operator&=(const WorldSet& other) {
  assert(universe_ == other.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

WorldSet& WorldSet::operator|=(const WorldSet& other) {
  assert(universe_ == other.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

WorldSet& WorldSet::operator-=(const WorldSet& other) {
  assert(universe_ == other.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

WorldSet WorldSet::complement() const {
  WorldSet out = *this;
  for (auto& w : out.words_) w = ~w;
  out.trim();
  return out;
}

std::vector<WorldId> WorldSet::ids() const {
  std::vector<WorldId> out;
  out.reserve(count());
  for_each([&](WorldId id) { out.push_back(id); });
  return out;
}

bool operator<(const WorldSet& a, const WorldSet& b) {
  if (a.universe_ != b.universe_) return a.universe_ < b.universe_;
  const auto x = a.ids();
  const auto y = b.ids();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

std::size_t WorldSet::hash() const {
  std::size_t h = std::hash<std::size_t>{}(universe_);
  for (std::uint64_t w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace nmr
