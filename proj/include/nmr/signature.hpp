#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nmr {

inline constexpr std::size_t kDefaultPropCap = 20;
// World sets are dense bitsets over 2^n worlds; beyond this they stop fitting
// comfortably in memory no matter what cap the caller asks for.
inline constexpr std::size_t kHardPropLimit = 26;

using WorldId = std::uint32_t;

// True when `name` is a legal proposition name: [A-Za-z_][A-Za-z0-9_]* with
// any number of trailing apostrophes. `true` and `false` are reserved.
bool is_proposition_name(std::string_view name);

// Ordered, duplicate-free list of proposition names. Bit k of a world id is
// the truth value of props()[k].
class Signature {
 public:
  Signature() = default;
  // Throws SemanticError on an illegal or repeated name and CapExceeded when
  // props.size() > cap (or > kHardPropLimit).
  explicit Signature(std::vector<std::string> props, std::size_t cap = kDefaultPropCap);

  const std::vector<std::string>& props() const { return props_; }
  std::size_t size() const { return props_.size(); }
  std::size_t world_count() const { return std::size_t{1} << props_.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  bool operator==(const Signature& other) const { return props_ == other.props_; }

 private:
  std::vector<std::string> props_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline bool world_value(WorldId world, std::size_t prop) { return ((world >> prop) & 1U) != 0; }

// "a a' !b" style rendering of a world, props in signature order.
std::string describe_world(const Signature& sig, WorldId world);

}  // namespace nmr
