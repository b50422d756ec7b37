#include "nmr/signature.hpp"

#include <cctype>

#include "nmr/error.hpp"

namespace nmr {

bool is_proposition_name(std::string_view name) {
  if (name.empty() || name == "true" || name == "false") return false;
  const auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && head != '_') return false;
  std::size_t i = 1;
  while (i < name.size()) {
    const auto c = static_cast<unsigned char>(name[i]);
    if (!std::isalnum(c) && c != '_') break;
    ++i;
  }
  while (i < name.size() && name[i] == '\'') ++i;
  return i == name.size();
}

Signature::Signature(std::vector<std::string> props, std::size_t cap) : props_(std::move(props)) {
  const std::size_t limit = cap < kHardPropLimit ? cap : kHardPropLimit;
  if (props_.size() > limit) {
    throw CapExceeded("signature has " + std::to_string(props_.size()) +
                      " propositions; the cap is " + std::to_string(limit));
  }
  for (std::size_t k = 0; k < props_.size(); ++k) {
    if (!is_proposition_name(props_[k])) {
      throw SemanticError("illegal proposition name '" + props_[k] + "'");
    }
    if (!index_.emplace(props_[k], k).second) {
      throw SemanticError("duplicate proposition '" + props_[k] + "'");
    }
  }
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string describe_world(const Signature& sig, WorldId world) {
  std::string out;
  for (std::size_t k = 0; k < sig.size(); ++k) {
    if (k != 0) out += ' ';
    if (!world_value(world, k)) out += '!';
    out += sig.props()[k];
  }
  return out;
}

}  // namespace nmr
