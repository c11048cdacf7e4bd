#include "hyperrag/phrase_matcher.hpp"

#include <algorithm>

namespace hyperrag {

void PhraseMatcher::insert(std::span<const std::string> tokens, std::uint32_t payload) {
  if (tokens.empty()) return;
  std::uint32_t node = 0;
  for (const auto& tok : tokens) {
    auto it = nodes_[node].next.find(tok);
    if (it == nodes_[node].next.end()) {
      const auto fresh = static_cast<std::uint32_t>(nodes_.size());
      nodes_[node].next.emplace(tok, fresh);
      nodes_.emplace_back();
      node = fresh;
    } else {
      node = it->second;
    }
  }
  auto& payloads = nodes_[node].payloads;
  if (payloads.empty()) ++phrase_count_;
  if (std::find(payloads.begin(), payloads.end(), payload) == payloads.end()) {
    payloads.push_back(payload);
    std::sort(payloads.begin(), payloads.end());
  }
}

PhraseMatcher::Match PhraseMatcher::longest_at(std::span<const std::string> tokens, std::size_t pos) const {
  Match best;
  std::uint32_t node = 0;
  for (std::size_t i = pos; i < tokens.size(); ++i) {
    auto it = nodes_[node].next.find(tokens[i]);
    if (it == nodes_[node].next.end()) break;
    node = it->second;
    if (!nodes_[node].payloads.empty()) {
      best.length = i - pos + 1;
      best.payloads = nodes_[node].payloads;
    }
  }
  return best;
}

}  // namespace hyperrag
