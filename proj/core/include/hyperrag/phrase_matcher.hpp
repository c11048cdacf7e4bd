#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hyperrag {

/// Token trie answering "longest phrase starting at position i".
///
/// Each inserted phrase carries an integer payload; several payloads may
/// share one phrase (e.g. the same label under two dimensions).
class PhraseMatcher {
 public:
  struct Match {
    std::size_t length = 0;  // tokens consumed; 0 means no match
    std::span<const std::uint32_t> payloads;
  };

  void insert(std::span<const std::string> tokens, std::uint32_t payload);

  Match longest_at(std::span<const std::string> tokens, std::size_t pos) const;

  /// Greedy left-to-right scan: at each position take the longest phrase and
  /// jump past it, otherwise advance one token.
  template <typename Fn>
  void scan(std::span<const std::string> tokens, Fn&& on_match) const {
    std::size_t pos = 0;
    while (pos < tokens.size()) {
      Match m = longest_at(tokens, pos);
      if (m.length == 0) {
        ++pos;
        continue;
      }
      on_match(pos, m);
      pos += m.length;
    }
  }

  bool empty() const noexcept { return phrase_count_ == 0; }
  std::size_t phrase_count() const noexcept { return phrase_count_; }

 private:
  struct Node {
    std::unordered_map<std::string, std::uint32_t> next;
    std::vector<std::uint32_t> payloads;
  };
  std::vector<Node> nodes_{Node{}};
  std::size_t phrase_count_ = 0;
};

}  // namespace hyperrag
