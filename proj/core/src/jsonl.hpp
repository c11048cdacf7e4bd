#pragma once

// Line-delimited JSON helpers shared by the loaders.

#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "hyperrag/error.hpp"

namespace hyperrag::detail {

/// Calls `fn(record, line_no)` for every non-blank line; line numbers are
/// 1-based. Lines that are not JSON objects raise MalformedRecord.
template <typename Fn>
void for_each_record(std::string_view content, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    const std::size_t nl = content.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? content.size() : nl;
    std::string_view line = content.substr(pos, end - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) {
      nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
      if (rec.is_discarded() || !rec.is_object()) {
        throw Error(ErrorCode::kMalformedRecord, std::to_string(line_no), "not a JSON object");
      }
      fn(rec, line_no);
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

inline std::string required_string(const nlohmann::json& rec, const char* key, std::size_t line_no) {
  auto it = rec.find(key);
  if (it == rec.end() || !it->is_string()) {
    throw Error(ErrorCode::kMissingField, std::to_string(line_no), std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

inline std::optional<std::string> optional_string(const nlohmann::json& rec, const char* key, std::size_t line_no) {
  auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw Error(ErrorCode::kMalformedRecord, std::to_string(line_no), std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace hyperrag::detail
