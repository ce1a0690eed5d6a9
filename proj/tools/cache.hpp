#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace cubicpts::cli {

std::uint64_t fnv1a(const std::string& s);

struct CacheCorrupt : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One file per key: the key, the row as a single JSON line, then a checksum
// over the first two lines.
class RowCache {
public:
  RowCache() = default;
  explicit RowCache(std::filesystem::path dir);

  bool enabled() const { return !dir_.empty(); }
  std::optional<nlohmann::json> get(const std::string& key) const;
  void put(const std::string& key, const nlohmann::json& row) const;

private:
  std::filesystem::path file_for(const std::string& key) const;
  std::filesystem::path dir_;
};

}  // namespace cubicpts::cli
