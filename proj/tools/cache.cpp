#include "cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cubicpts::cli {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {
std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}
}  // namespace

RowCache::RowCache(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

std::filesystem::path RowCache::file_for(const std::string& key) const { return dir_ / (hex(fnv1a(key)) + ".row"); }

std::optional<nlohmann::json> RowCache::get(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(file_for(key));
  if (!in) return std::nullopt;
  std::string k, body, sum;
  std::getline(in, k);
  std::getline(in, body);
  std::getline(in, sum);
  const std::string expect = "checksum " + hex(fnv1a(k + "\n" + body));
  if (sum != expect) throw CacheCorrupt("cache entry " + file_for(key).string() + " failed its checksum");
  if (k != "key " + key) throw CacheCorrupt("cache entry " + file_for(key).string() + " holds a different key");
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception&) {
    throw CacheCorrupt("cache entry " + file_for(key).string() + " is not valid JSON");
  }
}

void RowCache::put(const std::string& key, const nlohmann::json& row) const {
  if (!enabled()) return;
  const std::string k = "key " + key, body = row.dump();
  const auto path = file_for(key);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << k << "\n" << body << "\n" << "checksum " << hex(fnv1a(k + "\n" + body)) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cubicpts::cli
