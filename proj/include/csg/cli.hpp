#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace csg {

inline constexpr const char* kEngineVersion = "csg-engine-1";

/// Environment variable naming the cache root. Default: $XDG_CACHE_HOME/csg, else ~/.cache/csg.
inline constexpr const char* kCacheEnvVar = "CSG_CACHE_DIR";

enum ExitCode { kExitOk = 0, kExitVerification = 1, kExitUsage = 2, kExitResource = 3 };

std::filesystem::path cache_root();

class ResultCache {
 public:
  ResultCache(std::filesystem::path root, bool enabled);

  std::string key(const std::string& command, const nlohmann::json& parameters) const;
  std::optional<nlohmann::json> load(const std::string& key) const;
  void store(const std::string& key, const nlohmann::json& value) const;

  template <class F>
  nlohmann::json get_or_compute(const std::string& command, const nlohmann::json& parameters, F compute) {
    const std::string k = key(command, parameters);
    if (auto hit = load(k))
      return *hit;
    nlohmann::json value = compute();
    store(k, value);
    return value;
  }

 private:
  std::filesystem::path file_for(const std::string& key) const;

  std::filesystem::path root_;
  bool enabled_;
};

/// RFC-4180 field quoting.
std::string csv_field(const std::string& text);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace csg
