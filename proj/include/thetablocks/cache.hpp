#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "thetablocks/jacobi.hpp"

namespace thetablocks {

inline constexpr const char* kAlgorithmVersion = "thetablocks-1";

struct CacheStats {
  long memory_hits = 0;
  long disk_hits = 0;
  long misses = 0;
  long writes = 0;
  long write_failures = 0;
  bool degraded = false;  // directory unusable, running from memory only
  std::string directory;
};

// Expansions keyed by (kind, root system, precision, algorithm version). Files are written to a
// temporary name and renamed into place, so concurrent writers never expose partial entries.
class ExpansionCache {
 public:
  explicit ExpansionCache(std::optional<std::filesystem::path> dir);

  // THETABLOCKS_CACHE_DIR, else $XDG_CACHE_HOME/thetablocks, else ~/.cache/thetablocks.
  static std::optional<std::filesystem::path> default_directory();
  // FNV-1a over the key fields, as 16 hex digits.
  static std::string key(const std::string& kind, const std::string& system, const Rational& precision);

  JacobiForm get(const std::string& kind, const std::string& system, const Rational& precision, bool persistent,
                 const std::function<JacobiForm()>& compute);

  // theta_R on the even sublattice; memory only.
  JacobiForm theta_even(const std::string& system, const Rational& precision);
  // -(theta | T_-(2)) / theta from theta_even at the given precision.
  JacobiForm psi(const std::string& system, const Rational& theta_precision);

  CacheStats stats() const;

 private:
  std::optional<std::filesystem::path> dir_;
  mutable std::mutex mu_;
  std::map<std::string, JacobiForm> memory_;
  CacheStats stats_;

  std::optional<JacobiForm> load(const std::string& key);
  void store(const std::string& key, const JacobiForm& f);
};

}  // namespace thetablocks
