#include "thetablocks/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "thetablocks/lifts.hpp"
#include "thetablocks/serialize.hpp"

namespace thetablocks {

namespace fs = std::filesystem;

ExpansionCache::ExpansionCache(std::optional<fs::path> dir) : dir_(std::move(dir)) {
  if (!dir_) {
    stats_.degraded = true;
    return;
  }
  std::error_code ec;
  fs::create_directories(*dir_, ec);
  if (ec || !fs::is_directory(*dir_)) {
    dir_.reset();
    stats_.degraded = true;
    return;
  }
  stats_.directory = dir_->string();
}

std::optional<fs::path> ExpansionCache::default_directory() {
  if (const char* d = std::getenv("THETABLOCKS_CACHE_DIR"); d && *d) return fs::path(d);
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "thetablocks";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "thetablocks";
  return std::nullopt;
}

std::string ExpansionCache::key(const std::string& kind, const std::string& system, const Rational& precision) {
  std::uint64_t h = 1469598103934665603ull;
  auto feed = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  feed(kind);
  feed(system);
  feed(to_string(precision));
  feed(kAlgorithmVersion);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<JacobiForm> ExpansionCache::load(const std::string& key) {
  if (!dir_) return std::nullopt;
  fs::path p = *dir_ / (key + ".json");
  std::ifstream in(p);
  if (!in) return std::nullopt;
  try {
    Json j = Json::parse(in);
    if (j.at("version").get<std::string>() != kAlgorithmVersion) return std::nullopt;
    return jacobi_from_json(j.at("form"));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void ExpansionCache::store(const std::string& key, const JacobiForm& f) {
  if (!dir_) return;
  Json j{{"version", kAlgorithmVersion}, {"form", jacobi_to_json(f)}};
  std::ostringstream tag;
  tag << std::this_thread::get_id() << '-' << std::random_device{}();
  fs::path tmp = *dir_ / (key + ".tmp-" + tag.str());
  fs::path dst = *dir_ / (key + ".json");
  bool ok = false;
  {
    std::ofstream out(tmp);
    if (out) {
      out << j.dump();
      ok = static_cast<bool>(out.flush());
    }
  }
  std::error_code ec;
  if (ok) fs::rename(tmp, dst, ec);
  std::lock_guard lock(mu_);
  if (!ok || ec) {
    fs::remove(tmp, ec);
    ++stats_.write_failures;
    stats_.degraded = true;
  } else {
    ++stats_.writes;
  }
}

JacobiForm ExpansionCache::get(const std::string& kind, const std::string& system, const Rational& precision,
                               bool persistent, const std::function<JacobiForm()>& compute) {
  const std::string k = key(kind, system, precision);
  {
    std::lock_guard lock(mu_);
    if (auto it = memory_.find(k); it != memory_.end()) {
      ++stats_.memory_hits;
      return it->second;
    }
  }
  if (persistent) {
    if (auto f = load(k)) {
      std::lock_guard lock(mu_);
      ++stats_.disk_hits;
      memory_.emplace(k, *f);
      return *f;
    }
  }
  JacobiForm f = compute();
  if (persistent) store(k, f);
  std::lock_guard lock(mu_);
  ++stats_.misses;
  memory_.emplace(k, f);
  return f;
}

JacobiForm ExpansionCache::theta_even(const std::string& system, const Rational& precision) {
  return get("theta_even", system, precision, false,
             [&] { return theta_R_even(root_datum(system), precision); });
}

JacobiForm ExpansionCache::psi(const std::string& system, const Rational& theta_precision) {
  return get("psi", system, theta_precision, true,
             [&] { return borcherds_input(theta_even(system, theta_precision)).psi; });
}

CacheStats ExpansionCache::stats() const {
  std::lock_guard lock(mu_);
  return stats_;
}

}  // namespace thetablocks
