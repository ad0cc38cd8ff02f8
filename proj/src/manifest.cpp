#include "moran/manifest.hpp"

#include <chrono>
#include <ctime>

#include <json.hpp>

#include "moran/csv.hpp"
#include "moran/version.hpp"

namespace moran {

std::string utc_timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["subcommand"] = m.subcommand;
  j["config"] = nlohmann::json::parse(m.config_json);
  j["master_seed"] = m.master_seed;
  j["started_utc"] = m.started_utc;
  j["finished_utc"] = m.finished_utc;
  j["outputs"] = m.outputs;
  return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& m, const std::string& path) {
  write_text_file(path, manifest_json(m));
}

}  // namespace moran
