#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace moran {

// Written alongside every output file. The config snapshot is the fully
// resolved configuration, sufficient to reproduce the run bit-for-bit on
// the same build.
struct RunManifest {
  std::string subcommand;
  std::string config_json;  // resolved config snapshot, JSON text
  std::uint64_t master_seed = 0;
  std::string started_utc;
  std::string finished_utc;
  std::vector<std::string> outputs;
};

std::string utc_timestamp_now();
std::string manifest_json(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::string& path);

}  // namespace moran
