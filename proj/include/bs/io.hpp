#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bs/measure.hpp"
#include "bs/walk.hpp"

namespace bs::io {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kTrajSchema = "bs.traj.v1";

json load_json_file(const std::string& path);

// Measure config schema:
// {"p":2,"q":3,"support":[{"word":"a","prob":"1/2"}, ...]}
walk::Measure measure_from_json(const json& j, int depth_cap = 6);
json measure_to_json(const walk::Measure& m);

// Key-order-independent canonical serialization and its FNV-1a hash.
std::string canonical_dump(const json& j);
std::uint64_t config_hash(const json& j);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns,
            const std::vector<std::pair<std::string, std::string>>& meta);
  void row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
};

class JsonlWriter {
 public:
  explicit JsonlWriter(const std::string& path);
  void line(const json& j);

 private:
  std::ofstream out_;
};

std::vector<json> read_jsonl(const std::string& path);

json checkpoint_to_json(std::uint64_t traj, const walk::Checkpoint& cp,
                        const core::Presentation& pres);
walk::Checkpoint checkpoint_from_json(const json& j);

// Rebuilds per-trajectory checkpoint sequences from JSONL records, skipping
// header objects (the ones carrying a "schema" key). Trajectories come back
// sorted by stream id.
std::vector<walk::Trajectory> trajectories_from_records(const std::vector<json>& records);

std::string format_double(double v);

}  // namespace bs::io
