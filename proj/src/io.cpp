#include "bs/io.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace bs::io {

using core::Presentation;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IOError, "cannot open '" + path + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::ParseError, "invalid JSON in '" + path + "'");
  return j;
}

walk::Measure measure_from_json(const json& j, int depth_cap) {
  if (!j.is_object() || !j.contains("p") || !j.contains("q") || !j.contains("support"))
    fail(ErrorCode::ParseError, "measure config needs p, q, support");
  if (!j["p"].is_number_integer() || !j["q"].is_number_integer())
    fail(ErrorCode::ParseError, "p and q must be integers");
  Presentation pres = core::classify(j["p"].get<int>(), j["q"].get<int>());
  if (!j["support"].is_array() || j["support"].empty())
    fail(ErrorCode::ParseError, "support must be a non-empty array");
  std::vector<std::pair<std::string, std::string>> support;
  for (const auto& e : j["support"]) {
    if (!e.is_object() || !e.contains("word") || !e.contains("prob"))
      fail(ErrorCode::ParseError, "each support entry needs word and prob");
    std::string prob;
    if (e["prob"].is_string())
      prob = e["prob"].get<std::string>();
    else if (e["prob"].is_number_integer())
      prob = std::to_string(e["prob"].get<long long>());
    else
      fail(ErrorCode::ParseError, "prob must be a rational string like \"1/2\"");
    support.emplace_back(e["word"].get<std::string>(), prob);
  }
  return walk::validate_measure(pres, support, depth_cap);
}

json measure_to_json(const walk::Measure& m) {
  json j;
  j["p"] = m.pres.raw_p;
  j["q"] = m.pres.raw_q;
  j["support"] = json::array();
  for (const auto& atom : m.atoms) {
    json e;
    e["word"] = atom.text;
    e["prob"] = rat_to_string(atom.prob);
    j["support"].push_back(e);
  }
  return j;
}

// nlohmann's default object backing is std::map, so dump() already emits keys
// in sorted order; compact separators make the byte stream canonical.
std::string canonical_dump(const json& j) { return j.dump(); }

std::uint64_t config_hash(const json& j) {
  std::string s = canonical_dump(j);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns,
                     const std::vector<std::pair<std::string, std::string>>& meta)
    : out_(path) {
  if (!out_) fail(ErrorCode::IOError, "cannot write '" + path + "'");
  for (const auto& [k, v] : meta) out_ << "# " << k << "=" << v << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    out_ << (i ? "," : "") << columns[i];
  out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    out_ << (i ? "," : "") << cells[i];
  out_ << "\n";
  if (!out_) fail(ErrorCode::IOError, "csv write failed");
}

JsonlWriter::JsonlWriter(const std::string& path) : out_(path) {
  if (!out_) fail(ErrorCode::IOError, "cannot write '" + path + "'");
}

void JsonlWriter::line(const json& j) {
  out_ << canonical_dump(j) << "\n";
  if (!out_) fail(ErrorCode::IOError, "jsonl write failed");
}

std::vector<json> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IOError, "cannot open '" + path + "'");
  std::vector<json> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::ParseError, "invalid JSONL line in '" + path + "'");
    out.push_back(std::move(j));
  }
  return out;
}

json checkpoint_to_json(std::uint64_t traj, const walk::Checkpoint& cp,
                        const Presentation& pres) {
  json j;
  j["traj"] = traj;
  j["n"] = cp.n;
  j["lambda"] = cp.lambda;
  j["sign"] = cp.sign;
  // A = (|q|/p)^lambda exactly, reconstructed from the level.
  Rat ratio(pres.abs_q(), pres.p);
  Rat A(1);
  std::int64_t e = cp.lambda >= 0 ? cp.lambda : -cp.lambda;
  Rat base = cp.lambda >= 0 ? ratio : Rat(1) / ratio;
  for (std::int64_t i = 0; i < e; ++i) A *= base;
  j["A"] = rat_to_string(A);
  if (cp.has_B) j["B"] = rat_to_string(cp.B);
  if (cp.has_x) j["x"] = cp.x.get_str();
  if (cp.tree_depth >= 0) {
    j["tree_depth"] = cp.tree_depth;
    j["tree_prefix"] = cp.tree_prefix;
  }
  if (!cp.nf.empty()) j["nf"] = cp.nf;
  return j;
}

walk::Checkpoint checkpoint_from_json(const json& j) {
  walk::Checkpoint cp;
  cp.n = j.at("n").get<std::int64_t>();
  cp.lambda = j.at("lambda").get<std::int64_t>();
  cp.sign = j.value("sign", 1);
  if (j.contains("B")) {
    cp.has_B = true;
    cp.B = parse_rat(j["B"].get<std::string>());
  }
  if (j.contains("x")) {
    cp.has_x = true;
    cp.x = parse_int(j["x"].get<std::string>());
  }
  if (j.contains("tree_depth")) {
    cp.tree_depth = j["tree_depth"].get<std::int64_t>();
    cp.tree_prefix = j.value("tree_prefix", std::string());
  }
  if (j.contains("nf")) cp.nf = j["nf"].get<std::string>();
  return cp;
}

std::vector<walk::Trajectory> trajectories_from_records(const std::vector<json>& records) {
  std::map<std::uint64_t, walk::Trajectory> by_stream;
  for (const auto& r : records) {
    if (!r.is_object() || r.contains("schema")) continue;
    if (!r.contains("traj") || !r.contains("n"))
      fail(ErrorCode::ParseError, "checkpoint record needs traj and n");
    std::uint64_t id = r["traj"].get<std::uint64_t>();
    auto& t = by_stream[id];
    t.stream = id;
    t.cps.push_back(checkpoint_from_json(r));
  }
  std::vector<walk::Trajectory> out;
  out.reserve(by_stream.size());
  for (auto& [id, t] : by_stream) {
    std::sort(t.cps.begin(), t.cps.end(),
              [](const walk::Checkpoint& a, const walk::Checkpoint& b) { return a.n < b.n; });
    out.push_back(std::move(t));
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

}  // namespace bs::io
