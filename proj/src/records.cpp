#include "pexeq/records.hpp"

#include <fstream>
#include <mutex>

#include "json.hpp"

namespace pexeq {

namespace {

using json = nlohmann::ordered_json;

std::mutex g_log_mutex;

json solution_json(const SolutionTuple& s) {
  json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "solution";
  j["a"] = s.a.get_str();
  j["b"] = s.b.get_str();
  j["c"] = std::to_string(s.c);
  j["x"] = std::to_string(s.x);
  j["y"] = std::to_string(s.y);
  j["z"] = std::to_string(s.z);
  j["X"] = std::to_string(s.X);
  j["Y"] = std::to_string(s.Y);
  j["Z"] = std::to_string(s.Z);
  return j;
}

SolutionTuple solution_from_json(const json& j) {
  SolutionTuple s;
  s.a = mpz_class(j.at("a").get<std::string>());
  s.b = mpz_class(j.at("b").get<std::string>());
  s.c = std::stol(j.at("c").get<std::string>());
  s.x = std::stol(j.at("x").get<std::string>());
  s.y = std::stol(j.at("y").get<std::string>());
  s.z = std::stol(j.at("z").get<std::string>());
  s.X = std::stoll(j.at("X").get<std::string>());
  s.Y = std::stoll(j.at("Y").get<std::string>());
  s.Z = std::stoll(j.at("Z").get<std::string>());
  return s;
}

}  // namespace

std::string solution_record(const SolutionTuple& s) { return solution_json(s).dump(); }

std::string candidate_record(const Candidate& c) {
  json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "candidate";
  j["a"] = c.a.get_str();
  j["da"] = std::to_string(c.da);
  j["b"] = c.b.get_str();
  j["db"] = std::to_string(c.db);
  j["c"] = std::to_string(c.c);
  j["x"] = std::to_string(c.x);
  j["y"] = std::to_string(c.y);
  j["z"] = std::to_string(c.z);
  j["dprime"] = std::to_string(c.dprime);
  return j.dump();
}

std::string summary_record(const std::string& run, const PipelineResult& r) {
  json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "summary";
  j["run"] = run;
  j["step1"] = std::to_string(r.step1_rows);
  j["step1a"] = std::to_string(r.step1a_rows);
  j["step1b"] = std::to_string(r.step1b_rows);
  j["candidates"] = std::to_string(r.candidates);
  j["solutions"] = std::to_string((int64_t)r.solutions.size());
  return j.dump();
}

std::string report_record(const std::string& kind, const std::string& what, bool ok) {
  json j;
  j["schema"] = kSchemaVersion;
  j["type"] = kind;
  j["check"] = what;
  j["ok"] = ok ? "1" : "0";
  return j.dump();
}

bool validate_record(const std::string& line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return false;
  if (!j.contains("schema") || j["schema"] != kSchemaVersion) return false;
  if (!j.contains("type") || !j["type"].is_string()) return false;
  // every other field is a decimal-string integer or a plain string label
  for (auto& [k, v] : j.items()) {
    if (k == "schema") continue;
    if (!v.is_string()) return false;
  }
  return true;
}

CheckpointLog::CheckpointLog(const std::string& path, const std::string& fingerprint, bool resume)
    : path_(path) {
  if (path_.empty()) return;
  std::ifstream in(path_);
  if (in.good()) {
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded()) throw resume_error("checkpoint: corrupt line");
      std::string type = j.value("type", "");
      if (type == "checkpoint-header") {
        if (j.value("schema", -1) != kSchemaVersion)
          throw resume_error("checkpoint: schema mismatch");
        if (j.value("config", "") != fingerprint)
          throw resume_error("checkpoint: config fingerprint mismatch");
        have_header = true;
      } else if (type == "unit") {
        if (!have_header) throw resume_error("checkpoint: missing header");
        std::vector<SolutionTuple> sols;
        for (auto& sj : j.at("solutions")) sols.push_back(solution_from_json(sj));
        units_[j.at("key").get<std::string>()] = {
            std::stoll(j.at("candidates").get<std::string>()), sols};
      } else {
        throw resume_error("checkpoint: unknown record type");
      }
    }
    if (have_header && !resume)
      throw resume_error("checkpoint: exists; pass resume to continue it");
    if (have_header) return;
  }
  if (resume && !units_.empty()) return;
  std::ofstream out(path_, std::ios::trunc);
  if (!out) throw resume_error("checkpoint: cannot open for writing");
  json h;
  h["schema"] = kSchemaVersion;
  h["type"] = "checkpoint-header";
  h["config"] = fingerprint;
  out << h.dump() << "\n";
}

void CheckpointLog::record(const std::string& key, int64_t candidates,
                           const std::vector<SolutionTuple>& sols) {
  if (path_.empty()) return;
  json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "unit";
  j["key"] = key;
  j["candidates"] = std::to_string(candidates);
  j["solutions"] = json::array();
  for (auto& s : sols) j["solutions"].push_back(solution_json(s));
  std::lock_guard<std::mutex> lk(g_log_mutex);
  std::ofstream out(path_, std::ios::app);
  out << j.dump() << "\n";
  units_[key] = {candidates, sols};
}

}  // namespace pexeq
