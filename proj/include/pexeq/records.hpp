#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pexeq/sieve.hpp"

namespace pexeq {

inline constexpr int kSchemaVersion = 1;

struct resume_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// line-oriented records, fixed key order, integers as decimal strings
std::string solution_record(const SolutionTuple& s);
std::string candidate_record(const Candidate& c);
std::string summary_record(const std::string& run, const PipelineResult& r);
std::string report_record(const std::string& kind, const std::string& what, bool ok);

// schema validation for one emitted line
bool validate_record(const std::string& line);

/// Append-only log of completed partition units. The header pins the schema
/// version and a config fingerprint; resume skips completed keys and replays
/// their recorded outputs.
class CheckpointLog {
 public:
  CheckpointLog() = default;  // disabled
  CheckpointLog(const std::string& path, const std::string& fingerprint, bool resume);

  bool enabled() const { return !path_.empty(); }
  bool done(const std::string& key) const { return units_.count(key) > 0; }
  int64_t recovered_candidates(const std::string& key) const { return units_.at(key).first; }
  const std::vector<SolutionTuple>& recovered_solutions(const std::string& key) const {
    return units_.at(key).second;
  }
  bool any_recovered() const { return !units_.empty(); }

  // thread-safe append of one completed unit
  void record(const std::string& key, int64_t candidates, const std::vector<SolutionTuple>& sols);

 private:
  std::string path_;
  std::map<std::string, std::pair<int64_t, std::vector<SolutionTuple>>> units_;
};

}  // namespace pexeq
