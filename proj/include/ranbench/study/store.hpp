#pragma once

#include <cstdio>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "ranbench/optimizer/domain.hpp"

namespace ranbench::study {

using optimizer::Space;
using optimizer::TrialRecord;
using optimizer::TrialState;

inline constexpr int kFormatVersion = 1;

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Append-only record log, one JSON object per line. A study is registered
/// with its parameter space before trials are appended to it. Each append is
/// flushed and fsync'ed before returning; a torn final line left by a crash
/// is dropped on load.
class StudyStore {
 public:
  /// Opens (creating if needed) the log at `path` and replays it.
  explicit StudyStore(std::string path);
  ~StudyStore();
  StudyStore(const StudyStore&) = delete;
  StudyStore& operator=(const StudyStore&) = delete;

  const std::string& path() const { return path_; }

  /// Registers `name`; re-registering with an identical space is a no-op,
  /// a different space is an error.
  void create_study(const std::string& name, const Space& space);
  bool has_study(const std::string& name) const;
  const Space& space(const std::string& name) const;
  std::vector<std::string> study_names() const;

  /// Persists `record` with the next sequential id and returns that id.
  /// Non-finite scores are stored as failed trials.
  int append_trial(TrialRecord record);

  /// Trials of one study in insertion order.
  std::vector<TrialRecord> trials(const std::string& study) const;
  const std::vector<TrialRecord>& all_trials() const { return records_; }

  /// Highest-scoring complete trial; ties go to the lowest id.
  TrialRecord best_trial(const std::string& study) const;

  /// Number of torn lines dropped while loading.
  int dropped_lines() const { return dropped_; }

 private:
  void load();
  void write_line(const std::string& line);

  std::string path_;
  std::FILE* file_ = nullptr;
  std::vector<std::string> study_order_;
  std::map<std::string, Space> spaces_;
  std::map<std::string, int> next_id_;
  std::vector<TrialRecord> records_;
  int dropped_ = 0;
};

nlohmann::json record_to_json(const TrialRecord& r);
TrialRecord record_from_json(const nlohmann::json& j);

/// Tab-separated table of the given trials: one row per trial with the
/// union of parameter names as columns (sorted), then score metadata.
void export_table(const std::vector<TrialRecord>& trials, std::ostream& out);

}  // namespace ranbench::study
