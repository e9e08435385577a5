#include "ranbench/study/store.hpp"

#include <unistd.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ranbench/format.hpp"

namespace ranbench::study {

using nlohmann::json;

namespace {

const char* state_name(TrialState s) { return s == TrialState::Complete ? "complete" : "failed"; }

TrialState parse_state(const std::string& s) {
  if (s == "complete") return TrialState::Complete;
  if (s == "failed") return TrialState::Failed;
  throw StoreError("unknown trial state '" + s + "'");
}

}  // namespace

json record_to_json(const TrialRecord& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = optimizer::to_json_value(v);
  json j = {{"v", kFormatVersion},
            {"type", "trial"},
            {"study", r.study},
            {"trial_id", r.trial_id},
            {"params", params},
            {"state", state_name(r.state)},
            {"wall_time_s", r.wall_time_s},
            {"seed", r.seed},
            {"attrs", r.attrs}};
  j["score"] = r.state == TrialState::Complete ? json(r.score) : json(nullptr);
  return j;
}

TrialRecord record_from_json(const json& j) {
  TrialRecord r;
  r.study = j.at("study").get<std::string>();
  r.trial_id = j.at("trial_id").get<int>();
  for (const auto& [k, v] : j.at("params").items()) r.params[k] = optimizer::from_json_value(v);
  r.state = parse_state(j.at("state").get<std::string>());
  r.score = j.at("score").is_null() ? std::nan("") : j.at("score").get<double>();
  r.wall_time_s = j.value("wall_time_s", 0.0);
  r.seed = j.value("seed", std::uint64_t{0});
  r.attrs = j.value("attrs", json::object());
  return r;
}

StudyStore::StudyStore(std::string path) : path_(std::move(path)) {
  load();
  file_ = std::fopen(path_.c_str(), "a");
  if (file_ == nullptr) throw StoreError("cannot open store " + path_ + " for appending");
}

StudyStore::~StudyStore() {
  if (file_ != nullptr) std::fclose(file_);
}

void StudyStore::load() {
  std::ifstream in(path_, std::ios::binary);
  if (!in) return;
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();

  std::size_t pos = 0;
  std::size_t valid_end = 0;
  while (pos < content.size()) {
    const std::size_t nl = content.find('\n', pos);
    const bool last = nl == std::string::npos;
    const std::string line = content.substr(pos, last ? std::string::npos : nl - pos);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      if (last) {
        ++dropped_;
        break;
      }
      throw StoreError("corrupt record in " + path_ + " at byte " + std::to_string(pos));
    }
    if (last) {
      // Parsable but unterminated: the newline never made it to disk.
      ++dropped_;
      break;
    }
    if (j.value("v", 0) != kFormatVersion)
      throw StoreError("unsupported record format version in " + path_);
    const auto type = j.at("type").get<std::string>();
    if (type == "study") {
      const auto name = j.at("name").get<std::string>();
      spaces_[name] = optimizer::space_from_json(j.at("space"));
      study_order_.push_back(name);
      next_id_[name] = 0;
    } else if (type == "trial") {
      TrialRecord r = record_from_json(j);
      if (!spaces_.count(r.study)) throw StoreError("trial for unregistered study " + r.study);
      if (r.trial_id != next_id_[r.study]) throw StoreError("non-sequential trial id in " + path_);
      next_id_[r.study] = r.trial_id + 1;
      records_.push_back(std::move(r));
    } else {
      throw StoreError("unknown record type '" + type + "'");
    }
    pos = nl + 1;
    valid_end = pos;
  }
  if (dropped_ > 0) {
    // Cut the torn tail so later appends start on a fresh line.
    in.close();
    if (::truncate(path_.c_str(), static_cast<off_t>(valid_end)) != 0)
      throw StoreError("cannot truncate torn record in " + path_);
  }
}

void StudyStore::write_line(const std::string& line) {
  if (std::fputs(line.c_str(), file_) < 0 || std::fputc('\n', file_) == EOF ||
      std::fflush(file_) != 0 || ::fsync(::fileno(file_)) != 0)
    throw StoreError("write to " + path_ + " failed");
}

void StudyStore::create_study(const std::string& name, const Space& space) {
  optimizer::validate_space(space);
  const json sj = optimizer::space_to_json(space);
  if (const auto it = spaces_.find(name); it != spaces_.end()) {
    if (optimizer::space_to_json(it->second) != sj)
      throw StoreError("study " + name + " already registered with a different space");
    return;
  }
  write_line(json{{"v", kFormatVersion}, {"type", "study"}, {"name", name}, {"space", sj}}.dump());
  spaces_[name] = space;
  study_order_.push_back(name);
  next_id_[name] = 0;
}

bool StudyStore::has_study(const std::string& name) const { return spaces_.count(name) > 0; }

const Space& StudyStore::space(const std::string& name) const {
  const auto it = spaces_.find(name);
  if (it == spaces_.end()) throw StoreError("unknown study " + name);
  return it->second;
}

std::vector<std::string> StudyStore::study_names() const { return study_order_; }

int StudyStore::append_trial(TrialRecord record) {
  const auto it = spaces_.find(record.study);
  if (it == spaces_.end()) throw StoreError("append to unregistered study " + record.study);
  const int next = next_id_[record.study];
  if (record.trial_id != -1 && record.trial_id != next)
    throw StoreError("trial id conflict in study " + record.study + ": got " +
                     std::to_string(record.trial_id) + ", next is " + std::to_string(next));
  optimizer::check_params(it->second, record.params);
  if (!std::isfinite(record.score)) record.state = TrialState::Failed;
  if (record.state == TrialState::Failed) record.score = std::nan("");
  record.trial_id = next;
  write_line(record_to_json(record).dump());
  next_id_[record.study] = next + 1;
  records_.push_back(std::move(record));
  return next;
}

std::vector<TrialRecord> StudyStore::trials(const std::string& study) const {
  if (!has_study(study)) throw StoreError("unknown study " + study);
  std::vector<TrialRecord> out;
  for (const auto& r : records_)
    if (r.study == study) out.push_back(r);
  return out;
}

TrialRecord StudyStore::best_trial(const std::string& study) const {
  const TrialRecord* best = nullptr;
  for (const auto& r : records_) {
    if (r.study != study || r.state != TrialState::Complete) continue;
    if (best == nullptr || r.score > best->score) best = &r;
  }
  if (best == nullptr) throw StoreError("study " + study + " has no complete trials");
  return *best;
}

void export_table(const std::vector<TrialRecord>& trials, std::ostream& out) {
  std::set<std::string> names;
  for (const auto& t : trials)
    for (const auto& [k, v] : t.params) names.insert(k);
  out << "study\ttrial_id\tstate\tscore";
  for (const auto& n : names) out << '\t' << n;
  out << "\tseed\twall_time_s\n";
  for (const auto& t : trials) {
    out << t.study << '\t' << t.trial_id << '\t' << state_name(t.state) << '\t'
        << (t.state == TrialState::Complete ? format_real(t.score) : "nan");
    for (const auto& n : names) {
      const auto it = t.params.find(n);
      out << '\t' << (it == t.params.end() ? "" : optimizer::to_string(it->second));
    }
    out << '\t' << t.seed << '\t' << format_real(t.wall_time_s) << '\n';
  }
}

}  // namespace ranbench::study
