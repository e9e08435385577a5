#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "ranbench/optimizer/tpe.hpp"
#include "ranbench/seed.hpp"
#include "ranbench/study/store.hpp"

using namespace ranbench;
using namespace ranbench::study;
using optimizer::Params;
using optimizer::Uniform;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name)
      : path(std::filesystem::temp_directory_path() / ("ranbench_test_" + name + ".jsonl")) {
    std::filesystem::remove(path);
  }
  ~TempFile() { std::filesystem::remove(path); }
  std::string str() const { return path.string(); }
};

Space xy_space() {
  return {{"x", Uniform{0.0, 1.0}, std::nullopt}, {"y", optimizer::Categorical{{std::string("a"), std::string("b")}}, std::nullopt}};
}

TrialRecord rec(double x, double score) {
  TrialRecord r;
  r.study = "s";
  r.params = {{"x", x}, {"y", std::string("a")}};
  r.score = score;
  return r;
}

}  // namespace

TEST_CASE("ids are sequential per study") {
  TempFile f("ids");
  StudyStore s(f.str());
  s.create_study("s", xy_space());
  s.create_study("t", xy_space());
  CHECK(s.append_trial(rec(0.1, 1.0)) == 0);
  CHECK(s.append_trial(rec(0.2, 2.0)) == 1);
  auto other = rec(0.3, 0.0);
  other.study = "t";
  CHECK(s.append_trial(other) == 0);
  CHECK(s.trials("s").size() == 2u);
}

TEST_CASE("reload reproduces insertion order and contents") {
  TempFile f("reload");
  {
    StudyStore s(f.str());
    s.create_study("s", xy_space());
    for (int i = 0; i < 10; ++i) {
      auto r = rec(0.05 * i + 0.013, std::sin(i * 1.7));
      r.seed = 1000 + i;
      r.wall_time_s = 0.1 * i;
      r.attrs = {{"note", i}};
      s.append_trial(r);
    }
  }
  StudyStore a(f.str());
  StudyStore b(f.str());
  REQUIRE(a.trials("s").size() == 10u);
  for (int i = 0; i < 10; ++i) {
    const auto t = a.trials("s")[i];
    CHECK(t.trial_id == i);
    CHECK(t.score == std::sin(i * 1.7));
    CHECK(optimizer::as_double(t.params.at("x")) == 0.05 * i + 0.013);
    CHECK(t.seed == 1000u + i);
    CHECK(t.attrs.at("note") == i);
    CHECK(record_to_json(t) == record_to_json(b.trials("s")[i]));
  }
  CHECK(space_to_json(a.space("s")) == space_to_json(xy_space()));
}

TEST_CASE("record json round trip") {
  auto r = rec(0.123456789012345, -3.25);
  r.study = "TS1.tpe";
  r.trial_id = 7;
  r.params["flag"] = true;
  r.params["n"] = std::int64_t{256};
  const auto back = record_from_json(record_to_json(r));
  CHECK(record_to_json(back) == record_to_json(r));
  CHECK(back.params == r.params);
}

TEST_CASE("torn final line is dropped") {
  TempFile f("torn");
  {
    StudyStore s(f.str());
    s.create_study("s", xy_space());
    s.append_trial(rec(0.1, 1.0));
    s.append_trial(rec(0.2, 2.0));
  }
  {
    std::ofstream out(f.str(), std::ios::app);
    out << R"({"v":1,"type":"trial","study":"s","trial_id":2,"par)";
  }
  StudyStore s(f.str());
  CHECK(s.trials("s").size() == 2u);
  CHECK(s.dropped_lines() == 1);
  CHECK(s.append_trial(rec(0.3, 3.0)) == 2);
  StudyStore again(f.str());
  CHECK(again.trials("s").size() == 3u);
}

TEST_CASE("non-finite scores become failed trials") {
  TempFile f("nonfinite");
  StudyStore s(f.str());
  s.create_study("s", xy_space());
  s.append_trial(rec(0.1, std::numeric_limits<double>::quiet_NaN()));
  s.append_trial(rec(0.2, std::numeric_limits<double>::infinity()));
  s.append_trial(rec(0.3, 0.5));
  StudyStore back(f.str());
  const auto t = back.trials("s");
  CHECK(t[0].state == TrialState::Failed);
  CHECK(t[1].state == TrialState::Failed);
  CHECK(t[2].state == TrialState::Complete);
  CHECK(back.best_trial("s").trial_id == 2);
}

TEST_CASE("best trial and ties") {
  TempFile f("best");
  StudyStore s(f.str());
  s.create_study("s", xy_space());
  for (double v : {1.0, 3.0, 2.0}) s.append_trial(rec(0.5, v));
  CHECK(s.best_trial("s").trial_id == 1);

  s.create_study("t", xy_space());
  for (double v : {2.0, 2.0}) {
    auto r = rec(0.5, v);
    r.study = "t";
    s.append_trial(r);
  }
  CHECK(s.best_trial("t").trial_id == 0);
  s.create_study("empty", xy_space());
  CHECK_THROWS(s.best_trial("empty"));
}

TEST_CASE("study registration rules") {
  TempFile f("reg");
  StudyStore s(f.str());
  CHECK_THROWS(s.append_trial(rec(0.1, 1.0)));
  s.create_study("s", xy_space());
  CHECK_NOTHROW(s.create_study("s", xy_space()));
  CHECK_THROWS(s.create_study("s", {{"x", Uniform{0.0, 2.0}, std::nullopt}}));
  CHECK_THROWS(s.append_trial(rec(1.5, 1.0)));  // outside the domain
  CHECK(s.has_study("s"));
  CHECK_FALSE(s.has_study("nope"));
}

TEST_CASE("unknown format version is rejected") {
  TempFile f("version");
  {
    std::ofstream out(f.str());
    out << R"({"v":99,"type":"study","name":"s","space":[]})" << "\n";
  }
  CHECK_THROWS_AS(StudyStore{f.str()}, StoreError);
}

TEST_CASE("tpe study best matches a linear scan") {
  TempFile f("scan");
  StudyStore s(f.str());
  const Space sp = {{"x", Uniform{-2.0, 2.0}, std::nullopt}};
  s.create_study("q", sp);
  for (int i = 0; i < 125; ++i) {
    TrialRecord r;
    r.study = "q";
    r.params = optimizer::suggest(sp, s.trials("q"), {}, derive_seed(5, {static_cast<std::uint64_t>(i)}));
    const double x = optimizer::as_double(r.params.at("x"));
    r.score = -std::abs(x - 0.3) + 0.1 * std::cos(9 * x);
    s.append_trial(r);
  }
  StudyStore back(f.str());
  const auto all = back.trials("q");
  int scan = 0;
  for (int i = 1; i < static_cast<int>(all.size()); ++i)
    if (all[i].score > all[scan].score) scan = i;
  CHECK(back.best_trial("q").trial_id == all[scan].trial_id);
}

TEST_CASE("export table") {
  TempFile f("export");
  StudyStore s(f.str());
  s.create_study("s", xy_space());
  s.append_trial(rec(0.25, 1.5));
  s.append_trial(rec(0.5, std::nan("")));
  std::ostringstream out;
  export_table(s.trials("s"), out);
  std::istringstream in(out.str());
  std::string header, row1, row2, extra;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  CHECK_FALSE(std::getline(in, extra));
  CHECK(header.find("x") != std::string::npos);
  CHECK(header.find("y") != std::string::npos);
  CHECK(row1.find("0.25") != std::string::npos);
  CHECK(row2.find("failed") != std::string::npos);
}
