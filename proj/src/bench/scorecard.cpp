#include "ranbench/bench/scorecard.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ranbench/bench/offline.hpp"
#include "ranbench/format.hpp"

namespace ranbench::bench {

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double ScorecardRow::rl_min() const {
  return rl_scores.empty() ? std::nan("") : *std::min_element(rl_scores.begin(), rl_scores.end());
}
double ScorecardRow::rl_median() const { return median(rl_scores); }
double ScorecardRow::rl_max() const {
  return rl_scores.empty() ? std::nan("") : *std::max_element(rl_scores.begin(), rl_scores.end());
}

optimizer::TrialRecord median_trial(const std::vector<optimizer::TrialRecord>& trials) {
  std::vector<const optimizer::TrialRecord*> ok;
  for (const auto& t : trials)
    if (t.state == optimizer::TrialState::Complete) ok.push_back(&t);
  if (ok.empty()) throw std::invalid_argument("no complete trials");
  std::stable_sort(ok.begin(), ok.end(),
                   [](const auto* a, const auto* b) { return a->score < b->score; });
  return *ok[(ok.size() - 1) / 2];
}

std::vector<ScorecardRow> build_scorecard(const study::StudyStore& store,
                                          const std::vector<std::string>& scenarios) {
  std::vector<ScorecardRow> rows;
  for (const auto& s : scenarios) {
    for (const char* kind : {"baseline", "grid", "tpe", "rl"}) {
      const std::string n = study_name(s, kind);
      if (!store.has_study(n)) throw std::runtime_error("missing study " + n);
      bool any = false;
      for (const auto& t : store.trials(n)) any = any || t.state == optimizer::TrialState::Complete;
      if (!any) throw std::runtime_error("study " + n + " has no complete trials");
    }
    ScorecardRow r;
    r.scenario = s;
    r.baseline = store.best_trial(study_name(s, "baseline")).score;
    r.grid_best = store.best_trial(study_name(s, "grid")).score;
    r.tpe_best = store.best_trial(study_name(s, "tpe")).score;
    const auto rl = store.trials(study_name(s, "rl"));
    for (const auto& t : rl)
      if (t.state == optimizer::TrialState::Complete) r.rl_scores.push_back(t.score);
    r.rl_median_trial = median_trial(rl).trial_id;
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_scorecard(const std::vector<ScorecardRow>& rows, std::ostream& out) {
  out << "scenario\tbaseline\tgrid_best\ttpe_best\trl_trials\trl_min\trl_median\trl_max\t"
         "rl_median_trial\n";
  for (const auto& r : rows)
    out << r.scenario << '\t' << format_real(r.baseline) << '\t' << format_real(r.grid_best) << '\t'
        << format_real(r.tpe_best) << '\t' << r.rl_scores.size() << '\t' << format_real(r.rl_min())
        << '\t' << format_real(r.rl_median()) << '\t' << format_real(r.rl_max()) << '\t'
        << r.rl_median_trial << '\n';
  out << "\nscenario\trl_trial\tscore\n";
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.rl_scores.size(); ++i)
      out << r.scenario << '\t' << i << '\t' << format_real(r.rl_scores[i]) << '\n';
}

}  // namespace ranbench::bench
