#include "ranbench/bench/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace ranbench::bench {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) lo = 0, hi = 1;
    if (hi - lo < 1e-9) lo -= 0.5, hi += 0.5;
    const double m = 0.05 * (hi - lo);
    lo -= m;
    hi += m;
  }
};

}  // namespace

std::string scorecard_svg(const std::vector<ScorecardRow>& rows) {
  const double w = 120.0 * std::max<std::size_t>(rows.size(), 1) + 80, h = 360, top = 20,
               bottom = 320, left = 60;
  Range r;
  for (const auto& row : rows) {
    r.add(row.baseline);
    r.add(row.grid_best);
    r.add(row.tpe_best);
    for (double v : row.rl_scores) r.add(v);
  }
  r.pad();
  auto y = [&](double v) { return bottom - (v - r.lo) / (r.hi - r.lo) * (bottom - top); };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
    << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = r.lo + k * (r.hi - r.lo) / 4;
    o << "<text x=\"" << left - 5 << "\" y=\"" << num(y(v) + 4) << "\" text-anchor=\"end\">"
      << num(v) << "</text>\n";
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const double cx = left + 60 + 120.0 * static_cast<double>(i);
    for (double v : row.rl_scores)
      o << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(y(v)) << "\" r=\"2\" fill=\"" << kColors[0]
        << "\" fill-opacity=\"0.5\"/>\n";
    auto tick = [&](double v, const char* color, const char* label) {
      o << "<line x1=\"" << num(cx - 30) << "\" x2=\"" << num(cx + 30) << "\" y1=\"" << num(y(v))
        << "\" y2=\"" << num(y(v)) << "\" stroke=\"" << color << "\"><title>" << label
        << "</title></line>\n";
    };
    tick(row.baseline, "black", "baseline");
    tick(row.grid_best, kColors[1], "grid best");
    tick(row.tpe_best, kColors[2], "TPE best");
    if (!row.rl_scores.empty())
      o << "<rect x=\"" << num(cx - 6) << "\" y=\"" << num(y(row.rl_median()) - 2)
        << "\" width=\"12\" height=\"4\" fill=\"" << kColors[0] << "\"/>\n";
    o << "<text x=\"" << num(cx) << "\" y=\"" << bottom + 18 << "\" text-anchor=\"middle\">"
      << row.scenario << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string trajectory_svg(const std::vector<rlagent::TrajectoryPoint>& t,
                           const std::vector<DwellInterval>& dwells) {
  const double w = 720, left = 60, right = 700;
  const double p_top = 20, p_bottom = 200, s_top = 230, s_bottom = 400;
  Range tr, sr;
  for (const auto& p : t) {
    tr.add(p.t_ms);
    sr.add(p.score);
  }
  tr.pad();
  sr.pad();
  auto x = [&](double v) { return left + (v - tr.lo) / (tr.hi - tr.lo) * (right - left); };
  auto yp = [&](double v) { return p_bottom - (v - 20.0) / 20.0 * (p_bottom - p_top); };
  auto ys = [&](double v) { return s_bottom - (v - sr.lo) / (sr.hi - sr.lo) * (s_bottom - s_top); };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w)
    << "\" height=\"420\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (const auto& d : dwells)
    o << "<rect x=\"" << num(x(d.start_ms)) << "\" y=\"" << p_top << "\" width=\""
      << num(x(d.end_ms) - x(d.start_ms)) << "\" height=\"" << s_bottom - p_top
      << "\" fill=\"#eeeeee\"><title>" << d.scenario << "</title></rect>\n";
  const std::size_t n_enb = t.empty() ? 0 : t.front().powers_dbm.size();
  for (std::size_t e = 0; e < n_enb; ++e) {
    o << "<polyline fill=\"none\" stroke=\"" << kColors[e % 4] << "\" points=\"";
    for (const auto& p : t) o << num(x(p.t_ms)) << ',' << num(yp(p.powers_dbm[e])) << ' ';
    o << "\"/>\n";
  }
  o << "<polyline fill=\"none\" stroke=\"black\" points=\"";
  for (const auto& p : t) o << num(x(p.t_ms)) << ',' << num(ys(p.score)) << ' ';
  o << "\"/>\n";
  o << "<text x=\"" << left - 5 << "\" y=\"" << p_top + 4 << "\" text-anchor=\"end\">40 dBm</text>\n"
    << "<text x=\"" << left - 5 << "\" y=\"" << p_bottom << "\" text-anchor=\"end\">20 dBm</text>\n"
    << "<text x=\"" << left - 5 << "\" y=\"" << num(ys(sr.hi)) << "\" text-anchor=\"end\">"
    << num(sr.hi) << "</text>\n"
    << "<text x=\"" << left - 5 << "\" y=\"" << num(ys(sr.lo)) << "\" text-anchor=\"end\">"
    << num(sr.lo) << "</text>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace ranbench::bench
