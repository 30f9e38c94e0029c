#include "degdiff/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "degdiff/errors.hpp"
#include "degdiff/selfsim.hpp"

namespace degdiff {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError("not a number: '" + text + "'");
  return value;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

void expect_header(std::istream& is, const std::string& header) {
  std::string line;
  if (!std::getline(is, line) || line != header) {
    throw ConfigError("expected CSV header '" + header + "', got '" + line + "'");
  }
}

}  // namespace

void write_snapshots_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,x,v\n";
  for (const auto& s : traj.snapshots) {
    const std::string t = format_double(s.t);
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      os << t << ',' << format_double(traj.grid.center(i)) << ',' << format_double(s.values[i]) << '\n';
    }
  }
}

SnapshotTable read_snapshots_csv(std::istream& is) {
  expect_header(is, "t,x,v");
  SnapshotTable table;
  std::string line;
  std::size_t lineno = 1;
  bool first_block = true;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 3) throw ConfigError("snapshot CSV line " + std::to_string(lineno) + ": expected 3 fields");
    const double t = parse_double(f[0]);
    if (table.snapshots.empty() || table.snapshots.back().t != t) {
      if (!table.snapshots.empty()) first_block = false;
      table.snapshots.push_back({t, {}});
    }
    if (first_block) table.x.push_back(parse_double(f[1]));
    table.snapshots.back().values.push_back(parse_double(f[2]));
  }
  return table;
}

void write_front_csv(std::ostream& os, const FrontTrace& trace) {
  os << "t,x_front\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    os << format_double(trace.times[i]) << ',' << format_double(trace.x_front[i]) << '\n';
  }
}

FrontTrace read_front_csv(std::istream& is) {
  expect_header(is, "t,x_front");
  FrontTrace trace;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 2) throw ConfigError("front CSV line " + std::to_string(lineno) + ": expected 2 fields");
    trace.times.push_back(parse_double(f[0]));
    trace.x_front.push_back(parse_double(f[1]));
  }
  return trace;
}

void write_profile_csv(std::ostream& os, double gamma0, double m, int points) {
  if (points < 3 || points % 2 == 0) throw DomainError("profile table needs an odd number (>= 3) of points");
  os << "xi,f,fprime\n";
  const int half = points / 2;
  for (int k = -half; k <= half; ++k) {
    const double xi = static_cast<double>(k) / half;
    os << format_double(xi) << ',' << format_double(profile_f(xi, gamma0, m)) << ','
       << format_double(profile_fprime(xi, gamma0, m).value) << '\n';
  }
}

void write_loglog_front_csv(std::ostream& os, const FrontTrace& trace, const FrontFit& fit, double nu) {
  // Theory line passes through the fit's value at the window's geometric centre.
  const double lc = 0.5 * (std::log(fit.t_lo) + std::log(fit.t_hi));
  const double anchor = fit.intercept + fit.slope * lc;
  os << "t,x_front,log_t,log_x_front,log_x_fit,log_x_theory,fit_slope,theory_slope\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double t = trace.times[i];
    if (!(t > 0.0) || !(trace.x_front[i] > 0.0)) continue;
    const double lt = std::log(t);
    os << format_double(t) << ',' << format_double(trace.x_front[i]) << ',' << format_double(lt) << ','
       << format_double(std::log(trace.x_front[i])) << ',' << format_double(fit.intercept + fit.slope * lt) << ','
       << format_double(anchor + nu * (lt - lc)) << ',' << format_double(fit.slope) << ',' << format_double(nu)
       << '\n';
  }
}

std::string degiorgi_report_json(const DeGiorgiReport& report) {
  nlohmann::ordered_json j;
  j["q"] = report.q;
  j["zeta"] = report.zeta;
  j["epsilon0"] = report.epsilon0;
  j["I"] = report.I;
  j["T"] = report.T;
  j["radii"] = report.radii;
  return j.dump(2);
}

}  // namespace degdiff
