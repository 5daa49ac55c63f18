#include "r0col/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "r0col/error.hpp"

namespace r0col::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  f << contents;
  if (!f) throw Error(ErrorCode::Io, "write to " + path + " failed");
}

const char* to_string(DecayFit::Kind kind) noexcept {
  switch (kind) {
    case DecayFit::Kind::Geometric: return "geometric";
    case DecayFit::Kind::Algebraic: return "algebraic";
    case DecayFit::Kind::Undetermined: return "undetermined";
  }
  return "unknown";
}

double correlation(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx == 0.0 ? std::numeric_limits<double>::quiet_NaN() : sxy / sxx;
}

DecayFit classify_decay(const std::vector<ConvergenceRow>& rows, double reference) {
  DecayFit fit;
  const double floor =
      kRoundoffFloorUlps * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(reference));
  std::vector<double> n, logn, loge;
  for (const auto& r : rows) {
    if (!(r.error > floor)) continue;
    n.push_back(static_cast<double>(r.degree));
    logn.push_back(std::log(static_cast<double>(r.degree)));
    loge.push_back(std::log(r.error));
  }
  fit.points = n.size();
  if (n.size() < 3) return fit;
  fit.geometric_correlation = correlation(n, loge);
  fit.geometric_rate = std::exp(-slope(n, loge));
  fit.algebraic_correlation = correlation(logn, loge);
  fit.algebraic_order = -slope(logn, loge);
  if (std::isnan(fit.geometric_correlation) || std::isnan(fit.algebraic_correlation)) return fit;
  fit.kind = std::abs(fit.geometric_correlation) >= std::abs(fit.algebraic_correlation) ? DecayFit::Kind::Geometric
                                                                                        : DecayFit::Kind::Algebraic;
  return fit;
}

CsvTable convergence_table(const ConvergenceReport& report) {
  CsvTable t;
  const bool timed = !report.rows.empty() && report.rows.front().runtime.has_value();
  t.header = {"N", "R0_N", "error"};
  if (timed) t.header.push_back("runtime_s");
  for (const auto& r : report.rows) {
    std::vector<double> row{static_cast<double>(r.degree), r.r0, r.error};
    if (timed) row.push_back(r.runtime.value_or(std::numeric_limits<double>::quiet_NaN()));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace r0col::cli
