#pragma once

// Tabular outputs (CSV, 17 significant digits, LF line endings) and the
// convergence report with its fitted decay classification.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace r0col::cli {

// "%.17g": re-parses to the identical double.
std::string format_double(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string to_csv(const CsvTable& table);

// Throws r0col::Error(Io) on failure.
void write_text_file(const std::string& path, const std::string& contents);

struct ConvergenceRow {
  std::size_t degree = 0;
  double r0 = 0.0;
  double error = 0.0;
  bool dominant_is_real = true;
  std::optional<double> runtime;  // seconds, only when timing is requested
};

struct DecayFit {
  enum class Kind { Geometric, Algebraic, Undetermined };
  Kind kind = Kind::Undetermined;
  // Geometric: error ≈ C·p^{-N}. Algebraic: error ≈ C·N^{-order}.
  double geometric_rate = 0.0;     // p
  double geometric_correlation = 0.0;  // of log error against N
  double algebraic_order = 0.0;
  double algebraic_correlation = 0.0;  // of log error against log N
  std::size_t points = 0;          // rows above the round-off floor
};

const char* to_string(DecayFit::Kind kind) noexcept;

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double reference = 0.0;
  std::string reference_source;  // "closed-form" or "self-reference: <scheme> N=<n>"
  DecayFit fit;
};

// Errors at or below this multiple of ε·max(1, |reference|) are treated as
// round-off and left out of the fit.
inline constexpr double kRoundoffFloorUlps = 100.0;

// Pearson correlation of two equally long samples; NaN when undefined.
double correlation(const std::vector<double>& x, const std::vector<double>& y);

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y);

// Fits log error against N and against log N and keeps the better line
// (larger |correlation|). Needs at least three points above the floor.
DecayFit classify_decay(const std::vector<ConvergenceRow>& rows, double reference);

CsvTable convergence_table(const ConvergenceReport& report);

}  // namespace r0col::cli
