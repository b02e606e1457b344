#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hankel {

struct VerificationReport {
  std::string case_id;
  std::string check_id;
  /// ordered key/value pairs; order is part of the output format
  std::vector<std::pair<std::string, double>> params;
  double max_abs_err = 0.0;
  double max_rel_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  long runtime_ms = 0;
  /// free-text note for failures; printed to stderr, not serialized
  std::string diagnostic;

  /// pass = (max_rel_err <= tolerance), NaN counting as failure.
  void judge_relative();
  /// pass = (max_abs_err <= tolerance).
  void judge_absolute();
};

enum class ReportFormat { json, csv };

ReportFormat parse_format(const std::string &s);

/// Canonical order: case_id, then check_id, then params.
void sort_reports(std::vector<VerificationReport> &reports);

void write_json(std::ostream &os, const std::vector<VerificationReport> &reports);
void write_csv(std::ostream &os, const std::vector<VerificationReport> &reports);
/// Writes to path ("-" for stdout). Throws std::runtime_error on I/O failure.
void emit_report(const std::vector<VerificationReport> &reports, ReportFormat fmt,
                 const std::string &path);

/// `k=v;k=v` with 17 significant digits.
std::string format_params(const std::vector<std::pair<std::string, double>> &params);

struct PlotRow {
  std::string case_id;
  double k = 0.0;
  double x = 0.0;
  double a_psi = 0.0;
  double lambda_psi = 0.0;
};

/// CSV with header case_id,k,x,A_psi,lambda_psi.
void write_plot_data(std::ostream &os, const std::vector<PlotRow> &rows);

} // namespace hankel
