#include "hankel/report.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <tuple>

namespace hankel {
namespace {

std::string num17(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no NaN/Inf; those become null.
std::string json_num(double v) { return std::isfinite(v) ? num17(v) : "null"; }

} // namespace

void VerificationReport::judge_relative() { pass = max_rel_err <= tolerance; }

void VerificationReport::judge_absolute() { pass = max_abs_err <= tolerance; }

ReportFormat parse_format(const std::string &s) {
  if (s == "json")
    return ReportFormat::json;
  if (s == "csv")
    return ReportFormat::csv;
  throw std::invalid_argument("unknown report format: " + s);
}

std::string format_params(const std::vector<std::pair<std::string, double>> &params) {
  std::string out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i)
      out += ';';
    out += params[i].first + '=' + num17(params[i].second);
  }
  return out;
}

void sort_reports(std::vector<VerificationReport> &reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const VerificationReport &a, const VerificationReport &b) {
                     return std::tie(a.case_id, a.check_id, a.params) <
                            std::tie(b.case_id, b.check_id, b.params);
                   });
}

void write_json(std::ostream &os, const std::vector<VerificationReport> &reports) {
  // Written by hand so key order and number formatting are fixed.
  os << "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const VerificationReport &r = reports[i];
    os << (i ? ",\n  {" : "\n  {");
    os << "\"case_id\": " << nlohmann::json(r.case_id).dump() << ", ";
    os << "\"check_id\": " << nlohmann::json(r.check_id).dump() << ", ";
    os << "\"params\": {";
    for (std::size_t j = 0; j < r.params.size(); ++j)
      os << (j ? ", " : "") << nlohmann::json(r.params[j].first).dump() << ": "
         << json_num(r.params[j].second);
    os << "}, ";
    os << "\"max_abs_err\": " << json_num(r.max_abs_err) << ", ";
    os << "\"max_rel_err\": " << json_num(r.max_rel_err) << ", ";
    os << "\"tolerance\": " << json_num(r.tolerance) << ", ";
    os << "\"pass\": " << (r.pass ? "true" : "false") << ", ";
    os << "\"runtime_ms\": " << r.runtime_ms << "}";
  }
  os << (reports.empty() ? "]\n" : "\n]\n");
}

void write_csv(std::ostream &os, const std::vector<VerificationReport> &reports) {
  os << "case_id,check_id,params,max_abs_err,max_rel_err,tolerance,pass,runtime_ms\n";
  auto quote = [](const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
      return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"')
        q += '"';
      q += c;
    }
    return q + '"';
  };
  for (const VerificationReport &r : reports) {
    os << quote(r.case_id) << ',' << quote(r.check_id) << ',' << quote(format_params(r.params))
       << ',' << num17(r.max_abs_err) << ',' << num17(r.max_rel_err) << ','
       << num17(r.tolerance) << ',' << (r.pass ? "true" : "false") << ',' << r.runtime_ms
       << '\n';
  }
}

void emit_report(const std::vector<VerificationReport> &reports, ReportFormat fmt,
                 const std::string &path) {
  auto write = [&](std::ostream &os) {
    if (fmt == ReportFormat::json)
      write_json(os, reports);
    else
      write_csv(os, reports);
  };
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open " + path + " for writing");
  write(out);
  out.close();
  if (!out)
    throw std::runtime_error("write to " + path + " failed");
}

void write_plot_data(std::ostream &os, const std::vector<PlotRow> &rows) {
  os << "case_id,k,x,A_psi,lambda_psi\n";
  for (const PlotRow &r : rows)
    os << r.case_id << ',' << num17(r.k) << ',' << num17(r.x) << ',' << num17(r.a_psi) << ','
       << num17(r.lambda_psi) << '\n';
}

} // namespace hankel
