#pragma once

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace vcskit::verify {

struct VerificationReport {
  std::string check;
  std::string family;
  double kappa = 0.0;
  int M = 0;
  double residual = 0.0;  // +inf when the check could not be evaluated
  double tol = 0.0;
  bool pass = false;
  nlohmann::json params = nlohmann::json::object();

  /// pass is set to residual <= tol (false for NaN).
  static VerificationReport make(std::string check, std::string family, double kappa, int M,
                                 double residual, double tol, nlohmann::json params = nlohmann::json::object());
};

enum class ReportFormat { jsonl, csv };
ReportFormat parse_report_format(const std::string& s);

/// Non-finite residuals are written as null.
nlohmann::json to_json(const VerificationReport& r);
std::string to_jsonl(const VerificationReport& r);
std::string csv_header();
std::string to_csv_row(const VerificationReport& r);

void write_reports(std::ostream& os, const std::vector<VerificationReport>& reports, ReportFormat fmt);

int count_failures(const std::vector<VerificationReport>& reports);

}  // namespace vcskit::verify
