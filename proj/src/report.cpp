#include "vcskit/report.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vcskit::verify {

VerificationReport VerificationReport::make(std::string check, std::string family, double kappa, int M,
                                            double residual, double tol, nlohmann::json params) {
  VerificationReport r;
  r.check = std::move(check);
  r.family = std::move(family);
  r.kappa = kappa;
  r.M = M;
  r.residual = std::isnan(residual) ? std::numeric_limits<double>::infinity() : std::abs(residual);
  r.tol = tol;
  r.pass = r.residual <= tol;
  r.params = std::move(params);
  return r;
}

ReportFormat parse_report_format(const std::string& s) {
  if (s == "jsonl") return ReportFormat::jsonl;
  if (s == "csv") return ReportFormat::csv;
  throw std::invalid_argument("unknown report format '" + s + "' (expected jsonl or csv)");
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["check"] = r.check;
  j["family"] = r.family;
  j["kappa"] = r.kappa;
  j["M"] = r.M;
  if (std::isfinite(r.residual)) {
    j["residual"] = r.residual;
  } else {
    j["residual"] = nullptr;
  }
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  j["params"] = r.params;
  return j;
}

std::string to_jsonl(const VerificationReport& r) { return to_json(r).dump(); }

std::string csv_header() { return "check,family,kappa,M,residual,tol,pass,params"; }

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string number(double x) {
  if (!std::isfinite(x)) return "";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

std::string to_csv_row(const VerificationReport& r) {
  std::ostringstream os;
  os << r.check << ',' << r.family << ',' << number(r.kappa) << ',' << r.M << ',' << number(r.residual)
     << ',' << number(r.tol) << ',' << (r.pass ? "true" : "false") << ',' << csv_quote(r.params.dump());
  return os.str();
}

void write_reports(std::ostream& os, const std::vector<VerificationReport>& reports, ReportFormat fmt) {
  if (fmt == ReportFormat::csv) os << csv_header() << '\n';
  for (const auto& r : reports) os << (fmt == ReportFormat::csv ? to_csv_row(r) : to_jsonl(r)) << '\n';
}

int count_failures(const std::vector<VerificationReport>& reports) {
  int n = 0;
  for (const auto& r : reports) n += r.pass ? 0 : 1;
  return n;
}

}  // namespace vcskit::verify
