#include <json.hpp>

#include "xbrlcore/cli.hpp"

namespace xbrlcore::cli {

using ojson = nlohmann::ordered_json;

namespace {

ojson finding_json(const Finding& f) {
  return ojson{{"code", f.code},
               {"severity", to_string(f.severity)},
               {"message", f.message},
               {"line", f.location.line},
               {"column", f.location.column},
               {"subject", f.subject}};
}

}  // namespace

std::string render_report_json(const ValidationReport& report) {
  ojson j;
  j["input_digest"] = report.input_digest;
  j["counts"] = ojson{{"error", report.count(Severity::Error)},
                      {"warning", report.count(Severity::Warning)},
                      {"info", report.count(Severity::Info)}};
  auto findings = ojson::array();
  for (const auto& f : report.findings) findings.push_back(finding_json(f));
  j["findings"] = std::move(findings);
  j["skipped_rules"] = report.skipped_rules;
  return j.dump(2) + "\n";
}

std::string render_report_text(const ValidationReport& report) {
  std::string out;
  for (const auto& f : report.findings) {
    out += f.location.str() + " " + std::string(to_string(f.severity)) + " " + f.code;
    if (!f.subject.empty()) out += " [" + f.subject + "]";
    out += ": " + f.message + "\n";
  }
  out += std::to_string(report.count(Severity::Error)) + " errors, " +
         std::to_string(report.count(Severity::Warning)) + " warnings, " +
         std::to_string(report.count(Severity::Info)) + " info\n";
  if (!report.skipped_rules.empty()) {
    out += "skipped without taxonomy:";
    for (const auto& code : report.skipped_rules) out += " " + code;
    out += "\n";
  }
  return out;
}

std::string render_report_csv(const ValidationReport& report) {
  std::string out = "code,severity,line,column,subject,message\n";
  for (const auto& f : report.findings) {
    out += csv_field(f.code) + ',' + std::string(to_string(f.severity)) + ',' + std::to_string(f.location.line) +
           ',' + std::to_string(f.location.column) + ',' + csv_field(f.subject) + ',' + csv_field(f.message) + '\n';
  }
  return out;
}

std::string render_rules_text() {
  std::string out;
  for (const auto& r : rule_catalog()) {
    out += std::string(r.code) + "\t" + std::string(to_string(r.severity)) + "\t" +
           (r.requires_dts ? "taxonomy" : "-") + "\t" + std::string(r.description) + "\n";
  }
  return out;
}

std::string render_rules_json() {
  auto arr = ojson::array();
  for (const auto& r : rule_catalog()) {
    arr.push_back({{"code", r.code},
                   {"severity", to_string(r.severity)},
                   {"requires_dts", r.requires_dts},
                   {"description", r.description}});
  }
  return arr.dump(2) + "\n";
}

std::string render_dts_text(const Dts& dts) {
  std::string out = std::to_string(dts.documents.size()) + " documents, " + std::to_string(dts.concepts.size()) +
                    " concepts\n";
  for (const auto& uri : dts.load_order) {
    out += "document " + std::string(to_string(dts.documents.at(uri).kind)) + " " + uri + "\n";
  }
  for (const auto& u : dts.unresolved) out += "unresolved " + u.uri + " (" + u.reason + ")\n";
  for (const auto& f : dts.findings) out += std::string(to_string(f.severity)) + " " + f.code + ": " + f.message + "\n";
  if (dts.limit_exceeded) out += "discovery stopped at a limit\n";
  return out;
}

std::string render_dts_json(const Dts& dts) {
  ojson j;
  auto docs = ojson::array();
  for (const auto& uri : dts.load_order) {
    const auto& d = dts.documents.at(uri);
    docs.push_back({{"uri", d.uri}, {"kind", to_string(d.kind)}, {"depth", d.depth}});
  }
  j["documents"] = std::move(docs);
  auto concepts = ojson::array();
  for (const auto& [qname, c] : dts.concepts.concepts()) {
    concepts.push_back({{"qname", qname.clark()},
                        {"item_kind", to_string(c.item_kind)},
                        {"data_kind", to_string(c.data_kind)},
                        {"period_type", to_string(c.period_type)},
                        {"balance", to_string(c.balance)},
                        {"abstract", c.abstract}});
  }
  j["concept_count"] = dts.concepts.size();
  j["concepts"] = std::move(concepts);
  auto unresolved = ojson::array();
  for (const auto& u : dts.unresolved) {
    unresolved.push_back(
        {{"uri", u.uri}, {"href", u.href}, {"referenced_from", u.referenced_from}, {"reason", u.reason}});
  }
  j["unresolved"] = std::move(unresolved);
  auto findings = ojson::array();
  for (const auto& f : dts.findings) findings.push_back(finding_json(f));
  j["findings"] = std::move(findings);
  j["limit_exceeded"] = dts.limit_exceeded;
  return j.dump(2) + "\n";
}

}  // namespace xbrlcore::cli
