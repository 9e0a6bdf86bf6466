#pragma once

// Machine-readable certificate emission. The JSON layout is stable and
// versioned; certificates are the product of a run and must stay diffable and
// archivable, so serialization is canonical: fixed key order, 2-space indent,
// trailing newline, certificates ascending by m with g1 before g2. The config
// block intentionally omits the worker count so reports are byte-identical
// for any parallelism.

#include <nlohmann/json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

#include "stabcert/certify.hpp"

namespace stabcert {

using OrderedJson = nlohmann::ordered_json;

inline OrderedJson certificate_to_json(const Certificate& cert) {
  OrderedJson j;
  j["m"] = cert.m;
  j["factor"] = factor_name(cert.which);
  j["base_case"] = {{"expression", cert.base_case.expression},
                    {"is_cube", cert.base_case.is_cube}};
  j["method"]["type"] = method_type_name(cert.method.type);
  if (cert.method.modulus_or_prime)
    j["method"]["modulus_or_prime"] = *cert.method.modulus_or_prime;
  else
    j["method"]["modulus_or_prime"] = nullptr;
  j["window"] = {{"tail", cert.window.tail},
                 {"cycle", cert.window.cycle},
                 {"indices_checked", cert.window.indices_checked}};
  j["status"] = cert.status == CertStatus::certified ? "CERTIFIED" : "UNRESOLVED";
  return j;
}

inline OrderedJson report_to_json(const BatchReport& report) {
  OrderedJson j;
  j["schema_version"] = "1";
  j["config"] = {{"max_m", report.max_m},
                 {"prime_bound", report.prime_bound},
                 {"exemplar_check", report.exemplar_check}};
  j["summary"] = {{"covered_by_table", report.covered_by_table},
                  {"searched", report.searched},
                  {"special", report.special},
                  {"unresolved", report.unresolved},
                  {"theorem3_verified", report.theorem3_verified}};
  j["certificates"] = OrderedJson::array();
  for (const Certificate& cert : report.certificates)
    j["certificates"].push_back(certificate_to_json(cert));
  if (report.exemplar_check) {
    j["exemplar_checks"] = OrderedJson::array();
    for (const ExemplarCheck& check : report.exemplar_checks)
      j["exemplar_checks"].push_back({{"m", check.m},
                                      {"factor", factor_name(check.which)},
                                      {"prime", check.prime},
                                      {"pass", check.pass}});
  }
  return j;
}

inline std::string dump_report_json(const BatchReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

inline MethodType method_type_from_name(const std::string& name) {
  if (name == "table_modulus") return MethodType::table_modulus;
  if (name == "searched_prime") return MethodType::searched_prime;
  if (name == "special_case") return MethodType::special_case;
  if (name == "none") return MethodType::none;
  throw std::invalid_argument("unknown method type: " + name);
}

inline BatchReport report_from_json(const nlohmann::json& j) {
  if (j.at("schema_version").get<std::string>() != "1")
    throw std::invalid_argument("unsupported report schema version");
  BatchReport report;
  report.max_m = j.at("config").at("max_m").get<long long>();
  report.prime_bound = j.at("config").at("prime_bound").get<std::uint64_t>();
  report.exemplar_check = j.at("config").at("exemplar_check").get<bool>();
  const auto& summary = j.at("summary");
  report.covered_by_table = summary.at("covered_by_table").get<std::uint64_t>();
  report.searched = summary.at("searched").get<std::uint64_t>();
  report.special = summary.at("special").get<std::uint64_t>();
  report.unresolved = summary.at("unresolved").get<std::uint64_t>();
  report.theorem3_verified = summary.at("theorem3_verified").get<bool>();
  for (const auto& jc : j.at("certificates")) {
    Certificate cert;
    cert.m = jc.at("m").get<long long>();
    const auto factor = factor_from_name(jc.at("factor").get<std::string>());
    if (!factor) throw std::invalid_argument("unknown factor in report");
    cert.which = *factor;
    cert.base_case.expression = jc.at("base_case").at("expression").get<std::string>();
    cert.base_case.is_cube = jc.at("base_case").at("is_cube").get<bool>();
    cert.method.type = method_type_from_name(jc.at("method").at("type").get<std::string>());
    const auto& mop = jc.at("method").at("modulus_or_prime");
    cert.method.modulus_or_prime =
        mop.is_null() ? std::nullopt : std::optional<std::uint64_t>(mop.get<std::uint64_t>());
    cert.window.tail = jc.at("window").at("tail").get<std::uint64_t>();
    cert.window.cycle = jc.at("window").at("cycle").get<std::uint64_t>();
    cert.window.indices_checked = jc.at("window").at("indices_checked").get<std::uint64_t>();
    cert.status = jc.at("status").get<std::string>() == "CERTIFIED" ? CertStatus::certified
                                                                    : CertStatus::unresolved;
    report.certificates.push_back(std::move(cert));
  }
  if (j.contains("exemplar_checks")) {
    for (const auto& je : j.at("exemplar_checks")) {
      const auto factor = factor_from_name(je.at("factor").get<std::string>());
      if (!factor) throw std::invalid_argument("unknown factor in exemplar check");
      report.exemplar_checks.push_back({je.at("m").get<long long>(), *factor,
                                        je.at("prime").get<std::uint64_t>(),
                                        je.at("pass").get<bool>()});
    }
  }
  return report;
}

inline std::string report_to_csv(const BatchReport& report) {
  std::ostringstream out;
  out << "m,factor,base_expression,base_is_cube,method_type,modulus_or_prime,"
         "window_tail,window_cycle,indices_checked,status\n";
  for (const Certificate& cert : report.certificates) {
    out << cert.m << ',' << factor_name(cert.which) << ",\"" << cert.base_case.expression
        << "\"," << (cert.base_case.is_cube ? "true" : "false") << ','
        << method_type_name(cert.method.type) << ',';
    if (cert.method.modulus_or_prime) out << *cert.method.modulus_or_prime;
    out << ',' << cert.window.tail << ',' << cert.window.cycle << ','
        << cert.window.indices_checked << ','
        << (cert.status == CertStatus::certified ? "CERTIFIED" : "UNRESOLVED") << '\n';
  }
  return out.str();
}

inline std::string report_to_text(const BatchReport& report) {
  std::ostringstream out;
  out << "campaign: m in [1, " << report.max_m << "], prime bound " << report.prime_bound
      << "\n";
  out << "covered by table: " << report.covered_by_table << "\n";
  out << "searched prime:   " << report.searched << "\n";
  out << "special case:     " << report.special << "\n";
  out << "unresolved:       " << report.unresolved << "\n";
  out << "theorem3_verified: " << (report.theorem3_verified ? "true" : "false") << "\n";
  bool any = false;
  for (const Certificate& cert : report.certificates) {
    if (cert.status == CertStatus::unresolved) {
      if (!any) out << "unresolved entries:\n";
      any = true;
      out << "  m=" << cert.m << " " << factor_name(cert.which) << "\n";
    }
  }
  for (const ExemplarCheck& check : report.exemplar_checks) {
    out << "exemplar: m=" << check.m << " " << factor_name(check.which) << " prime "
        << check.prime << " -> " << (check.pass ? "PASS" : "FAIL") << "\n";
  }
  return out.str();
}

}  // namespace stabcert
