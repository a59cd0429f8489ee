#ifndef BKM_REPORT_HPP
#define BKM_REPORT_HPP

#include <json.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "autoforms.hpp"
#include "identities.hpp"
#include "kacmoody.hpp"

namespace bkm {

using Json = nlohmann::ordered_json;

/// Uniform result record printed by the command-line tool.
struct Report {
  std::string name;
  Json params = Json::object();
  bool equal = false;
  Json first_discrepancy;  // null when absent
  Json details = Json::object();
  std::vector<std::string> notes;
  double timings_ms = 0;
};

enum class Format { text, json };

inline std::string vec_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline std::string complex_string(autoforms::Complex z) {
  return format_double(z.real()) + (z.imag() < 0 ? " - " : " + ") + format_double(std::abs(z.imag())) + "i";
}

inline Report to_report(const IdentityReport& r) {
  Report out;
  out.name = r.name;
  out.params = {{"p_trunc", r.p_trunc}, {"q_trunc", r.q_trunc}};
  out.equal = r.equal;
  if (r.first_discrepancy) {
    const auto& d = *r.first_discrepancy;
    out.first_discrepancy = {{"p_deg", d.p_deg}, {"q_deg", d.q_deg}, {"lhs", d.lhs.get_str()}, {"rhs", d.rhs.get_str()}};
  }
  out.details = {{"lhs_terms", r.lhs_terms}, {"rhs_terms", r.rhs_terms}, {"all_integral", r.all_integral}};
  out.notes = r.notes;
  return out;
}

inline Report to_report(const km::DenominatorReport& r, const std::string& name) {
  Report out;
  out.name = name;
  out.params = {{"cutoff", r.cutoff}, {"type", r.type}};
  out.equal = r.equal;
  if (r.first_discrepancy) {
    const auto& d = *r.first_discrepancy;
    out.first_discrepancy = {{"exponent", vec_string(d.exponent)}, {"lhs", d.lhs.get_str()}, {"rhs", d.rhs.get_str()}};
  }
  out.details = {{"weyl_terms", r.weyl_terms}, {"factors", r.factors}, {"lhs_terms", r.lhs.size()},
                 {"rhs_terms", r.rhs.size()}};
  return out;
}

inline Report to_report(const autoforms::NumericCheck& c, const autoforms::SlicePoint& pt, double tol) {
  Report out;
  out.name = "phi:" + c.name;
  out.params = {{"sigma", complex_string(pt.sigma)}, {"tau", complex_string(pt.tau)}, {"tolerance", tol}};
  out.equal = c.pass;
  out.details = {{"relative_difference", c.worst}, {"lhs", complex_string(c.lhs)}, {"rhs", complex_string(c.rhs)},
                 {"comparison", c.where}};
  if (!c.pass) {
    out.first_discrepancy = {{"comparison", c.where}, {"lhs", complex_string(c.lhs)}, {"rhs", complex_string(c.rhs)}};
  }
  return out;
}

inline std::string json_scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

/// Text: one "key: value" line per field. JSON: one object per report.
inline std::string emit_report(const Report& r, Format f) {
  if (f == Format::json) {
    Json j;
    j["name"] = r.name;
    j["params"] = r.params;
    j["equal"] = r.equal;
    j["first_discrepancy"] = r.first_discrepancy;
    j["timings_ms"] = r.timings_ms;
    j["details"] = r.details;
    j["notes"] = r.notes;
    return j.dump() + "\n";
  }
  std::ostringstream out;
  out << "name: " << r.name << "\n";
  out << "params:";
  for (const auto& [k, v] : r.params.items()) out << " " << k << "=" << json_scalar_text(v);
  out << "\n";
  out << "equal: " << (r.equal ? "true" : "false") << "\n";
  out << "first_discrepancy:";
  if (r.first_discrepancy.is_null()) {
    out << " none";
  } else {
    for (const auto& [k, v] : r.first_discrepancy.items()) out << " " << k << "=" << json_scalar_text(v);
  }
  out << "\n";
  for (const auto& [k, v] : r.details.items()) out << k << ": " << json_scalar_text(v) << "\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  out << "timings_ms: " << format_double(r.timings_ms) << "\n";
  return out.str();
}

}  // namespace bkm

#endif  // BKM_REPORT_HPP
