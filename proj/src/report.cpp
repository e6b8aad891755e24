#include "percsym/report.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace percsym {

namespace {

std::string exact_verdict(bool passed) { return passed ? "PASS" : "FAIL"; }

std::string claim_verdict(const Claim& c) {
  if (c.passed) return exact_verdict(*c.passed);
  if (c.verdict) return to_string(*c.verdict);
  return "";
}

std::string fmt(double x, int digits = 17) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

Json claim_json(const Claim& c) {
  Json j;
  j["quantity"] = c.quantity;
  if (!c.p.empty()) j["p"] = c.p;
  j["mode"] = to_string(c.mode);
  if (c.exact) j["value"] = to_string(*c.exact);
  if (c.mc) {
    j["n"] = c.mc->n_samples;
    j["estimate"] = c.mc->estimate;
    j["std_error"] = c.mc->std_error;
    j["ci"] = Json::array({c.mc->lo, c.mc->hi});
    j["level"] = c.mc->level;
  }
  if (c.seed) j["seed"] = *c.seed;
  const std::string v = claim_verdict(c);
  if (!v.empty()) j["verdict"] = v;
  for (const auto& [k, val] : c.extra) j[k] = val;
  return j;
}

}  // namespace

Json report_to_json(const SuiteReport& rep, const RunMeta& meta) {
  Json j;
  j["schema_version"] = report_schema_version;
  j["command"] = meta.command;
  j["name"] = rep.name;
  j["kind"] = rep.kind;
  j["scenario"] = meta.scenario ? *meta.scenario : Json(nullptr);
  Json mode;
  mode["mode"] = to_string(meta.options.mode);
  if (meta.options.mode == Mode::exact) {
    mode["cap_bits"] = meta.options.cap_bits;
  } else {
    mode["n"] = meta.options.mc.n;
    mode["seed"] = meta.options.mc.seed;
    mode["level"] = meta.options.mc.level;
    mode["samples_per_chunk"] = meta.options.mc.samples_per_chunk;
  }
  j["run"] = mode;
  Json conds = Json::array();
  for (const LabelledConditions& lc : rep.conditions) {
    Json c;
    c["label"] = lc.label;
    c["sets"] = to_json(lc.pair);
    c["report"] = to_json(lc.report);
    conds.push_back(c);
  }
  j["conditions"] = conds;
  Json claims = Json::array();
  for (const Claim& c : rep.claims) claims.push_back(claim_json(c));
  j["claims"] = claims;
  j["notes"] = rep.notes;
  if (meta.payload) j["data"] = *meta.payload;
  const Status s = rep.status();
  j["status"] = to_string(s);
  j["exit_code"] = exit_code(s);
  j["wall_clock_seconds"] = meta.wall_clock_seconds;
  return j;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

void write_csv(std::ostream& out, const SuiteReport& rep) {
  out << "scenario,p,quantity,value,lo,hi,mode,verdict\n";
  for (const Claim& c : rep.claims) {
    std::string value, lo, hi;
    if (c.exact) value = to_string(*c.exact);
    if (c.mc) {
      value = fmt(c.mc->estimate);
      lo = fmt(c.mc->lo);
      hi = fmt(c.mc->hi);
    }
    out << csv_field(rep.name) << ',' << csv_field(c.p) << ',' << csv_field(c.quantity) << ',' << csv_field(value)
        << ',' << lo << ',' << hi << ',' << to_string(c.mode) << ',' << claim_verdict(c) << '\n';
  }
}

void write_human(std::ostream& out, const SuiteReport& rep, const RunMeta& meta) {
  out << rep.name << " [" << rep.kind << ", " << to_string(meta.options.mode);
  if (meta.options.mode == Mode::mc) out << " n=" << meta.options.mc.n << " seed=" << meta.options.mc.seed;
  out << "]\n";
  for (const LabelledConditions& lc : rep.conditions) {
    const ConditionReport& r = lc.report;
    out << "  symmetry " << lc.label << ": |G|=" << r.group_order << " G1=" << r.gamma1 << " G2=" << r.gamma2
        << " G3=" << r.gamma3 << " swap-transitive=" << r.swap_transitive << " -> "
        << (r.passed() ? "ok" : "FAILED") << '\n';
    for (const std::string& d : r.diagnostics) out << "    " << d << '\n';
  }
  for (const Claim& c : rep.claims) {
    out << "  ";
    if (!c.p.empty()) out << "p=" << c.p << "  ";
    out << c.quantity << " = ";
    if (c.exact) out << to_string(*c.exact);
    if (c.mc) out << fmt(c.mc->estimate, 6) << " [" << fmt(c.mc->lo, 6) << ", " << fmt(c.mc->hi, 6) << "]";
    const std::string v = claim_verdict(c);
    if (!v.empty()) out << "  " << v;
    out << '\n';
  }
  for (const std::string& n : rep.notes) out << "  note: " << n << '\n';
  out << "status: " << to_string(rep.status()) << '\n';
}

}  // namespace percsym
