#pragma once

#include "percsym/json_io.hpp"
#include "percsym/scenarios.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace percsym {

inline constexpr int report_schema_version = 1;

struct RunMeta {
  std::string command;
  std::optional<Json> scenario;  // echo of the scenario that ran, if any
  RunOptions options;
  double wall_clock_seconds = 0;
  std::optional<Json> payload;  // command-specific data, e.g. the enumerated polynomial
};

Json report_to_json(const SuiteReport& rep, const RunMeta& meta);

// Pretty-printed with two-space indent and a trailing newline.
std::string dump_report(const Json& report);

// scenario,p,quantity,value,lo,hi,mode,verdict, one row per claim. Exact
// values are num/den with lo and hi empty; unchecked rows have no verdict.
void write_csv(std::ostream& out, const SuiteReport& rep);

void write_human(std::ostream& out, const SuiteReport& rep, const RunMeta& meta);

}  // namespace percsym
