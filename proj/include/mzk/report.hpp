#pragma once

#include <string>
#include <vector>

#include "mzk/bourgain.hpp"
#include "mzk/evolution.hpp"
#include "mzk/resonance.hpp"

namespace mzk {

enum class ReportFormat { csv, json };

ReportFormat parse_format(const std::string& name);
// Format implied by the file extension; csv unless it ends in ".json".
ReportFormat format_for_path(const std::string& path);

// printf "%.17g".
std::string format_double(double x);

// Column order: `columns` if given, else sorted parameter names, sorted
// label names, then lhs, rhs, ratio. Missing cells are empty in CSV and
// null in JSON. An empty report list gives a header-only CSV.
void emit_report(const std::vector<ProbeReport>& reports, ReportFormat format, const std::string& path,
                 const std::vector<std::string>& columns = {});

// CSV with header t,mass,energy.
void write_ledger_csv(const ConservationLedger& ledger, const std::string& path);

// JSON object with counted, trivial_bound, improved_bound, hypothesis_flags,
// steps and the configuration.
void write_measure_json(const MeasureReport& report, const std::string& set_name, const std::string& path);

// Writes the whole string; IoError names the path on failure.
void write_text(const std::string& path, const std::string& content);

}  // namespace mzk
