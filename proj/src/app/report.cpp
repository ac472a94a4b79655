#include "mzk/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mzk/errors.hpp"

namespace mzk {

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw ConfigError("unknown report format '" + name + "'");
}

ReportFormat format_for_path(const std::string& path) {
  return std::filesystem::path(path).extension() == ".json" ? ReportFormat::json : ReportFormat::csv;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// nlohmann's layout with floats as "%.17g"; non-finite floats become null.
void dump_json(const nlohmann::ordered_json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object() || j.is_array()) {
    const bool obj = j.is_object();
    if (j.empty()) {
      out += obj ? "{}" : "[]";
      return;
    }
    out += obj ? "{\n" : "[\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad;
      if (obj) out += nlohmann::ordered_json(it.key()).dump() + ": ";
      dump_json(*it, out, depth + 1);
    }
    out += "\n" + close + (obj ? "}" : "]");
  } else if (j.is_number_float()) {
    const double x = j.get<double>();
    out += std::isfinite(x) ? format_double(x) : "null";
  } else {
    out += j.dump();
  }
}

std::string dump_json(const nlohmann::ordered_json& j) {
  std::string out;
  dump_json(j, out, 0);
  return out + "\n";
}

}  // namespace

void write_text(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

namespace {

std::vector<std::string> default_columns(const std::vector<ProbeReport>& reports) {
  std::set<std::string> params, labels;
  for (const auto& r : reports) {
    for (const auto& [k, v] : r.parameters) params.insert(k);
    for (const auto& [k, v] : r.labels) labels.insert(k);
  }
  std::vector<std::string> cols(params.begin(), params.end());
  cols.insert(cols.end(), labels.begin(), labels.end());
  cols.insert(cols.end(), {"lhs", "rhs", "ratio"});
  return cols;
}

}  // namespace

void emit_report(const std::vector<ProbeReport>& reports, ReportFormat format, const std::string& path,
                 const std::vector<std::string>& columns) {
  const std::vector<std::string> cols = columns.empty() ? default_columns(reports) : columns;
  if (format == ReportFormat::csv) {
    std::ostringstream os;
    for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
    os << '\n';
    for (const auto& r : reports) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c) os << ',';
        const std::string& k = cols[c];
        if (k == "lhs") os << format_double(r.lhs);
        else if (k == "rhs") os << format_double(r.rhs);
        else if (k == "ratio") os << format_double(r.ratio);
        else if (auto it = r.parameters.find(k); it != r.parameters.end()) os << format_double(it->second);
        else if (auto lt = r.labels.find(k); lt != r.labels.end()) os << lt->second;
      }
      os << '\n';
    }
    write_text(path, os.str());
    return;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json row;
    for (const auto& k : cols) {
      if (k == "lhs") row[k] = r.lhs;
      else if (k == "rhs") row[k] = r.rhs;
      else if (k == "ratio") row[k] = r.ratio;
      else if (auto it = r.parameters.find(k); it != r.parameters.end()) row[k] = it->second;
      else if (auto lt = r.labels.find(k); lt != r.labels.end()) row[k] = lt->second;
      else row[k] = nullptr;
    }
    arr.push_back(std::move(row));
  }
  write_text(path, dump_json(arr));
}

void write_ledger_csv(const ConservationLedger& ledger, const std::string& path) {
  std::ostringstream os;
  os << "t,mass,energy\n";
  for (std::size_t i = 0; i < ledger.times.size(); ++i)
    os << format_double(ledger.times[i]) << ',' << format_double(ledger.mass[i]) << ','
       << format_double(ledger.energy[i]) << '\n';
  write_text(path, os.str());
}

void write_measure_json(const MeasureReport& r, const std::string& set_name, const std::string& path) {
  const CountingConfig& c = r.config;
  nlohmann::ordered_json j;
  j["set"] = set_name;
  j["counted"] = r.counted;
  j["trivial_bound"] = r.trivial_bound;
  if (r.improved_bound) j["improved_bound"] = *r.improved_bound;
  else j["improved_bound"] = nullptr;
  j["hypothesis_flags"] = {{"separated", r.separated}};
  j["steps"] = {{"h", c.h}, {"htau", c.h_tau}, {"cells", r.cells}};
  j["config"] = {{"n1", c.n1}, {"n2", c.n2}, {"n3", c.n3}, {"l1", c.l1}, {"l2", c.l2}, {"l3", c.l3},
                 {"tau", c.tau}, {"xi", c.xi}, {"q", c.q}};
  if (set_name == "B") {
    j["max_slice"] = r.max_slice;
    j["slice_bound"] = r.slice_bound;
    j["admissible_pairs"] = r.admissible_pairs;
    j["projection_bound"] = r.projection_bound;
  }
  write_text(path, dump_json(j));
}

}  // namespace mzk
