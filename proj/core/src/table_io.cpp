#include "credence/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace credence {

std::string fmt6(double x) {
  if (!std::isfinite(x)) return "";
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string fmt6(const std::optional<double>& x) { return x ? fmt6(*x) : std::string(); }

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw std::invalid_argument("csv row width does not match header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += fields[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

CsvTable region_scan_table(const std::vector<RegionScanRow>& rows) {
  CsvTable t({"h", "gamma", "pi_m", "pi_s", "pi_e", "region"});
  for (const auto& r : rows) {
    t.add_row({fmt6(r.h), fmt6(r.gamma), fmt6(r.incomes.pi_m), fmt6(r.incomes.pi_s), fmt6(r.incomes.pi_e),
               std::string(to_string(r.region))});
  }
  return t;
}

CsvTable rbar_table(const std::vector<RbarCell>& cells) {
  CsvTable t({"w", "gamma", "r_bar", "feasible", "clamped"});
  for (const auto& c : cells) {
    t.add_row({fmt6(c.w), fmt6(c.gamma), fmt6(c.r_bar), c.feasible ? "1" : "0", c.clamped ? "1" : "0"});
  }
  return t;
}

CsvTable belief_paths_header() { return CsvTable({"scenario", "round", "mean_prL", "q10", "q90", "stderr"}); }

void append_belief_paths(CsvTable& table, const std::string& scenario, const BeliefPathSummary& s) {
  for (std::size_t r = 0; r < s.mean_path.size(); ++r) {
    table.add_row({scenario, std::to_string(r), fmt6(s.mean_path[r]), fmt6(s.q10[r]), fmt6(s.q90[r]),
                   fmt6(s.std_error_path[r])});
  }
}

CsvTable region_grid_table(const std::vector<RegionCell>& cells, Analysis analysis) {
  CsvTable t({"alpha", "t", "profile_label", "analysis"});
  for (const auto& c : cells) t.add_row({fmt6(c.alpha), fmt6(c.t), c.profile_label, std::string(to_string(analysis))});
  return t;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace credence
