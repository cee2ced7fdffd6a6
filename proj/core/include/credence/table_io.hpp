#pragma once

#include <optional>
#include <string>
#include <vector>

#include "credence/beliefs.hpp"
#include "credence/equilibria.hpp"
#include "credence/thresholds.hpp"

namespace credence {

// Six significant digits; empty field for missing or non-finite values.
std::string fmt6(double x);
std::string fmt6(const std::optional<double>& x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> row);  // throws std::invalid_argument on width mismatch
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

CsvTable region_scan_table(const std::vector<RegionScanRow>& rows);
CsvTable rbar_table(const std::vector<RbarCell>& cells);
// Columns: scenario, round, mean_prL, q10, q90, stderr.
void append_belief_paths(CsvTable& table, const std::string& scenario, const BeliefPathSummary& summary);
CsvTable belief_paths_header();
CsvTable region_grid_table(const std::vector<RegionCell>& cells, Analysis analysis);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace credence
