#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "credence/table_io.hpp"

using namespace credence;

TEST_CASE("number formatting") {
  CHECK(fmt6(0.0) == "0");
  CHECK(fmt6(0.5) == "0.5");
  CHECK(fmt6(1.0 / 3.0) == "0.333333");
  CHECK(fmt6(45.6666666) == "45.6667");
  CHECK(fmt6(NAN).empty());
  CHECK(fmt6(std::optional<double>{}).empty());
  CHECK(fmt6(std::optional<double>{2.0}) == "2");
}

TEST_CASE("csv tables") {
  CsvTable t({"a", "b"});
  t.add_row({"1", "2"});
  CHECK(t.rows() == 1);
  CHECK(t.str() == "a,b\n1,2\n");
  CHECK_THROWS_AS(t.add_row({"1"}), std::invalid_argument);
}

TEST_CASE("table headers") {
  const MarketParams p = default_params();
  CHECK(region_scan_table(emit_region_scan(p, {0.5}, {0.4})).str().rfind("h,gamma,pi_m,pi_s,pi_e,region\n", 0) == 0);
  CHECK(rbar_table(emit_rbar_contour(p, {0.0}, {0.0})).str() == "w,gamma,r_bar,feasible,clamped\n0,0,0,1,0\n");
  CHECK(belief_paths_header().str() == "scenario,round,mean_prL,q10,q90,stderr\n");
  CsvTable paths = belief_paths_header();
  BeliefPathSummary s;
  s.mean_path = {0.4, 0.5};
  s.q10 = {0.4, 0.3};
  s.q90 = {0.4, 0.7};
  s.std_error_path = {0.0, 0.01};
  append_belief_paths(paths, "x", s);
  CHECK(paths.str() == "scenario,round,mean_prL,q10,q90,stderr\nx,0,0.4,0.4,0.4,0\nx,1,0.5,0.3,0.7,0.01\n");
  const std::vector<RegionCell> cells{{0.0, 0.5, "I-N-N"}};
  CHECK(region_grid_table(cells, Analysis::Nash).str() == "alpha,t,profile_label,analysis\n0,0.5,I-N-N,nash\n");
}

TEST_CASE("files round-trip") {
  const auto path = std::filesystem::temp_directory_path() / "credence_table_io_test.txt";
  write_text_file(path.string(), "hello\n");
  CHECK(read_text_file(path.string()) == "hello\n");
  std::filesystem::remove(path);
  CHECK_THROWS(read_text_file(path.string()));
}
