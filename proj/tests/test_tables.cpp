#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "parapost/tables.hpp"

using namespace parapost;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<ConvergenceRow> sample_rows() {
  std::vector<ConvergenceRow> rows(2);
  rows[0].M = 64;
  rows[0].e = 1.2e-4;
  rows[0].eta = 1.2e-2;
  rows[0].components = {1.6e-4, 1.6e-3, 1.6e-3, 4e-4, 8e-3};
  rows[1].M = 128;
  rows[1].e = 3e-5;
  rows[1].eta = 3e-3;
  rows[1].components = {4e-5, 4e-4, 4e-4, 1e-4, 2e-3};
  finalize_rows(rows);
  return rows;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_sci(1.0) == "1.000e+00");
  CHECK(format_sci(0.0) == "0.000e+00");
  CHECK(format_sci(-2.5e-7) == "-2.500e-07");
  CHECK(format_sci(1.23456e-3) == "1.235e-03");
  CHECK(format_sci(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_sci(std::nan("")) == "nan");
  CHECK(format_order(1.996) == "2.00");
  CHECK(format_order(0.5) == "0.50");
  CHECK(table_format_from_string("md") == TableFormat::Markdown);
  CHECK(table_format_from_string("markdown") == TableFormat::Markdown);
  CHECK(table_format_from_string("csv") == TableFormat::Csv);
  CHECK_THROWS_AS(table_format_from_string("tex"), InvalidArgument);
}

TEST_CASE("error table") {
  std::ostringstream csv, md;
  write_error_table(csv, sample_rows(), TableFormat::Csv);
  const auto c = lines(csv.str());
  REQUIRE(c.size() == 3);
  CHECK(c[0] == "M,e_M,p_M,eta,chi_M,chi_fraction");
  CHECK(c[1] == "64,1.200e-04,,1.200e-02,1.000e-02,1/100");
  CHECK(c[2] == "128,3.000e-05,2.00,3.000e-03,1.000e-02,1/100");

  write_error_table(md, sample_rows(), TableFormat::Markdown);
  const auto m = lines(md.str());
  REQUIRE(m.size() == 4);
  CHECK(m[0] == "| M | e_M | p_M | eta^{M,K} | chi_M |");
  CHECK(m[2] == "| 64 | 1.200e-04 | - | 1.200e-02 | 1/100 |");
  CHECK(m[3] == "| 128 | 3.000e-05 | 2.00 | 3.000e-03 | 1/100 |");
}

TEST_CASE("component table") {
  std::ostringstream csv, md;
  write_component_table(csv, sample_rows(), TableFormat::Csv);
  const auto c = lines(csv.str());
  REQUIRE(c.size() == 3);
  CHECK(c[0] ==
        "M,eta_init,p_eta_init,eta_f,p_eta_f,eta_ell,p_eta_ell,eta_Psi,p_eta_Psi,"
        "eta_delta_psi,p_eta_delta_psi");
  CHECK(c[1] == "64,1.600e-04,,1.600e-03,,1.600e-03,,8.000e-03,,4.000e-04,");
  CHECK(c[2] == "128,4.000e-05,2.00,4.000e-04,2.00,4.000e-04,2.00,2.000e-03,2.00,1.000e-04,2.00");

  write_component_table(md, sample_rows(), TableFormat::Markdown);
  const auto m = lines(md.str());
  REQUIRE(m.size() == 4);
  CHECK(m[3].find("4.000e-05 (2.00)") != std::string::npos);
}

TEST_CASE("empty row sets give header-only tables") {
  for (auto f : {TableFormat::Csv, TableFormat::Markdown}) {
    std::ostringstream a, b;
    write_error_table(a, {}, f);
    write_component_table(b, {}, f);
    CHECK(lines(a.str()).size() == (f == TableFormat::Csv ? 1u : 2u));
    CHECK(lines(b.str()).size() == (f == TableFormat::Csv ? 1u : 2u));
  }
}

TEST_CASE("run report") {
  RunConfig cfg;
  cfg.steps = 8;
  const RunResult r = run_estimator(builtin_test_problem(), Scheme::CrankNicolson, cfg);
  std::ostringstream os;
  write_run_report(os, r.report);
  const auto l = lines(os.str());
  REQUIRE(l.size() == 1 + 9 + 1);
  CHECK(l[0] == "j,t,sigma,mu,chi,eta_ell,eta_ell_delta,eta_f,eta_delta_psi,eta_Psi,eta_init,total,K");
  CHECK(l[1].rfind("0,0.000e+00,", 0) == 0);
  CHECK(l[9].find(",inf,") != std::string::npos);  // mu_M
  CHECK(l.back().rfind("total,", 0) == 0);
  CHECK(l.back().find(format_sci(r.report.total)) != std::string::npos);
  CHECK(l.back().substr(l.back().size() - 2) == ",0");
  for (const auto& line : l) {
    CHECK(std::count(line.begin(), line.end(), ',') == 12);
  }
}
