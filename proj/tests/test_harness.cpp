#include "doctest.h"

#include "torsionlab/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace torsionlab;

namespace {

std::string data_file(const std::string& name) {
  std::ifstream in(std::string(TORSIONLAB_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TEST_CASE("bundled presentations match the shipped files") {
  const auto& bundled = bundled_presentations();
  REQUIRE(bundled.size() == 3);
  for (const char* name : {"trefoil", "figure8", "unknot"}) {
    REQUIRE(bundled.count(name) == 1);
    CHECK(bundled.at(name) == data_file(std::string(name) + ".pres"));
    CHECK_NOTHROW(parse_presentation(bundled.at(name)));
  }
}

TEST_CASE("config parsing") {
  const auto conf = parse_config(
      "a = 1\n# comment line\nb=2 # trailing comment\n\na = 3\n");
  CHECK(conf.size() == 2);
  CHECK(conf.at("a") == "3");
  CHECK(conf.at("b") == "2");

  CHECK_THROWS_AS(parse_config("just a word\n"), Error);
  CHECK_THROWS_AS(parse_config("= 3\n"), Error);
}

TEST_CASE("experiment on the figure eight knot") {
  const GroupPresentation fig =
      parse_presentation(bundled_presentations().at("figure8"));
  ExperimentConfig cfg;
  cfg.max_index = 3;
  const ExperimentResult r = run_experiment(fig, cfg);

  REQUIRE(r.summary.volume_reference.has_value());
  const double ref = 2.029883212819 / (6.0 * M_PI);
  CHECK(*r.summary.volume_reference == doctest::Approx(ref).epsilon(1e-12));
  REQUIRE(r.summary.log_mahler.has_value());
  CHECK(*r.summary.log_mahler ==
        doctest::Approx(std::log((3.0 + std::sqrt(5.0)) / 2)).epsilon(1e-12));

  bool unchecked_order_note = false;
  for (const std::string& note : r.summary.notes)
    if (note.find("infinite order") != std::string::npos) unchecked_order_note = true;
  CHECK(unchecked_order_note);

  int lowindex = 0, cyclic = 0;
  for (const ResultRow& row : r.rows) {
    CHECK(row.error.empty());
    CHECK(row.ineq_ok);
    if (row.kind == "lowindex") {
      ++lowindex;
      CHECK(row.id == "L" + std::to_string(lowindex));
    } else {
      CHECK(row.kind == "cyclic");
      ++cyclic;
      CHECK(row.id == "C" + std::to_string(cyclic));
      CHECK(row.index == cyclic);
    }
    if (row.t1 > 1)
      CHECK(row.ln_t1_over_n ==
            doctest::Approx(std::log(row.t1.get_d()) / row.index).epsilon(1e-12));
    REQUIRE(row.meridian_trace.has_value());
    REQUIRE(row.branched_torsion.has_value());
  }
  CHECK(cyclic == 3);
  CHECK(lowindex >= 3);

  // Cyclic covers of the figure eight: t1 follows the trace recurrence.
  for (const ResultRow& row : r.rows) {
    if (row.kind != "cyclic") continue;
    if (row.index == 2) CHECK(row.t1 == 5);
    if (row.index == 3) CHECK(row.t1 == 16);
  }

  // CSV schema and the volume reference column.
  const std::string csv = to_csv(r);
  const auto ls = lines(csv);
  REQUIRE(!ls.empty());
  CHECK(ls[0] ==
        "id,kind,index,b1,t1,ln_t1_over_n,det2_jacobian,ln_det_jacobian_over_n,"
        "det2_beta,ineq_ok,branched_torsion,branched_free_rank,meridian_trace,"
        "vol_over_6pi,error");
  REQUIRE(ls.size() == r.rows.size() + 1);
  const std::string ref_str = format_double(*r.summary.volume_reference);
  for (size_t i = 1; i < ls.size(); ++i) {
    const auto f = fields(ls[i]);
    REQUIRE(f.size() == 15);
    CHECK(f[13] == ref_str);
    CHECK(f[14].empty());
  }

  const std::string summary = summary_text(r);
  CHECK(summary.find("vol/(6 pi)") != std::string::npos);
  CHECK(summary.find(ref_str) != std::string::npos);
}

TEST_CASE("experiment determinism across jobs") {
  const GroupPresentation tre =
      parse_presentation(bundled_presentations().at("trefoil"));
  ExperimentConfig cfg;
  cfg.max_index = 3;
  cfg.jobs = 3;
  const ExperimentResult parallel = run_experiment(tre, cfg);
  cfg.jobs = 1;
  const ExperimentResult serial = run_experiment(tre, cfg);
  CHECK(to_csv(parallel) == to_csv(serial));
  CHECK(summary_text(parallel) == summary_text(serial));
}

TEST_CASE("experiment degrades gracefully without a cyclic tower") {
  // Z^2 abelianization: low-index covers still work, the cyclic tower and the
  // Alexander polynomial are reported as notes instead of aborting the run.
  const GroupPresentation p = parse_presentation(
      "generators: a m\nrelators: a m a^-1 m^-1\nmeridian: m\n");
  ExperimentConfig cfg;
  cfg.max_index = 3;
  const ExperimentResult r = run_experiment(p, cfg);
  CHECK(!r.rows.empty());
  for (const ResultRow& row : r.rows) {
    CHECK(row.kind == "lowindex");
    CHECK(row.error.empty());
    CHECK(row.ineq_ok);
  }
  CHECK(!r.summary.log_mahler.has_value());
  CHECK(!r.summary.notes.empty());
}

TEST_CASE("growth and density reports serialize") {
  const GroupPresentation tre =
      parse_presentation(bundled_presentations().at("trefoil"));
  const GrowthReport growth = growth_report(tre, 6);
  const auto gl = lines(to_csv(growth));
  REQUIRE(gl.size() == 6);
  CHECK(gl[0] == "n,torsion,betti_jump,ln_torsion_over_n,ln_mahler_ref");
  CHECK(fields(gl[1])[0] == "2");
  CHECK(fields(gl[1])[1] == "3");
  CHECK(fields(gl[5])[1] == "0");
  CHECK(fields(gl[5])[2] == "1");
  CHECK(fields(gl[5])[3].empty());  // no log of a vanishing order

  std::vector<CosetTable> tables;
  for (int n = 1; n <= 4; ++n) tables.push_back(cyclic_cover_table(tre, n));
  const FkReport fk = fk_report(reduced_jacobian(tre).J, tables);
  const auto fl = lines(to_csv(fk));
  REQUIRE(fl.size() == tables.size() + 3);
  CHECK(fl[0] == "index,det2,ln_det_over_n,f_zero,density_ln_det");
  CHECK(fields(fl[1])[0] == "1");
  CHECK(fields(fl[fl.size() - 2])[0] == "liminf");
  CHECK(fields(fl[fl.size() - 1])[0] == "envelope");
}

TEST_CASE("selfcheck battery") {
  const SelfcheckResult good = run_selfcheck(20260815);
  CHECK(good.all_pass);
  CHECK(good.suites.size() >= 10);
  for (const SelfcheckSuite& s : good.suites) {
    CAPTURE(s.name);
    CAPTURE(s.detail);
    CHECK(s.pass);
  }

  // A corrupted input must trip at least one suite.
  std::map<std::string, std::string> broken = bundled_presentations();
  broken["trefoil"] =
      "generators: a b\nrelators: a b a b^-1 a^-1 b\nmeridian: a\n";
  const SelfcheckResult bad = run_selfcheck(20260815, nullptr, &broken);
  CHECK(!bad.all_pass);
}
