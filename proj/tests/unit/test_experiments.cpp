#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "zeno/error.hpp"
#include "zeno/experiments.hpp"

using namespace zeno;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("zeno_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("csv rows must match the header") {
  CsvTable t{{"a", "b"}, {}};
  t.add({1.0, 2.0});
  CHECK(t.str() == "a,b\n1,2\n");
  t.add({1.0});
  CHECK_THROWS(t.str());
}

TEST_CASE("atomic writes leave no temporary file") {
  const fs::path dir = scratch("atomic");
  write_file_atomic(dir / "x.txt", "hello\n");
  write_file_atomic(dir / "x.txt", "again\n");
  CHECK(slurp(dir / "x.txt") == "again\n");
  CHECK_FALSE(fs::exists(dir / "x.txt.tmp"));
  fs::remove_all(dir);
}

TEST_CASE("catalog lists every experiment once") {
  CHECK(experiment_catalog().size() == 11);
  CHECK(is_experiment("fig7-scan"));
  CHECK_FALSE(is_experiment("fig8"));
  ExperimentOptions opt;
  opt.out_dir = scratch("unknown");
  CHECK_THROWS_AS(run_experiment("no-such-experiment", opt), InputError);
}

TEST_CASE("experiment outputs are deterministic and carry metadata") {
  for (const std::string name : {"stirap-check", "appxA-identities"}) {
    ExperimentOptions a, b;
    a.out_dir = scratch("det_a");
    b.out_dir = scratch("det_b");
    const auto fa = run_experiment(name, a);
    const auto fb = run_experiment(name, b);
    REQUIRE(fa.size() == fb.size());
    for (std::size_t i = 0; i < fa.size(); ++i) CHECK(slurp(fa[i]) == slurp(fb[i]));
    const auto meta = nlohmann::json::parse(slurp(a.out_dir / name / "metadata.json"));
    CHECK(meta["experiment"] == name);
    for (const auto& [key, value] : meta["parameters"].items()) {
      CHECK(value.contains("value"));
      CHECK((value["origin"] == "given" || value["origin"] == "chosen"));
    }
    fs::remove_all(a.out_dir);
    fs::remove_all(b.out_dir);
  }
}

TEST_CASE("identity residuals are small") {
  ExperimentOptions opt;
  opt.out_dir = scratch("ident");
  run_experiment("appxA-identities", opt);
  std::ifstream in(opt.out_dir / "appxA-identities" / "identities.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "identity,parameter,residual");
  int checked = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string id, param, res;
    std::getline(ls, id, ',');
    std::getline(ls, param, ',');
    std::getline(ls, res, ',');
    if (id == "one_hot_offdiag_closed_form_gap") continue;  // reported, not asserted
    CHECK(std::stod(res) < 1e-10);
    ++checked;
  }
  CHECK(checked > 10);
  fs::remove_all(opt.out_dir);
}

TEST_CASE("fig7 scan columns") {
  ExperimentOptions opt;
  opt.out_dir = scratch("fig7");
  opt.steps = 10;
  opt.grid = {1.0, 1000.0};
  opt.times = {2.0};
  run_experiment("fig7-scan", opt);
  CHECK(first_line(opt.out_dir / "fig7-scan" / "scan_T2.csv") == "strength,success_3state,success_tf,success_projected");
  CHECK(first_line(opt.out_dir / "fig7-scan" / "ground_state.csv") ==
        "strength,ground_state_correct_3state,ground_state_correct_tf");
  fs::remove_all(opt.out_dir);
}

TEST_CASE("fig2 spectrum columns and class split") {
  ExperimentOptions opt;
  opt.out_dir = scratch("fig2");
  run_experiment("fig2-spectrum", opt);
  const std::string head = first_line(opt.out_dir / "fig2-spectrum" / "spectrum_sat.csv");
  CHECK(head.rfind("theta,eig_000,eig_001,", 0) == 0);
  CHECK(head.size() > 20);
  CHECK(head.substr(head.size() - 13) == "eig_242,class");
  std::ifstream in(opt.out_dir / "fig2-spectrum" / "spectrum_sat.csv");
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line.substr(line.size() - 9) == ",1/15/227");
  fs::remove_all(opt.out_dir);
}
