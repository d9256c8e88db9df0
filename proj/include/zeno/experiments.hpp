#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "zeno/parallel.hpp"

namespace zeno {

struct ExperimentInfo {
  std::string name;
  std::string summary;
};

const std::vector<ExperimentInfo>& experiment_catalog();
bool is_experiment(const std::string& name);

struct ExperimentOptions {
  std::filesystem::path out_dir = "runs";
  int steps = 1000;
  Exec exec = Exec::parallel;
  // Replace the default resource grid (total times, measurement counts or strengths) when non-empty.
  std::vector<double> grid;
  // fig7-scan only: total times at which the strength scan runs.
  std::vector<double> times;
};

// Writes CSVs and a metadata.json under out_dir/name; returns the files written.
std::vector<std::filesystem::path> run_experiment(const std::string& name, const ExperimentOptions& opt);

// 12 significant digits, "nan"/"inf" spelled out.
std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(const std::vector<double>& values);
  std::string str() const;
};

// Writes to a sibling temporary file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace zeno
