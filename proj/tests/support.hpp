#pragma once

// Shared test fixtures: the measured operating points as plain numbers, and
// small helpers. Nothing here goes through the library's arithmetic, so the
// values can serve as an oracle for it.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <sys/wait.h>
#include <string>

#include <nlohmann/json.hpp>

#include "exergy/exergy.hpp"

namespace testing_support {

struct Row {
  int op;
  const char* fluid;
  double t_c, p_kpa, mdot, h, s, eps;
};

// Operating points 1-24 (combustion gases as air).
inline constexpr Row kOperatingPoints[] = {
    {1, "Air", 531.8, 104.3, 93.8, 953.85, 4.9019, 236.34},
    {2, "Air", 369.9, 104.3, 93.8, 778.89, 4.6594, 131.26},
    {3, "Air", 183.1, 104.3, 93.8, 584.51, 4.3027, 39.672},
    {4, "CO2", 31.0, 7579, 127.9, 298.80, 1.3226, 201.33},
    {5, "CO2", 60.6, 21190, 127.9, 323.08, 1.3372, 221.40},
    {6, "CO2", 60.6, 21190, 55.7, 323.08, 1.3372, 221.40},
    {7, "CO2", 171.5, 21190, 55.7, 552.37, 1.9383, 277.47},
    {8, "CO2", 171.5, 21190, 67.1, 552.37, 1.9383, 277.47},
    {9, "CO2", 303.9, 21190, 67.1, 730.09, 2.2896, 353.96},
    {10, "CO2", 501.8, 21190, 67.1, 974.51, 2.6539, 493.42},
    {11, "CO2", 384.1, 7579, 67.1, 849.65, 2.6751, 362.44},
    {12, "CO2", 227.3, 7579, 67.1, 671.93, 2.3664, 273.68},
    {13, "CO2", 70.6, 7579, 67.1, 481.64, 1.9062, 215.99},
    {14, "CO2", 70.6, 7579, 11.4, 481.64, 1.9062, 215.99},
    {15, "CO2", 171.5, 21190, 11.4, 552.37, 1.9383, 277.47},
    {16, "CO2", 70.6, 7579, 55.7, 481.64, 1.9062, 215.99},
    {17, "CO2", 70.6, 7579, 127.9, 481.64, 1.9062, 215.99},
    {18, "CO2", 60.6, 21190, 72.2, 323.08, 1.3372, 221.40},
    {19, "CO2", 153.0, 21190, 72.2, 523.05, 1.8709, 267.56},
    {20, "CO2", 339.9, 21190, 72.2, 774.92, 2.3650, 377.08},
    {21, "CO2", 235.9, 7579, 72.2, 681.59, 2.3855, 277.83},
    {22, "CO2", 70.6, 7579, 72.2, 481.64, 1.9062, 215.99},
    {23, "Water", 25.0, 200, 1119.0, 105.01, 0.3672, 0.8095},
    {24, "Water", 30.0, 200, 1119.0, 125.91, 0.4367, 1.6781},
};

inline constexpr double kT0 = 288.15;

inline const Row& row(int op) {
  for (const auto& r : kOperatingPoints)
    if (r.op == op) return r;
  throw std::out_of_range("no operating point " + std::to_string(op));
}

// Oracle: exergy flow straight from the tabulated columns.
inline double ex(int op) { return row(op).mdot * row(op).eps; }

// Oracle: h - T0 s - eps for one row.
inline double k_of(const Row& r) { return r.h - kT0 * r.s - r.eps; }

inline exergy::StatePoint state(int op, double mdot_scale = 1.0) {
  const Row& r = row(op);
  exergy::StatePoint st;
  st.id = std::to_string(op);
  st.fluid_id = r.fluid;
  st.t_k = r.t_c + 273.15;
  st.p_kpa = r.p_kpa;
  st.mdot = r.mdot * mdot_scale;
  st.h = r.h;
  st.s = r.s;
  st.eps_supplied = r.eps;
  st.eps = r.eps;
  return st;
}

inline nlohmann::json reference_json(exergy::ReferenceForm form = exergy::ReferenceForm::combined) {
  return exergy::reference_plant_json(form);
}

inline exergy::PlantGraph reference_plant(exergy::ReferenceForm form = exergy::ReferenceForm::combined) {
  return exergy::load_plant_json(reference_json(form), "reference");
}

inline nlohmann::json& state_entry(nlohmann::json& doc, const std::string& id) {
  for (auto& s : doc["states"])
    if (s["id"] == id) return s;
  throw std::out_of_range("no state " + id);
}

inline const exergy::ComponentResult& row_for(const exergy::ExergyReport& r, const std::string& id) {
  for (const auto& c : r.components)
    if (c.id == id) return c;
  throw std::out_of_range("no component " + id);
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("exergy_test_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI with stdout and stderr captured to files.
inline CommandResult run_cli(const std::string& cli, const std::string& args, const TempDir& dir) {
  static int counter = 0;
  const std::string tag = std::to_string(counter++);
  const std::string out = dir.path("stdout" + tag), err = dir.path("stderr" + tag);
  const std::string cmd = "\"" + cli + "\" " + args + " >\"" + out + "\" 2>\"" + err + "\"";
  const int status = std::system(cmd.c_str());
  CommandResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace testing_support
