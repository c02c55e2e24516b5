// exergy: second-law analysis of plants described as JSON state/component
// networks.
//
//   exergy analyze  <plant.json> [--format table|csv|json] [--t0-c T] [--p0-kpa P]
//   exergy sweep    <plant.json> --t0-from-c A --t0-to-c B --t0-step-c D [--p0-kpa P] [--format ...]
//   exergy validate <plant.json>
//   exergy reference [--form combined|h0s0]
//
// Exit status: 0 success, 1 validation or analysis error, 2 usage or parse error.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "exergy/exergy.hpp"

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

int run_analyze(const std::string& path, const std::string& format, std::optional<double> t0_c,
                std::optional<double> p0_kpa) {
  const auto fmt = exergy::parse_format(format);
  exergy::PlantGraph plant = exergy::load_plant(path);
  if (t0_c || p0_kpa) {
    const exergy::DeadState target(p0_kpa.value_or(plant.dead_state.p0_kpa()),
                                   t0_c ? exergy::celsius_to_kelvin(*t0_c) : plant.dead_state.t0_k());
    plant = exergy::rebase_dead_state(plant, target);
  }
  std::cout << exergy::render_report(exergy::analyze_plant(plant), fmt);
  return 0;
}

int run_sweep(const std::string& path, const std::string& format, double from_c, double to_c,
              double step_c, std::optional<double> p0_kpa) {
  const auto fmt = exergy::parse_format(format);
  const auto t0s = exergy::sweep_range_celsius(from_c, to_c, step_c);
  const exergy::PlantGraph plant = exergy::load_plant(path);
  const auto series = exergy::sweep_dead_state(plant, t0s, p0_kpa.value_or(plant.dead_state.p0_kpa()));
  std::cout << exergy::render_sweep(series, fmt);
  return 0;
}

int run_validate(const std::string& path) {
  const exergy::PlantGraph plant = exergy::read_plant_file(path);
  auto diags = exergy::validate_plant(plant);
  if (plant.components.empty())
    diags.push_back({exergy::DiagnosticKind::topology, "plant", "plant has no components"});
  for (const auto& d : diags)
    std::cout << exergy::diagnostic_kind_name(d.kind) << " [" << d.subject << "]: " << d.message << "\n";
  std::cout << path << ": " << plant.states.size() << " states, " << plant.components.size()
            << " components, " << diags.size() << (diags.size() == 1 ? " violation" : " violations")
            << "\n";
  return diags.empty() ? 0 : kExitData;
}

int run_reference(const std::string& form) {
  exergy::ReferenceForm rf;
  if (form == "combined")
    rf = exergy::ReferenceForm::combined;
  else if (form == "h0s0")
    rf = exergy::ReferenceForm::enthalpy_entropy;
  else
    throw exergy::usage_error("unknown reference form '" + form + "' (expected combined or h0s0)");
  std::cout << exergy::reference_plant_json(rf).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exergy analysis of thermodynamic plant networks"};
  app.require_subcommand(1);

  std::string path;
  std::string format = "table";
  std::optional<double> t0_c, p0_kpa;

  auto* analyze = app.add_subcommand("analyze", "Analyze a plant file");
  analyze->add_option("plant-file", path, "Plant definition (JSON)")->required();
  analyze->add_option("--format", format, "table, csv or json")->capture_default_str();
  analyze->add_option("--t0-c", t0_c, "Dead-state temperature override [C]");
  analyze->add_option("--p0-kpa", p0_kpa, "Dead-state pressure override [kPa]");

  double from_c = 0, to_c = 0, step_c = 0;
  auto* sweep = app.add_subcommand("sweep", "Repeat the analysis over a range of dead-state temperatures");
  sweep->add_option("plant-file", path, "Plant definition (JSON)")->required();
  sweep->add_option("--t0-from-c", from_c, "First dead-state temperature [C]")->required();
  sweep->add_option("--t0-to-c", to_c, "Last dead-state temperature [C]")->required();
  sweep->add_option("--t0-step-c", step_c, "Temperature step [C]")->required();
  sweep->add_option("--p0-kpa", p0_kpa, "Dead-state pressure [kPa] (default: from file)");
  sweep->add_option("--format", format, "table, csv or json")->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Check a plant file and list every problem found");
  validate->add_option("plant-file", path, "Plant definition (JSON)")->required();

  std::string form = "combined";
  auto* reference = app.add_subcommand("reference", "Print the built-in reference plant file");
  reference->add_option("--form", form, "combined (k0) or h0s0 (synthetic h0/s0)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) return run_analyze(path, format, t0_c, p0_kpa);
    if (*sweep) return run_sweep(path, format, from_c, to_c, step_c, p0_kpa);
    if (*validate) return run_validate(path);
    if (*reference) return run_reference(form);
  } catch (const exergy::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const exergy::usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const exergy::data_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
