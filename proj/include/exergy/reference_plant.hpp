#pragma once

// Waste-heat-recovery CO2 closed-cycle gas turbine plant: 24 measured state
// points, six heat exchangers, two turbines and two compressors on a common
// shaft. Combustion gases are modelled as air. The fluid references are the
// combined constants h0 - T0*s0 recovered from the tabulated specific
// exergies at 100 kPa / 15 C.

#include <string_view>

#include <nlohmann/json.hpp>

#include "exergy/fluid_state.hpp"

namespace exergy {

inline constexpr std::string_view kReferencePlantJson = R"json({
  "dead_state": {"pressure_kpa": 100.0, "temperature_c": 15.0},
  "fluids": [
    {"id": "Air", "reference": {"k0": -694.9779}},
    {"id": "CO2", "reference": {"k0": -283.6250}},
    {"id": "Water", "reference": {"k0": -1.6057}}
  ],
  "states": [
    {"id": "1", "fluid": "Air", "t_c": 531.8, "p_kpa": 104.3, "mdot_kg_s": 93.8, "h_kj_kg": 953.85, "s_kj_kgk": 4.9019, "eps_kj_kg": 236.34},
    {"id": "2", "fluid": "Air", "t_c": 369.9, "p_kpa": 104.3, "mdot_kg_s": 93.8, "h_kj_kg": 778.89, "s_kj_kgk": 4.6594, "eps_kj_kg": 131.26},
    {"id": "3", "fluid": "Air", "t_c": 183.1, "p_kpa": 104.3, "mdot_kg_s": 93.8, "h_kj_kg": 584.51, "s_kj_kgk": 4.3027, "eps_kj_kg": 39.672},
    {"id": "4", "fluid": "CO2", "t_c": 31.0, "p_kpa": 7579, "mdot_kg_s": 127.9, "h_kj_kg": 298.80, "s_kj_kgk": 1.3226, "eps_kj_kg": 201.33},
    {"id": "5", "fluid": "CO2", "t_c": 60.6, "p_kpa": 21190, "mdot_kg_s": 127.9, "h_kj_kg": 323.08, "s_kj_kgk": 1.3372, "eps_kj_kg": 221.40},
    {"id": "6", "fluid": "CO2", "t_c": 60.6, "p_kpa": 21190, "mdot_kg_s": 55.7, "h_kj_kg": 323.08, "s_kj_kgk": 1.3372, "eps_kj_kg": 221.40},
    {"id": "7", "fluid": "CO2", "t_c": 171.5, "p_kpa": 21190, "mdot_kg_s": 55.7, "h_kj_kg": 552.37, "s_kj_kgk": 1.9383, "eps_kj_kg": 277.47},
    {"id": "8", "fluid": "CO2", "t_c": 171.5, "p_kpa": 21190, "mdot_kg_s": 67.1, "h_kj_kg": 552.37, "s_kj_kgk": 1.9383, "eps_kj_kg": 277.47},
    {"id": "9", "fluid": "CO2", "t_c": 303.9, "p_kpa": 21190, "mdot_kg_s": 67.1, "h_kj_kg": 730.09, "s_kj_kgk": 2.2896, "eps_kj_kg": 353.96},
    {"id": "10", "fluid": "CO2", "t_c": 501.8, "p_kpa": 21190, "mdot_kg_s": 67.1, "h_kj_kg": 974.51, "s_kj_kgk": 2.6539, "eps_kj_kg": 493.42},
    {"id": "11", "fluid": "CO2", "t_c": 384.1, "p_kpa": 7579, "mdot_kg_s": 67.1, "h_kj_kg": 849.65, "s_kj_kgk": 2.6751, "eps_kj_kg": 362.44},
    {"id": "12", "fluid": "CO2", "t_c": 227.3, "p_kpa": 7579, "mdot_kg_s": 67.1, "h_kj_kg": 671.93, "s_kj_kgk": 2.3664, "eps_kj_kg": 273.68},
    {"id": "13", "fluid": "CO2", "t_c": 70.6, "p_kpa": 7579, "mdot_kg_s": 67.1, "h_kj_kg": 481.64, "s_kj_kgk": 1.9062, "eps_kj_kg": 215.99},
    {"id": "14", "fluid": "CO2", "t_c": 70.6, "p_kpa": 7579, "mdot_kg_s": 11.4, "h_kj_kg": 481.64, "s_kj_kgk": 1.9062, "eps_kj_kg": 215.99},
    {"id": "15", "fluid": "CO2", "t_c": 171.5, "p_kpa": 21190, "mdot_kg_s": 11.4, "h_kj_kg": 552.37, "s_kj_kgk": 1.9383, "eps_kj_kg": 277.47},
    {"id": "16", "fluid": "CO2", "t_c": 70.6, "p_kpa": 7579, "mdot_kg_s": 55.7, "h_kj_kg": 481.64, "s_kj_kgk": 1.9062, "eps_kj_kg": 215.99},
    {"id": "17", "fluid": "CO2", "t_c": 70.6, "p_kpa": 7579, "mdot_kg_s": 127.9, "h_kj_kg": 481.64, "s_kj_kgk": 1.9062, "eps_kj_kg": 215.99},
    {"id": "18", "fluid": "CO2", "t_c": 60.6, "p_kpa": 21190, "mdot_kg_s": 72.2, "h_kj_kg": 323.08, "s_kj_kgk": 1.3372, "eps_kj_kg": 221.40},
    {"id": "19", "fluid": "CO2", "t_c": 153.0, "p_kpa": 21190, "mdot_kg_s": 72.2, "h_kj_kg": 523.05, "s_kj_kgk": 1.8709, "eps_kj_kg": 267.56},
    {"id": "20", "fluid": "CO2", "t_c": 339.9, "p_kpa": 21190, "mdot_kg_s": 72.2, "h_kj_kg": 774.92, "s_kj_kgk": 2.3650, "eps_kj_kg": 377.08},
    {"id": "21", "fluid": "CO2", "t_c": 235.9, "p_kpa": 7579, "mdot_kg_s": 72.2, "h_kj_kg": 681.59, "s_kj_kgk": 2.3855, "eps_kj_kg": 277.83},
    {"id": "22", "fluid": "CO2", "t_c": 70.6, "p_kpa": 7579, "mdot_kg_s": 72.2, "h_kj_kg": 481.64, "s_kj_kgk": 1.9062, "eps_kj_kg": 215.99},
    {"id": "23", "fluid": "Water", "t_c": 25.0, "p_kpa": 200, "mdot_kg_s": 1119.0, "h_kj_kg": 105.01, "s_kj_kgk": 0.3672, "eps_kj_kg": 0.8095},
    {"id": "24", "fluid": "Water", "t_c": 30.0, "p_kpa": 200, "mdot_kg_s": 1119.0, "h_kj_kg": 125.91, "s_kj_kgk": 0.4367, "eps_kj_kg": 1.6781}
  ],
  "components": [
    {"id": "H1", "kind": "heat_exchanger", "hot_in": "1", "hot_out": "2", "cold_in": "9", "cold_out": "10"},
    {"id": "H2", "kind": "heat_exchanger", "hot_in": "2", "hot_out": "3", "cold_in": "19", "cold_out": "20"},
    {"id": "HTR", "kind": "heat_exchanger", "hot_in": "11", "hot_out": "12", "cold_in": "8", "cold_out": "9"},
    {"id": "LTR", "kind": "heat_exchanger", "hot_in": "12", "hot_out": "13", "cold_in": "6", "cold_out": "7"},
    {"id": "IHX", "kind": "heat_exchanger", "hot_in": "21", "hot_out": "22", "cold_in": "18", "cold_out": "19"},
    {"id": "Cooler", "kind": "heat_exchanger", "hot_in": "17", "hot_out": "4", "cold_in": "23", "cold_out": "24"},
    {"id": "T1", "kind": "turbine", "inlet": "10", "outlet": "11"},
    {"id": "T2", "kind": "turbine", "inlet": "20", "outlet": "21"},
    {"id": "Compr1", "kind": "compressor", "inlet": "4", "outlet": "5"},
    {"id": "Compr2", "kind": "compressor", "inlet": "14", "outlet": "15"},
    {"id": "Split5", "kind": "splitter", "inlet": "5", "outlets": ["6", "18"]},
    {"id": "Split13", "kind": "splitter", "inlet": "13", "outlets": ["14", "16"]},
    {"id": "Merge8", "kind": "merger", "inlets": ["7", "15"], "outlet": "8"},
    {"id": "Merge17", "kind": "merger", "inlets": ["16", "22"], "outlet": "17"}
  ],
  "boundary": {
    "in_streams": ["1", "23"],
    "out_streams": ["3", "24"],
    "shaft": {"producers": ["T1", "T2"], "consumers": ["Compr1", "Compr2"]}
  }
}
)json";

enum class ReferenceForm {
  combined,          // k0 per fluid, as tabulated; cannot be swept
  enthalpy_entropy,  // synthetic h0/s0 pairs with the same k0 at 15 C
};

// Synthetic dead-state entropies; h0 is chosen so h0 - T0*s0 reproduces k0.
inline constexpr struct {
  std::string_view fluid;
  double s0;
} kSyntheticEntropies[] = {{"Air", 3.4130}, {"CO2", 2.7000}, {"Water", 0.2245}};

inline nlohmann::json reference_plant_json(ReferenceForm form = ReferenceForm::combined) {
  auto doc = nlohmann::json::parse(kReferencePlantJson);
  if (form == ReferenceForm::combined) return doc;
  const double t0 = DeadState().t0_k();
  for (auto& fluid : doc["fluids"]) {
    const double k0 = fluid["reference"]["k0"].get<double>();
    for (const auto& e : kSyntheticEntropies)
      if (fluid["id"].get<std::string>() == e.fluid)
        fluid["reference"] = {{"h0", k0 + t0 * e.s0}, {"s0", e.s0}};
  }
  return doc;
}

}  // namespace exergy
