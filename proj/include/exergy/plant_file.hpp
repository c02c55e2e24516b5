#pragma once

// JSON plant files.
//
//   {
//     "dead_state": {"pressure_kpa": 100, "temperature_c": 15},
//     "fluids": [{"id": "CO2", "reference": {"k0": -283.625}},
//                {"id": "Air", "reference": {"h0": 288.5, "s0": 3.413}}],
//     "states": [{"id": "1", "fluid": "Air", "t_c": 531.8, "p_kpa": 104.3,
//                 "mdot_kg_s": 93.8, "h_kj_kg": 953.85, "s_kj_kgk": 4.9019,
//                 "eps_kj_kg": 236.34}, ...],
//     "components": [{"id": "H1", "kind": "heat_exchanger", "hot_in": "1",
//                     "hot_out": "2", "cold_in": "9", "cold_out": "10"},
//                    {"id": "T1", "kind": "turbine", "inlet": "10", "outlet": "11"},
//                    {"id": "S", "kind": "splitter", "inlet": "5", "outlets": ["6", "18"]},
//                    {"id": "M", "kind": "merger", "inlets": ["7", "15"], "outlet": "8"}],
//     "boundary": {"in_streams": ["1"], "out_streams": ["3"],
//                  "shaft": {"producers": ["T1"], "consumers": ["Compr1"]}},
//     "property_tables": [{"fluid": "Air", "points": [{"p_kpa": .., "t_c": ..,
//                          "h_kj_kg": .., "s_kj_kgk": ..}, ...]}]
//   }
//
// A k0 reference is tied to the file's dead-state temperature. Fluids without
// a "fluids" entry take their reference from a property table, or failing
// that, are derived from the states' eps_kj_kg values.

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "exergy/error.hpp"
#include "exergy/plant.hpp"
#include "exergy/units.hpp"

namespace exergy {

namespace detail {

using nlohmann::json;

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    throw parse_error(source_ + ": " + (path.empty() ? "/" : path) + ": " + what);
  }

  const json& member(const json& obj, const std::string& path, const char* key) const {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing required field '") + key + "'");
    return *it;
  }

  const json* optional_member(const json& obj, const std::string& path, const char* key) const {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
  }

  double number(const json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
  }

  double number(const json& obj, const std::string& path, const char* key) const {
    return number(member(obj, path, key), path + "/" + key);
  }

  std::optional<double> optional_number(const json& obj, const std::string& path,
                                        const char* key) const {
    const json* v = optional_member(obj, path, key);
    if (!v) return std::nullopt;
    return number(*v, path + "/" + key);
  }

  // Ids may be written as strings or integers.
  std::string id(const json& v, const std::string& path) const {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    fail(path, "expected an id (string or integer)");
  }

  std::string id(const json& obj, const std::string& path, const char* key) const {
    return id(member(obj, path, key), path + "/" + key);
  }

  std::vector<std::string> ids(const json& obj, const std::string& path, const char* key) const {
    const json& arr = member(obj, path, key);
    const std::string p = path + "/" + key;
    if (!arr.is_array()) fail(p, "expected an array of ids");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(id(arr[i], p + "/" + std::to_string(i)));
    return out;
  }

  const json& array(const json& obj, const std::string& path, const char* key) const {
    const json& arr = member(obj, path, key);
    if (!arr.is_array()) fail(path + "/" + key, "expected an array");
    return arr;
  }

 private:
  std::string source_;
};

inline ComponentKind read_component_kind(const Reader& rd, const json& c, const std::string& p) {
  const json& kind_v = rd.member(c, p, "kind");
  if (!kind_v.is_string()) rd.fail(p + "/kind", "expected a string");
  const auto kind = kind_v.get<std::string>();
  if (kind == "heat_exchanger")
    return HeatExchanger{rd.id(c, p, "hot_in"), rd.id(c, p, "hot_out"), rd.id(c, p, "cold_in"),
                         rd.id(c, p, "cold_out")};
  if (kind == "turbine") return Turbine{rd.id(c, p, "inlet"), rd.id(c, p, "outlet")};
  if (kind == "compressor") return Compressor{rd.id(c, p, "inlet"), rd.id(c, p, "outlet")};
  if (kind == "splitter") return Splitter{rd.id(c, p, "inlet"), rd.ids(c, p, "outlets")};
  if (kind == "merger") return Merger{rd.ids(c, p, "inlets"), rd.id(c, p, "outlet")};
  rd.fail(p + "/kind", "unknown component kind '" + kind +
                           "' (expected heat_exchanger, turbine, compressor, splitter or merger)");
}

}  // namespace detail

// Builds a plant from parsed JSON and resolves every state's specific exergy.
// Structural checks that cannot be represented in the graph (duplicate ids,
// unresolvable references) throw; everything else is left to validate_plant.
inline PlantGraph read_plant(const nlohmann::json& doc, const std::string& source = "<plant>") {
  using detail::json;
  const detail::Reader rd(source);
  if (!doc.is_object()) rd.fail("", "plant file must be a JSON object");
  PlantGraph plant;

  const json& ds = rd.member(doc, "", "dead_state");
  try {
    plant.dead_state = DeadState(rd.number(ds, "/dead_state", "pressure_kpa"),
                                 celsius_to_kelvin(rd.number(ds, "/dead_state", "temperature_c")));
  } catch (const data_error& e) {
    rd.fail("/dead_state", e.what());
  }

  if (const json* tables = rd.optional_member(doc, "", "property_tables")) {
    if (!tables->is_array()) rd.fail("/property_tables", "expected an array");
    for (std::size_t i = 0; i < tables->size(); ++i) {
      const std::string p = "/property_tables/" + std::to_string(i);
      const json& t = (*tables)[i];
      const std::string fluid = rd.id(t, p, "fluid");
      const json& pts = rd.array(t, p, "points");
      std::vector<PropertySample> samples;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const std::string pp = p + "/points/" + std::to_string(k);
        samples.push_back({rd.number(pts[k], pp, "p_kpa"),
                           celsius_to_kelvin(rd.number(pts[k], pp, "t_c")),
                           rd.number(pts[k], pp, "h_kj_kg"), rd.number(pts[k], pp, "s_kj_kgk")});
      }
      if (plant.property_tables.count(fluid))
        throw data_error("duplicate property table for fluid '" + fluid + "'");
      plant.property_tables.emplace(fluid, PropertyTable(fluid, std::move(samples)));
    }
  }

  const json& states = rd.array(doc, "", "states");
  for (std::size_t i = 0; i < states.size(); ++i) {
    const std::string p = "/states/" + std::to_string(i);
    const json& s = states[i];
    StatePoint st;
    st.id = rd.id(s, p, "id");
    st.fluid_id = rd.id(s, p, "fluid");
    st.t_k = celsius_to_kelvin(rd.number(s, p, "t_c"));
    st.p_kpa = rd.number(s, p, "p_kpa");
    st.mdot = rd.number(s, p, "mdot_kg_s");
    st.eps_supplied = rd.optional_number(s, p, "eps_kj_kg");
    const auto h = rd.optional_number(s, p, "h_kj_kg");
    const auto sv = rd.optional_number(s, p, "s_kj_kgk");
    if (h && sv) {
      st.h = *h;
      st.s = *sv;
    } else if (h || sv) {
      rd.fail(p, "h_kj_kg and s_kj_kgk must be given together");
    } else {
      auto table = plant.property_tables.find(st.fluid_id);
      if (table == plant.property_tables.end())
        throw data_error("state '" + st.id + "' has no h/s and fluid '" + st.fluid_id +
                         "' has no property table");
      const auto hs = table->second.lookup(st.p_kpa, st.t_k);
      st.h = hs.h;
      st.s = hs.s;
    }
    if (!plant.states.emplace(st.id, st).second)
      throw data_error("duplicate state id '" + st.id + "'");
  }

  if (const json* fluids = rd.optional_member(doc, "", "fluids")) {
    if (!fluids->is_array()) rd.fail("/fluids", "expected an array");
    for (std::size_t i = 0; i < fluids->size(); ++i) {
      const std::string p = "/fluids/" + std::to_string(i);
      const json& f = (*fluids)[i];
      const std::string fid = rd.id(f, p, "id");
      const json& ref = rd.member(f, p, "reference");
      const std::string rp = p + "/reference";
      const auto k0 = rd.optional_number(ref, rp, "k0");
      const auto h0 = rd.optional_number(ref, rp, "h0");
      const auto s0 = rd.optional_number(ref, rp, "s0");
      FluidRef fr;
      fr.fluid_id = fid;
      if (k0 && !h0 && !s0)
        fr.form = CombinedRef{*k0, plant.dead_state.t0_k()};
      else if (!k0 && h0 && s0)
        fr.form = EnthalpyEntropyRef{*h0, *s0};
      else
        rd.fail(rp, "reference must be exactly one of {\"h0\", \"s0\"} or {\"k0\"}");
      if (!plant.fluid_refs.emplace(fid, fr).second)
        throw data_error("duplicate fluid id '" + fid + "'");
    }
  }

  // Fill in references for fluids the file did not declare.
  std::map<std::string, std::vector<StatePoint>> by_fluid;
  for (const auto& [sid, st] : plant.states) by_fluid[st.fluid_id].push_back(st);
  for (const auto& [fluid, members] : by_fluid) {
    if (plant.fluid_refs.count(fluid)) continue;
    if (auto t = plant.property_tables.find(fluid); t != plant.property_tables.end()) {
      plant.fluid_refs.emplace(fluid, reference_from_table(t->second, plant.dead_state));
      continue;
    }
    const bool all_have_eps = std::all_of(members.begin(), members.end(),
                                          [](const StatePoint& s) { return s.eps_supplied.has_value(); });
    if (!all_have_eps)
      throw data_error("fluid '" + fluid +
                       "' has no reference, no property table, and not every state supplies eps_kj_kg");
    plant.fluid_refs.emplace(fluid, derive_fluid_ref(members, plant.dead_state).ref);
  }

  const json& comps = rd.array(doc, "", "components");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string p = "/components/" + std::to_string(i);
    Component c{rd.id(comps[i], p, "id"), detail::read_component_kind(rd, comps[i], p)};
    const std::string cid = c.id;
    if (!plant.components.emplace(cid, std::move(c)).second)
      throw data_error("duplicate component id '" + cid + "'");
  }

  const json& b = rd.member(doc, "", "boundary");
  plant.boundary.in_streams = rd.ids(b, "/boundary", "in_streams");
  plant.boundary.out_streams = rd.ids(b, "/boundary", "out_streams");
  const json& shaft = rd.member(b, "/boundary", "shaft");
  plant.boundary.shaft.producers = rd.ids(shaft, "/boundary/shaft", "producers");
  plant.boundary.shaft.consumers = rd.ids(shaft, "/boundary/shaft", "consumers");

  resolve_exergies(plant);
  return plant;
}

inline nlohmann::json parse_json_text(std::string_view text, const std::string& source) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(source + ": " + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline PlantGraph read_plant_text(std::string_view text, const std::string& source = "<plant>") {
  return read_plant(parse_json_text(text, source), source);
}

inline PlantGraph read_plant_file(const std::string& path) {
  return read_plant_text(read_text_file(path), path);
}

// Reads and fully validates; any diagnostic becomes a data_error.
inline PlantGraph load_plant_json(const nlohmann::json& doc, const std::string& source = "<plant>") {
  PlantGraph plant = read_plant(doc, source);
  if (plant.components.empty()) throw data_error(source + ": plant has no components");
  if (const auto diags = validate_plant(plant); !diags.empty())
    throw data_error(source + ": " + summarize(diags));
  return plant;
}

inline PlantGraph load_plant_text(std::string_view text, const std::string& source = "<plant>") {
  return load_plant_json(parse_json_text(text, source), source);
}

inline PlantGraph load_plant(const std::string& path) {
  return load_plant_text(read_text_file(path), path);
}

}  // namespace exergy
