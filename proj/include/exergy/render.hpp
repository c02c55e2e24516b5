#pragma once

// Report output. The table is for people (2 decimals, kW and %); CSV and
// JSON carry the same full-precision values so a JSON report can be read
// back into an identical ExergyReport.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "exergy/error.hpp"
#include "exergy/plant.hpp"

namespace exergy {

enum class OutputFormat { table, csv, json };

inline OutputFormat parse_format(std::string_view name) {
  if (name == "table") return OutputFormat::table;
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw usage_error("unknown output format '" + std::string(name) +
                    "' (expected table, csv or json)");
}

namespace detail {

// Shortest representation that reads back to the same double.
inline std::string exact(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string fixed2(double v) {
  if (std::abs(v) < 0.005) v = 0.0;  // no "-0.00"
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Undefined efficiencies (NaN) are written as an empty CSV field or JSON null.
inline std::string exact_or_empty(double v) { return std::isnan(v) ? std::string() : exact(v); }

inline nlohmann::json number_or_null(double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); }

inline std::string pad_left(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

inline std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

inline ComponentCategory parse_category(const std::string& name) {
  for (auto c : {ComponentCategory::heat_exchanger, ComponentCategory::turbine,
                 ComponentCategory::compressor, ComponentCategory::splitter,
                 ComponentCategory::merger})
    if (category_name(c) == name) return c;
  throw parse_error("report: unknown component kind '" + name + "'");
}

}  // namespace detail

inline nlohmann::json report_to_json(const ExergyReport& r) {
  nlohmann::json j;
  j["dead_state"] = {{"pressure_kpa", r.dead_state.p0_kpa()},
                     {"temperature_k", r.dead_state.t0_k()}};
  j["components"] = nlohmann::json::array();
  for (const auto& c : r.components) {
    nlohmann::json row = {{"id", c.id},
                          {"kind", category_name(c.category)},
                          {"ex_in_kw", c.balance.ex_in},
                          {"ex_out_kw", c.balance.ex_out},
                          {"ex_d_kw", c.balance.ex_d},
                          {"eta_x", detail::number_or_null(c.balance.eta_x)}};
    row["power_kw"] = c.power ? nlohmann::json(*c.power) : nlohmann::json(nullptr);
    j["components"].push_back(std::move(row));
  }
  j["system"] = {{"ex_in_kw", r.system.balance.ex_in},
                 {"ex_out_kw", r.system.balance.ex_out},
                 {"ex_d_kw", r.system.balance.ex_d},
                 {"eta_functional", r.system.balance.eta_x},
                 {"eta_gross", r.system.eta_gross},
                 {"useful_power_kw", r.system.useful_power}};
  j["closure"] = {{"sum_components_kw", r.closure.sum_components},
                  {"whole_system_kw", r.closure.whole_system},
                  {"residual_kw", r.closure.residual}};
  j["warnings"] = r.warnings;
  return j;
}

inline ExergyReport report_from_json(const nlohmann::json& j) {
  try {
    ExergyReport r;
    const auto& ds = j.at("dead_state");
    r.dead_state = DeadState(ds.at("pressure_kpa").get<double>(), ds.at("temperature_k").get<double>());
    for (const auto& row : j.at("components")) {
      ComponentResult c;
      c.id = row.at("id").get<std::string>();
      c.category = detail::parse_category(row.at("kind").get<std::string>());
      const auto& eta = row.at("eta_x");
      c.balance = {row.at("ex_in_kw").get<double>(), row.at("ex_out_kw").get<double>(),
                   row.at("ex_d_kw").get<double>(),
                   eta.is_null() ? std::numeric_limits<double>::quiet_NaN() : eta.get<double>()};
      if (const auto& p = row.at("power_kw"); !p.is_null()) c.power = p.get<double>();
      r.components.push_back(std::move(c));
    }
    const auto& s = j.at("system");
    r.system.balance = {s.at("ex_in_kw").get<double>(), s.at("ex_out_kw").get<double>(),
                        s.at("ex_d_kw").get<double>(), s.at("eta_functional").get<double>()};
    r.system.eta_gross = s.at("eta_gross").get<double>();
    r.system.useful_power = s.at("useful_power_kw").get<double>();
    const auto& c = j.at("closure");
    r.closure = {c.at("sum_components_kw").get<double>(), c.at("whole_system_kw").get<double>(),
                 c.at("residual_kw").get<double>()};
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("report: ") + e.what());
  }
}

inline constexpr std::string_view kCsvHeader = "id,kind,ex_in_kw,ex_out_kw,ex_d_kw,eta_x,power_kw";

// Component rows, then three system rows:
//   whole_system,system_functional  eta_x = useful power / net boundary decrease
//   whole_system,system_gross       eta_x = exergy out / exergy in
//   closure,closure                 ex_in = sum of component ex_d,
//                                   ex_out = whole-system ex_d, ex_d = residual
inline std::string csv_rows(const ExergyReport& r, std::string_view prefix = {}) {
  using detail::exact;
  using detail::exact_or_empty;
  std::string out;
  auto line = [&](const std::string& body) {
    out.append(prefix);
    out += body;
    out += '\n';
  };
  for (const auto& c : r.components)
    line(c.id + "," + std::string(category_name(c.category)) + "," + exact(c.balance.ex_in) +
         "," + exact(c.balance.ex_out) + "," + exact(c.balance.ex_d) + "," +
         exact_or_empty(c.balance.eta_x) + "," + (c.power ? exact(*c.power) : std::string()));
  const auto& s = r.system;
  const std::string flows = exact(s.balance.ex_in) + "," + exact(s.balance.ex_out) + "," +
                            exact(s.balance.ex_d) + ",";
  line("whole_system,system_functional," + flows + exact(s.balance.eta_x) + "," +
       exact(s.useful_power));
  line("whole_system,system_gross," + flows + exact(s.eta_gross) + "," + exact(s.useful_power));
  line("closure,closure," + exact(r.closure.sum_components) + "," +
       exact(r.closure.whole_system) + "," + exact(r.closure.residual) + ",,");
  return out;
}

inline std::string render_table(const ExergyReport& r) {
  using detail::fixed2;
  using detail::pad_left;
  using detail::pad_right;
  std::string out;
  out += "Exergy analysis at dead state T0 = " + fixed2(r.dead_state.t0_k()) +
         " K, p0 = " + fixed2(r.dead_state.p0_kpa()) + " kPa\n";

  auto section = [&](const char* title, auto&& pick) {
    bool any = false;
    for (const auto& c : r.components) {
      if (!pick(c.category)) continue;
      if (!any) {
        out += "\n";
        out += title;
        out += "\n  " + pad_right("Component", 12) + pad_right("Kind", 16) +
               pad_left("P [kW]", 12) + pad_left("Ex_in [kW]", 13) + pad_left("Ex_out [kW]", 13) +
               pad_left("Ex_D [kW]", 12) + pad_left("eta_x [%]", 11) + "\n";
        any = true;
      }
      out += "  " + pad_right(c.id, 12) + pad_right(std::string(category_name(c.category)), 16) +
             pad_left(c.power ? fixed2(*c.power) : "-", 12) + pad_left(fixed2(c.balance.ex_in), 13) +
             pad_left(fixed2(c.balance.ex_out), 13) + pad_left(fixed2(c.balance.ex_d), 12) +
             pad_left(std::isnan(c.balance.eta_x) ? "-" : fixed2(100.0 * c.balance.eta_x), 11) + "\n";
    }
  };
  section("Heat exchangers", [](ComponentCategory c) { return c == ComponentCategory::heat_exchanger; });
  section("Turbomachinery", [](ComponentCategory c) {
    return c == ComponentCategory::turbine || c == ComponentCategory::compressor;
  });
  section("Junctions", [](ComponentCategory c) { return is_junction(c); });

  const auto& s = r.system;
  auto kv = [&](const std::string& key, const std::string& value, const char* unit,
                const char* note = "") {
    out += "  " + pad_right(key, 34) + pad_left(value, 12) + " " + unit + note + "\n";
  };
  out += "\nWhole system\n";
  kv("Exergy input", fixed2(s.balance.ex_in), "kW");
  kv("Exergy output", fixed2(s.balance.ex_out), "kW", "  (boundary outflows + useful power)");
  kv("Exergy destruction", fixed2(s.balance.ex_d), "kW");
  kv("Useful power", fixed2(s.useful_power), "kW");
  kv("Functional exergy efficiency", fixed2(100.0 * s.balance.eta_x), "%",
     "   (useful power / net boundary exergy decrease)");
  kv("Gross exergy efficiency", fixed2(100.0 * s.eta_gross), "%", "   (exergy output / exergy input)");
  kv("Sum of component destructions", fixed2(r.closure.sum_components), "kW");
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3e", r.closure.residual);
  kv("Closure residual", buf, "kW");
  for (const auto& w : r.warnings) out += "\nwarning: " + w + "\n";
  return out;
}

inline std::string render_report(const ExergyReport& r, OutputFormat format) {
  switch (format) {
    case OutputFormat::table: return render_table(r);
    case OutputFormat::csv: return std::string(kCsvHeader) + "\n" + csv_rows(r);
    case OutputFormat::json: return report_to_json(r).dump(2) + "\n";
  }
  throw usage_error("unknown output format");
}

inline std::string render_report(const ExergyReport& r, std::string_view format) {
  return render_report(r, parse_format(format));
}

}  // namespace exergy
