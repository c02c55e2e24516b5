#pragma once

// Re-evaluating a plant at other dead states.
//
// Each state's specific exergy is shifted from its baseline value rather than
// recomputed from scratch:
//
//   eps(T0') = eps(T0) + [k(T0) - k(T0')] - (T0' - T0) * s,  k(T) = h0(T) - T * s0(T)
//
// which equals (h - h0') - T0' (s - s0') whenever the baseline eps is
// consistent with the reference. Anchoring on the baseline keeps the sweep
// point at the configured dead state identical to a direct analysis even when
// the file supplies rounded eps values.
//
// fixed-reference:  h0, s0 stay at their declared values.
// table-evaluated:  h0, s0 are re-read from the fluid's property table at (p0, T0').
// A bare k0 reference cannot be split back into h0 and s0, so it cannot be swept.
//
// Component efficiencies can become undefined away from the configured dead
// state (a cooler whose outlet drops below T0, say). Sweep points are analyzed
// with the lenient policy: such rows carry eta_x = NaN and a warning, while
// flows, destruction and the closure check stay valid.

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "exergy/error.hpp"
#include "exergy/plant.hpp"
#include "exergy/render.hpp"
#include "exergy/units.hpp"

namespace exergy {

enum class SweepMode { fixed_reference, table_evaluated, mixed };

inline std::string_view sweep_mode_name(SweepMode m) {
  switch (m) {
    case SweepMode::fixed_reference: return "fixed-reference";
    case SweepMode::table_evaluated: return "table-evaluated";
    case SweepMode::mixed: return "mixed";
  }
  return "unknown";
}

struct SweepPoint {
  double t0_k;
  ExergyReport report;
  bool operator==(const SweepPoint&) const = default;
};

struct SweepSeries {
  SweepMode mode = SweepMode::fixed_reference;
  double p0_kpa = 100.0;
  std::vector<SweepPoint> points;  // strictly increasing t0_k
  bool operator==(const SweepSeries&) const = default;
};

namespace detail {

inline bool table_backed(const FluidRef& ref) { return ref.origin == RefOrigin::property_table; }

inline void require_sweepable(const PlantGraph& plant) {
  for (const auto& [fluid, ref] : plant.fluid_refs) {
    if (table_backed(ref)) {
      if (!plant.property_tables.count(fluid))
        throw data_error("fluid '" + fluid + "': reference came from a property table that is missing");
      continue;
    }
    if (!ref.separable())
      throw data_error("fluid '" + fluid +
                       "' has only a combined k0 reference; a dead-state sweep needs "
                       "separate h0 and s0 values or a property table");
  }
}

inline SweepMode mode_of(const PlantGraph& plant) {
  bool any_table = false, any_fixed = false;
  for (const auto& [fluid, ref] : plant.fluid_refs) (table_backed(ref) ? any_table : any_fixed) = true;
  if (any_table && any_fixed) return SweepMode::mixed;
  return any_table ? SweepMode::table_evaluated : SweepMode::fixed_reference;
}

}  // namespace detail

// The same plant seen from another dead state.
inline PlantGraph rebase_dead_state(const PlantGraph& plant, const DeadState& target) {
  const DeadState& base = plant.dead_state;
  if (std::abs(target.t0_k() - base.t0_k()) <= kSameTemperatureK &&
      std::abs(target.p0_kpa() - base.p0_kpa()) <= 1e-9)
    return plant;

  detail::require_sweepable(plant);
  PlantGraph out = plant;
  out.dead_state = target;
  std::map<std::string, double> k_shift;  // k(T0) - k(T0')
  for (auto& [fluid, ref] : out.fluid_refs) {
    const double k_base = ref.k0_at(base.t0_k());
    if (detail::table_backed(ref)) {
      const auto& table = plant.property_tables.at(fluid);
      if (!table.covers(target.p0_kpa(), target.t0_k()))
        throw data_error("fluid '" + fluid + "': property table does not cover the dead state p0 = " +
                         detail::fmt_num(target.p0_kpa()) + " kPa, T0 = " +
                         detail::fmt_num(target.t0_k()) + " K");
      ref = reference_from_table(table, target);
    }
    k_shift[fluid] = k_base - ref.k0_at(target.t0_k());
  }
  const double dt = target.t0_k() - base.t0_k();
  for (auto& [sid, st] : out.states) {
    auto shift = k_shift.find(st.fluid_id);
    if (shift == k_shift.end())
      throw data_error("state '" + sid + "': fluid '" + st.fluid_id + "' has no reference");
    st.eps = st.eps + shift->second - dt * st.s;
    st.eps_supplied.reset();
  }
  return out;
}

inline SweepSeries sweep_dead_state(const PlantGraph& plant, std::span<const double> t0_values_k,
                                    double p0_kpa) {
  if (t0_values_k.empty()) throw usage_error("sweep: no dead-state temperatures given");
  for (std::size_t i = 1; i < t0_values_k.size(); ++i)
    if (!(t0_values_k[i] > t0_values_k[i - 1]))
      throw usage_error("sweep: dead-state temperatures must be strictly increasing");
  detail::require_sweepable(plant);

  SweepSeries series;
  series.mode = detail::mode_of(plant);
  series.p0_kpa = p0_kpa;
  series.points.reserve(t0_values_k.size());
  for (double t0 : t0_values_k)
    series.points.push_back(
        {t0, analyze_plant(rebase_dead_state(plant, DeadState(p0_kpa, t0)), EfficiencyPolicy::lenient)});
  return series;
}

// Inclusive range in degrees Celsius, returned in kelvin.
inline std::vector<double> sweep_range_celsius(double from_c, double to_c, double step_c) {
  if (!(step_c > 0.0)) throw usage_error("sweep: step must be > 0");
  if (!(to_c >= from_c)) throw usage_error("sweep: end temperature is below start temperature");
  const auto n = static_cast<std::size_t>(std::floor((to_c - from_c) / step_c + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(celsius_to_kelvin(from_c + static_cast<double>(i) * step_c));
  return out;
}

inline nlohmann::json sweep_to_json(const SweepSeries& s) {
  nlohmann::json j;
  j["mode"] = sweep_mode_name(s.mode);
  j["p0_kpa"] = s.p0_kpa;
  j["points"] = nlohmann::json::array();
  for (const auto& p : s.points) j["points"].push_back({{"t0_k", p.t0_k}, {"report", report_to_json(p.report)}});
  return j;
}

inline std::string render_sweep(const SweepSeries& s, OutputFormat format) {
  using detail::fixed2;
  using detail::pad_left;
  switch (format) {
    case OutputFormat::json: return sweep_to_json(s).dump(2) + "\n";
    case OutputFormat::csv: {
      std::string out = "t0_k," + std::string(kCsvHeader) + "\n";
      for (const auto& p : s.points) out += csv_rows(p.report, detail::exact(p.t0_k) + ",");
      return out;
    }
    case OutputFormat::table: {
      std::string out = "Dead-state sweep (" + std::string(sweep_mode_name(s.mode)) +
                        "), p0 = " + fixed2(s.p0_kpa) + " kPa\n\n";
      out += pad_left("T0 [K]", 9) + pad_left("Ex_in [kW]", 13) + pad_left("Ex_out [kW]", 13) +
             pad_left("Ex_D [kW]", 12) + pad_left("P_useful [kW]", 15) + pad_left("eta_func [%]", 14) +
             pad_left("eta_gross [%]", 15) + pad_left("residual [kW]", 15) + "\n";
      for (const auto& p : s.points) {
        const auto& sys = p.report.system;
        char res[48];
        std::snprintf(res, sizeof res, "%.3e", p.report.closure.residual);
        out += pad_left(fixed2(p.t0_k), 9) + pad_left(fixed2(sys.balance.ex_in), 13) +
               pad_left(fixed2(sys.balance.ex_out), 13) + pad_left(fixed2(sys.balance.ex_d), 12) +
               pad_left(fixed2(sys.useful_power), 15) + pad_left(fixed2(100.0 * sys.balance.eta_x), 14) +
               pad_left(fixed2(100.0 * sys.eta_gross), 15) + pad_left(res, 15) + "\n";
      }
      for (const auto& p : s.points)
        for (const auto& w : p.report.warnings) out += "\nwarning: " + w;
      if (out.back() != '\n') out += "\n";
      return out;
    }
  }
  throw usage_error("unknown output format");
}

}  // namespace exergy
