#pragma once

// Exergy balances of individual plant components.

#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "exergy/error.hpp"
#include "exergy/fluid_state.hpp"

namespace exergy {

// Relative tolerance on mass-flow equality between ports.
inline constexpr double kMassFlowRelTolerance = 1e-6;

struct HeatExchanger {
  std::string hot_in, hot_out, cold_in, cold_out;
  bool operator==(const HeatExchanger&) const = default;
};

struct Turbine {
  std::string inlet, outlet;
  bool operator==(const Turbine&) const = default;
};

struct Compressor {
  std::string inlet, outlet;
  bool operator==(const Compressor&) const = default;
};

struct Splitter {
  std::string inlet;
  std::vector<std::string> outlets;
  bool operator==(const Splitter&) const = default;
};

struct Merger {
  std::vector<std::string> inlets;
  std::string outlet;
  bool operator==(const Merger&) const = default;
};

using ComponentKind =
    std::variant<HeatExchanger, Turbine, Compressor, Splitter, Merger>;

struct Component {
  std::string id;
  ComponentKind kind;
  bool operator==(const Component&) const = default;
};

// Declaration order doubles as report grouping order.
enum class ComponentCategory { heat_exchanger, turbine, compressor, splitter, merger };

inline ComponentCategory category_of(const ComponentKind& kind) {
  return static_cast<ComponentCategory>(kind.index());
}

inline std::string_view category_name(ComponentCategory c) {
  switch (c) {
    case ComponentCategory::heat_exchanger: return "heat_exchanger";
    case ComponentCategory::turbine: return "turbine";
    case ComponentCategory::compressor: return "compressor";
    case ComponentCategory::splitter: return "splitter";
    case ComponentCategory::merger: return "merger";
  }
  return "unknown";
}

inline bool is_junction(ComponentCategory c) {
  return c == ComponentCategory::splitter || c == ComponentCategory::merger;
}

struct PortLists {
  std::vector<std::string> inlets;
  std::vector<std::string> outlets;
};

inline PortLists ports_of(const ComponentKind& kind) {
  struct Visitor {
    PortLists operator()(const HeatExchanger& hx) const {
      return {{hx.hot_in, hx.cold_in}, {hx.hot_out, hx.cold_out}};
    }
    PortLists operator()(const Turbine& t) const { return {{t.inlet}, {t.outlet}}; }
    PortLists operator()(const Compressor& c) const { return {{c.inlet}, {c.outlet}}; }
    PortLists operator()(const Splitter& sp) const { return {{sp.inlet}, sp.outlets}; }
    PortLists operator()(const Merger& m) const { return {m.inlets, {m.outlet}}; }
  };
  return std::visit(Visitor{}, kind);
}

inline bool same_mass_flow(double a, double b) {
  return std::abs(a - b) <= kMassFlowRelTolerance * std::max({std::abs(a), std::abs(b), 1e-12});
}

struct ExergyBalance {
  double ex_in = 0.0;   // kW
  double ex_out = 0.0;  // kW
  double ex_d = 0.0;    // kW, always ex_in - ex_out
  double eta_x = 0.0;   // fraction
  bool operator==(const ExergyBalance&) const = default;
};

struct MachineBalance {
  ExergyBalance balance;
  double power = 0.0;  // kW, shaft power produced (turbine) or consumed (compressor)
  bool operator==(const MachineBalance&) const = default;
};

// strict: an undefined or above-one efficiency throws efficiency_error.
// lenient: the balance is returned with eta_x = NaN instead.
enum class EfficiencyPolicy { strict, lenient };

namespace detail {

inline void require_leg(const StatePoint& in, const StatePoint& out,
                        std::string_view leg) {
  if (in.fluid_id != out.fluid_id)
    throw data_error(std::string(leg) + " leg: fluid changes from '" +
                     in.fluid_id + "' (state " + in.id + ") to '" +
                     out.fluid_id + "' (state " + out.id + ")");
  if (!same_mass_flow(in.mdot, out.mdot))
    throw data_error(std::string(leg) + " leg: mass flow mismatch " +
                     std::to_string(in.mdot) + " kg/s (state " + in.id +
                     ") vs " + std::to_string(out.mdot) + " kg/s (state " +
                     out.id + ")");
}

inline void require_efficiency_at_most_one(double eta) {
  if (eta > 1.0)
    throw efficiency_error("exergy efficiency " + std::to_string(eta) +
                           " exceeds 1 (second-law violation in input data)");
}

// Sets eta_x = num / den, or reports why it is undefined.
inline void set_efficiency(ExergyBalance& b, double num, double den, EfficiencyPolicy policy,
                           const std::string& undefined_message) {
  if (!(den > 0.0)) {
    if (policy == EfficiencyPolicy::strict) throw efficiency_error(undefined_message);
    b.eta_x = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  b.eta_x = num / den;
  if (b.eta_x > 1.0 && policy == EfficiencyPolicy::lenient) {
    b.eta_x = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  require_efficiency_at_most_one(b.eta_x);
}

}  // namespace detail

// Fuel is the exergy decrease of the hot leg; product is the exergy increase
// of the cold leg.
inline ExergyBalance hx_balance(const StatePoint& hot_in, const StatePoint& hot_out,
                                const StatePoint& cold_in, const StatePoint& cold_out,
                                EfficiencyPolicy policy = EfficiencyPolicy::strict) {
  detail::require_leg(hot_in, hot_out, "hot");
  detail::require_leg(cold_in, cold_out, "cold");
  ExergyBalance b;
  b.ex_in = exergy_flow(hot_in) - exergy_flow(hot_out);
  b.ex_out = exergy_flow(cold_out) - exergy_flow(cold_in);
  b.ex_d = b.ex_in - b.ex_out;
  detail::set_efficiency(b, b.ex_out, b.ex_in, policy,
                         "heat exchanger exergy input " + std::to_string(b.ex_in) +
                             " kW is not positive (idle or reversed exchanger)");
  return b;
}

inline double turbine_power(const StatePoint& inlet, const StatePoint& outlet) {
  detail::require_leg(inlet, outlet, "turbine");
  return inlet.mdot * (inlet.h - outlet.h);
}

inline double compressor_power(const StatePoint& inlet, const StatePoint& outlet) {
  detail::require_leg(inlet, outlet, "compressor");
  return inlet.mdot * (outlet.h - inlet.h);
}

inline MachineBalance turbine_balance(const StatePoint& inlet, const StatePoint& outlet,
                                      EfficiencyPolicy policy = EfficiencyPolicy::strict) {
  const double power = turbine_power(inlet, outlet);
  const double drop = exergy_flow(inlet) - exergy_flow(outlet);
  MachineBalance m;
  m.power = power;
  m.balance.ex_in = exergy_flow(inlet);
  m.balance.ex_out = exergy_flow(outlet) + power;
  m.balance.ex_d = m.balance.ex_in - m.balance.ex_out;
  detail::set_efficiency(m.balance, power, drop, policy,
                         "turbine exergy drop " + std::to_string(drop) +
                             " kW is not positive (efficiency undefined)");
  return m;
}

inline MachineBalance compressor_balance(const StatePoint& inlet, const StatePoint& outlet,
                                         EfficiencyPolicy policy = EfficiencyPolicy::strict) {
  const double power = compressor_power(inlet, outlet);
  MachineBalance m;
  m.power = power;
  m.balance.ex_in = exergy_flow(inlet) + power;
  m.balance.ex_out = exergy_flow(outlet);
  m.balance.ex_d = m.balance.ex_in - m.balance.ex_out;
  detail::set_efficiency(m.balance, exergy_flow(outlet) - exergy_flow(inlet), power, policy,
                         "compressor power " + std::to_string(power) +
                             " kW is not positive (efficiency undefined)");
  return m;
}

// Splitters and mergers: same specific state on every port, so the balance
// only reports what flows through. ex_d is zero up to rounding.
inline ExergyBalance junction_balance(std::span<const StatePoint* const> inlets,
                                      std::span<const StatePoint* const> outlets) {
  ExergyBalance b;
  for (const auto* st : inlets) b.ex_in += exergy_flow(*st);
  for (const auto* st : outlets) b.ex_out += exergy_flow(*st);
  b.ex_d = b.ex_in - b.ex_out;
  b.eta_x = b.ex_in != 0.0 ? b.ex_out / b.ex_in : 1.0;
  return b;
}

struct GenericBalance {
  double ex_d = 0.0;
  // Set when ex_d < 0: the data describe exergy creation.
  bool negative_destruction = false;
};

// X_H + P_in + sum(Ex_in) = P_out + sum(Ex_out) + Ex_D, solved for Ex_D.
inline GenericBalance generic_balance(std::span<const double> ex_streams_in,
                                      std::span<const double> ex_streams_out,
                                      double power_in, double power_out,
                                      double heat_exergy) {
  const double in = std::accumulate(ex_streams_in.begin(), ex_streams_in.end(), 0.0);
  const double out = std::accumulate(ex_streams_out.begin(), ex_streams_out.end(), 0.0);
  GenericBalance g;
  g.ex_d = heat_exergy + power_in + in - power_out - out;
  g.negative_destruction = g.ex_d < 0.0;
  return g;
}

}  // namespace exergy
