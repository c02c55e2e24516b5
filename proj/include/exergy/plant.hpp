#pragma once

// A plant is a set of numbered state points wired together by components,
// plus a boundary declaring which streams cross it and which machines share
// the output shaft.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "exergy/components.hpp"
#include "exergy/error.hpp"
#include "exergy/fluid_state.hpp"
#include "exergy/property_table.hpp"

namespace exergy {

struct ShaftDeclaration {
  std::vector<std::string> producers;  // turbine ids
  std::vector<std::string> consumers;  // compressor ids
  bool operator==(const ShaftDeclaration&) const = default;
};

struct SystemBoundary {
  std::vector<std::string> in_streams;
  std::vector<std::string> out_streams;
  ShaftDeclaration shaft;
  bool operator==(const SystemBoundary&) const = default;
};

struct PlantGraph {
  DeadState dead_state;
  std::map<std::string, StatePoint> states;
  std::map<std::string, Component> components;
  SystemBoundary boundary;
  std::map<std::string, FluidRef> fluid_refs;
  std::map<std::string, PropertyTable> property_tables;

  const StatePoint& state(const std::string& id) const {
    auto it = states.find(id);
    if (it == states.end()) throw data_error("unknown state '" + id + "'");
    return it->second;
  }

  const Component& component(const std::string& id) const {
    auto it = components.find(id);
    if (it == components.end()) throw data_error("unknown component '" + id + "'");
    return it->second;
  }
};

// ---------------------------------------------------------------------------
// Exergy resolution

// Dead-state (h0, s0) read from a property table at (p0, T0).
inline FluidRef reference_from_table(const PropertyTable& table, const DeadState& dead) {
  const auto hs = table.lookup(dead.p0_kpa(), dead.t0_k());
  return {table.fluid_id(), EnthalpyEntropyRef{hs.h, hs.s}, RefOrigin::property_table};
}

// Fills StatePoint::eps from the supplied value, else from the fluid reference.
inline void resolve_exergies(PlantGraph& plant) {
  for (auto& [id, st] : plant.states) {
    if (st.eps_supplied) {
      st.eps = *st.eps_supplied;
      continue;
    }
    auto ref = plant.fluid_refs.find(st.fluid_id);
    if (ref == plant.fluid_refs.end())
      throw data_error("state '" + id + "': fluid '" + st.fluid_id +
                       "' has no reference and the state carries no specific exergy");
    st.eps = specific_exergy(st.h, st.s, ref->second, plant.dead_state);
  }
}

// ---------------------------------------------------------------------------
// Validation

enum class DiagnosticKind {
  topology,
  state,
  port_mismatch,
  mass_balance,
  junction_state,
  exergy_inconsistency,
  boundary,
};

inline std::string_view diagnostic_kind_name(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::topology: return "topology";
    case DiagnosticKind::state: return "state";
    case DiagnosticKind::port_mismatch: return "port-mismatch";
    case DiagnosticKind::mass_balance: return "mass-balance";
    case DiagnosticKind::junction_state: return "junction-state";
    case DiagnosticKind::exergy_inconsistency: return "exergy-inconsistency";
    case DiagnosticKind::boundary: return "boundary";
  }
  return "unknown";
}

struct Diagnostic {
  DiagnosticKind kind;
  std::string subject;  // state or component id
  std::string message;
};

struct MassBalanceViolation {
  std::string component_id;
  std::string leg;         // "" for junctions, else "hot", "cold" or "main"
  double imbalance = 0.0;  // sum(mdot in) - sum(mdot out), kg/s
};

// Sum(mdot in) = sum(mdot out) at every junction and on every leg of every
// two-port component. Ports that reference missing states are skipped.
inline std::vector<MassBalanceViolation> validate_mass_balance(const PlantGraph& plant) {
  std::vector<MassBalanceViolation> out;
  auto flow_sum = [&](const std::vector<std::string>& ids, double& sum) {
    for (const auto& id : ids) {
      auto it = plant.states.find(id);
      if (it == plant.states.end()) return false;
      sum += it->second.mdot;
    }
    return true;
  };
  auto check = [&](const std::string& comp, const std::string& leg,
                   const std::vector<std::string>& ins,
                   const std::vector<std::string>& outs) {
    double in = 0.0, o = 0.0;
    if (!flow_sum(ins, in) || !flow_sum(outs, o)) return;
    if (!same_mass_flow(in, o)) out.push_back({comp, leg, in - o});
  };
  for (const auto& [id, comp] : plant.components) {
    if (const auto* hx = std::get_if<HeatExchanger>(&comp.kind)) {
      check(id, "hot", {hx->hot_in}, {hx->hot_out});
      check(id, "cold", {hx->cold_in}, {hx->cold_out});
    } else if (is_junction(category_of(comp.kind))) {
      const auto ports = ports_of(comp.kind);
      check(id, "", ports.inlets, ports.outlets);
    } else {
      const auto ports = ports_of(comp.kind);
      check(id, "main", ports.inlets, ports.outlets);
    }
  }
  return out;
}

namespace detail {

inline std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline void check_topology(const PlantGraph& plant, std::vector<Diagnostic>& diags) {
  std::set<std::string> referenced;
  for (const auto& [id, comp] : plant.components) {
    const auto ports = ports_of(comp.kind);
    if (ports.inlets.empty() || ports.outlets.empty())
      diags.push_back({DiagnosticKind::topology, id, "component has no inlet or no outlet"});
    for (const auto* list : {&ports.inlets, &ports.outlets})
      for (const auto& sid : *list) {
        referenced.insert(sid);
        if (!plant.states.count(sid))
          diags.push_back({DiagnosticKind::topology, id,
                           "component '" + id + "' references missing state '" + sid + "'"});
      }
  }
  for (const auto& [sid, st] : plant.states)
    if (!referenced.count(sid))
      diags.push_back({DiagnosticKind::topology, sid,
                       "state '" + sid + "' is not connected to any component"});
}

inline void check_ports(const PlantGraph& plant, std::vector<Diagnostic>& diags) {
  const double t0 = plant.dead_state.t0_k();
  for (const auto& [id, comp] : plant.components) {
    auto find = [&](const std::string& sid) -> const StatePoint* {
      auto it = plant.states.find(sid);
      return it == plant.states.end() ? nullptr : &it->second;
    };
    auto same_fluid = [&](const std::string& a, const std::string& b) {
      const auto* sa = find(a);
      const auto* sb = find(b);
      if (sa && sb && sa->fluid_id != sb->fluid_id)
        diags.push_back({DiagnosticKind::port_mismatch, id,
                         "states '" + a + "' (" + sa->fluid_id + ") and '" + b + "' (" +
                             sb->fluid_id + ") carry different fluids"});
    };
    if (const auto* hx = std::get_if<HeatExchanger>(&comp.kind)) {
      same_fluid(hx->hot_in, hx->hot_out);
      same_fluid(hx->cold_in, hx->cold_out);
      continue;
    }
    const auto ports = ports_of(comp.kind);
    std::vector<std::string> all = ports.inlets;
    all.insert(all.end(), ports.outlets.begin(), ports.outlets.end());
    if (all.empty()) continue;
    for (std::size_t i = 1; i < all.size(); ++i) same_fluid(all[0], all[i]);
    if (!is_junction(category_of(comp.kind))) continue;

    const StatePoint* ref = find(all[0]);
    if (!ref) continue;
    for (std::size_t i = 1; i < all.size(); ++i) {
      const StatePoint* st = find(all[i]);
      if (!st) continue;
      const bool same = std::abs(st->t_k - ref->t_k) <= kExergyTolerance &&
                        std::abs(st->p_kpa - ref->p_kpa) <= kExergyTolerance &&
                        std::abs(st->h - ref->h) <= kExergyTolerance &&
                        t0 * std::abs(st->s - ref->s) <= kExergyTolerance &&
                        std::abs(st->eps - ref->eps) <= kExergyTolerance;
      if (!same)
        diags.push_back({DiagnosticKind::junction_state, id,
                         "states '" + ref->id + "' and '" + st->id +
                             "' meet at a junction but differ in thermodynamic state"});
    }
  }
}

inline void check_boundary(const PlantGraph& plant, std::vector<Diagnostic>& diags) {
  const auto& b = plant.boundary;
  auto bad = [&](const std::string& subject, const std::string& msg) {
    diags.push_back({DiagnosticKind::boundary, subject, msg});
  };
  for (const auto* list : {&b.in_streams, &b.out_streams})
    for (const auto& sid : *list)
      if (!plant.states.count(sid)) bad(sid, "boundary references missing state '" + sid + "'");
  for (const auto& sid : b.in_streams)
    if (std::find(b.out_streams.begin(), b.out_streams.end(), sid) != b.out_streams.end())
      bad(sid, "state '" + sid + "' is declared both as boundary inlet and outlet");
  if (b.shaft.producers.empty()) bad("shaft", "shaft declares no power producers");
  for (const auto& cid : b.shaft.producers) {
    auto it = plant.components.find(cid);
    if (it == plant.components.end())
      bad(cid, "shaft producer '" + cid + "' is not a component");
    else if (!std::holds_alternative<Turbine>(it->second.kind))
      bad(cid, "shaft producer '" + cid + "' is not a turbine");
  }
  for (const auto& cid : b.shaft.consumers) {
    auto it = plant.components.find(cid);
    if (it == plant.components.end())
      bad(cid, "shaft consumer '" + cid + "' is not a component");
    else if (!std::holds_alternative<Compressor>(it->second.kind))
      bad(cid, "shaft consumer '" + cid + "' is not a compressor");
  }
}

inline void check_exergies(const PlantGraph& plant, std::vector<Diagnostic>& diags) {
  for (const auto& [sid, st] : plant.states) {
    if (!st.eps_supplied) continue;
    auto ref = plant.fluid_refs.find(st.fluid_id);
    if (ref == plant.fluid_refs.end()) continue;
    double computed = 0.0;
    try {
      computed = specific_exergy(st.h, st.s, ref->second, plant.dead_state);
    } catch (const data_error& e) {
      diags.push_back({DiagnosticKind::exergy_inconsistency, sid, e.what()});
      continue;
    }
    const double dev = *st.eps_supplied - computed;
    if (std::abs(dev) > kExergyTolerance)
      diags.push_back({DiagnosticKind::exergy_inconsistency, sid,
                       "state '" + sid + "': supplied specific exergy " +
                           fmt_num(*st.eps_supplied) + " kJ/kg differs from " +
                           fmt_num(computed) + " kJ/kg computed from the '" +
                           st.fluid_id + "' reference (by " + fmt_num(dev) + ")"});
  }
}

}  // namespace detail

// Every problem found, in a fixed order. Empty means the plant is analyzable.
inline std::vector<Diagnostic> validate_plant(const PlantGraph& plant) {
  std::vector<Diagnostic> diags;
  for (const auto& [sid, st] : plant.states) {
    try {
      check_state_invariants(st);
    } catch (const data_error& e) {
      diags.push_back({DiagnosticKind::state, sid, e.what()});
    }
  }
  detail::check_topology(plant, diags);
  detail::check_ports(plant, diags);
  for (const auto& v : validate_mass_balance(plant)) {
    const bool junction = v.leg.empty();
    diags.push_back({junction ? DiagnosticKind::mass_balance : DiagnosticKind::port_mismatch,
                     v.component_id,
                     junction ? "mass flow imbalance " + detail::fmt_num(v.imbalance) +
                                    " kg/s (in - out)"
                              : v.leg + " leg mass flow changes by " +
                                    detail::fmt_num(v.imbalance) + " kg/s (in - out)"});
  }
  detail::check_exergies(plant, diags);
  detail::check_boundary(plant, diags);
  return diags;
}

inline std::string summarize(const std::vector<Diagnostic>& diags) {
  std::string msg = "plant failed validation (" + std::to_string(diags.size()) + " problem" +
                    (diags.size() == 1 ? "" : "s") + ")";
  for (const auto& d : diags)
    msg += "\n  " + std::string(diagnostic_kind_name(d.kind)) + " [" + d.subject + "]: " + d.message;
  return msg;
}

// ---------------------------------------------------------------------------
// Analysis

struct ComponentResult {
  std::string id;
  ComponentCategory category;
  ExergyBalance balance;
  std::optional<double> power;  // turbines and compressors only
  bool operator==(const ComponentResult&) const = default;
};

struct UsefulPower {
  double power = 0.0;
  bool net_consuming = false;
};

struct SystemBalance {
  ExergyBalance balance;     // eta_x is useful power over net boundary exergy decrease
  double eta_gross = 0.0;    // total exergy out over total exergy in
  double useful_power = 0.0;
  bool operator==(const SystemBalance&) const = default;
};

struct ClosureResult {
  double sum_components = 0.0;
  double whole_system = 0.0;
  double residual = 0.0;  // sum_components - whole_system

  double relative() const {
    const double scale = std::max(std::abs(whole_system), std::abs(sum_components));
    return scale > 0.0 ? std::abs(residual) / scale : std::abs(residual);
  }
  bool operator==(const ClosureResult&) const = default;
};

struct ExergyReport {
  DeadState dead_state;
  std::vector<ComponentResult> components;  // grouped by category, then by id
  SystemBalance system;
  ClosureResult closure;
  std::vector<std::string> warnings;
  bool operator==(const ExergyReport&) const = default;
};

inline ComponentResult evaluate_component(const PlantGraph& plant, const Component& comp,
                                          EfficiencyPolicy policy = EfficiencyPolicy::strict) {
  ComponentResult r{comp.id, category_of(comp.kind), {}, std::nullopt};
  try {
    if (const auto* hx = std::get_if<HeatExchanger>(&comp.kind)) {
      r.balance = hx_balance(plant.state(hx->hot_in), plant.state(hx->hot_out),
                             plant.state(hx->cold_in), plant.state(hx->cold_out), policy);
    } else if (const auto* t = std::get_if<Turbine>(&comp.kind)) {
      const auto m = turbine_balance(plant.state(t->inlet), plant.state(t->outlet), policy);
      r.balance = m.balance;
      r.power = m.power;
    } else if (const auto* c = std::get_if<Compressor>(&comp.kind)) {
      const auto m = compressor_balance(plant.state(c->inlet), plant.state(c->outlet), policy);
      r.balance = m.balance;
      r.power = m.power;
    } else {
      const auto ports = ports_of(comp.kind);
      std::vector<const StatePoint*> ins, outs;
      for (const auto& sid : ports.inlets) ins.push_back(&plant.state(sid));
      for (const auto& sid : ports.outlets) outs.push_back(&plant.state(sid));
      r.balance = junction_balance(ins, outs);
    }
  } catch (const component_error&) {
    throw;
  } catch (const data_error& e) {
    throw component_error(comp.id, e.what());
  }
  return r;
}

// Shaft output: turbine powers minus compressor powers.
inline UsefulPower useful_power(const PlantGraph& plant) {
  const auto& shaft = plant.boundary.shaft;
  if (shaft.producers.empty()) throw data_error("shaft declares no power producers");
  UsefulPower u;
  for (const auto& id : shaft.producers) {
    const auto* t = std::get_if<Turbine>(&plant.component(id).kind);
    if (!t) throw data_error("shaft producer '" + id + "' is not a turbine");
    try {
      u.power += turbine_power(plant.state(t->inlet), plant.state(t->outlet));
    } catch (const data_error& e) {
      throw component_error(id, e.what());
    }
  }
  for (const auto& id : shaft.consumers) {
    const auto* c = std::get_if<Compressor>(&plant.component(id).kind);
    if (!c) throw data_error("shaft consumer '" + id + "' is not a compressor");
    try {
      u.power -= compressor_power(plant.state(c->inlet), plant.state(c->outlet));
    } catch (const data_error& e) {
      throw component_error(id, e.what());
    }
  }
  u.net_consuming = u.power < 0.0;
  return u;
}

// Whole-system balance from boundary exergy flows and net shaft power.
inline SystemBalance boundary_balance(std::span<const double> in_flows,
                                      std::span<const double> out_flows,
                                      double useful) {
  double in = 0.0, out = 0.0;
  for (double v : in_flows) in += v;
  for (double v : out_flows) out += v;
  SystemBalance sb;
  sb.useful_power = useful;
  sb.balance.ex_in = in;
  sb.balance.ex_out = out + useful;
  sb.balance.ex_d = sb.balance.ex_in - sb.balance.ex_out;
  const double net_decrease = in - out;
  if (!(net_decrease > 0.0))
    throw data_error("whole system: net boundary exergy decrease " +
                     detail::fmt_num(net_decrease) +
                     " kW is not positive (functional efficiency undefined)");
  sb.balance.eta_x = useful / net_decrease;
  detail::require_efficiency_at_most_one(sb.balance.eta_x);
  sb.eta_gross = sb.balance.ex_out / sb.balance.ex_in;
  return sb;
}

inline SystemBalance system_balance(const PlantGraph& plant) {
  const auto mass = validate_mass_balance(plant);
  if (!mass.empty())
    throw data_error("whole system: mass balance violated at component '" +
                     mass.front().component_id + "'");
  std::vector<double> in, out;
  for (const auto& sid : plant.boundary.in_streams) in.push_back(exergy_flow(plant.state(sid)));
  for (const auto& sid : plant.boundary.out_streams) out.push_back(exergy_flow(plant.state(sid)));
  return boundary_balance(in, out, useful_power(plant).power);
}

// Sum of component destructions against the whole-system value. Junctions
// are loss-free by construction and contribute nothing.
inline ClosureResult destruction_closure(std::span<const ComponentResult> components,
                                         double whole_system_ex_d) {
  ClosureResult c;
  for (const auto& r : components)
    if (!is_junction(r.category)) c.sum_components += r.balance.ex_d;
  c.whole_system = whole_system_ex_d;
  c.residual = c.sum_components - c.whole_system;
  return c;
}

namespace detail {

inline std::vector<ComponentResult> evaluate_all(const PlantGraph& plant, EfficiencyPolicy policy) {
  std::vector<ComponentResult> rows;
  rows.reserve(plant.components.size());
  for (const auto& [id, comp] : plant.components) rows.push_back(evaluate_component(plant, comp, policy));
  // map iteration is already by id; stable sort keeps that within a category
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.category < b.category;
  });
  return rows;
}

}  // namespace detail

inline ClosureResult destruction_closure(const PlantGraph& plant,
                                         EfficiencyPolicy policy = EfficiencyPolicy::strict) {
  const auto rows = detail::evaluate_all(plant, policy);
  return destruction_closure(rows, system_balance(plant).balance.ex_d);
}

// Under the lenient policy a component whose efficiency is undefined at this
// dead state keeps its flows and destruction, gets eta_x = NaN and a warning.
inline ExergyReport analyze_plant(const PlantGraph& plant,
                                  EfficiencyPolicy policy = EfficiencyPolicy::strict) {
  if (plant.components.empty()) throw data_error("plant has no components");
  if (const auto diags = validate_plant(plant); !diags.empty())
    throw data_error(summarize(diags));

  ExergyReport report;
  report.dead_state = plant.dead_state;
  report.components = detail::evaluate_all(plant, policy);
  for (const auto& r : report.components)
    if (std::isnan(r.balance.eta_x))
      report.warnings.push_back("component '" + r.id + "': exergy efficiency undefined at T0 = " +
                                detail::fmt_num(plant.dead_state.t0_k()) + " K");
  const auto useful = useful_power(plant);
  if (useful.net_consuming)
    report.warnings.push_back("shaft is net consuming: useful power " +
                              detail::fmt_num(useful.power) + " kW");
  report.system = system_balance(plant);
  report.closure = destruction_closure(report.components, report.system.balance.ex_d);
  return report;
}

}  // namespace exergy
