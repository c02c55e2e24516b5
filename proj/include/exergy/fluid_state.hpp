#pragma once

// Fluid state points, the dead-state reference, and specific exergy.
//
// Units throughout: kPa, K, kg/s, kJ/kg, kJ/(kg K), kW.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "exergy/error.hpp"
#include "exergy/units.hpp"

namespace exergy {

// Tolerance for comparing specific exergies built from 2-decimal tabulated data.
inline constexpr double kExergyTolerance = 0.05;  // kJ/kg

// Two dead-state temperatures closer than this are treated as the same.
inline constexpr double kSameTemperatureK = 1e-9;

class DeadState {
 public:
  DeadState() = default;
  DeadState(double p0_kpa, double t0_k) : p0_kpa_(p0_kpa), t0_k_(t0_k) {
    if (!(t0_k > 0.0) || !std::isfinite(t0_k))
      throw data_error("dead state: T0 must be > 0 K");
    if (!(p0_kpa > 0.0) || !std::isfinite(p0_kpa))
      throw data_error("dead state: p0 must be > 0 kPa");
  }

  double p0_kpa() const noexcept { return p0_kpa_; }
  double t0_k() const noexcept { return t0_k_; }

  bool operator==(const DeadState&) const = default;

 private:
  double p0_kpa_ = 100.0;
  double t0_k_ = 288.15;
};

struct EnthalpyEntropyRef {
  double h0;  // kJ/kg
  double s0;  // kJ/(kg K)
  bool operator==(const EnthalpyEntropyRef&) const = default;
};

// h0 - T0*s0 collapsed into one constant; only meaningful at t0_k.
struct CombinedRef {
  double k0;    // kJ/kg
  double t0_k;  // dead-state temperature k0 was defined for
  bool operator==(const CombinedRef&) const = default;
};

enum class RefOrigin { declared, property_table, derived };

struct FluidRef {
  std::string fluid_id;
  std::variant<EnthalpyEntropyRef, CombinedRef> form;
  RefOrigin origin = RefOrigin::declared;

  bool separable() const noexcept {
    return std::holds_alternative<EnthalpyEntropyRef>(form);
  }

  // h0 - T0*s0 evaluated at the requested dead-state temperature.
  double k0_at(double t0_k) const {
    if (const auto* hs = std::get_if<EnthalpyEntropyRef>(&form))
      return hs->h0 - t0_k * hs->s0;
    const auto& c = std::get<CombinedRef>(form);
    if (std::abs(c.t0_k - t0_k) > kSameTemperatureK)
      throw data_error("fluid '" + fluid_id +
                       "': combined reference k0 was defined at T0 = " +
                       std::to_string(c.t0_k) +
                       " K and cannot be evaluated at another T0 "
                       "(h0 and s0 are not separable)");
    return c.k0;
  }

  bool operator==(const FluidRef&) const = default;
};

struct StatePoint {
  std::string id;
  std::string fluid_id;
  double t_k = 0.0;
  double p_kpa = 0.0;
  double mdot = 0.0;  // kg/s
  double h = 0.0;     // kJ/kg
  double s = 0.0;     // kJ/(kg K)
  std::optional<double> eps_supplied;
  double eps = 0.0;  // kJ/kg, the value used by every balance

  bool operator==(const StatePoint&) const = default;
};

inline void check_state_invariants(const StatePoint& st) {
  auto fail = [&](const std::string& what) {
    throw data_error("state '" + st.id + "': " + what);
  };
  if (!(st.mdot >= 0.0)) fail("mass flow must be >= 0 kg/s");
  if (!(st.p_kpa > 0.0)) fail("pressure must be > 0 kPa");
  if (!(st.t_k > 0.0)) fail("temperature must be above absolute zero");
  if (!std::isfinite(st.h) || !std::isfinite(st.s)) fail("h and s must be finite");
}

// Specific flow exergy (h - h0) - T0 (s - s0).
inline double specific_exergy(double h, double s, const FluidRef& ref,
                              const DeadState& dead) {
  const double t0 = dead.t0_k();
  if (const auto* hs = std::get_if<EnthalpyEntropyRef>(&ref.form))
    return (h - hs->h0) - t0 * (s - hs->s0);
  return (h - t0 * s) - ref.k0_at(t0);
}

// Exergy flow rate of a stream, kW.
inline double exergy_flow(const StatePoint& st) { return st.mdot * st.eps; }

// Exergy carried by heat Q crossing a boundary at temperature T.
inline double exergy_of_heat(double q_kw, double t_k, const DeadState& dead) {
  if (!(t_k > 0.0)) throw data_error("exergy_of_heat: T must be > 0 K");
  return (1.0 - dead.t0_k() / t_k) * q_kw;
}

struct DerivedRef {
  FluidRef ref;
  double spread = 0.0;  // max - min of h - T0 s - eps over the input states
};

// Recovers the combined reference k0 from states that carry h, s and eps.
inline DerivedRef derive_fluid_ref(std::span<const StatePoint> states,
                                   const DeadState& dead) {
  if (states.empty()) throw data_error("derive_fluid_ref: no states given");
  const std::string& fluid = states.front().fluid_id;
  const double t0 = dead.t0_k();
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& st : states) {
    if (st.fluid_id != fluid)
      throw data_error("derive_fluid_ref: states mix fluids '" + fluid +
                       "' and '" + st.fluid_id + "'");
    if (!st.eps_supplied)
      throw data_error("derive_fluid_ref: state '" + st.id +
                       "' has no specific exergy to derive from");
    const double k = st.h - t0 * st.s - *st.eps_supplied;
    sum += k;
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  const double spread = hi - lo;
  if (spread > kExergyTolerance)
    throw data_error("fluid '" + fluid + "': h - T0*s - eps varies by " +
                     std::to_string(spread) +
                     " kJ/kg across states (inconsistent input data)");
  FluidRef ref{fluid,
               CombinedRef{sum / static_cast<double>(states.size()), t0},
               RefOrigin::derived};
  return {std::move(ref), spread};
}

}  // namespace exergy
