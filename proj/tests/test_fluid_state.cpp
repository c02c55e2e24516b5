#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

#include "support.hpp"

using namespace exergy;
namespace ts = testing_support;

namespace {

FluidRef combined(const char* fluid, double k0, double t0 = 288.15) {
  return {fluid, CombinedRef{k0, t0}, RefOrigin::declared};
}

std::vector<StatePoint> states_of(const char* fluid) {
  std::vector<StatePoint> out;
  for (const auto& r : ts::kOperatingPoints)
    if (std::string(r.fluid) == fluid) out.push_back(ts::state(r.op));
  return out;
}

// Oracle: mean and spread of h - T0 s - eps over the tabulated rows of one fluid.
std::pair<double, double> k_oracle(const char* fluid) {
  double sum = 0, lo = 1e300, hi = -1e300;
  int n = 0;
  for (const auto& r : ts::kOperatingPoints) {
    if (std::string(r.fluid) != fluid) continue;
    const double k = ts::k_of(r);
    sum += k;
    lo = std::min(lo, k);
    hi = std::max(hi, k);
    ++n;
  }
  return {sum / n, hi - lo};
}

}  // namespace

TEST(DeadState, DefaultsToOneBarFifteenCelsius) {
  DeadState d;
  EXPECT_DOUBLE_EQ(d.p0_kpa(), 100.0);
  EXPECT_DOUBLE_EQ(d.t0_k(), 288.15);
  EXPECT_EQ(DeadState(100.0, celsius_to_kelvin(15.0)), d);
}

TEST(DeadState, RejectsNonPositiveValues) {
  EXPECT_THROW(DeadState(100.0, 0.0), data_error);
  EXPECT_THROW(DeadState(0.0, 288.15), data_error);
  EXPECT_THROW(DeadState(-1.0, 288.15), data_error);
}

TEST(SpecificExergy, AirInletPoint) {
  EXPECT_NEAR(specific_exergy(953.85, 4.9019, combined("Air", -694.97), DeadState()), 236.34, 0.02);
}

TEST(SpecificExergy, CompressorInletPoint) {
  EXPECT_NEAR(specific_exergy(298.80, 1.3226, combined("CO2", -283.63), DeadState()), 201.33, 0.02);
}

TEST(SpecificExergy, ZeroAtDeadStateBothForms) {
  const double h0 = 288.4, s0 = 3.41;
  const FluidRef hs{"Air", EnthalpyEntropyRef{h0, s0}};
  EXPECT_EQ(specific_exergy(h0, s0, hs, DeadState()), 0.0);
  const FluidRef k{"Air", CombinedRef{h0 - 288.15 * s0, 288.15}};
  EXPECT_EQ(specific_exergy(h0, s0, k, DeadState()), 0.0);
}

TEST(SpecificExergy, CombinedReferenceRefusesOtherDeadState) {
  const auto ref = combined("CO2", -283.63);
  EXPECT_THROW(specific_exergy(298.80, 1.3226, ref, DeadState(100.0, 298.15)), data_error);
  EXPECT_FALSE(ref.separable());
}

TEST(SpecificExergy, DeadStateNullityProperty) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> h(-500, 1500), s(-1, 8), t(200, 400);
  for (int i = 0; i < 500; ++i) {
    const double h0 = h(rng), s0 = s(rng);
    const FluidRef ref{"X", EnthalpyEntropyRef{h0, s0}};
    ASSERT_EQ(specific_exergy(h0, s0, ref, DeadState(100.0, t(rng))), 0.0);
  }
}

TEST(SpecificExergy, AffineInEnthalpyAndEntropy) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> h(0, 1000), s(0, 5), t(250, 350);
  const double dh = 1e-3, ds = 1e-6;
  for (int i = 0; i < 200; ++i) {
    const DeadState dead(100.0, t(rng));
    const FluidRef ref{"X", EnthalpyEntropyRef{h(rng), s(rng)}};
    const double hh = h(rng), ss = s(rng);
    const double base = specific_exergy(hh, ss, ref, dead);
    const double slope_h = (specific_exergy(hh + dh, ss, ref, dead) - base) / dh;
    const double slope_s = (specific_exergy(hh, ss + ds, ref, dead) - base) / ds;
    ASSERT_NEAR(slope_h, 1.0, 1e-6);
    ASSERT_NEAR(slope_s, -dead.t0_k(), 1e-3);
  }
}

TEST(ExergyFlow, ProductOfMassFlowAndSpecificExergy) {
  EXPECT_NEAR(exergy_flow(ts::state(1)), 22168.69, 0.01);
  EXPECT_NEAR(exergy_flow(ts::state(23)), 905.83, 0.01);
  // Ex1 + Ex23 is the whole-system exergy input
  EXPECT_NEAR(exergy_flow(ts::state(1)) + exergy_flow(ts::state(23)), 23074.56, 0.1);
  auto idle = ts::state(1);
  idle.mdot = 0.0;
  EXPECT_EQ(exergy_flow(idle), 0.0);
}

TEST(ExergyFlow, LinearInMassFlow) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> lam(0.01, 100.0);
  for (const auto& r : ts::kOperatingPoints) {
    const double l = lam(rng);
    EXPECT_NEAR(exergy_flow(ts::state(r.op, l)), l * exergy_flow(ts::state(r.op)),
                1e-12 * std::abs(l * exergy_flow(ts::state(r.op))) + 1e-12);
  }
}

TEST(DeriveFluidRef, MatchesRowOracleForEveryFluid) {
  struct Case {
    const char* fluid;
    double k0;
    double spread_below;
  } cases[] = {{"Air", -694.98, 0.03}, {"CO2", -283.63, 0.03}, {"Water", -1.61, 0.01}};
  for (const auto& c : cases) {
    const auto states = states_of(c.fluid);
    const auto [oracle_mean, oracle_spread] = k_oracle(c.fluid);
    const auto derived = derive_fluid_ref(states, DeadState());
    const auto& k = std::get<CombinedRef>(derived.ref.form);
    EXPECT_NEAR(k.k0, oracle_mean, 1e-9) << c.fluid;
    EXPECT_NEAR(k.k0, c.k0, 0.01) << c.fluid;
    EXPECT_NEAR(derived.spread, oracle_spread, 1e-9) << c.fluid;
    EXPECT_LT(derived.spread, c.spread_below) << c.fluid;
    EXPECT_EQ(derived.ref.origin, RefOrigin::derived);
  }
}

TEST(DeriveFluidRef, ReferenceConstantSpreadBelowTolerance) {
  for (const char* fluid : {"Air", "CO2", "Water"}) EXPECT_LT(k_oracle(fluid).second, kExergyTolerance);
}

TEST(DeriveFluidRef, Errors) {
  EXPECT_THROW(derive_fluid_ref({}, DeadState()), data_error);

  auto states = states_of("Water");
  states[1].eps_supplied = *states[1].eps_supplied + 0.1;
  EXPECT_THROW(derive_fluid_ref(states, DeadState()), data_error);

  std::vector<StatePoint> mixed{ts::state(1), ts::state(4)};
  EXPECT_THROW(derive_fluid_ref(mixed, DeadState()), data_error);

  auto no_eps = states_of("Air");
  no_eps[0].eps_supplied.reset();
  EXPECT_THROW(derive_fluid_ref(no_eps, DeadState()), data_error);
}

TEST(ExergyOfHeat, CarnotFactor) {
  const DeadState d;
  EXPECT_EQ(exergy_of_heat(100.0, d.t0_k(), d), 0.0);
  EXPECT_NEAR(exergy_of_heat(100.0, 576.30, d), 50.0, 1e-12);
  EXPECT_EQ(exergy_of_heat(0.0, 700.0, d), 0.0);
  EXPECT_NEAR(exergy_of_heat(100.0, 1e6 * d.t0_k(), d), 100.0, 1e-4 * 100.0);
  EXPECT_THROW(exergy_of_heat(100.0, 0.0, d), data_error);
  EXPECT_THROW(exergy_of_heat(100.0, -5.0, d), data_error);
}

TEST(StatePoint, Invariants) {
  auto st = ts::state(4);
  EXPECT_NO_THROW(check_state_invariants(st));
  st.mdot = -1.0;
  EXPECT_THROW(check_state_invariants(st), data_error);
  st = ts::state(4);
  st.p_kpa = 0.0;
  EXPECT_THROW(check_state_invariants(st), data_error);
  st = ts::state(4);
  st.t_k = 0.0;
  EXPECT_THROW(check_state_invariants(st), data_error);
}
