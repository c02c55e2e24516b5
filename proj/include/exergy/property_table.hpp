#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "exergy/error.hpp"

namespace exergy {

struct PropertySample {
  double p_kpa;
  double t_k;
  double h;
  double s;
};

struct EnthalpyEntropy {
  double h;
  double s;
  bool operator==(const EnthalpyEntropy&) const = default;
};

// User-supplied (h, s) samples on a rectangular p-T grid, interpolated
// bilinearly. No extrapolation.
class PropertyTable {
 public:
  PropertyTable() = default;

  PropertyTable(std::string fluid_id, std::vector<PropertySample> samples)
      : fluid_id_(std::move(fluid_id)) {
    auto fail = [&](const std::string& what) {
      throw data_error("property table for '" + fluid_id_ + "': " + what);
    };
    for (const auto& smp : samples) {
      p_axis_.push_back(smp.p_kpa);
      t_axis_.push_back(smp.t_k);
    }
    std::sort(p_axis_.begin(), p_axis_.end());
    std::sort(t_axis_.begin(), t_axis_.end());
    p_axis_.erase(std::unique(p_axis_.begin(), p_axis_.end()), p_axis_.end());
    t_axis_.erase(std::unique(t_axis_.begin(), t_axis_.end()), t_axis_.end());
    if (p_axis_.size() < 2 || t_axis_.size() < 2)
      fail("need at least two distinct pressures and two distinct temperatures");
    if (samples.size() != p_axis_.size() * t_axis_.size())
      fail("grid is not rectangular (" + std::to_string(samples.size()) +
           " samples for " + std::to_string(p_axis_.size()) + " x " +
           std::to_string(t_axis_.size()) + " nodes)");

    nodes_.assign(samples.size(), EnthalpyEntropy{0.0, 0.0});
    std::vector<bool> seen(samples.size(), false);
    for (const auto& smp : samples) {
      const std::size_t k = node_index(index_of(p_axis_, smp.p_kpa),
                                       index_of(t_axis_, smp.t_k));
      if (seen[k])
        fail("duplicate node at p = " + std::to_string(smp.p_kpa) +
             " kPa, T = " + std::to_string(smp.t_k) + " K");
      seen[k] = true;
      nodes_[k] = {smp.h, smp.s};
    }
  }

  const std::string& fluid_id() const noexcept { return fluid_id_; }
  const std::vector<double>& pressures() const noexcept { return p_axis_; }
  const std::vector<double>& temperatures() const noexcept { return t_axis_; }

  bool covers(double p_kpa, double t_k) const noexcept {
    return !p_axis_.empty() && p_kpa >= p_axis_.front() &&
           p_kpa <= p_axis_.back() && t_k >= t_axis_.front() &&
           t_k <= t_axis_.back();
  }

  EnthalpyEntropy lookup(double p_kpa, double t_k) const {
    if (!covers(p_kpa, t_k))
      throw data_error("property table for '" + fluid_id_ +
                       "': query p = " + std::to_string(p_kpa) +
                       " kPa, T = " + std::to_string(t_k) +
                       " K lies outside the grid");
    const auto [ip, wp] = locate(p_axis_, p_kpa);
    const auto [it, wt] = locate(t_axis_, t_k);
    const auto& a = nodes_[node_index(ip, it)];
    const auto& b = nodes_[node_index(ip + 1, it)];
    const auto& c = nodes_[node_index(ip, it + 1)];
    const auto& d = nodes_[node_index(ip + 1, it + 1)];
    auto mix = [&](double va, double vb, double vc, double vd) {
      return (1.0 - wp) * (1.0 - wt) * va + wp * (1.0 - wt) * vb +
             (1.0 - wp) * wt * vc + wp * wt * vd;
    };
    return {mix(a.h, b.h, c.h, d.h), mix(a.s, b.s, c.s, d.s)};
  }

  bool operator==(const PropertyTable&) const = default;

 private:
  std::size_t node_index(std::size_t ip, std::size_t it) const noexcept {
    return ip * t_axis_.size() + it;
  }

  static std::size_t index_of(const std::vector<double>& axis, double v) {
    return static_cast<std::size_t>(
        std::lower_bound(axis.begin(), axis.end(), v) - axis.begin());
  }

  // Lower cell index and fractional weight of v within that cell.
  static std::pair<std::size_t, double> locate(const std::vector<double>& axis,
                                               double v) {
    std::size_t i = static_cast<std::size_t>(
        std::upper_bound(axis.begin(), axis.end(), v) - axis.begin());
    i = std::clamp<std::size_t>(i, 1, axis.size() - 1) - 1;
    return {i, (v - axis[i]) / (axis[i + 1] - axis[i])};
  }

  std::string fluid_id_;
  std::vector<double> p_axis_;
  std::vector<double> t_axis_;
  std::vector<EnthalpyEntropy> nodes_;  // row-major over (p, T)
};

inline EnthalpyEntropy lookup_properties(const PropertyTable& table,
                                         double p_kpa, double t_k) {
  return table.lookup(p_kpa, t_k);
}

}  // namespace exergy
