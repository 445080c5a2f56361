#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "adb/approx.hpp"
#include "adb/errors.hpp"
#include "adb/grid.hpp"

namespace adb {

/// One-dimensional approximate value: the line through the base node
/// (base_x, base_y) and the adjacent node (nbr_x, nbr_y), evaluated at x.
/// Exact at the base point. Covers both branch formulas: the neighbor side
/// selects the branch.
inline double interp_axis(double base_x, double base_y, double nbr_x, double nbr_y,
                          double x) {
  if (base_x == nbr_x) throw DegenerateNodes("base and neighbor nodes coincide");
  if (x == base_x) return base_y;
  return base_y + (x - base_x) * ((nbr_y - base_y) / (nbr_x - base_x));
}

/// 1D interpolation over the 2n-2 subintervals: x's nearest node is the base,
/// the adjacent node on x's side is the reference. Reproduces values at nodes.
inline double interpolate_1d(const Axis& axis, std::span<const double> values,
                             double x) {
  if (values.size() != axis.size())
    throw InconsistentDimension("values size does not match axis size");
  const std::size_t i = axis.nearest(x);
  const double base = axis[i];
  if (x == base) return values[i];
  const std::size_t nb = x > base ? i + 1 : i - 1;
  return interp_axis(base, values[i], axis[nb], values[nb], x);
}

/// Synthesis of per-axis contributions y_{x_1}..y_{x_n} around the base value
/// y_0: sum of contributions minus (n-1) times the base. Accumulated as
/// y_0 + sum(y_{x_i} - y_0), which is exact when every contribution equals
/// the base value.
inline double sum_times_difference(std::span<const double> contributions,
                                   double base_value) {
  if (contributions.empty())
    throw EmptyInput("sum_times_difference needs at least one contribution");
  if (contributions.size() == 1) return contributions.front();
  double acc = 0.0;
  for (double c : contributions) acc += c - base_value;
  return base_value + acc;
}

/// One-dimensional approximate value along a single axis of a grid query:
/// the value of interp_axis against the reference neighbor there, and which
/// node served as that reference. Exact hits reference the base node itself.
struct AxisContribution {
  std::size_t axis = 0;
  double value = 0.0;
  std::size_t neighbor_index = 0;
};

/// Per-axis 1D approximate values around the base node (the other
/// coordinates held at the base).
inline std::vector<AxisContribution> axis_contributions(const RegularGrid& grid,
                                                        const GridIndex& base,
                                                        std::span<const double> query) {
  const double y0 = grid.value(base);
  std::vector<AxisContribution> contributions(grid.dimension());
  std::vector<std::size_t> idx = base.idx;
  for (std::size_t j = 0; j < grid.dimension(); ++j) {
    const Axis& axis = grid.axis(j);
    const double base_x = axis[base.idx[j]];
    if (query[j] == base_x) {
      contributions[j] = {j, y0, base.idx[j]};
      continue;
    }
    // In-domain with the base nearest, so the neighbor on the query's side exists.
    const std::size_t nb = query[j] > base_x ? base.idx[j] + 1 : base.idx[j] - 1;
    idx[j] = nb;
    const double nbr_y = grid.value(idx);
    idx[j] = base.idx[j];
    contributions[j] = {j, interp_axis(base_x, y0, axis[nb], nbr_y, query[j]), nb};
  }
  return contributions;
}

/// n-dimensional interpolation: locate the nearest grid node, compute one 1D
/// contribution per axis against the adjacent node on the query's side, then
/// synthesize with the sum-times-difference formula.
inline double interpolate(const RegularGrid& grid, std::span<const double> query) {
  const auto [k, degree] = nearest_node(grid, query);
  (void)degree;
  const double y0 = grid.value(k);
  const auto contributions = axis_contributions(grid, k, query);
  std::vector<double> values(contributions.size());
  for (std::size_t j = 0; j < contributions.size(); ++j)
    values[j] = contributions[j].value;
  return sum_times_difference(values, y0);
}

/// Trend-free fallback estimate: with no reference neighbor, the two branch
/// inverses of the degree function are averaged. Not used by grid
/// interpolation, where a reference neighbor always exists.
inline double fallback_average(const ApproximationRegion& region, Degree d) {
  const double left = d.value() * (region.center() - region.lower()) + region.lower();
  const double right = d.value() * (region.center() - region.upper()) + region.upper();
  return 0.5 * (left + right);
}

}  // namespace adb
