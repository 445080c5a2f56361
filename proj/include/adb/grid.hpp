#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adb/approx.hpp"
#include "adb/errors.hpp"

namespace adb {

/// Strictly increasing node coordinates of one grid dimension.
class Axis {
 public:
  explicit Axis(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2)
      throw InvalidGrid("axis needs at least two nodes");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!std::isfinite(nodes_[i])) throw InvalidGrid("axis nodes must be finite");
      if (i > 0 && !(nodes_[i - 1] < nodes_[i]))
        throw InvalidGrid("axis nodes must be strictly increasing");
    }
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  double operator[](std::size_t i) const noexcept { return nodes_[i]; }
  double front() const noexcept { return nodes_.front(); }
  double back() const noexcept { return nodes_.back(); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }

  bool contains(double x) const noexcept { return x >= front() && x <= back(); }

  /// Index of the node whose approximation degree to x is highest.
  /// Exact midpoints resolve to the lower index.
  std::size_t nearest(double x) const {
    if (!contains(x))
      throw OutOfDomain("coordinate " + std::to_string(x) + " outside axis [" +
                        std::to_string(front()) + ", " + std::to_string(back()) + "]");
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
    if (it != nodes_.end() && *it == x)
      return static_cast<std::size_t>(it - nodes_.begin());
    const auto hi = static_cast<std::size_t>(it - nodes_.begin());
    const auto lo = hi - 1;  // x strictly between nodes_[lo] and nodes_[hi]
    const Degree d_lo = *approximation_degree(node_region(lo), x);
    const Degree d_hi = *approximation_degree(node_region(hi), x);
    return d_hi > d_lo ? hi : lo;
  }

  /// Approximation region of node i: [nodes[i-1], nodes[i+1]] for interior
  /// nodes, one-sided at the first and last node.
  ApproximationRegion node_region(std::size_t i) const {
    if (i >= nodes_.size()) throw IndexOutOfRange("node index out of range");
    const double left = i == 0 ? 0.0 : nodes_[i] - nodes_[i - 1];
    const double right = i + 1 == nodes_.size() ? 0.0 : nodes_[i + 1] - nodes_[i];
    return ApproximationRegion(nodes_[i], left, right);
  }

 private:
  std::vector<double> nodes_;
};

/// One integer node index per axis.
struct GridIndex {
  std::vector<std::size_t> idx;
};

/// Dense n-dimensional table of function values over the Cartesian product
/// of its axes. Values are stored row-major, first axis slowest.
class RegularGrid {
 public:
  RegularGrid(std::vector<Axis> axes, std::vector<double> values)
      : axes_(std::move(axes)), values_(std::move(values)) {
    if (axes_.empty()) throw InvalidGrid("grid needs at least one axis");
    std::size_t expected = 1;
    for (const Axis& a : axes_) expected *= a.size();
    if (values_.size() != expected)
      throw InvalidGrid("value tensor has " + std::to_string(values_.size()) +
                        " entries, axes require " + std::to_string(expected));
    for (double v : values_)
      if (!std::isfinite(v)) throw InvalidGrid("grid values must be finite");
  }

  std::size_t dimension() const noexcept { return axes_.size(); }
  const Axis& axis(std::size_t i) const {
    if (i >= axes_.size()) throw IndexOutOfRange("axis index out of range");
    return axes_[i];
  }
  const std::vector<Axis>& axes() const noexcept { return axes_; }
  const std::vector<double>& values() const noexcept { return values_; }

  std::size_t flat_index(std::span<const std::size_t> idx) const {
    if (idx.size() != axes_.size())
      throw InconsistentDimension("grid index has wrong dimension");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] >= axes_[k].size()) throw IndexOutOfRange("node index out of range");
      flat = flat * axes_[k].size() + idx[k];
    }
    return flat;
  }

  double value(std::span<const std::size_t> idx) const { return values_[flat_index(idx)]; }
  double value(const GridIndex& idx) const { return value(std::span(idx.idx)); }

  bool contains(std::span<const double> query) const {
    if (query.size() != axes_.size()) return false;
    for (std::size_t k = 0; k < query.size(); ++k)
      if (!axes_[k].contains(query[k])) return false;
    return true;
  }

 private:
  std::vector<Axis> axes_;
  std::vector<double> values_;
};

inline ApproximationRegion node_region(const RegularGrid& grid, std::size_t axis,
                                       std::size_t i) {
  return grid.axis(axis).node_region(i);
}

/// Grid node maximizing the vector degree of the query, together with that
/// degree. The per-axis degree is evaluated against the candidate node's
/// region, so the combined degree is the minimum over axes.
inline std::pair<GridIndex, Degree> nearest_node(const RegularGrid& grid,
                                                 std::span<const double> query) {
  if (query.size() != grid.dimension())
    throw InconsistentDimension("query has dimension " + std::to_string(query.size()) +
                                ", grid has " + std::to_string(grid.dimension()));
  GridIndex k;
  k.idx.reserve(grid.dimension());
  double min_degree = 1.0;
  for (std::size_t j = 0; j < grid.dimension(); ++j) {
    const Axis& axis = grid.axis(j);
    const std::size_t i = axis.nearest(query[j]);
    const Degree d = *approximation_degree(axis.node_region(i), query[j]);
    min_degree = std::min(min_degree, d.value());
    k.idx.push_back(i);
  }
  return {std::move(k), Degree(min_degree)};
}

}  // namespace adb
