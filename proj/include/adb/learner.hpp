#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adb/approx.hpp"
#include "adb/errors.hpp"
#include "adb/grid.hpp"
#include "adb/interp.hpp"

namespace adb {

/// Outcome of a single prediction.
struct Prediction {
  enum class Kind { Regression, Classified, Unclassified };

  Kind kind = Kind::Unclassified;
  double value = 0.0;              // Regression
  std::string label;               // Classified
  double degree = 0.0;             // Classified
  std::size_t example_index = 0;   // Classified
  bool tie = false;                // another example reached the same degree with a different label

  static Prediction regression(double v) {
    Prediction p;
    p.kind = Kind::Regression;
    p.value = v;
    return p;
  }
  static Prediction classified(std::string label, double degree, std::size_t index,
                               bool tie) {
    Prediction p;
    p.kind = Kind::Classified;
    p.label = std::move(label);
    p.degree = degree;
    p.example_index = index;
    p.tie = tie;
    return p;
  }
  static Prediction unclassified() { return Prediction{}; }
};

// ---------------------------------------------------------------------------
// regression over regularly distributed examples

class RegressionModel {
 public:
  explicit RegressionModel(RegularGrid grid) : grid_(std::move(grid)) {}
  const RegularGrid& grid() const noexcept { return grid_; }

 private:
  RegularGrid grid_;
};

/// Arrange scattered (point, value) examples into a regular grid. The points
/// must form a complete Cartesian product of the distinct per-axis
/// coordinates, each combination appearing exactly once.
inline RegressionModel fit_regression(const std::vector<std::vector<double>>& points,
                                      const std::vector<double>& values) {
  if (points.empty()) throw EmptyInput("fit_regression needs at least one example");
  if (points.size() != values.size())
    throw InconsistentDimension("points and values differ in length");
  const std::size_t n = points.front().size();
  if (n == 0) throw InconsistentDimension("points must have at least one coordinate");
  for (const auto& p : points)
    if (p.size() != n)
      throw InconsistentDimension("examples differ in dimension");

  // distinct sorted coordinates per axis
  std::vector<std::vector<double>> coords(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& p : points) coords[j].push_back(p[j]);
    std::sort(coords[j].begin(), coords[j].end());
    coords[j].erase(std::unique(coords[j].begin(), coords[j].end()), coords[j].end());
  }

  std::size_t cells = 1;
  for (const auto& c : coords) cells *= c.size();
  if (points.size() > cells) throw DuplicatePoint("duplicate example point");
  if (points.size() < cells)
    throw IncompleteGrid("examples cover " + std::to_string(points.size()) + " of " +
                         std::to_string(cells) + " grid cells");

  std::vector<double> tensor(cells, 0.0);
  std::vector<bool> seen(cells, false);
  for (std::size_t r = 0; r < points.size(); ++r) {
    std::size_t flat = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& c = coords[j];
      const auto it = std::lower_bound(c.begin(), c.end(), points[r][j]);
      flat = flat * c.size() + static_cast<std::size_t>(it - c.begin());
    }
    if (seen[flat]) throw DuplicatePoint("duplicate example point");
    seen[flat] = true;
    tensor[flat] = values[r];
  }

  std::vector<Axis> axes;
  axes.reserve(n);
  for (auto& c : coords) axes.emplace_back(std::move(c));
  return RegressionModel(RegularGrid(std::move(axes), std::move(tensor)));
}

inline Prediction predict_regression(const RegressionModel& model,
                                     std::span<const double> query) {
  return Prediction::regression(interpolate(model.grid(), query));
}

// ---------------------------------------------------------------------------
// classification over scattered examples

/// Left/right approximation radii along one axis.
struct AxisRadii {
  double left = 0.0;
  double right = 0.0;
};

/// Scattered labeled points with strict approximation radii. `radii` holds
/// either a single row shared by every example or one row per example; each
/// row has one (left, right) pair per axis.
struct LabeledExampleSet {
  std::vector<std::vector<double>> points;
  std::vector<std::string> labels;
  std::vector<std::vector<AxisRadii>> radii;
};

class ClassifierModel {
 public:
  ClassifierModel(std::vector<std::vector<double>> points,
                  std::vector<std::string> labels,
                  std::vector<std::vector<AxisRadii>> radii)
      : points_(std::move(points)), labels_(std::move(labels)), radii_(std::move(radii)) {}

  std::size_t dimension() const noexcept { return points_.front().size(); }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<std::vector<double>>& points() const noexcept { return points_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::vector<AxisRadii>>& radii() const noexcept { return radii_; }

  /// Strict approximation region of example `ex` along `axis`.
  ApproximationRegion example_region(std::size_t ex, std::size_t axis) const {
    if (ex >= size() || axis >= dimension())
      throw IndexOutOfRange("example or axis index out of range");
    return ApproximationRegion(points_[ex][axis], radii_[ex][axis].left,
                               radii_[ex][axis].right);
  }

 private:
  std::vector<std::vector<double>> points_;
  std::vector<std::string> labels_;
  std::vector<std::vector<AxisRadii>> radii_;
};

inline ClassifierModel fit_classifier(const LabeledExampleSet& examples) {
  const auto& points = examples.points;
  if (points.empty()) throw EmptyInput("fit_classifier needs at least one example");
  if (examples.labels.size() != points.size())
    throw InconsistentDimension("points and labels differ in length");
  const std::size_t n = points.front().size();
  if (n == 0) throw InconsistentDimension("points must have at least one coordinate");
  for (const auto& p : points)
    if (p.size() != n) throw InconsistentDimension("examples differ in dimension");

  if (examples.radii.size() != 1 && examples.radii.size() != points.size())
    throw InvalidRadii("radii must hold one shared row or one row per example");
  std::vector<std::vector<AxisRadii>> radii;
  radii.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& row = examples.radii.size() == 1 ? examples.radii.front()
                                                 : examples.radii[i];
    if (row.size() != n) throw InvalidRadii("radii row does not match dimension");
    for (const AxisRadii& r : row)
      if (!(r.left > 0.0) || !(r.right > 0.0) || !std::isfinite(r.left) ||
          !std::isfinite(r.right))
        throw InvalidRadii("approximation radii must be positive and finite");
    radii.push_back(row);
  }
  return ClassifierModel(points, examples.labels, std::move(radii));
}

/// Label of the example with maximum vector degree among those whose strict
/// approximation box contains the query; Unclassified when no box does.
/// Equal maximum degrees resolve to the lowest example index.
inline Prediction classify(const ClassifierModel& model, std::span<const double> query) {
  if (query.size() != model.dimension())
    throw InconsistentDimension("query has dimension " + std::to_string(query.size()) +
                                ", model has " + std::to_string(model.dimension()));
  bool found = false;
  double best = -1.0;
  std::size_t winner = 0;
  bool tie = false;
  for (std::size_t i = 0; i < model.size(); ++i) {
    std::vector<std::optional<Degree>> parts(model.dimension());
    for (std::size_t j = 0; j < model.dimension(); ++j)
      parts[j] = approximation_degree(model.example_region(i, j), query[j]);
    const auto d = vector_degree(parts);
    if (!d) continue;
    if (!found || d->value() > best) {
      found = true;
      best = d->value();
      winner = i;
      tie = false;
    } else if (d->value() == best && model.labels()[i] != model.labels()[winner]) {
      tie = true;
    }
  }
  if (!found) return Prediction::unclassified();
  return Prediction::classified(model.labels()[winner], best, winner, tie);
}

/// Heuristic radii when none are configured: half the per-axis median spacing
/// between adjacent distinct coordinates, symmetric on both sides. Axes with
/// a single distinct coordinate fall back to radius 1.
inline std::vector<AxisRadii> default_radii(
    const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw EmptyInput("default_radii needs at least one point");
  const std::size_t n = points.front().size();
  std::vector<AxisRadii> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> c;
    c.reserve(points.size());
    for (const auto& p : points) {
      if (p.size() != n) throw InconsistentDimension("points differ in dimension");
      c.push_back(p[j]);
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    double radius = 1.0;
    if (c.size() > 1) {
      std::vector<double> gaps(c.size() - 1);
      for (std::size_t i = 0; i + 1 < c.size(); ++i) gaps[i] = c[i + 1] - c[i];
      std::sort(gaps.begin(), gaps.end());
      const std::size_t mid = gaps.size() / 2;
      const double median = gaps.size() % 2 == 1
                                ? gaps[mid]
                                : 0.5 * (gaps[mid - 1] + gaps[mid]);
      radius = 0.5 * median;
    }
    out[j] = AxisRadii{radius, radius};
  }
  return out;
}

}  // namespace adb
