#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "adb/errors.hpp"
#include "adb/grid.hpp"
#include "adb/learner.hpp"

namespace adb {

// ---------------------------------------------------------------------------
// number formatting and parsing

/// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Fixed-point representation with the given number of decimals.
inline std::string format_fixed(double v, int decimals = 4) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return std::string(buf);
}

/// Parse a full token as a double; empty or partially consumed tokens fail.
inline bool try_parse_double(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

// ---------------------------------------------------------------------------
// datasets

enum class DatasetKind { Numeric, Labeled };

/// Rows of n-dimensional points with a numeric value or a class label each.
struct Dataset {
  std::size_t dimension = 0;
  DatasetKind kind = DatasetKind::Numeric;
  std::vector<std::string> column_names;  // n feature names plus target name
  std::vector<std::vector<double>> points;
  std::vector<double> values;        // Numeric rows
  std::vector<std::string> labels;   // Labeled rows

  std::size_t size() const noexcept { return points.size(); }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Read a comma-separated dataset: a header row naming n feature columns and
/// one target column, then one row per example. The target parses as a real
/// (Numeric) or is kept verbatim (Labeled).
inline Dataset read_csv(const std::filesystem::path& path, DatasetKind kind) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path.string());

  Dataset ds;
  ds.kind = kind;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (!have_header) {
      if (fields.size() < 2)
        throw ParseError("header needs at least one feature column and a target",
                         lineno, 1);
      for (const auto& f : fields) ds.column_names.push_back(detail::trim(f));
      ds.dimension = fields.size() - 1;
      have_header = true;
      continue;
    }
    if (fields.size() != ds.dimension + 1)
      throw DimensionMismatch("row " + std::to_string(lineno) + " has " +
                              std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(ds.dimension + 1));
    std::vector<double> point(ds.dimension);
    for (std::size_t j = 0; j < ds.dimension; ++j) {
      if (!try_parse_double(detail::trim(fields[j]), point[j]) ||
          !std::isfinite(point[j]))
        throw ParseError("not a finite number: '" + fields[j] + "'", lineno, j + 1);
    }
    const std::string target = detail::trim(fields[ds.dimension]);
    if (kind == DatasetKind::Numeric) {
      double v = 0.0;
      if (!try_parse_double(target, v))
        throw ParseError("not a number: '" + target + "'", lineno, ds.dimension + 1);
      if (!std::isfinite(v))
        throw ParseError("value must be finite", lineno, ds.dimension + 1);
      ds.values.push_back(v);
    } else {
      if (target.empty()) throw ParseError("empty label", lineno, ds.dimension + 1);
      ds.labels.push_back(target);
    }
    ds.points.push_back(std::move(point));
  }
  if (!have_header) throw EmptyFile("no header row in " + path.string());
  return ds;
}

/// Coordinate-only rows, as consumed by batch querying.
struct QuerySet {
  std::size_t dimension = 0;
  std::vector<std::string> column_names;
  std::vector<std::vector<double>> points;

  std::size_t size() const noexcept { return points.size(); }
};

/// Read a CSV of query points: a header naming the n coordinate columns,
/// then one point per row (no target column).
inline QuerySet read_queries_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path.string());

  QuerySet qs;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (!have_header) {
      for (const auto& f : fields) qs.column_names.push_back(detail::trim(f));
      qs.dimension = fields.size();
      have_header = true;
      continue;
    }
    if (fields.size() != qs.dimension)
      throw DimensionMismatch("row " + std::to_string(lineno) + " has " +
                              std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(qs.dimension));
    std::vector<double> point(qs.dimension);
    for (std::size_t j = 0; j < qs.dimension; ++j)
      if (!try_parse_double(detail::trim(fields[j]), point[j]) ||
          !std::isfinite(point[j]))
        throw ParseError("not a finite number: '" + fields[j] + "'", lineno, j + 1);
    qs.points.push_back(std::move(point));
  }
  if (!have_header) throw EmptyFile("no header row in " + path.string());
  return qs;
}

/// Write a dataset as CSV with full-precision reals. Labels must not contain
/// commas or line breaks (no quoting).
inline void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot write " + path.string());
  std::vector<std::string> names = ds.column_names;
  if (names.empty()) {
    for (std::size_t j = 0; j < ds.dimension; ++j)
      names.push_back("x" + std::to_string(j + 1));
    names.push_back(ds.kind == DatasetKind::Numeric ? "value" : "label");
  }
  for (std::size_t j = 0; j < names.size(); ++j)
    out << (j ? "," : "") << names[j];
  out << '\n';
  for (std::size_t r = 0; r < ds.size(); ++r) {
    for (std::size_t j = 0; j < ds.dimension; ++j)
      out << (j ? "," : "") << format_double(ds.points[r][j]);
    if (ds.kind == DatasetKind::Numeric) {
      out << ',' << format_double(ds.values[r]);
    } else {
      const std::string& label = ds.labels[r];
      if (label.find_first_of(",\n\r") != std::string::npos)
        throw Error("label contains a comma or line break: '" + label + "'");
      out << ',' << label;
    }
    out << '\n';
  }
  if (!out) throw FileError("write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// model persistence (versioned text schema; see README for the layout)

using Model = std::variant<RegressionModel, ClassifierModel>;

inline constexpr int kModelSchemaVersion = 1;

inline void write_model(const RegressionModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot write " + path.string());
  const RegularGrid& grid = model.grid();
  out << "adb-model " << kModelSchemaVersion << "\n";
  out << "kind grid\n";
  out << "dimension " << grid.dimension() << "\n";
  for (std::size_t j = 0; j < grid.dimension(); ++j) {
    const Axis& axis = grid.axis(j);
    out << "axis " << axis.size() << "\n";
    for (std::size_t i = 0; i < axis.size(); ++i)
      out << format_double(axis[i]) << ((i + 1) % 8 == 0 || i + 1 == axis.size() ? '\n' : ' ');
  }
  const auto& values = grid.values();
  out << "values " << values.size() << "\n";
  for (std::size_t i = 0; i < values.size(); ++i)
    out << format_double(values[i]) << ((i + 1) % 8 == 0 || i + 1 == values.size() ? '\n' : ' ');
  out << "end\n";
  if (!out) throw FileError("write failed for " + path.string());
}

inline void write_model(const ClassifierModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot write " + path.string());
  out << "adb-model " << kModelSchemaVersion << "\n";
  out << "kind classifier\n";
  out << "dimension " << model.dimension() << "\n";
  out << "examples " << model.size() << "\n";
  for (std::size_t i = 0; i < model.size(); ++i) {
    out << "point";
    for (double c : model.points()[i]) out << ' ' << format_double(c);
    out << "\nradii";
    for (const AxisRadii& r : model.radii()[i])
      out << ' ' << format_double(r.left) << ' ' << format_double(r.right);
    out << "\nlabel " << model.labels()[i] << "\n";
  }
  out << "end\n";
  if (!out) throw FileError("write failed for " + path.string());
}

namespace detail {

inline std::string next_token(std::istream& in) {
  std::string tok;
  if (!(in >> tok)) throw CorruptFile("model file truncated");
  return tok;
}

inline void expect_keyword(std::istream& in, const std::string& keyword) {
  const std::string tok = next_token(in);
  if (tok != keyword)
    throw CorruptFile("expected '" + keyword + "', found '" + tok + "'");
}

inline double next_double(std::istream& in) {
  double v = 0.0;
  if (!try_parse_double(next_token(in), v)) throw CorruptFile("malformed number");
  return v;
}

inline std::size_t next_count(std::istream& in) {
  const std::string tok = next_token(in);
  std::size_t v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw CorruptFile("malformed count");
  return v;
}

}  // namespace detail

/// Load a model written by write_model. Rejects unknown major versions and
/// truncated or malformed files.
inline Model read_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path.string());

  detail::expect_keyword(in, "adb-model");
  const std::size_t version = detail::next_count(in);
  if (version != static_cast<std::size_t>(kModelSchemaVersion))
    throw SchemaVersionMismatch("model schema version " + std::to_string(version) +
                                " not supported (expected " +
                                std::to_string(kModelSchemaVersion) + ")");
  detail::expect_keyword(in, "kind");
  const std::string kind = detail::next_token(in);
  detail::expect_keyword(in, "dimension");
  const std::size_t dim = detail::next_count(in);
  if (dim == 0) throw CorruptFile("dimension must be positive");

  if (kind == "grid") {
    std::vector<Axis> axes;
    axes.reserve(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      detail::expect_keyword(in, "axis");
      const std::size_t count = detail::next_count(in);
      std::vector<double> nodes(count);
      for (double& v : nodes) v = detail::next_double(in);
      try {
        axes.emplace_back(std::move(nodes));
      } catch (const Error& e) {
        throw CorruptFile(std::string("invalid axis: ") + e.what());
      }
    }
    detail::expect_keyword(in, "values");
    const std::size_t count = detail::next_count(in);
    std::vector<double> values(count);
    for (double& v : values) v = detail::next_double(in);
    detail::expect_keyword(in, "end");
    try {
      return RegressionModel(RegularGrid(std::move(axes), std::move(values)));
    } catch (const Error& e) {
      throw CorruptFile(std::string("invalid grid: ") + e.what());
    }
  }
  if (kind == "classifier") {
    detail::expect_keyword(in, "examples");
    const std::size_t count = detail::next_count(in);
    LabeledExampleSet set;
    set.points.reserve(count);
    set.labels.reserve(count);
    set.radii.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      detail::expect_keyword(in, "point");
      std::vector<double> point(dim);
      for (double& c : point) c = detail::next_double(in);
      detail::expect_keyword(in, "radii");
      std::vector<AxisRadii> radii(dim);
      for (AxisRadii& r : radii) {
        r.left = detail::next_double(in);
        r.right = detail::next_double(in);
      }
      detail::expect_keyword(in, "label");
      std::string label;
      std::getline(in, label);
      if (!in) throw CorruptFile("model file truncated");
      label = detail::trim(label);
      if (label.empty()) throw CorruptFile("empty label");
      set.points.push_back(std::move(point));
      set.radii.push_back(std::move(radii));
      set.labels.push_back(std::move(label));
    }
    detail::expect_keyword(in, "end");
    try {
      return fit_classifier(set);
    } catch (const Error& e) {
      throw CorruptFile(std::string("invalid classifier: ") + e.what());
    }
  }
  throw CorruptFile("unknown model kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// built-in functions and dataset generation

/// Uniformly spaced axis specification lo:hi:count (count nodes, inclusive).
struct AxisSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
};

inline std::vector<double> linspace(const AxisSpec& spec) {
  if (spec.count < 2 || !(spec.lo < spec.hi))
    throw Error("axis spec needs lo < hi and count >= 2");
  std::vector<double> nodes(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i)
    nodes[i] = spec.lo + (spec.hi - spec.lo) *
                             (static_cast<double>(i) / static_cast<double>(spec.count - 1));
  nodes.front() = spec.lo;
  nodes.back() = spec.hi;
  return nodes;
}

/// Parse "lo:hi:count".
inline AxisSpec parse_axis_spec(const std::string& text) {
  AxisSpec spec;
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw Error("axis spec must be lo:hi:count, got '" + text + "'");
  double count = 0.0;
  if (!try_parse_double(text.substr(0, c1), spec.lo) ||
      !try_parse_double(text.substr(c1 + 1, c2 - c1 - 1), spec.hi) ||
      !try_parse_double(text.substr(c2 + 1), count) || count != std::floor(count) ||
      count < 2.0 || !(spec.lo < spec.hi))
    throw Error("axis spec must be lo:hi:count with lo < hi, got '" + text + "'");
  spec.count = static_cast<std::size_t>(count);
  return spec;
}

/// Parse a comma-separated list of axis specs, one per dimension.
inline std::vector<AxisSpec> parse_axis_specs(const std::string& text) {
  std::vector<AxisSpec> specs;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ','))
    specs.push_back(parse_axis_spec(detail::trim(item)));
  if (specs.empty()) throw Error("empty axis spec list");
  return specs;
}

/// The two-dimensional peaks surface:
/// 3(1-x)^2 e^{-x^2-(y+1)^2} - 10(x/5 - x^3 - y^5) e^{-x^2-y^2} - e^{-(x+1)^2-y^2}/3.
inline double peaks_function(double x, double y) {
  return 3.0 * (1.0 - x) * (1.0 - x) * std::exp(-x * x - (y + 1.0) * (y + 1.0)) -
         10.0 * (x / 5.0 - x * x * x - std::pow(y, 5)) * std::exp(-x * x - y * y) -
         std::exp(-(x + 1.0) * (x + 1.0) - y * y) / 3.0;
}

/// Build one of the named evaluation functions:
///   neg_sum_squares  -(x1^2 + ... + xn^2), any dimension
///   exp3             x3 * e^{-x1^3 - x2^3 - x3^3}, dimension 3
///   peaks            the peaks surface, dimension 2
///   affine           c0 + c1 x1 + ... + cn xn (coefficients required)
inline std::function<double(std::span<const double>)> make_function(
    const std::string& id, std::size_t dimension, std::vector<double> affine_coeffs = {}) {
  if (id == "neg_sum_squares") {
    return [](std::span<const double> q) {
      double s = 0.0;
      for (double c : q) s += c * c;
      return -s;
    };
  }
  if (id == "exp3") {
    if (dimension != 3) throw DimensionMismatch("exp3 is a function of 3 variables");
    return [](std::span<const double> q) {
      return q[2] * std::exp(-q[0] * q[0] * q[0] - q[1] * q[1] * q[1] -
                             q[2] * q[2] * q[2]);
    };
  }
  if (id == "peaks") {
    if (dimension != 2) throw DimensionMismatch("peaks is a function of 2 variables");
    return [](std::span<const double> q) { return peaks_function(q[0], q[1]); };
  }
  if (id == "affine") {
    if (affine_coeffs.size() != dimension + 1)
      throw DimensionMismatch("affine needs " + std::to_string(dimension + 1) +
                              " coefficients (intercept plus one per axis)");
    return [c = std::move(affine_coeffs)](std::span<const double> q) {
      double s = c[0];
      for (std::size_t j = 0; j < q.size(); ++j) s += c[j + 1] * q[j];
      return s;
    };
  }
  throw UnknownFunction("unknown function '" + id +
                        "' (known: neg_sum_squares, exp3, peaks, affine)");
}

/// Default generation domain for functions that have one; empty otherwise.
inline std::vector<AxisSpec> default_axes(const std::string& id) {
  if (id == "exp3") return {AxisSpec{-2.0, 2.0, 9}, AxisSpec{-2.0, 2.0, 9}, AxisSpec{-2.0, 2.0, 9}};
  if (id == "peaks") return {AxisSpec{-3.0, 3.0, 49}, AxisSpec{-3.0, 3.0, 49}};
  return {};
}

/// Sample a named function over the Cartesian product of the axis specs.
/// Rows are emitted row-major, last axis fastest.
inline Dataset generate(const std::string& id, std::span<const AxisSpec> axes,
                        std::vector<double> affine_coeffs = {}) {
  if (axes.empty()) throw Error("generate needs at least one axis spec");
  const auto f = make_function(id, axes.size(), std::move(affine_coeffs));
  std::vector<std::vector<double>> nodes;
  nodes.reserve(axes.size());
  std::size_t rows = 1;
  for (const AxisSpec& spec : axes) {
    nodes.push_back(linspace(spec));
    rows *= spec.count;
  }

  Dataset ds;
  ds.dimension = axes.size();
  ds.kind = DatasetKind::Numeric;
  for (std::size_t j = 0; j < axes.size(); ++j)
    ds.column_names.push_back("x" + std::to_string(j + 1));
  ds.column_names.push_back("value");
  ds.points.reserve(rows);
  ds.values.reserve(rows);

  std::vector<std::size_t> idx(axes.size(), 0);
  std::vector<double> point(axes.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < axes.size(); ++j) point[j] = nodes[j][idx[j]];
    ds.points.push_back(point);
    ds.values.push_back(f(point));
    for (std::size_t j = axes.size(); j-- > 0;) {
      if (++idx[j] < nodes[j].size()) break;
      idx[j] = 0;
    }
  }
  return ds;
}

}  // namespace adb
