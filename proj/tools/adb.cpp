// Command-line front end: build models from CSV data, run batch queries,
// evaluate against known functions, emit plot-ready data, and benchmark
// parallel evaluation. Exit codes are documented in the README.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "adb/adb.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitFile = 2;
constexpr int kExitParse = 3;
constexpr int kExitValidation = 4;
constexpr int kExitDomain = 5;
constexpr int kExitUnknown = 6;

int exit_code_for(const adb::Error& e) {
  if (dynamic_cast<const adb::FileError*>(&e) ||
      dynamic_cast<const adb::EmptyFile*>(&e))
    return kExitFile;
  if (dynamic_cast<const adb::ParseError*>(&e) ||
      dynamic_cast<const adb::CorruptFile*>(&e) ||
      dynamic_cast<const adb::SchemaVersionMismatch*>(&e))
    return kExitParse;
  if (dynamic_cast<const adb::IncompleteGrid*>(&e) ||
      dynamic_cast<const adb::DuplicatePoint*>(&e) ||
      dynamic_cast<const adb::InconsistentDimension*>(&e) ||
      dynamic_cast<const adb::InvalidRadii*>(&e) ||
      dynamic_cast<const adb::InvalidGrid*>(&e) ||
      dynamic_cast<const adb::DimensionMismatch*>(&e) ||
      dynamic_cast<const adb::EmptyInput*>(&e))
    return kExitValidation;
  if (dynamic_cast<const adb::OutOfDomain*>(&e)) return kExitDomain;
  if (dynamic_cast<const adb::UnknownFunction*>(&e) ||
      dynamic_cast<const adb::UnsupportedDimension*>(&e))
    return kExitUnknown;
  return kExitUsage;
}

unsigned env_threads() {
  if (const char* env = std::getenv("ADB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 0;
}

/// --threads wins; --parallel takes ADB_THREADS or all hardware threads;
/// otherwise ADB_THREADS or sequential.
unsigned resolve_threads(unsigned threads_flag, bool parallel) {
  if (threads_flag > 0) return threads_flag;
  const unsigned env = env_threads();
  if (env > 0) return env;
  if (parallel) return std::max(1u, std::thread::hardware_concurrency());
  return 1;
}

/// Per-axis radii list: "r" (symmetric) or "l:r" entries, comma-separated.
std::vector<adb::AxisRadii> parse_radii(const std::string& text) {
  std::vector<adb::AxisRadii> radii;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    adb::AxisRadii r;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      if (!adb::try_parse_double(item, r.left))
        throw adb::Error("bad radius '" + item + "'");
      r.right = r.left;
    } else {
      if (!adb::try_parse_double(item.substr(0, colon), r.left) ||
          !adb::try_parse_double(item.substr(colon + 1), r.right))
        throw adb::Error("bad radius '" + item + "'");
    }
    radii.push_back(r);
  }
  if (radii.empty()) throw adb::Error("empty radii list");
  return radii;
}

std::string radii_to_string(const std::vector<adb::AxisRadii>& radii) {
  std::string s;
  for (const auto& r : radii) {
    if (!s.empty()) s += ' ';
    s += "(" + adb::format_double(r.left) + "," + adb::format_double(r.right) + ")";
  }
  return s;
}

std::size_t model_dimension(const adb::Model& model) {
  if (const auto* grid = std::get_if<adb::RegressionModel>(&model))
    return grid->grid().dimension();
  return std::get<adb::ClassifierModel>(model).dimension();
}

std::string grid_shape(const adb::RegularGrid& grid) {
  std::string s;
  for (std::size_t j = 0; j < grid.dimension(); ++j)
    s += (j ? "x" : "") + std::to_string(grid.axis(j).size());
  return s;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw adb::FileError("cannot write " + path);
  out << text;
  if (!out) throw adb::FileError("write failed for " + path);
}

// --- build ---------------------------------------------------------------

struct BuildOptions {
  std::string train_csv;
  std::string out;
  std::string kind = "grid";
  std::string radii;
};

int cmd_build(const BuildOptions& opt) {
  if (opt.kind == "grid") {
    const auto ds = adb::read_csv(opt.train_csv, adb::DatasetKind::Numeric);
    const auto model = adb::fit_regression(ds.points, ds.values);
    adb::write_model(model, opt.out);
    std::cout << "grid model: " << model.grid().dimension() << " axes, "
              << grid_shape(model.grid()) << " nodes\n";
    return 0;
  }
  if (opt.kind == "classifier") {
    const auto ds = adb::read_csv(opt.train_csv, adb::DatasetKind::Labeled);
    adb::LabeledExampleSet set;
    set.points = ds.points;
    set.labels = ds.labels;
    bool defaulted = opt.radii.empty();
    const auto radii = defaulted ? adb::default_radii(ds.points) : parse_radii(opt.radii);
    if (radii.size() != ds.dimension)
      throw adb::InvalidRadii("expected " + std::to_string(ds.dimension) +
                              " radii entries, got " + std::to_string(radii.size()));
    set.radii = {radii};
    const auto model = adb::fit_classifier(set);
    adb::write_model(model, opt.out);
    std::cout << "classifier model: " << model.size() << " examples, "
              << model.dimension() << " axes, " << (defaulted ? "default " : "")
              << "radii " << radii_to_string(radii) << "\n";
    return 0;
  }
  throw adb::Error("unknown --kind '" + opt.kind + "' (grid or classifier)");
}

// --- query ---------------------------------------------------------------

struct QueryOptions {
  std::string model_file;
  std::string queries_csv;
  std::string out;
  unsigned threads = 0;
  bool parallel = false;
  bool full_precision = false;
};

int cmd_query(const QueryOptions& opt) {
  const auto model = adb::read_model(opt.model_file);
  const auto queries = adb::read_queries_csv(opt.queries_csv);
  if (queries.dimension != model_dimension(model))
    throw adb::DimensionMismatch("queries have dimension " +
                                 std::to_string(queries.dimension) + ", model has " +
                                 std::to_string(model_dimension(model)));
  const unsigned threads = resolve_threads(opt.threads, opt.parallel);
  const auto results = adb::batch_predict(model, queries.points, threads);
  write_text_file(opt.out,
                  adb::format_results_csv(model, queries.points, results,
                                          opt.full_precision));
  std::size_t flagged = 0;
  for (const auto& r : results)
    if (r.status == adb::QueryOutcome::Status::OutOfDomain) ++flagged;
  std::cout << results.size() << " queries -> " << opt.out << " (" << flagged
            << " out of domain)\n";
  return 0;
}

// --- eval ----------------------------------------------------------------

struct EvalOptions {
  std::string model_file;
  std::string oracle;
  std::string samples;
  std::string grid;
  std::string refined_grid;
  std::vector<double> coeffs;
};

struct ErrorReport {
  double max_abs = 0.0;
  double rms = 0.0;
  std::size_t samples = 0;
};

ErrorReport evaluate_grid(const adb::RegularGrid& grid,
                          const std::function<double(std::span<const double>)>& f,
                          const std::vector<adb::AxisSpec>& samples) {
  std::vector<std::vector<double>> lattice;
  lattice.reserve(samples.size());
  std::size_t count = 1;
  for (const auto& spec : samples) {
    lattice.push_back(adb::linspace(spec));
    count *= spec.count;
  }
  ErrorReport report;
  report.samples = count;
  std::vector<std::size_t> idx(samples.size(), 0);
  std::vector<double> q(samples.size());
  double sq = 0.0;
  for (std::size_t r = 0; r < count; ++r) {
    for (std::size_t j = 0; j < samples.size(); ++j) q[j] = lattice[j][idx[j]];
    const double err = adb::interpolate(grid, q) - f(q);
    report.max_abs = std::max(report.max_abs, std::abs(err));
    sq += err * err;
    for (std::size_t j = samples.size(); j-- > 0;) {
      if (++idx[j] < lattice[j].size()) break;
      idx[j] = 0;
    }
  }
  report.rms = std::sqrt(sq / static_cast<double>(count));
  return report;
}

adb::RegularGrid grid_from_function(
    const std::function<double(std::span<const double>)>& f,
    const std::vector<adb::AxisSpec>& specs) {
  std::vector<adb::Axis> axes;
  std::size_t cells = 1;
  for (const auto& spec : specs) {
    axes.emplace_back(adb::linspace(spec));
    cells *= spec.count;
  }
  std::vector<double> values(cells);
  std::vector<std::size_t> idx(specs.size(), 0);
  std::vector<double> p(specs.size());
  for (std::size_t r = 0; r < cells; ++r) {
    for (std::size_t j = 0; j < specs.size(); ++j) p[j] = axes[j][idx[j]];
    values[r] = f(p);
    for (std::size_t j = specs.size(); j-- > 0;) {
      if (++idx[j] < axes[j].size()) break;
      idx[j] = 0;
    }
  }
  return adb::RegularGrid(std::move(axes), std::move(values));
}

int cmd_eval(const EvalOptions& opt) {
  const auto samples = adb::parse_axis_specs(opt.samples);
  const auto f = adb::make_function(opt.oracle, samples.size(), opt.coeffs);

  if (!opt.grid.empty()) {
    const auto specs = adb::parse_axis_specs(opt.grid);
    if (specs.size() != samples.size())
      throw adb::DimensionMismatch("--grid and --samples dimensions differ");
    const auto grid = grid_from_function(f, specs);
    const auto report = evaluate_grid(grid, f, samples);
    std::cout << "samples " << report.samples << "\n"
              << "max_abs_error " << adb::format_double(report.max_abs) << "\n"
              << "rms_error " << adb::format_double(report.rms) << "\n";
    if (!opt.refined_grid.empty()) {
      const auto fine_specs = adb::parse_axis_specs(opt.refined_grid);
      if (fine_specs.size() != samples.size())
        throw adb::DimensionMismatch("--refined-grid and --samples dimensions differ");
      const auto fine = grid_from_function(f, fine_specs);
      const auto fine_report = evaluate_grid(fine, f, samples);
      std::cout << "refined_max_abs_error " << adb::format_double(fine_report.max_abs)
                << "\n"
                << "refined_rms_error " << adb::format_double(fine_report.rms) << "\n";
      if (fine_report.max_abs > 0.0)
        std::cout << "error_ratio "
                  << adb::format_double(report.max_abs / fine_report.max_abs) << "\n";
    }
    return 0;
  }

  const auto model = adb::read_model(opt.model_file);
  const auto* grid_model = std::get_if<adb::RegressionModel>(&model);
  if (!grid_model) throw adb::Error("eval needs a grid model, not a classifier");
  if (grid_model->grid().dimension() != samples.size())
    throw adb::DimensionMismatch("--samples dimension does not match the model");
  const auto report = evaluate_grid(grid_model->grid(), f, samples);
  std::cout << "samples " << report.samples << "\n"
            << "max_abs_error " << adb::format_double(report.max_abs) << "\n"
            << "rms_error " << adb::format_double(report.rms) << "\n";
  return 0;
}

// --- gen -----------------------------------------------------------------

struct GenOptions {
  std::string function;
  std::string axes;
  std::string out;
  std::vector<double> coeffs;
};

int cmd_gen(const GenOptions& opt) {
  std::vector<adb::AxisSpec> specs;
  if (!opt.axes.empty()) {
    specs = adb::parse_axis_specs(opt.axes);
  } else {
    specs = adb::default_axes(opt.function);
    if (specs.empty())
      throw adb::Error("--axes is required for function '" + opt.function + "'");
  }
  const auto ds = adb::generate(opt.function, specs, opt.coeffs);
  adb::write_csv(ds, opt.out);
  std::cout << ds.size() << " rows -> " << opt.out << "\n";
  return 0;
}

// --- plotdata ------------------------------------------------------------

struct PlotOptions {
  std::string model_file;
  std::string grid;
  std::string out;
  std::string slice;
  bool flat = false;
};

int cmd_plotdata(const PlotOptions& opt) {
  const auto model = adb::read_model(opt.model_file);
  const auto* grid_model = std::get_if<adb::RegressionModel>(&model);
  if (!grid_model) throw adb::Error("plotdata needs a grid model, not a classifier");
  const adb::RegularGrid& grid = grid_model->grid();
  const std::size_t dim = grid.dimension();
  if (dim > 3 && !opt.flat)
    throw adb::UnsupportedDimension(
        "plotdata supports up to 3 dimensions; pass --flat for raw rows");

  std::size_t slice_axis = dim;  // dim means "no slice"
  double slice_coord = 0.0;
  if (!opt.slice.empty()) {
    const auto eq = opt.slice.find('=');
    double axis_number = -1.0;
    if (eq == std::string::npos ||
        !adb::try_parse_double(opt.slice.substr(0, eq), axis_number) ||
        !adb::try_parse_double(opt.slice.substr(eq + 1), slice_coord) ||
        axis_number < 0.0 || axis_number >= static_cast<double>(dim) ||
        axis_number != std::floor(axis_number))
      throw adb::Error("--slice must be AXIS=COORD with a valid axis index");
    slice_axis = static_cast<std::size_t>(axis_number);
  }

  const auto specs = adb::parse_axis_specs(opt.grid);
  const std::size_t free_axes = slice_axis < dim ? dim - 1 : dim;
  if (specs.size() != free_axes)
    throw adb::DimensionMismatch("--grid needs " + std::to_string(free_axes) +
                                 " axis specs for this model");

  std::vector<std::vector<double>> lattice;
  std::size_t rows = 1;
  for (const auto& spec : specs) {
    lattice.push_back(adb::linspace(spec));
    rows *= spec.count;
  }

  std::string out;
  for (std::size_t j = 0; j < dim; ++j) out += "x" + std::to_string(j + 1) + ",";
  out += "value\n";
  std::vector<std::size_t> idx(specs.size(), 0);
  std::vector<double> q(dim);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0, s = 0; j < dim; ++j) {
      if (j == slice_axis) {
        q[j] = slice_coord;
      } else {
        q[j] = lattice[s][idx[s]];
        ++s;
      }
    }
    const double value = adb::interpolate(grid, q);
    for (std::size_t j = 0; j < dim; ++j) out += adb::format_double(q[j]) + ",";
    out += adb::format_double(value) + "\n";
    for (std::size_t j = specs.size(); j-- > 0;) {
      if (++idx[j] < lattice[j].size()) break;
      idx[j] = 0;
    }
  }
  write_text_file(opt.out, out);
  std::cout << rows << " rows -> " << opt.out << "\n";
  return 0;
}

// --- bench ---------------------------------------------------------------

struct BenchOptions {
  std::string model_file;
  std::string queries_csv;
  std::string threads = "1";
  std::string dims;
  std::size_t nodes = 5;
  std::size_t query_count = 10000;
};

std::vector<unsigned> parse_unsigned_list(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const int v = std::atoi(item.c_str());
    if (v <= 0) throw adb::Error("bad list entry '" + item + "'");
    out.push_back(static_cast<unsigned>(v));
  }
  if (out.empty()) throw adb::Error("empty list");
  return out;
}

double time_batch(const adb::Model& model,
                  const std::vector<std::vector<double>>& queries, unsigned threads,
                  std::vector<adb::QueryOutcome>& results) {
  const auto start = std::chrono::steady_clock::now();
  results = adb::batch_predict(model, queries, threads);
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

int cmd_bench(const BenchOptions& opt) {
  const auto thread_counts = parse_unsigned_list(opt.threads);

  if (!opt.dims.empty()) {
    // dimension sweep over generated grids of a fixed per-axis node count
    std::mt19937 rng(2024);
    for (unsigned dim : parse_unsigned_list(opt.dims)) {
      std::vector<adb::AxisSpec> specs(dim, adb::AxisSpec{-1.0, 1.0, opt.nodes});
      const auto f = adb::make_function("neg_sum_squares", dim);
      const adb::Model model = adb::RegressionModel(grid_from_function(f, specs));
      std::uniform_real_distribution<double> inside(-1.0, 1.0);
      std::vector<std::vector<double>> queries(opt.query_count,
                                               std::vector<double>(dim));
      for (auto& q : queries)
        for (double& c : q) c = inside(rng);
      for (unsigned threads : thread_counts) {
        std::vector<adb::QueryOutcome> results;
        const double ms = time_batch(model, queries, threads, results);
        std::cout << "dim " << dim << ": nodes/axis " << opt.nodes << ", "
                  << queries.size() << " queries, threads " << threads << ": "
                  << adb::format_fixed(ms, 2) << " ms total, "
                  << adb::format_fixed(ms * 1000.0 /
                                           std::max<std::size_t>(1, queries.size()),
                                       3)
                  << " us/query\n";
      }
    }
    return 0;
  }

  const auto model = adb::read_model(opt.model_file);
  const auto queries = adb::read_queries_csv(opt.queries_csv);
  if (queries.size() > 0 && queries.dimension != model_dimension(model))
    throw adb::DimensionMismatch("queries do not match the model dimension");
  std::cout << "queries " << queries.size() << "\n";

  std::string reference;
  bool identical = true;
  for (unsigned threads : thread_counts) {
    std::vector<adb::QueryOutcome> results;
    const double ms = time_batch(model, queries.points, threads, results);
    const std::string rendered =
        adb::format_results_csv(model, queries.points, results, true);
    if (reference.empty())
      reference = rendered;
    else if (rendered != reference)
      identical = false;
    std::cout << "threads " << threads << ": " << adb::format_fixed(ms, 2)
              << " ms total, "
              << adb::format_fixed(ms * 1000.0 / std::max<std::size_t>(1, queries.size()),
                                   3)
              << " us/query\n";
  }
  if (!identical) {
    std::cerr << "error: results differ across thread configurations\n";
    return kExitUsage;
  }
  if (thread_counts.size() > 1)
    std::cout << "results identical across " << thread_counts.size()
              << " thread configurations\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approximation-degree based grid interpolation and instance-based learning"};
  app.require_subcommand(1);

  BuildOptions build;
  auto* build_cmd = app.add_subcommand("build", "build a model from a training CSV");
  build_cmd->add_option("train", build.train_csv, "training CSV")->required();
  build_cmd->add_option("-o,--out", build.out, "model file to write")->required();
  build_cmd->add_option("--kind", build.kind, "model kind: grid or classifier")
      ->check(CLI::IsMember({"grid", "classifier"}));
  build_cmd->add_option("--radii", build.radii,
                        "classifier radii per axis: r or l:r entries, comma-separated");

  QueryOptions query;
  auto* query_cmd = app.add_subcommand("query", "run batch queries against a model");
  query_cmd->add_option("model", query.model_file, "model file")->required();
  query_cmd->add_option("queries", query.queries_csv, "query CSV")->required();
  query_cmd->add_option("--out", query.out, "results CSV to write")->required();
  query_cmd->add_option("--threads", query.threads, "worker thread count");
  query_cmd->add_flag("--parallel", query.parallel, "use all hardware threads");
  query_cmd->add_flag("--full-precision", query.full_precision,
                      "emit full-precision values instead of 4 decimals");

  EvalOptions eval;
  auto* eval_cmd =
      app.add_subcommand("eval", "report interpolation error against a known function");
  auto* eval_model_opt = eval_cmd->add_option("model", eval.model_file, "grid model file");
  eval_cmd->add_option("--oracle", eval.oracle, "function id")->required();
  eval_cmd->add_option("--samples", eval.samples, "sample lattice lo:hi:count per axis")
      ->required();
  auto* eval_grid_opt =
      eval_cmd
          ->add_option("--grid", eval.grid,
                       "build the grid from the oracle instead of a model file")
          ->excludes(eval_model_opt);
  eval_cmd
      ->add_option("--refined-grid", eval.refined_grid,
                   "second grid for a refinement sweep")
      ->needs(eval_grid_opt);
  eval_cmd->add_option("--coeffs", eval.coeffs, "affine coefficients c0,c1,...")
      ->delimiter(',');

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a dataset from a named function");
  gen_cmd->add_option("--function", gen.function, "function id")->required();
  gen_cmd->add_option("--axes", gen.axes, "axis specs lo:hi:count, comma-separated");
  gen_cmd->add_option("-o,--out", gen.out, "CSV to write")->required();
  gen_cmd->add_option("--coeffs", gen.coeffs, "affine coefficients c0,c1,...")
      ->delimiter(',');

  PlotOptions plot;
  auto* plot_cmd = app.add_subcommand("plotdata", "emit a dense evaluation lattice");
  plot_cmd->add_option("model", plot.model_file, "grid model file")->required();
  plot_cmd->add_option("--grid", plot.grid, "lattice specs lo:hi:count per free axis")
      ->required();
  plot_cmd->add_option("--out", plot.out, "CSV to write")->required();
  plot_cmd->add_option("--slice", plot.slice, "fix one axis: AXIS=COORD (3D models)");
  plot_cmd->add_flag("--flat", plot.flat, "allow >3 dimensions, raw rows");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "time batch evaluation");
  auto* bench_model_opt = bench_cmd->add_option("model", bench.model_file, "model file");
  bench_cmd->add_option("queries", bench.queries_csv, "query CSV");
  bench_cmd->add_option("--threads", bench.threads, "thread counts, comma-separated");
  bench_cmd
      ->add_option("--dims", bench.dims,
                   "dimension sweep over generated grids, comma-separated")
      ->excludes(bench_model_opt);
  bench_cmd->add_option("--nodes", bench.nodes, "nodes per axis for --dims");
  bench_cmd->add_option("--queries-count", bench.query_count,
                        "generated query count for --dims");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (build_cmd->parsed()) return cmd_build(build);
    if (query_cmd->parsed()) return cmd_query(query);
    if (eval_cmd->parsed()) {
      if (eval.model_file.empty() && eval.grid.empty())
        throw adb::Error("eval needs a model file or --grid");
      return cmd_eval(eval);
    }
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (plot_cmd->parsed()) return cmd_plotdata(plot);
    if (bench_cmd->parsed()) {
      if (bench.model_file.empty() && bench.dims.empty())
        throw adb::Error("bench needs a model file with queries, or --dims");
      if (!bench.model_file.empty() && bench.queries_csv.empty())
        throw adb::Error("bench needs a query CSV alongside the model");
      return cmd_bench(bench);
    }
  } catch (const adb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
