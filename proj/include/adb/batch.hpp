#pragma once

#include <cstddef>
#include <exception>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "adb/errors.hpp"
#include "adb/io.hpp"
#include "adb/learner.hpp"

namespace adb {

/// Result of one batch query row.
struct QueryOutcome {
  enum class Status { Ok, OutOfDomain };
  Status status = Status::Ok;
  Prediction prediction;
};

/// Evaluate all queries against the model, in row order, using the given
/// number of worker threads (0 or 1 means sequential). Each row lands in its
/// own result slot, so the output is identical for every thread count.
/// Out-of-domain rows are flagged, not fatal.
inline std::vector<QueryOutcome> batch_predict(
    const Model& model, const std::vector<std::vector<double>>& queries,
    unsigned threads = 1) {
  const std::size_t dim = std::holds_alternative<RegressionModel>(model)
                              ? std::get<RegressionModel>(model).grid().dimension()
                              : std::get<ClassifierModel>(model).dimension();
  for (const auto& q : queries)
    if (q.size() != dim)
      throw InconsistentDimension("query dimension " + std::to_string(q.size()) +
                                  " does not match model dimension " +
                                  std::to_string(dim));

  std::vector<QueryOutcome> results(queries.size());
  auto evaluate_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      try {
        if (const auto* grid = std::get_if<RegressionModel>(&model))
          results[r].prediction = predict_regression(*grid, queries[r]);
        else
          results[r].prediction = classify(std::get<ClassifierModel>(model), queries[r]);
      } catch (const OutOfDomain&) {
        results[r].status = QueryOutcome::Status::OutOfDomain;
      }
    }
  };

  if (threads <= 1 || queries.size() < 2) {
    evaluate_range(0, queries.size());
    return results;
  }

  const std::size_t workers = std::min<std::size_t>(threads, queries.size());
  const std::size_t chunk = (queries.size() + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> failures(workers);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(begin + chunk, queries.size());
    pool.emplace_back([&, w, begin, end] {
      try {
        evaluate_range(begin, end);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return results;
}

/// Render batch results as CSV, echoing the query coordinates. Regression
/// rows carry value,status; classification rows carry label,degree,status.
/// The default value format is fixed 4 decimals.
inline std::string format_results_csv(const Model& model,
                                      const std::vector<std::vector<double>>& queries,
                                      const std::vector<QueryOutcome>& results,
                                      bool full_precision = false) {
  std::string out;
  const bool classified = std::holds_alternative<ClassifierModel>(model);
  const std::size_t dim = classified
                              ? std::get<ClassifierModel>(model).dimension()
                              : std::get<RegressionModel>(model).grid().dimension();
  for (std::size_t j = 0; j < dim; ++j) out += "x" + std::to_string(j + 1) + ",";
  out += classified ? "label,degree,status\n" : "value,status\n";

  auto fmt = [&](double v) { return full_precision ? format_double(v) : format_fixed(v); };
  for (std::size_t r = 0; r < results.size(); ++r) {
    for (double c : queries[r]) out += format_double(c) + ",";
    const QueryOutcome& q = results[r];
    if (q.status == QueryOutcome::Status::OutOfDomain) {
      out += classified ? ",,out_of_domain\n" : ",out_of_domain\n";
      continue;
    }
    const Prediction& p = q.prediction;
    switch (p.kind) {
      case Prediction::Kind::Regression:
        out += fmt(p.value) + ",ok\n";
        break;
      case Prediction::Kind::Classified:
        out += p.label + "," + fmt(p.degree) + ",ok\n";
        break;
      case Prediction::Kind::Unclassified:
        out += "UNCLASSIFIED,,ok\n";
        break;
    }
  }
  return out;
}

}  // namespace adb
