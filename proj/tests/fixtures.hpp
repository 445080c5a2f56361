#pragma once

// Shared test fixtures: the 21x21 step-2 grid for z = -x^2 - y^2 and the
// 45-point query batch with its reference outputs.

#include <cstddef>
#include <vector>

#include "adb/grid.hpp"

namespace fixtures {

inline std::vector<double> step2_nodes() {
  std::vector<double> nodes;
  for (int v = -20; v <= 20; v += 2) nodes.push_back(v);
  return nodes;
}

inline adb::RegularGrid neg_squares_grid() {
  const auto nodes = step2_nodes();
  std::vector<double> values;
  values.reserve(nodes.size() * nodes.size());
  for (double x : nodes)
    for (double y : nodes) values.push_back(-x * x - y * y);
  return adb::RegularGrid({adb::Axis(nodes), adb::Axis(nodes)}, std::move(values));
}

struct QueryCase {
  double x;
  double y;
  double expected;
};

inline const std::vector<QueryCase>& reference_queries() {
  static const std::vector<QueryCase> cases{
      {-20.0, -20.0, -800.0000}, {-20.0, 20.0, -800.0000},  {20.0, -20.0, -800.0000},
      {-19.5, -19.5, -762.0000}, {-17.8, -17.8, -634.4000}, {-18.0, -5.0, -350.0000},
      {-15.3, -15.5, -476.0000}, {-12.0, 2.5, -151.0000},   {-10.2, -10.2, -208.8000},
      {-10.0, 10.0, -200.0000},  {-10.0, -20.0, -500.0000}, {0.0, 0.0, 0.0},
      {0.0, -20.0, -400.0000},   {10.0, -20.0, -500.0000},  {10.0, -10.0, -200.0000},
      {5.6, -15.3, -267.0000},   {4.7, -3.8, -37.8000},     {-3.4, -13.4, -192.8000},
      {-1.8, -2.8, -12.4000},    {-2.3, -1.9, -9.6000},     {-3.6, -5.6, -45.6000},
      {1.2, -10.2, -106.8000},   {-5.4, -6.5, -73.0000},    {-15.6, 5.6, -276.0000},
      {-20.0, 0.0, -400.0000},   {-20.0, -10.0, -500.0000}, {-20.0, 10.0, -500.0000},
      {-18.3, 10.4, -444.2000},  {18.4, -18.1, -667.0000},  {17.5, -16.3, -573.2000},
      {16.2, -14.4, -470.8000},  {14.5, -12.3, -362.8000},  {11.1, -6.3, -164.4000},
      {-5.4, -15.8, -280.0000},  {-12.1, -8.2, -214.2000},  {-8.5, -15.6, -317.0000},
      {-13.9, 0.9, -195.2000},   {-7.5, 1.6, -60.2000},     {-7.8, 3.2, -72.4000},
      {-9.8, 4.6, -118.4000},    {-12.4, 6.6, -198.8000},   {-13.5, 2.8, -191.8000},
      {-14.6, -0.9, -215.8000},  {-17.5, 18.6, -653.8000},  {-17.8, 13.2, -492.4000},
  };
  return cases;
}

}  // namespace fixtures
