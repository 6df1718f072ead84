#include "oneleg/grid.hpp"

#include <algorithm>
#include <cmath>

namespace oneleg {

double grid_dot(const GridState& a, const GridState& b) {
  require_same_grid(a, b, "grid_dot");
  double acc = 0.0;
  for (size_t k = 0; k < a.v.size(); ++k) acc += a.v[k] * b.v[k];
  return acc * a.h();
}

double min_value(const GridState& a) {
  double m = a.v[0];
  for (double x : a.v)
    if (x < m) m = x;
  return m;
}

double max_abs(const GridState& a) {
  double m = 0.0;
  for (double x : a.v) m = std::max(m, std::fabs(x));
  return m;
}

double max_abs_diff(const GridState& a, const GridState& b) {
  require_same_grid(a, b, "max_abs_diff");
  double m = 0.0;
  for (size_t k = 0; k < a.v.size(); ++k) m = std::max(m, std::fabs(a.v[k] - b.v[k]));
  return m;
}

}  // namespace oneleg
