#pragma once

#include <vector>

#include "oneleg/errors.hpp"

namespace oneleg {

// Per-species nodal values on the periodic unit torus, nodes x_i = i/N,
// i = 0..N-1 (node N is identified with node 0).  Storage is species-major:
// value(s, i) = v[s*N + i].
struct GridState {
  int species = 1;
  int n = 0;
  std::vector<double> v;

  GridState() = default;
  GridState(int n_species, int n_nodes, double fill = 0.0)
      : species(n_species), n(n_nodes), v(static_cast<size_t>(n_species) * n_nodes, fill) {
    if (n_species < 1 || n_nodes < 1) throw invalid_parameter("GridState: species and nodes must be >= 1");
  }

  double h() const { return 1.0 / static_cast<double>(n); }
  int size() const { return species * n; }
  double& at(int s, int i) { return v[static_cast<size_t>(s) * n + i]; }
  double at(int s, int i) const { return v[static_cast<size_t>(s) * n + i]; }
};

inline bool same_grid(const GridState& a, const GridState& b) {
  return a.species == b.species && a.n == b.n;
}

inline void require_same_grid(const GridState& a, const GridState& b, const char* where) {
  if (!same_grid(a, b)) throw grid_mismatch(std::string(where) + ": grid or species mismatch");
}

// Grid-weighted discrete L2 inner product: h * sum over nodes and species.
double grid_dot(const GridState& a, const GridState& b);

double min_value(const GridState& a);
double max_abs(const GridState& a);
double max_abs_diff(const GridState& a, const GridState& b);

// Window of p consecutive states, oldest first.
struct History {
  std::vector<GridState> states;

  History() = default;
  explicit History(std::vector<GridState> window) : states(std::move(window)) {
    for (size_t k = 1; k < states.size(); ++k)
      require_same_grid(states[0], states[k], "History");
  }

  int length() const { return static_cast<int>(states.size()); }
  const GridState& operator[](int k) const { return states[static_cast<size_t>(k)]; }
  const GridState& newest() const { return states.back(); }

  // Drop the oldest state and append v; keeps the window length.
  void advance(GridState v) {
    require_same_grid(states[0], v, "History::advance");
    states.erase(states.begin());
    states.push_back(std::move(v));
  }
};

}  // namespace oneleg
