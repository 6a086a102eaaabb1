#pragma once

#include "tomobell/bell.hpp"
#include "tomobell/portrait.hpp"
#include "tomobell/quantum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tomobell {

struct SearchConfig {
  int grid_resolution = 8;      // points per angle axis
  int refine_iterations = 200;  // local refinement steps after the grid phase
  std::uint64_t seed = 0;       // recorded for reproducibility
  double tolerance = 1e-7;      // convergence threshold on the value spread

  void validate() const {
    if (grid_resolution < 2)
      throw std::invalid_argument("SearchConfig: grid_resolution must be >= 2");
    if (tolerance <= 0)
      throw std::invalid_argument("SearchConfig: tolerance must be positive");
  }
};

struct SearchResult {
  double best_value = 0.0;
  DirectionQuad best_angles;
  OutcomeSplit split_a, split_b;  // coarse-graining that produced best_value
  std::int64_t evaluations = 0;
  std::vector<std::pair<int, double>> trace;  // (iteration, best so far)
};

namespace detail {

/// Signed correlator of the reduced tomogram at one direction pair.
inline double reduced_correlator(const DensityMatrix& state,
                                 std::pair<int, int> dims, const Direction& d1,
                                 const Direction& d2, const OutcomeSplit& sa,
                                 const OutcomeSplit& sb) {
  const auto r =
      reduce_bipartite(bipartite_tomogram(state, d1, d2, dims), sa, sb)
          .probabilities;
  return r[0] - r[1] - r[2] + r[3];
}

struct NelderMead {
  using Objective = std::function<double(const std::array<double, 8>&)>;

  // Minimizes f; returns best point. Standard reflect/expand/contract/shrink.
  static std::pair<std::array<double, 8>, double> minimize(
      const Objective& f, std::array<double, 8> x0,
      const std::array<double, 8>& step, int max_iter, double tol,
      std::int64_t& evaluations,
      const std::function<void(int, double)>& on_improve) {
    constexpr int n = 8;
    std::vector<std::array<double, n>> pts(n + 1, x0);
    std::vector<double> val(n + 1);
    for (int i = 0; i < n; ++i) pts[i + 1][i] += step[i];
    for (int i = 0; i <= n; ++i) {
      val[i] = f(pts[i]);
      ++evaluations;
    }
    auto order = [&] {
      std::vector<int> idx(n + 1);
      for (int i = 0; i <= n; ++i) idx[i] = i;
      std::stable_sort(idx.begin(), idx.end(),
                       [&](int a, int b) { return val[a] < val[b]; });
      std::vector<std::array<double, n>> p2(n + 1);
      std::vector<double> v2(n + 1);
      for (int i = 0; i <= n; ++i) {
        p2[i] = pts[idx[i]];
        v2[i] = val[idx[i]];
      }
      pts.swap(p2);
      val.swap(v2);
    };
    order();
    double best = val[0];
    for (int iter = 0; iter < max_iter; ++iter) {
      if (val[n] - val[0] < tol) break;
      std::array<double, n> centroid{};
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) centroid[j] += pts[i][j] / n;
      auto at = [&](double coeff) {
        std::array<double, n> p;
        for (int j = 0; j < n; ++j)
          p[j] = centroid[j] + coeff * (pts[n][j] - centroid[j]);
        return p;
      };
      const auto refl = at(-1.0);
      const double fr = f(refl);
      ++evaluations;
      if (fr < val[0]) {
        const auto exp_ = at(-2.0);
        const double fe = f(exp_);
        ++evaluations;
        if (fe < fr) {
          pts[n] = exp_;
          val[n] = fe;
        } else {
          pts[n] = refl;
          val[n] = fr;
        }
      } else if (fr < val[n - 1]) {
        pts[n] = refl;
        val[n] = fr;
      } else {
        const auto contr = at(fr < val[n] ? -0.5 : 0.5);
        const double fc = f(contr);
        ++evaluations;
        if (fc < std::min(fr, val[n])) {
          pts[n] = contr;
          val[n] = fc;
        } else {  // shrink toward the best vertex
          for (int i = 1; i <= n; ++i) {
            for (int j = 0; j < n; ++j)
              pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
            val[i] = f(pts[i]);
            ++evaluations;
          }
        }
      }
      order();
      if (val[0] < best) {
        best = val[0];
        on_improve(iter + 1, best);
      }
    }
    return {pts[0], val[0]};
  }
};

}  // namespace detail

/// Coarse grid over the four (theta, phi) direction pairs followed by
/// derivative-free local refinement, repeated for every admissible
/// coarse-graining split pair; the best split wins. Deterministic; ties on the
/// grid break toward the lexicographically lowest angle tuple.
inline SearchResult maximize_bell(const DensityMatrix& state,
                                  std::pair<int, int> dims,
                                  const SearchConfig& config = {}) {
  config.validate();
  const int g = config.grid_resolution;
  std::vector<double> thetas(g), phis(g);
  for (int i = 0; i < g; ++i) {
    thetas[i] = std::numbers::pi * i / (g - 1);
    phis[i] = 2.0 * std::numbers::pi * i / g;
  }
  std::vector<Direction> dirs;
  dirs.reserve(static_cast<std::size_t>(g) * g);
  for (double th : thetas)
    for (double ph : phis) dirs.push_back({th, ph});
  const int nd = static_cast<int>(dirs.size());

  // Full joint tomograms per direction pair; re-binned per split below.
  std::vector<Tomogram> table;
  table.reserve(static_cast<std::size_t>(nd) * nd);
  for (int x = 0; x < nd; ++x)
    for (int y = 0; y < nd; ++y)
      table.push_back(bipartite_tomogram(state, dirs[x], dirs[y], dims));

  SearchResult result;
  result.best_value = -1.0;
  bool first_combo = true;
  for (const auto& sa : portrait_splits(dims.first)) {
    for (const auto& sb : portrait_splits(dims.second)) {
      std::vector<double> corr(static_cast<std::size_t>(nd) * nd);
      for (std::size_t k = 0; k < table.size(); ++k) {
        const auto r = reduce_bipartite(table[k], sa, sb).probabilities;
        corr[k] = r[0] - r[1] - r[2] + r[3];
      }
      double grid_best = -1.0;
      std::array<int, 4> grid_arg{0, 0, 0, 0};  // (a, b, c, d)
      for (int ia = 0; ia < nd; ++ia)
        for (int ib = 0; ib < nd; ++ib) {
          const double eab = corr[static_cast<std::size_t>(ia) * nd + ib];
          for (int ic = 0; ic < nd; ++ic) {
            const double eac = corr[static_cast<std::size_t>(ia) * nd + ic];
            for (int id = 0; id < nd; ++id) {
              const double v =
                  std::abs(eab + eac + corr[static_cast<std::size_t>(id) * nd + ib] -
                           corr[static_cast<std::size_t>(id) * nd + ic]);
              if (v > grid_best) {
                grid_best = v;
                grid_arg = {ia, ib, ic, id};
              }
            }
          }
        }
      result.evaluations +=
          static_cast<std::int64_t>(nd) * nd * nd * nd;

      std::vector<std::pair<int, double>> trace{{0, grid_best}};
      auto objective = [&](const std::array<double, 8>& x) {
        const Direction a{x[0], x[4]}, b{x[1], x[5]}, c{x[2], x[6]}, d{x[3], x[7]};
        return -(std::abs(
            detail::reduced_correlator(state, dims, a, b, sa, sb) +
            detail::reduced_correlator(state, dims, a, c, sa, sb) +
            detail::reduced_correlator(state, dims, d, b, sa, sb) -
            detail::reduced_correlator(state, dims, d, c, sa, sb)));
      };
      std::array<double, 8> x0{dirs[grid_arg[0]].theta, dirs[grid_arg[1]].theta,
                               dirs[grid_arg[2]].theta, dirs[grid_arg[3]].theta,
                               dirs[grid_arg[0]].phi, dirs[grid_arg[1]].phi,
                               dirs[grid_arg[2]].phi, dirs[grid_arg[3]].phi};
      const double th_step = 0.5 * std::numbers::pi / (g - 1);
      const double ph_step = std::numbers::pi / g;
      std::array<double, 8> step{th_step, th_step, th_step, th_step,
                                 ph_step, ph_step, ph_step, ph_step};
      auto [xb, fb] = detail::NelderMead::minimize(
          objective, x0, step, config.refine_iterations, config.tolerance,
          result.evaluations, [&](int iter, double f) {
            if (-f > trace.back().second) trace.emplace_back(iter, -f);
          });
      const double combo_best = std::max(grid_best, -fb);
      const bool better = first_combo || combo_best > result.best_value;
      first_combo = false;
      if (better) {
        result.best_value = combo_best;
        if (-fb >= grid_best) {
          result.best_angles = {{xb[0], xb[4]}, {xb[1], xb[5]},
                                {xb[2], xb[6]}, {xb[3], xb[7]}};
        } else {
          result.best_angles = {dirs[grid_arg[0]], dirs[grid_arg[1]],
                                dirs[grid_arg[2]], dirs[grid_arg[3]]};
        }
        result.split_a = sa;
        result.split_b = sb;
        result.trace = std::move(trace);
      }
    }
  }
  return result;
}

}  // namespace tomobell
