// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef ADDIVORTES_MEAN_ENSEMBLE_HPP
#define ADDIVORTES_MEAN_ENSEMBLE_HPP

#include <span>
#include <vector>

#include "addivortes/tessellation.hpp"

namespace addivortes {

/// Sum-of-tessellations mean model: f(x) = sum_j evaluate(tess[j], x).
struct MeanEnsemble {
  std::vector<Tessellation> tess;
};

double predict_mean(const MeanEnsemble& ens, std::span<const double> x);

struct PartialResiduals {
  std::vector<double> values;
  int excluded_index = 0;
};

/// R_j: response minus the fit of every tessellation except the j-th,
/// computed from the incrementally maintained full fit.
PartialResiduals partial_residuals(std::span<const double> y, const MeanEnsemble& ens,
                                   int j, const Matrix& X,
                                   std::span<const double> cached_fit);

/// Sufficient statistics of one cell under heteroscedastic weights:
/// W = sum 1/s^2(x_i), S = sum R_i/s^2(x_i) over the cell's observations.
struct MeanCellStats {
  double w = 0.0;
  double s = 0.0;
};

/// Per-cell integrated log likelihood with the cell mean marginalized out,
/// dropping the terms that are constant across competing structures:
///   -log(sigma_mu^2*W + 1)/2 + sigma_mu^2*S^2 / (2*(sigma_mu^2*W + 1)).
/// The exponential term is positive; the analytic marginal carries a plus.
double mean_marglik_from_stats(const MeanCellStats& st, double sigma_mu);

double mean_cell_marginal_loglik(std::span<const double> residuals_in_cell,
                                 std::span<const double> s2_at_obs, double sigma_mu);

/// One draw from the cell-mean full conditional
/// N( S/(1/sigma_mu^2 + W), 1/(1/sigma_mu^2 + W) ).
double draw_cell_mean_from_stats(const MeanCellStats& st, double sigma_mu, Rng& rng);

double draw_cell_mean(std::span<const double> residuals_in_cell,
                      std::span<const double> s2_at_obs, double sigma_mu, Rng& rng);

/// Accumulates per-cell stats over a whole assignment in one pass
/// (compensated sums) and returns the summed marginal log likelihood.
double mean_struct_loglik(std::span<const int> cells, int num_cells,
                          std::span<const double> resid, std::span<const double> s2,
                          double sigma_mu, std::vector<MeanCellStats>& scratch);

}  // namespace addivortes

#endif
