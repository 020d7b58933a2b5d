// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef ADDIVORTES_VARIANCE_ENSEMBLE_HPP
#define ADDIVORTES_VARIANCE_ENSEMBLE_HPP

#include <span>
#include <vector>

#include "addivortes/tessellation.hpp"

namespace addivortes {

/// Product-of-tessellations variance model: s^2(x) = prod_l evaluate(tess[l], x).
/// Every output is strictly positive, so the product is too.
struct VarianceEnsemble {
  std::vector<Tessellation> tess;
};

double predict_variance(const VarianceEnsemble& ens, std::span<const double> x);

struct ScaledResiduals {
  std::vector<double> values;  // e_i^2 >= 0
  int excluded_index = 0;
};

/// e_i^2 = (y_i - f(x_i))^2 / s^2_{-l}(x_i), with the leave-one-out product
/// recovered from the cached full product: s^2_{-l} = cached_s2 / evaluate(tess_l).
ScaledResiduals scaled_sq_residuals(std::span<const double> y,
                                    std::span<const double> mean_fit,
                                    const VarianceEnsemble& ens, int l, const Matrix& X,
                                    std::span<const double> cached_s2);

struct VarianceCellStats {
  double sum_e2 = 0.0;
  int count = 0;
};

/// Full per-cell integrated log likelihood with the cell variance factor
/// marginalized against its chi^-2(nu', lambda') prior:
///   lgamma((nu'+n)/2) - lgamma(nu'/2) + (nu'/2) log(nu' lambda')
///   - (n/2) log(pi) - ((nu'+n)/2) log(nu' lambda' + sum e^2).
/// The prior normalization terms stay because cell counts change across
/// structure proposals.
double variance_marglik_from_stats(const VarianceCellStats& st, double nu_var,
                                   double lambda_var);

double variance_cell_marginal_loglik(std::span<const double> e2_in_cell, double nu_var,
                                     double lambda_var);

/// One draw from the cell-variance full conditional
/// chi^-2( nu'+n, (nu' lambda' + sum e^2)/(nu'+n) ); strictly positive.
double draw_cell_variance_from_stats(const VarianceCellStats& st, double nu_var,
                                     double lambda_var, Rng& rng);

double draw_cell_variance(std::span<const double> e2_in_cell, double nu_var,
                          double lambda_var, Rng& rng);

double variance_struct_loglik(std::span<const int> cells, int num_cells,
                              std::span<const double> e2, double nu_var, double lambda_var,
                              std::vector<VarianceCellStats>& scratch);

}  // namespace addivortes

#endif
