// Apache License, Version 2.0, refer to LICENSE.txt
#include "addivortes/variance_ensemble.hpp"

#include <cmath>
#include <stdexcept>

namespace addivortes {

double predict_variance(const VarianceEnsemble& ens, std::span<const double> x) {
  double prod = 1.0;
  for (const Tessellation& t : ens.tess) prod *= evaluate(t, x);
  return prod;
}

ScaledResiduals scaled_sq_residuals(std::span<const double> y,
                                    std::span<const double> mean_fit,
                                    const VarianceEnsemble& ens, int l, const Matrix& X,
                                    std::span<const double> cached_s2) {
  ScaledResiduals out;
  out.excluded_index = l;
  out.values.resize(y.size());
  const Tessellation& tl = ens.tess[l];
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(cached_s2[i] > 0.0)) {
      throw std::invalid_argument("scaled_sq_residuals: non-positive cached variance");
    }
    const double r = y[i] - mean_fit[i];
    out.values[i] = r * r * evaluate(tl, X.row(static_cast<int>(i))) / cached_s2[i];
  }
  return out;
}

namespace {

void check_hyper(double nu_var, double lambda_var) {
  if (!(nu_var > 0.0) || !(lambda_var > 0.0)) {
    throw std::invalid_argument("variance cell: nu' and lambda' must be > 0");
  }
}

}  // namespace

double variance_marglik_from_stats(const VarianceCellStats& st, double nu_var,
                                   double lambda_var) {
  const double n = static_cast<double>(st.count);
  const double base = nu_var * lambda_var;
  return std::lgamma((nu_var + n) / 2.0) - std::lgamma(nu_var / 2.0) +
         (nu_var / 2.0) * std::log(base) - (n / 2.0) * std::log(M_PI) -
         ((nu_var + n) / 2.0) * std::log(base + st.sum_e2);
}

double variance_cell_marginal_loglik(std::span<const double> e2_in_cell, double nu_var,
                                     double lambda_var) {
  check_hyper(nu_var, lambda_var);
  Kahan acc;
  for (double e2 : e2_in_cell) {
    if (!(e2 >= 0.0)) throw std::invalid_argument("variance cell: negative e^2");
    acc.add(e2);
  }
  return variance_marglik_from_stats({acc.value(), static_cast<int>(e2_in_cell.size())},
                                     nu_var, lambda_var);
}

double draw_cell_variance_from_stats(const VarianceCellStats& st, double nu_var,
                                     double lambda_var, Rng& rng) {
  const double dof = nu_var + static_cast<double>(st.count);
  const double scale = (nu_var * lambda_var + st.sum_e2) / dof;
  return draw_scaled_inv_chi2(dof, scale, rng);
}

double draw_cell_variance(std::span<const double> e2_in_cell, double nu_var,
                          double lambda_var, Rng& rng) {
  check_hyper(nu_var, lambda_var);
  Kahan acc;
  for (double e2 : e2_in_cell) acc.add(e2);
  return draw_cell_variance_from_stats({acc.value(), static_cast<int>(e2_in_cell.size())},
                                       nu_var, lambda_var, rng);
}

double variance_struct_loglik(std::span<const int> cells, int num_cells,
                              std::span<const double> e2, double nu_var, double lambda_var,
                              std::vector<VarianceCellStats>& scratch) {
  scratch.assign(num_cells, VarianceCellStats{});
  std::vector<Kahan> sums(num_cells);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    sums[cells[i]].add(e2[i]);
    ++scratch[cells[i]].count;
  }
  double total = 0.0;
  for (int c = 0; c < num_cells; ++c) {
    scratch[c].sum_e2 = sums[c].value();
    total += variance_marglik_from_stats(scratch[c], nu_var, lambda_var);
  }
  return total;
}

}  // namespace addivortes
