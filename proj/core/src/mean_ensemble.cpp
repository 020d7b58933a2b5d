// Apache License, Version 2.0, refer to LICENSE.txt
#include "addivortes/mean_ensemble.hpp"

#include <cmath>
#include <stdexcept>

namespace addivortes {

double predict_mean(const MeanEnsemble& ens, std::span<const double> x) {
  Kahan acc;
  for (const Tessellation& t : ens.tess) acc.add(evaluate(t, x));
  return acc.value();
}

PartialResiduals partial_residuals(std::span<const double> y, const MeanEnsemble& ens,
                                   int j, const Matrix& X,
                                   std::span<const double> cached_fit) {
  PartialResiduals out;
  out.excluded_index = j;
  out.values.resize(y.size());
  const Tessellation& tj = ens.tess[j];
  for (std::size_t i = 0; i < y.size(); ++i) {
    out.values[i] = y[i] - cached_fit[i] + evaluate(tj, X.row(static_cast<int>(i)));
  }
  return out;
}

double mean_marglik_from_stats(const MeanCellStats& st, double sigma_mu) {
  const double v = sigma_mu * sigma_mu;
  const double t = v * st.w + 1.0;
  return -0.5 * std::log(t) + v * st.s * st.s / (2.0 * t);
}

namespace {

MeanCellStats gather_stats(std::span<const double> resid, std::span<const double> s2) {
  if (resid.size() != s2.size()) {
    throw std::invalid_argument("mean cell: residual and variance lengths differ");
  }
  Kahan w, s;
  for (std::size_t i = 0; i < resid.size(); ++i) {
    if (!(s2[i] > 0.0)) throw std::invalid_argument("mean cell: non-positive variance");
    w.add(1.0 / s2[i]);
    s.add(resid[i] / s2[i]);
  }
  return {w.value(), s.value()};
}

}  // namespace

double mean_cell_marginal_loglik(std::span<const double> residuals_in_cell,
                                 std::span<const double> s2_at_obs, double sigma_mu) {
  return mean_marglik_from_stats(gather_stats(residuals_in_cell, s2_at_obs), sigma_mu);
}

double draw_cell_mean_from_stats(const MeanCellStats& st, double sigma_mu, Rng& rng) {
  const double prec = 1.0 / (sigma_mu * sigma_mu) + st.w;
  return draw_normal(st.s / prec, std::sqrt(1.0 / prec), rng);
}

double draw_cell_mean(std::span<const double> residuals_in_cell,
                      std::span<const double> s2_at_obs, double sigma_mu, Rng& rng) {
  return draw_cell_mean_from_stats(gather_stats(residuals_in_cell, s2_at_obs), sigma_mu, rng);
}

double mean_struct_loglik(std::span<const int> cells, int num_cells,
                          std::span<const double> resid, std::span<const double> s2,
                          double sigma_mu, std::vector<MeanCellStats>& scratch) {
  scratch.assign(num_cells, MeanCellStats{});
  std::vector<Kahan> w(num_cells), s(num_cells);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const int c = cells[i];
    const double inv = 1.0 / s2[i];
    w[c].add(inv);
    s[c].add(resid[i] * inv);
  }
  double total = 0.0;
  for (int c = 0; c < num_cells; ++c) {
    scratch[c] = {w[c].value(), s[c].value()};
    total += mean_marglik_from_stats(scratch[c], sigma_mu);
  }
  return total;
}

}  // namespace addivortes
