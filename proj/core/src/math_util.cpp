// Apache License, Version 2.0, refer to LICENSE.txt
#include "addivortes/math_util.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace addivortes {

double chi2_quantile(double dof, double p) {
  boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::quantile(dist, p);
}

double chi2_cdf(double dof, double x) {
  boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::cdf(dist, x);
}

double scaled_inv_chi2_cdf(double x, double dof, double scale) {
  if (x <= 0.0) return 0.0;
  // dof*scale/Chi2 <= x  <=>  Chi2 >= dof*scale/x
  return 1.0 - chi2_cdf(dof, dof * scale / x);
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double draw_chi2(double dof, Rng& rng) {
  std::gamma_distribution<double> gamma(dof / 2.0, 2.0);
  return gamma(rng);
}

double draw_scaled_inv_chi2(double dof, double scale, Rng& rng) {
  return dof * scale / draw_chi2(dof, rng);
}

double draw_normal(double mean, double sd, Rng& rng) {
  std::normal_distribution<double> normal(mean, sd);
  return normal(rng);
}

int draw_index(int n, Rng& rng) {
  std::uniform_int_distribution<int> dist(0, n - 1);
  return dist(rng);
}

double draw_uniform01(Rng& rng) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  double h = (static_cast<double>(n) - 1.0) * p;
  auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo >= n - 1) return sorted[n - 1];
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, p);
}

double mean_of(std::span<const double> v) {
  Kahan acc;
  for (double x : v) acc.add(x);
  return acc.value() / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
  const double mu = mean_of(v);
  Kahan acc;
  for (double x : v) acc.add((x - mu) * (x - mu));
  return std::sqrt(acc.value() / (static_cast<double>(v.size()) - 1.0));
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("pearson_correlation: mismatched or empty samples");
  }
  const double ma = mean_of(a), mb = mean_of(b);
  Kahan sab, saa, sbb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab.add((a[i] - ma) * (b[i] - mb));
    saa.add((a[i] - ma) * (a[i] - ma));
    sbb.add((b[i] - mb) * (b[i] - mb));
  }
  return sab.value() / std::sqrt(saa.value() * sbb.value());
}

}  // namespace addivortes
