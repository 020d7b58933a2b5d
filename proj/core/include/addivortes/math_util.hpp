// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef ADDIVORTES_MATH_UTIL_HPP
#define ADDIVORTES_MATH_UTIL_HPP

#include <random>
#include <span>
#include <vector>

namespace addivortes {

using Rng = std::mt19937_64;

/// Kahan compensated accumulator; keeps long sums of mixed-magnitude terms honest.
struct Kahan {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
  void reset() { sum = 0.0; carry = 0.0; }
};

// Chi-square distribution pieces (wrappers so Boost stays out of public headers).
double chi2_quantile(double dof, double p);
double chi2_cdf(double dof, double x);

/// CDF of the scaled inverse chi-square chi^-2(dof, scale), i.e. dof*scale/Chi2_dof.
double scaled_inv_chi2_cdf(double x, double dof, double scale);

double normal_cdf(double z);

double draw_chi2(double dof, Rng& rng);
double draw_scaled_inv_chi2(double dof, double scale, Rng& rng);
double draw_normal(double mean, double sd, Rng& rng);

/// Uniform integer in [0, n); n >= 1.
int draw_index(int n, Rng& rng);

double draw_uniform01(Rng& rng);

/// Type-7 (linear interpolation) quantile of an ascending-sorted sample.
double quantile_sorted(std::span<const double> sorted, double p);

/// Convenience: copies, sorts, then takes the type-7 quantile.
double quantile(std::vector<double> values, double p);

double mean_of(std::span<const double> v);
double sample_sd(std::span<const double> v);
double pearson_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace addivortes

#endif
