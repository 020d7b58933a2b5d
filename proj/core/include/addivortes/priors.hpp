// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef ADDIVORTES_PRIORS_HPP
#define ADDIVORTES_PRIORS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "addivortes/tessellation.hpp"

namespace addivortes {

/// Every prior and sampler setting in one place.
///
/// nu/q/k/lambda_c/lambda_d and the structural counts are user-facing;
/// lambda, nu_var, lambda_var and sigma_mu are derived from them and the
/// training response by calibrate() and start out unset (0).
struct Hyperparams {
  int m = 200;      // mean tessellations
  int m_var = 40;   // variance tessellations (m')

  double nu = 3.0;  // sigma^2 prior d.o.f.; must be > 2 so the prior mean exists
  double q = 0.90;  // calibration quantile
  double k = 2.0;   // sigma_mu multiplier

  double lambda_c = 5.0;  // Poisson rate, center count prior
  double lambda_d = 1.0;  // Poisson rate, dimension count prior (shifted to start at 1)

  std::array<double, kNumMoveKinds> move_probs = {0.2, 0.2, 0.2, 0.2, 0.1, 0.1};

  int n_burn = 1000;
  int n_keep = 2000;
  int thin = 1;
  std::uint64_t seed = 42;

  // derived by calibrate()
  double lambda = 0.0;
  double nu_var = 0.0;
  double lambda_var = 0.0;
  double sigma_mu = 0.0;

  /// Throws std::invalid_argument when a primitive field is out of range.
  void validate() const;

  bool calibrated() const { return lambda > 0.0 && sigma_mu > 0.0; }

  /// Fills the derived fields from (nu, q, k, m, m') and sigma_hat, the
  /// standard deviation estimate of the scaled training response.
  void calibrate(double sigma_hat);
};

/// lambda such that P(sigma^2 <= sigma_hat^2) = q under sigma^2 ~ nu*lambda/Chi2_nu.
double calibrate_sigma_lambda(double nu, double q, double sigma_hat);

/// (nu', lambda') matching the product-of-factors prior mean to the
/// homoscedastic prior mean: lambda' = lambda^(1/m'), nu' = 2/(1-(1-2/nu)^(1/m')).
std::pair<double, double> calibrate_variance_prior(double nu, double lambda, int m_var);

/// sigma_mu = 0.5/(k*sqrt(m)) for a response scaled to [-0.5, 0.5].
double sigma_mu_from_k(double k, int m);

/// Log prior of a tessellation structure: shifted truncated-Poisson dimension
/// count, uniform covariate subset, >=1-truncated Poisson center count.
/// Center locations live on training-row projections and their prior factor
/// cancels against the location proposals, so it does not appear here.
double log_tess_prior(const Tessellation& tess, int p, double lambda_c, double lambda_d);

/// Flat `key = value` config round-trip; unknown keys are errors.
std::string hyperparams_to_config(const Hyperparams& h);
Hyperparams hyperparams_from_config(const std::string& text);
Hyperparams load_hyperparams_file(const std::string& path);
void save_hyperparams_file(const Hyperparams& h, const std::string& path);

}  // namespace addivortes

#endif
