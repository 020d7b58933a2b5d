// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef ADDIVORTES_SAMPLER_HPP
#define ADDIVORTES_SAMPLER_HPP

#include <span>
#include <vector>

#include "addivortes/mean_ensemble.hpp"
#include "addivortes/priors.hpp"
#include "addivortes/trace.hpp"
#include "addivortes/variance_ensemble.hpp"

namespace addivortes {

enum class Role { Mean, Variance };

/// Scaled inputs for one chain.  y_train is expected on the model scale
/// ([-0.5, 0.5] after range scaling); y_center/y_scale map model-scale values
/// back to the original response scale for trace recording.
struct FitData {
  Matrix x_train;
  std::vector<double> y_train;
  Matrix x_test;  // optional; zero rows when absent
  double y_center = 0.0;
  double y_scale = 1.0;
};

/// One draw from the homoscedastic sigma^2 full conditional
/// chi^-2( nu + n, (nu*lambda + sum r_i^2)/(nu + n) ).
double draw_sigma_homoscedastic(std::span<const double> residuals, double nu,
                                double lambda, Rng& rng);

/// One MCMC chain: Gibbs backfitting over the mean ensemble, then either the
/// variance ensemble sweep (heteroscedastic) or a sigma^2 draw (homoscedastic).
/// Single-threaded; run independent chains on independent Sampler instances.
class Sampler {
 public:
  Sampler(FitData data, Hyperparams hyper, Mode mode);

  /// Burn-in plus kept draws; deterministic given (data, hyper, seed).
  Trace run();

  /// One full sweep: m mean updates, then the variance sweep or sigma draw.
  void gibbs_iteration();

  /// One structure MH step plus the unconditional redraw of every cell output
  /// of that tessellation.  Returns whether the structure move was accepted.
  bool mh_update_tessellation(Role role, int index);

  const MeanEnsemble& mean_ensemble() const { return mean_ens_; }
  const VarianceEnsemble& variance_ensemble() const { return var_ens_; }
  std::span<const double> cached_fit() const { return cached_f_; }
  std::span<const double> cached_variance() const { return cached_s2_; }
  double sigma2() const { return sigma2_; }
  int iteration() const { return iteration_; }
  Rng& rng() { return rng_; }

  /// Recomputes both caches from scratch and throws if the incrementally
  /// maintained values drift beyond `tol`.
  void verify_caches(double tol) const;

  // test hooks
  void set_fixed_sigma(double s2);  // homoscedastic: pin sigma^2, skip its draws
  void freeze_variance_ensemble(bool freeze) { freeze_variance_ = freeze; }

 private:
  void initialize();
  void refresh_caches();
  MoveKind sample_move_kind();
  void rebuild_test_assign(Role role, int index);
  void record_draw(Trace& trace);
  void check_finite(const char* what) const;
  void acceptance_window_check();

  FitData data_;
  Hyperparams hyper_;
  Mode mode_;
  int n_ = 0;
  int p_ = 0;

  MeanEnsemble mean_ens_;
  VarianceEnsemble var_ens_;
  std::vector<std::vector<int>> mean_assign_;       // per tessellation, train rows
  std::vector<std::vector<int>> var_assign_;
  std::vector<std::vector<int>> mean_test_assign_;  // lazily refreshed
  std::vector<std::vector<int>> var_test_assign_;
  std::vector<char> mean_test_dirty_;
  std::vector<char> var_test_dirty_;

  std::vector<double> cached_f_;   // sum of mean tessellation outputs per row
  std::vector<double> cached_s2_;  // product of variance outputs, or sigma2
  double sigma2_ = 1.0;
  bool sigma_fixed_ = false;
  bool freeze_variance_ = false;

  std::vector<char> last_mean_accept_;
  std::vector<char> last_var_accept_;

  std::array<std::int64_t, kNumMoveKinds> mean_attempts_{}, mean_accepts_{};
  std::array<std::int64_t, kNumMoveKinds> var_attempts_{}, var_accepts_{};
  std::array<std::int64_t, kNumMoveKinds> win_attempts_{}, win_accepts_{};

  int iteration_ = 0;
  Rng rng_;

  // scratch reused across updates
  std::vector<double> base_;   // fit-without-j or s2-without-l
  std::vector<double> resid_;  // partial residuals or e^2
  std::vector<int> cand_assign_;
  std::vector<int> counts_;
  std::vector<MeanCellStats> mean_stats_, mean_cand_stats_;
  std::vector<VarianceCellStats> var_stats_, var_cand_stats_;
};

/// Convenience wrapper: construct a chain and run it.
Trace run_mcmc(const FitData& data, const Hyperparams& hyper, Mode mode);

}  // namespace addivortes

#endif
