// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef ADDIVORTES_TRACE_HPP
#define ADDIVORTES_TRACE_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "addivortes/priors.hpp"

namespace addivortes {

enum class Mode { Homoscedastic, Heteroscedastic };

const char* mode_name(Mode mode);
Mode mode_from_name(const std::string& name);

/// Retained post-burn-in draws.  Fitted values and standard deviations are on
/// the ORIGINAL response scale.  Per-draw arrays are draw-major: value (k, i)
/// lives at k*n + i.
struct Trace {
  Mode mode = Mode::Homoscedastic;
  std::uint64_t seed = 0;
  Hyperparams hyper;  // echo of the settings that produced the trace

  int n_train = 0;
  int n_test = 0;
  int n_kept = 0;
  int m = 0;
  int m_var = 0;

  std::vector<double> f_train;  // n_kept x n_train
  std::vector<double> f_test;   // n_kept x n_test
  std::vector<double> s_train;  // heteroscedastic only, n_kept x n_train
  std::vector<double> s_test;   // heteroscedastic only, n_kept x n_test
  std::vector<double> sigma;    // homoscedastic only, n_kept

  // per-draw tessellation summaries
  std::vector<std::int32_t> mean_cells;   // n_kept x m
  std::vector<std::int32_t> mean_ndims;   // n_kept x m
  std::vector<std::int8_t> mean_accept;   // n_kept x m
  std::vector<std::int32_t> var_cells;    // n_kept x m_var
  std::vector<std::int32_t> var_ndims;    // n_kept x m_var
  std::vector<std::int8_t> var_accept;    // n_kept x m_var

  std::array<std::int64_t, kNumMoveKinds> mean_attempts{};
  std::array<std::int64_t, kNumMoveKinds> mean_accepts{};
  std::array<std::int64_t, kNumMoveKinds> var_attempts{};
  std::array<std::int64_t, kNumMoveKinds> var_accepts{};

  bool heteroscedastic() const { return mode == Mode::Heteroscedastic; }

  std::span<const double> f_train_draw(int k) const {
    return {f_train.data() + static_cast<std::size_t>(k) * n_train,
            static_cast<std::size_t>(n_train)};
  }
  std::span<const double> f_test_draw(int k) const {
    return {f_test.data() + static_cast<std::size_t>(k) * n_test,
            static_cast<std::size_t>(n_test)};
  }
  /// Predictive sd of observation i (train set) under draw k.
  double s_train_at(int k, int i) const {
    return heteroscedastic() ? s_train[static_cast<std::size_t>(k) * n_train + i] : sigma[k];
  }
  double s_test_at(int k, int i) const {
    return heteroscedastic() ? s_test[static_cast<std::size_t>(k) * n_test + i] : sigma[k];
  }

  /// Posterior mean of f at each test (or train) row.
  std::vector<double> posterior_mean_f_test() const;
  std::vector<double> posterior_mean_f_train() const;
  /// Column-wise quantile of s at test/train rows across draws.
  std::vector<double> s_test_quantile(double p) const;
  std::vector<double> s_train_quantile(double p) const;
};

/// Columnar text serialization: one header line naming every column, then one
/// row per kept draw; doubles printed with round-trip precision.
void save_trace_csv(const Trace& trace, const std::string& path);
Trace load_trace_csv(const std::string& path);

/// Compact binary serialization: magic bytes "AVTR" + a version byte.
void save_trace_binary(const Trace& trace, const std::string& path);
Trace load_trace_binary(const std::string& path);

/// Dispatches on the file's leading bytes.
Trace load_trace(const std::string& path);

}  // namespace addivortes

#endif
