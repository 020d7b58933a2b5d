// Apache License, Version 2.0, refer to LICENSE.txt
#include "addivortes/priors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace addivortes {

void Hyperparams::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("hyperparams: " + msg); };
  if (m < 1) fail("m must be >= 1");
  if (m_var < 1) fail("m_var must be >= 1");
  if (!(nu > 2.0)) fail("nu must be > 2 (prior mean of sigma^2 must exist)");
  if (!(q > 0.0 && q < 1.0)) fail("q must lie in (0,1)");
  if (!(k > 0.0)) fail("k must be > 0");
  if (!(lambda_c > 0.0)) fail("lambda_c must be > 0");
  if (!(lambda_d > 0.0)) fail("lambda_d must be > 0");
  double total = 0.0;
  for (double w : move_probs) {
    if (!(w >= 0.0)) fail("move probabilities must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) fail("move probabilities must sum to 1");
  if (n_burn < 0) fail("n_burn must be >= 0");
  if (n_keep < 0) fail("n_keep must be >= 0");
  if (thin < 1) fail("thin must be >= 1");
  if (calibrated()) {
    if (!(lambda > 0.0)) fail("lambda must be > 0");
    if (!(nu_var > 2.0)) fail("nu_var must be > 2");
    if (!(lambda_var > 0.0)) fail("lambda_var must be > 0");
    if (!(sigma_mu > 0.0)) fail("sigma_mu must be > 0");
  }
}

void Hyperparams::calibrate(double sigma_hat) {
  lambda = calibrate_sigma_lambda(nu, q, sigma_hat);
  auto [nv, lv] = calibrate_variance_prior(nu, lambda, m_var);
  nu_var = nv;
  lambda_var = lv;
  sigma_mu = sigma_mu_from_k(k, m);
}

double calibrate_sigma_lambda(double nu, double q, double sigma_hat) {
  if (!(nu > 0.0)) throw std::invalid_argument("calibrate_sigma_lambda: nu must be > 0");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("calibrate_sigma_lambda: q must be in (0,1)");
  if (!std::isfinite(sigma_hat) || !(sigma_hat > 0.0)) {
    throw std::invalid_argument("calibrate_sigma_lambda: sigma_hat must be finite and > 0");
  }
  return sigma_hat * sigma_hat * chi2_quantile(nu, 1.0 - q) / nu;
}

std::pair<double, double> calibrate_variance_prior(double nu, double lambda, int m_var) {
  if (!(nu > 2.0)) throw std::invalid_argument("calibrate_variance_prior: nu must be > 2");
  if (!(lambda > 0.0)) throw std::invalid_argument("calibrate_variance_prior: lambda must be > 0");
  if (m_var < 1) throw std::invalid_argument("calibrate_variance_prior: m_var must be >= 1");
  const double inv_m = 1.0 / static_cast<double>(m_var);
  const double lambda_var = std::pow(lambda, inv_m);
  const double nu_var = 2.0 / (1.0 - std::pow(1.0 - 2.0 / nu, inv_m));
  return {nu_var, lambda_var};
}

double sigma_mu_from_k(double k, int m) {
  return 0.5 / (k * std::sqrt(static_cast<double>(m)));
}

namespace {

// log sum_{j=0}^{p-1} lambda^j / j!  (normalizer of the shifted, p-truncated
// dimension-count prior)
double log_shifted_poisson_norm(double lambda, int p) {
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < p; ++j) {
    term *= lambda / static_cast<double>(j);
    sum += term;
  }
  return std::log(sum);
}

}  // namespace

double log_tess_prior(const Tessellation& tess, int p, double lambda_c, double lambda_d) {
  const int d = tess.num_dims();
  const int b = tess.num_cells();
  // D = 1 + K, K ~ Poisson(lambda_d), truncated at D <= p
  double lp = (d - 1) * std::log(lambda_d) - std::lgamma(static_cast<double>(d)) -
              log_shifted_poisson_norm(lambda_d, p);
  // covariate subset uniform over size-d subsets
  lp -= std::lgamma(p + 1.0) - std::lgamma(d + 1.0) - std::lgamma(p - d + 1.0);
  // B ~ Poisson(lambda_c) truncated to >= 1
  lp += b * std::log(lambda_c) - std::lgamma(b + 1.0) - lambda_c -
        std::log1p(-std::exp(-lambda_c));
  return lp;
}

namespace {

std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
    line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    key.erase(std::find_if(key.rbegin(), key.rend(), notspace).base(), key.end());
    val.erase(val.begin(), std::find_if(val.begin(), val.end(), notspace));
    kv[key] = val;
  }
  return kv;
}

}  // namespace

std::string hyperparams_to_config(const Hyperparams& h) {
  std::ostringstream out;
  out.precision(17);
  out << "m = " << h.m << "\n"
      << "m_var = " << h.m_var << "\n"
      << "nu = " << h.nu << "\n"
      << "q = " << h.q << "\n"
      << "k = " << h.k << "\n"
      << "lambda_c = " << h.lambda_c << "\n"
      << "lambda_d = " << h.lambda_d << "\n";
  out << "move_probs =";
  for (double w : h.move_probs) out << " " << w;
  out << "\n";
  out << "n_burn = " << h.n_burn << "\n"
      << "n_keep = " << h.n_keep << "\n"
      << "thin = " << h.thin << "\n"
      << "seed = " << h.seed << "\n";
  if (h.calibrated()) {
    out << "lambda = " << h.lambda << "\n"
        << "nu_var = " << h.nu_var << "\n"
        << "lambda_var = " << h.lambda_var << "\n"
        << "sigma_mu = " << h.sigma_mu << "\n";
  }
  return out.str();
}

Hyperparams hyperparams_from_config(const std::string& text) {
  Hyperparams h;
  for (const auto& [key, val] : parse_kv(text)) {
    std::istringstream v(val);
    if (key == "m") v >> h.m;
    else if (key == "m_var") v >> h.m_var;
    else if (key == "nu") v >> h.nu;
    else if (key == "q") v >> h.q;
    else if (key == "k") v >> h.k;
    else if (key == "lambda_c") v >> h.lambda_c;
    else if (key == "lambda_d") v >> h.lambda_d;
    else if (key == "move_probs") { for (double& w : h.move_probs) v >> w; }
    else if (key == "n_burn") v >> h.n_burn;
    else if (key == "n_keep") v >> h.n_keep;
    else if (key == "thin") v >> h.thin;
    else if (key == "seed") v >> h.seed;
    else if (key == "lambda") v >> h.lambda;
    else if (key == "nu_var") v >> h.nu_var;
    else if (key == "lambda_var") v >> h.lambda_var;
    else if (key == "sigma_mu") v >> h.sigma_mu;
    else throw std::invalid_argument("config: unknown key '" + key + "'");
    if (v.fail()) throw std::invalid_argument("config: bad value for '" + key + "'");
  }
  return h;
}

Hyperparams load_hyperparams_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return hyperparams_from_config(buf.str());
}

void save_hyperparams_file(const Hyperparams& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file: " + path);
  out << hyperparams_to_config(h);
}

}  // namespace addivortes
