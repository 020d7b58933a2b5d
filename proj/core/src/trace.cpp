// Apache License, Version 2.0, refer to LICENSE.txt
#include "addivortes/trace.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "addivortes/math_util.hpp"

namespace addivortes {

const char* mode_name(Mode mode) {
  return mode == Mode::Homoscedastic ? "homoscedastic" : "heteroscedastic";
}

Mode mode_from_name(const std::string& name) {
  if (name == "homoscedastic") return Mode::Homoscedastic;
  if (name == "heteroscedastic") return Mode::Heteroscedastic;
  throw std::invalid_argument("unknown mode: " + name);
}

namespace {

std::vector<double> column_mean(const std::vector<double>& data, int n_kept, int n) {
  std::vector<double> out(n, 0.0);
  std::vector<Kahan> acc(n);
  for (int k = 0; k < n_kept; ++k) {
    const double* row = data.data() + static_cast<std::size_t>(k) * n;
    for (int i = 0; i < n; ++i) acc[i].add(row[i]);
  }
  for (int i = 0; i < n; ++i) out[i] = acc[i].value() / n_kept;
  return out;
}

std::vector<double> column_quantile(const std::vector<double>& data, int n_kept, int n,
                                    double p) {
  std::vector<double> out(n);
  std::vector<double> col(n_kept);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n_kept; ++k) col[k] = data[static_cast<std::size_t>(k) * n + i];
    std::sort(col.begin(), col.end());
    out[i] = quantile_sorted(col, p);
  }
  return out;
}

}  // namespace

std::vector<double> Trace::posterior_mean_f_test() const {
  return column_mean(f_test, n_kept, n_test);
}
std::vector<double> Trace::posterior_mean_f_train() const {
  return column_mean(f_train, n_kept, n_train);
}
std::vector<double> Trace::s_test_quantile(double p) const {
  if (!heteroscedastic()) throw std::logic_error("s_test_quantile: homoscedastic trace");
  return column_quantile(s_test, n_kept, n_test, p);
}
std::vector<double> Trace::s_train_quantile(double p) const {
  if (!heteroscedastic()) throw std::logic_error("s_train_quantile: homoscedastic trace");
  return column_quantile(s_train, n_kept, n_train, p);
}

// ---------------------------------------------------------------------------
// CSV format
// ---------------------------------------------------------------------------

void save_trace_csv(const Trace& t, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot write trace file: " + path);

  std::string header = "draw";
  if (!t.heteroscedastic()) header += ",sigma";
  auto add_cols = [&header](const char* stem, int n) {
    for (int i = 0; i < n; ++i) {
      header += ',';
      header += stem;
      header += std::to_string(i);
    }
  };
  add_cols("f_train_", t.n_train);
  add_cols("f_test_", t.n_test);
  if (t.heteroscedastic()) {
    add_cols("s_train_", t.n_train);
    add_cols("s_test_", t.n_test);
  }
  add_cols("b_mean_", t.m);
  add_cols("d_mean_", t.m);
  add_cols("a_mean_", t.m);
  if (t.heteroscedastic()) {
    add_cols("b_var_", t.m_var);
    add_cols("d_var_", t.m_var);
    add_cols("a_var_", t.m_var);
  }
  std::fprintf(f, "%s\n", header.c_str());

  auto put_doubles = [f](const double* v, int n) {
    for (int i = 0; i < n; ++i) std::fprintf(f, ",%.17g", v[i]);
  };
  auto put_ints = [f](const std::int32_t* v, int n) {
    for (int i = 0; i < n; ++i) std::fprintf(f, ",%d", v[i]);
  };
  for (int k = 0; k < t.n_kept; ++k) {
    std::fprintf(f, "%d", k);
    if (!t.heteroscedastic()) std::fprintf(f, ",%.17g", t.sigma[k]);
    put_doubles(t.f_train.data() + static_cast<std::size_t>(k) * t.n_train, t.n_train);
    put_doubles(t.f_test.data() + static_cast<std::size_t>(k) * t.n_test, t.n_test);
    if (t.heteroscedastic()) {
      put_doubles(t.s_train.data() + static_cast<std::size_t>(k) * t.n_train, t.n_train);
      put_doubles(t.s_test.data() + static_cast<std::size_t>(k) * t.n_test, t.n_test);
    }
    put_ints(t.mean_cells.data() + static_cast<std::size_t>(k) * t.m, t.m);
    put_ints(t.mean_ndims.data() + static_cast<std::size_t>(k) * t.m, t.m);
    for (int j = 0; j < t.m; ++j) {
      std::fprintf(f, ",%d", static_cast<int>(t.mean_accept[static_cast<std::size_t>(k) * t.m + j]));
    }
    if (t.heteroscedastic()) {
      put_ints(t.var_cells.data() + static_cast<std::size_t>(k) * t.m_var, t.m_var);
      put_ints(t.var_ndims.data() + static_cast<std::size_t>(k) * t.m_var, t.m_var);
      for (int j = 0; j < t.m_var; ++j) {
        std::fprintf(f, ",%d",
                     static_cast<int>(t.var_accept[static_cast<std::size_t>(k) * t.m_var + j]));
      }
    }
    std::fputc('\n', f);
  }
  if (std::fclose(f) != 0) throw std::runtime_error("error closing trace file: " + path);
}

namespace {

int count_prefix(const std::vector<std::string>& names, const std::string& stem) {
  int count = 0;
  for (const auto& n : names) {
    if (n.rfind(stem, 0) == 0) ++count;
  }
  return count;
}

}  // namespace

Trace load_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trace file: " + path);

  std::vector<std::string> names;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) names.push_back(cell);
  }
  Trace t;
  t.n_train = count_prefix(names, "f_train_");
  t.n_test = count_prefix(names, "f_test_");
  t.m = count_prefix(names, "b_mean_");
  t.m_var = count_prefix(names, "b_var_");
  const bool has_sigma = count_prefix(names, "sigma") > 0;
  const bool has_s = count_prefix(names, "s_train_") > 0 || count_prefix(names, "s_test_") > 0;
  if (has_sigma == has_s) throw std::runtime_error("trace header is not a valid mode: " + path);
  t.mode = has_s ? Mode::Heteroscedastic : Mode::Homoscedastic;

  std::vector<double> row;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    row.clear();
    const char* p = line.c_str();
    char* end = nullptr;
    while (true) {
      row.push_back(std::strtod(p, &end));
      if (*end == ',') {
        p = end + 1;
      } else {
        break;
      }
    }
    if (row.size() != names.size()) {
      throw std::runtime_error("trace row width mismatch in " + path);
    }
    std::size_t c = 1;  // skip draw index
    if (!t.heteroscedastic()) t.sigma.push_back(row[c++]);
    auto take_doubles = [&](std::vector<double>& dst, int n) {
      for (int i = 0; i < n; ++i) dst.push_back(row[c++]);
    };
    take_doubles(t.f_train, t.n_train);
    take_doubles(t.f_test, t.n_test);
    if (t.heteroscedastic()) {
      take_doubles(t.s_train, t.n_train);
      take_doubles(t.s_test, t.n_test);
    }
    auto take_ints = [&](std::vector<std::int32_t>& dst, int n) {
      for (int i = 0; i < n; ++i) dst.push_back(static_cast<std::int32_t>(row[c++]));
    };
    take_ints(t.mean_cells, t.m);
    take_ints(t.mean_ndims, t.m);
    for (int i = 0; i < t.m; ++i) t.mean_accept.push_back(static_cast<std::int8_t>(row[c++]));
    if (t.heteroscedastic()) {
      take_ints(t.var_cells, t.m_var);
      take_ints(t.var_ndims, t.m_var);
      for (int i = 0; i < t.m_var; ++i) t.var_accept.push_back(static_cast<std::int8_t>(row[c++]));
    }
    ++t.n_kept;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Binary format: "AVTR" + version byte
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'A', 'V', 'T', 'R'};
constexpr std::uint8_t kVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_pod(std::ifstream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
}

template <typename T>
void write_vec(std::ofstream& out, const std::vector<T>& v) {
  const std::uint64_t n = v.size();
  write_pod(out, n);
  out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
}

template <typename T>
void read_vec(std::ifstream& in, std::vector<T>& v) {
  std::uint64_t n = 0;
  read_pod(in, n);
  v.resize(n);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
}

}  // namespace

void save_trace_binary(const Trace& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace file: " + path);
  out.write(kMagic, 4);
  write_pod(out, kVersion);
  const std::uint8_t mode = t.heteroscedastic() ? 1 : 0;
  write_pod(out, mode);
  write_pod(out, t.seed);
  write_pod(out, t.n_train);
  write_pod(out, t.n_test);
  write_pod(out, t.n_kept);
  write_pod(out, t.m);
  write_pod(out, t.m_var);
  for (auto& arr : {t.mean_attempts, t.mean_accepts, t.var_attempts, t.var_accepts}) {
    for (std::int64_t v : arr) write_pod(out, v);
  }
  const std::string hyper = hyperparams_to_config(t.hyper);
  const std::uint64_t hn = hyper.size();
  write_pod(out, hn);
  out.write(hyper.data(), static_cast<std::streamsize>(hn));
  write_vec(out, t.f_train);
  write_vec(out, t.f_test);
  write_vec(out, t.s_train);
  write_vec(out, t.s_test);
  write_vec(out, t.sigma);
  write_vec(out, t.mean_cells);
  write_vec(out, t.mean_ndims);
  write_vec(out, t.mean_accept);
  write_vec(out, t.var_cells);
  write_vec(out, t.var_ndims);
  write_vec(out, t.var_accept);
  if (!out) throw std::runtime_error("error writing trace file: " + path);
}

Trace load_trace_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  char magic[4];
  in.read(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error("not an AVTR trace file: " + path);
  }
  std::uint8_t version = 0;
  read_pod(in, version);
  if (version != kVersion) throw std::runtime_error("unsupported AVTR version in " + path);
  Trace t;
  std::uint8_t mode = 0;
  read_pod(in, mode);
  t.mode = mode ? Mode::Heteroscedastic : Mode::Homoscedastic;
  read_pod(in, t.seed);
  read_pod(in, t.n_train);
  read_pod(in, t.n_test);
  read_pod(in, t.n_kept);
  read_pod(in, t.m);
  read_pod(in, t.m_var);
  for (auto* arr : {&t.mean_attempts, &t.mean_accepts, &t.var_attempts, &t.var_accepts}) {
    for (std::int64_t& v : *arr) read_pod(in, v);
  }
  std::uint64_t hn = 0;
  read_pod(in, hn);
  std::string hyper(hn, '\0');
  in.read(hyper.data(), static_cast<std::streamsize>(hn));
  t.hyper = hyperparams_from_config(hyper);
  read_vec(in, t.f_train);
  read_vec(in, t.f_test);
  read_vec(in, t.s_train);
  read_vec(in, t.s_test);
  read_vec(in, t.sigma);
  read_vec(in, t.mean_cells);
  read_vec(in, t.mean_ndims);
  read_vec(in, t.mean_accept);
  read_vec(in, t.var_cells);
  read_vec(in, t.var_ndims);
  read_vec(in, t.var_accept);
  if (!in) throw std::runtime_error("truncated trace file: " + path);
  return t;
}

Trace load_trace(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw std::runtime_error("cannot open trace file: " + path);
  char magic[4] = {0, 0, 0, 0};
  probe.read(magic, 4);
  probe.close();
  if (std::memcmp(magic, kMagic, 4) == 0) return load_trace_binary(path);
  return load_trace_csv(path);
}

}  // namespace addivortes
