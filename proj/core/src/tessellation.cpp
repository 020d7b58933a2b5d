// Apache License, Version 2.0, refer to LICENSE.txt
#include "addivortes/tessellation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace addivortes {

namespace {

// Lexicographic comparison of two row projections onto the same dims.
int compare_rows(const Matrix& X, int a, int b, const std::vector<int>& dims) {
  for (int d : dims) {
    double va = X(a, d), vb = X(b, d);
    if (va < vb) return -1;
    if (va > vb) return 1;
  }
  return 0;
}

bool row_matches_coords(const Matrix& X, int row, const std::vector<int>& dims,
                        std::span<const double> coords) {
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (X(row, dims[k]) != coords[k]) return false;
  }
  return true;
}

bool coords_equal(std::span<const double> a, std::span<const double> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

bool has_duplicate_centers(const Tessellation& tess) {
  const int b = tess.num_cells();
  for (int i = 0; i < b; ++i) {
    for (int j = i + 1; j < b; ++j) {
      if (coords_equal(tess.center(i), tess.center(j))) return true;
    }
  }
  return false;
}

// Rows of X matching a center's coordinates on `dims`.
std::vector<int> matching_rows(const Matrix& X, const std::vector<int>& dims,
                               std::span<const double> coords) {
  std::vector<int> rows;
  for (int i = 0; i < X.rows; ++i) {
    if (row_matches_coords(X, i, dims, coords)) rows.push_back(i);
  }
  return rows;
}

int count_matching_value(const Matrix& X, const std::vector<int>& rows, int col, double value) {
  int c = 0;
  for (int r : rows) {
    if (X(r, col) == value) ++c;
  }
  return c;
}

std::vector<int> unused_covariates(const Tessellation& tess, int p) {
  std::vector<int> unused;
  unused.reserve(p - tess.num_dims());
  std::size_t k = 0;
  for (int j = 0; j < p; ++j) {
    if (k < tess.dims.size() && tess.dims[k] == j) {
      ++k;
    } else {
      unused.push_back(j);
    }
  }
  return unused;
}

// Inserts `value` into each center at the coordinate slot of new dim `v`.
Tessellation insert_dim(const Tessellation& tess, int v,
                        const std::vector<double>& values_per_center) {
  Tessellation out;
  const int d = tess.num_dims();
  const int b = tess.num_cells();
  auto pos_it = std::lower_bound(tess.dims.begin(), tess.dims.end(), v);
  const int pos = static_cast<int>(pos_it - tess.dims.begin());
  out.dims = tess.dims;
  out.dims.insert(out.dims.begin() + pos, v);
  out.outputs = tess.outputs;
  out.centers.resize(static_cast<std::size_t>(b) * (d + 1));
  for (int k = 0; k < b; ++k) {
    auto src = tess.center(k);
    double* dst = out.centers.data() + static_cast<std::size_t>(k) * (d + 1);
    std::copy(src.begin(), src.begin() + pos, dst);
    dst[pos] = values_per_center[k];
    std::copy(src.begin() + pos, src.end(), dst + pos + 1);
  }
  return out;
}

// Removes dim slot `pos` from all centers.
Tessellation erase_dim(const Tessellation& tess, int pos) {
  Tessellation out;
  const int d = tess.num_dims();
  const int b = tess.num_cells();
  out.dims = tess.dims;
  out.dims.erase(out.dims.begin() + pos);
  out.outputs = tess.outputs;
  out.centers.resize(static_cast<std::size_t>(b) * (d - 1));
  for (int k = 0; k < b; ++k) {
    auto src = tess.center(k);
    double* dst = out.centers.data() + static_cast<std::size_t>(k) * (d - 1);
    std::copy(src.begin(), src.begin() + pos, dst);
    std::copy(src.begin() + pos + 1, src.end(), dst + pos);
  }
  return out;
}

}  // namespace

const char* move_kind_name(MoveKind kind) {
  switch (kind) {
    case MoveKind::AddCenter: return "add_center";
    case MoveKind::RemoveCenter: return "remove_center";
    case MoveKind::AddCovariate: return "add_covariate";
    case MoveKind::RemoveCovariate: return "remove_covariate";
    case MoveKind::SwapCovariate: return "swap_covariate";
    case MoveKind::MoveCenter: return "move_center";
  }
  return "?";
}

int assign_cell(const Tessellation& tess, std::span<const double> x) {
  const int b = tess.num_cells();
  const int d = tess.num_dims();
  const double* c = tess.centers.data();
  int best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int k = 0; k < b; ++k) {
    double d2 = 0.0;
    for (int j = 0; j < d; ++j) {
      double diff = x[tess.dims[j]] - c[static_cast<std::size_t>(k) * d + j];
      d2 += diff * diff;
    }
    if (d2 < best_d2) {  // strict: ties stay with the lowest index
      best_d2 = d2;
      best = k;
    }
  }
  return best;
}

double evaluate(const Tessellation& tess, std::span<const double> x) {
  return tess.outputs[assign_cell(tess, x)];
}

void assign_all(const Tessellation& tess, const Matrix& X, std::vector<int>& cells) {
  cells.resize(X.rows);
  for (int i = 0; i < X.rows; ++i) {
    cells[i] = assign_cell(tess, X.row(i));
  }
}

std::vector<int> cell_counts(const Tessellation& tess, const Matrix& X) {
  std::vector<int> counts(tess.num_cells(), 0);
  for (int i = 0; i < X.rows; ++i) {
    ++counts[assign_cell(tess, X.row(i))];
  }
  return counts;
}

std::vector<int> available_locations(const Tessellation& tess, const Matrix& X,
                                     int free_center) {
  // Distinct row projections (one representative row each), minus locations
  // already occupied by a center other than `free_center`.
  std::vector<int> order(X.rows);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int c = compare_rows(X, a, b, tess.dims);
    if (c != 0) return c < 0;
    return a < b;
  });
  std::vector<int> avail;
  avail.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && compare_rows(X, order[i - 1], order[i], tess.dims) == 0) continue;
    int row = order[i];
    bool taken = false;
    for (int k = 0; k < tess.num_cells(); ++k) {
      if (k == free_center) continue;
      if (row_matches_coords(X, row, tess.dims, tess.center(k))) {
        taken = true;
        break;
      }
    }
    if (!taken) avail.push_back(row);
  }
  return avail;
}

std::optional<Proposal> propose_move(const Tessellation& tess, MoveKind kind,
                                     const Matrix& X, Rng& rng) {
  const int p = X.cols;
  const int d = tess.num_dims();
  const int b = tess.num_cells();

  Proposal pr;
  pr.kind = kind;

  switch (kind) {
    case MoveKind::AddCenter: {
      std::vector<int> avail = available_locations(tess, X, -1);
      if (avail.empty()) return std::nullopt;
      const int row = avail[draw_index(static_cast<int>(avail.size()), rng)];
      pr.candidate = tess;
      for (int dim : tess.dims) pr.candidate.centers.push_back(X(row, dim));
      // placeholder output copied from the cell currently owning the location;
      // the sampler redraws all outputs after the accept/reject decision
      pr.candidate.outputs.push_back(tess.outputs[assign_cell(tess, X.row(row))]);
      // forward: uniform over avail; reverse: remove one of b+1 centers
      pr.log_proposal_ratio =
          std::log(static_cast<double>(avail.size())) - std::log(static_cast<double>(b + 1));
      return pr;
    }

    case MoveKind::RemoveCenter: {
      if (b <= 1) return std::nullopt;
      const int k = draw_index(b, rng);
      pr.candidate = tess;
      pr.candidate.centers.erase(pr.candidate.centers.begin() + static_cast<std::ptrdiff_t>(k) * d,
                                 pr.candidate.centers.begin() + static_cast<std::ptrdiff_t>(k + 1) * d);
      pr.candidate.outputs.erase(pr.candidate.outputs.begin() + k);
      // reverse AddCenter must be able to re-propose the removed location
      std::vector<int> avail_rev = available_locations(pr.candidate, X, -1);
      bool removable = false;
      for (int row : avail_rev) {
        if (row_matches_coords(X, row, tess.dims, tess.center(k))) {
          removable = true;
          break;
        }
      }
      if (!removable) return std::nullopt;  // center is not a data projection
      pr.log_proposal_ratio =
          std::log(static_cast<double>(b)) - std::log(static_cast<double>(avail_rev.size()));
      return pr;
    }

    case MoveKind::MoveCenter: {
      const int k = draw_index(b, rng);
      std::vector<int> avail = available_locations(tess, X, k);
      if (avail.empty()) return std::nullopt;
      const int row = avail[draw_index(static_cast<int>(avail.size()), rng)];
      pr.candidate = tess;
      auto c = pr.candidate.center(k);
      for (int j = 0; j < d; ++j) c[j] = X(row, tess.dims[j]);
      pr.log_proposal_ratio = 0.0;  // symmetric: same availability set both ways
      return pr;
    }

    case MoveKind::AddCovariate: {
      if (d >= p) return std::nullopt;
      std::vector<int> unused = unused_covariates(tess, p);
      const int v = unused[draw_index(static_cast<int>(unused.size()), rng)];
      // each center gains a v-coordinate copied from a uniformly chosen row
      // among those projecting onto that center, so centers stay data-backed
      std::vector<double> new_vals(b);
      double log_fwd_resample = 0.0;
      for (int k = 0; k < b; ++k) {
        std::vector<int> rows = matching_rows(X, tess.dims, tess.center(k));
        if (rows.empty()) return std::nullopt;
        const int r = rows[draw_index(static_cast<int>(rows.size()), rng)];
        new_vals[k] = X(r, v);
        const int hits = count_matching_value(X, rows, v, new_vals[k]);
        log_fwd_resample += std::log(static_cast<double>(hits)) -
                            std::log(static_cast<double>(rows.size()));
      }
      pr.candidate = insert_dim(tess, v, new_vals);
      pr.log_proposal_ratio = std::log(static_cast<double>(p - d)) -
                              std::log(static_cast<double>(d + 1)) - log_fwd_resample;
      return pr;
    }

    case MoveKind::RemoveCovariate: {
      if (d <= 1) return std::nullopt;
      const int pos = draw_index(d, rng);
      const int u = tess.dims[pos];
      Tessellation cand = erase_dim(tess, pos);
      if (has_duplicate_centers(cand)) return std::nullopt;
      // reverse AddCovariate would re-draw the dropped u-coordinates
      double log_rev_resample = 0.0;
      for (int k = 0; k < b; ++k) {
        std::vector<int> rows = matching_rows(X, cand.dims, cand.center(k));
        if (rows.empty()) return std::nullopt;
        const int hits = count_matching_value(X, rows, u, tess.center(k)[pos]);
        if (hits == 0) return std::nullopt;  // original center not data-backed
        log_rev_resample += std::log(static_cast<double>(hits)) -
                            std::log(static_cast<double>(rows.size()));
      }
      pr.candidate = std::move(cand);
      pr.log_proposal_ratio = std::log(static_cast<double>(d)) -
                              std::log(static_cast<double>(p - d + 1)) + log_rev_resample;
      return pr;
    }

    case MoveKind::SwapCovariate: {
      if (d >= p) return std::nullopt;
      const int pos = draw_index(d, rng);
      const int u = tess.dims[pos];
      std::vector<int> unused = unused_covariates(tess, p);
      const int v = unused[draw_index(static_cast<int>(unused.size()), rng)];
      Tessellation reduced = erase_dim(tess, pos);
      std::vector<double> new_vals(b);
      double log_ratio = 0.0;  // pair choice probabilities cancel
      for (int k = 0; k < b; ++k) {
        std::vector<int> rows = matching_rows(X, reduced.dims, reduced.center(k));
        if (rows.empty()) return std::nullopt;
        const int r = rows[draw_index(static_cast<int>(rows.size()), rng)];
        new_vals[k] = X(r, v);
        const int hits_fwd = count_matching_value(X, rows, v, new_vals[k]);
        const int hits_rev = count_matching_value(X, rows, u, tess.center(k)[pos]);
        if (hits_rev == 0) return std::nullopt;
        log_ratio += std::log(static_cast<double>(hits_rev)) -
                     std::log(static_cast<double>(hits_fwd));
      }
      Tessellation cand = insert_dim(reduced, v, new_vals);
      if (has_duplicate_centers(cand)) return std::nullopt;  // single attempt, no redraw
      pr.candidate = std::move(cand);
      pr.log_proposal_ratio = log_ratio;
      return pr;
    }
  }
  return std::nullopt;
}

bool valid_tessellation(const Tessellation& tess, int p, bool positive_outputs) {
  const int d = tess.num_dims();
  const int b = tess.num_cells();
  if (d < 1 || b < 1) return false;
  if (tess.centers.size() != static_cast<std::size_t>(b) * d) return false;
  for (int j = 0; j < d; ++j) {
    if (tess.dims[j] < 0 || tess.dims[j] >= p) return false;
    if (j > 0 && tess.dims[j] <= tess.dims[j - 1]) return false;
  }
  for (double c : tess.centers) {
    if (!(c >= 0.0 && c <= 1.0)) return false;
  }
  for (double o : tess.outputs) {
    if (!std::isfinite(o)) return false;
    if (positive_outputs && !(o > 0.0)) return false;
  }
  return !has_duplicate_centers(tess);
}

}  // namespace addivortes
