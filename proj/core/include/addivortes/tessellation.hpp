// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef ADDIVORTES_TESSELLATION_HPP
#define ADDIVORTES_TESSELLATION_HPP

#include <optional>
#include <span>
#include <vector>

#include "addivortes/math_util.hpp"
#include "addivortes/matrix.hpp"

namespace addivortes {

enum class MoveKind : int {
  AddCenter = 0,
  RemoveCenter = 1,
  AddCovariate = 2,
  RemoveCovariate = 3,
  SwapCovariate = 4,
  MoveCenter = 5,
};
inline constexpr int kNumMoveKinds = 6;
inline constexpr double kDefaultMoveProbs[kNumMoveKinds] = {0.2, 0.2, 0.2, 0.2, 0.1, 0.1};

const char* move_kind_name(MoveKind kind);

/// One Voronoi tessellation over a subspace of the covariates.
///
/// Cell k owns every point whose projection onto `dims` is nearest (Euclidean)
/// to centers[k]; distance ties go to the lowest center index.  `outputs[k]`
/// is the scalar attached to cell k: an additive mean contribution or a
/// strictly positive multiplicative variance factor, depending on the
/// ensemble the tessellation belongs to.
struct Tessellation {
  std::vector<int> dims;        // strictly increasing covariate indices
  std::vector<double> centers;  // flat, num_cells() x num_dims()
  std::vector<double> outputs;  // one per cell

  int num_cells() const { return static_cast<int>(outputs.size()); }
  int num_dims() const { return static_cast<int>(dims.size()); }

  std::span<const double> center(int k) const {
    return {centers.data() + static_cast<std::size_t>(k) * dims.size(), dims.size()};
  }
  std::span<double> center(int k) {
    return {centers.data() + static_cast<std::size_t>(k) * dims.size(), dims.size()};
  }
};

/// Nearest-center cell index for a full covariate vector (length >= max dim + 1).
int assign_cell(const Tessellation& tess, std::span<const double> x);

/// outputs[assign_cell(tess, x)].
double evaluate(const Tessellation& tess, std::span<const double> x);

/// Cell index per row of X; `cells` is resized to X.rows.
void assign_all(const Tessellation& tess, const Matrix& X, std::vector<int>& cells);

/// Number of rows of X mapping to each cell; sums to X.rows.
std::vector<int> cell_counts(const Tessellation& tess, const Matrix& X);

struct Proposal {
  Tessellation candidate;
  double log_proposal_ratio = 0.0;  // log q(old|new) - log q(new|old)
  MoveKind kind = MoveKind::MoveCenter;
};

/// Proposes a tessellation differing from `tess` by exactly one structure move.
///
/// Center locations always come from training-row projections, so every center
/// of a proposal is the projection of at least one row of X.  Returns nullopt
/// when the move is structurally impossible (callers treat that as an
/// auto-rejected MH step).
std::optional<Proposal> propose_move(const Tessellation& tess, MoveKind kind,
                                     const Matrix& X, Rng& rng);

/// Structural sanity check: shapes, ordered dims, coordinates in [0,1],
/// positive outputs when required, no duplicate centers.
bool valid_tessellation(const Tessellation& tess, int p, bool positive_outputs);

/// Row indices of X whose projection onto `tess.dims` is a distinct location
/// not occupied by a center (one representative row per location).  Pass
/// `free_center` >= 0 to leave that center's own location available.
/// Exposed for tests; propose_move uses it internally.
std::vector<int> available_locations(const Tessellation& tess, const Matrix& X,
                                     int free_center);

}  // namespace addivortes

#endif
