#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "equidivide/cake_model.hpp"
#include "equidivide/instance.hpp"
#include "equidivide/rounding.hpp"

namespace equidivide {

// Vertex of a subdivided simplex: exact barycentric coordinates coords/den.
struct SimplexVertex {
  std::vector<std::int64_t> coords;
  std::int64_t den = 1;
  int dim = 0;    // dimension of the face this vertex is the barycenter of
  int owner = 0;
  int label = -1;
};

// Iterated barycentric subdivision of the standard (n-1)-simplex. Every
// elementary simplex has n vertices with pairwise distinct owners.
struct Triangulation {
  static constexpr std::size_t kMaxSimplices = 2'000'000;

  int n = 0;
  int depth = 0;
  std::vector<SimplexVertex> vertices;
  std::vector<int> cells;  // n vertex indices per elementary simplex

  std::size_t cell_count() const { return n == 0 ? 0 : cells.size() / n; }
  std::span<const int> cell(std::size_t c) const { return {cells.data() + c * n, static_cast<std::size_t>(n)}; }
};

// 2 <= n <= 4, depth >= 1. A vertex centering a face of dimension d is
// owned by agent (d + owner_offset) mod n.
Triangulation barycentric_triangulate(int n, int depth, int owner_offset = -1);

// Index of the piece the owner likes best in the division whose piece
// lengths are the vertex coordinates. Ties prefer a nonempty piece; throws
// PreconditionError when only empty pieces reach the maximum.
int sperner_label(const SimplexVertex& v, std::span<const CakeValuation> fs);
// Same on real piece lengths y.
int sperner_label(std::span<const double> y, int owner, std::span<const CakeValuation> fs);

struct EfCakeResult {
  CakeDivision division;  // division.owner(k) receives piece k
  double max_envy = 0.0;
  int rounds_completed = 0;
  bool refinement_stalled = false;
  double resolution = 0.0;  // largest coordinate spread over the final simplex
  std::vector<std::vector<double>> simplex;  // final corners, as piece lengths
};

// max over i, k of f_i(piece k) - f_i(own piece).
double max_envy(std::span<const CakeValuation> fs, const CakeDivision& division);

// Finds a fully-labeled cell of the depth-`depth` subdivision, then zooms
// into it `refine_rounds` times. A refinement round that finds no fully
// labeled cell under any owner rotation stops the zoom and sets
// refinement_stalled.
EfCakeResult approx_ef_cake(std::span<const CakeValuation> fs, int depth, int refine_rounds, int threads = 1);

// Smallest positive v_i(S) - v_i(T) over agents whose valuation is not
// identically zero; nothing when every agent values everything at zero.
std::optional<double> value_gap(const Instance& inst);

struct Ef3Result {
  Allocation allocation;
  double delta = 0.0;
  double residual_envy = 0.0;
  bool condition_met = false;  // residual_envy < delta / 2
  bool degenerate = false;
  std::vector<RoundingWitness> witnesses;
  std::vector<std::pair<int, int>> unresolved;  // ordered pairs without a witness
  std::optional<EfCakeResult> cake;
};

// Shifts every nonempty bundle's value by delta/2, solves the cake for an
// approximately envy-free division and rounds it. When the residual cake
// envy is below delta/2 every ordered pair must have a budget-3 witness.
Ef3Result constructive_ef3(const Instance& inst, int depth, int refine_rounds, int threads = 1);

}  // namespace equidivide
