#pragma once

#include <optional>
#include <vector>

#include "equidivide/cake_model.hpp"
#include "equidivide/instance.hpp"

namespace equidivide {

// Per-agent record of the rounding step, indexed by agent.
struct RoundingTrace {
  std::vector<Coverage> coverage;
  std::vector<SubsetId> best;  // A*_i
};

// Rounds a contiguous division of the cake built from `inst` to an item
// allocation. Pieces are processed left to right; piece k goes to agent
// division.owner(k), who evaluates candidates with its own valuation.
Allocation cake_rounding(const Instance& inst, const CakeDivision& division, RoundingTrace* trace = nullptr);

// Limits on |A_i xor A'_i| + |A_j xor A'_j| and on each side separately.
struct WitnessBudget {
  int total = 3;
  int max_i = 3;
  int max_j = 3;
};

struct RoundingWitness {
  int i = 0;
  int j = 0;
  SubsetId ai;
  SubsetId aj;
  int moves_i = 0;
  int moves_j = 0;
  int budget() const { return moves_i + moves_j; }
};

// Slack on the witness inequality, absorbing floating-point noise.
inline constexpr double kWitnessTolerance = 1e-9;

// v_i(A'_i) + alpha >= v_i(A'_j) within the budget. The witness with the
// fewest total moves is returned, ties going to fewer moves on A_i.
std::optional<RoundingWitness> find_efk_witness(const SetFunction& vi, const Allocation& a, int i, int j,
                                                int k, double alpha = 0.0);
std::optional<RoundingWitness> find_efk_witness(const SetFunction& vi, const Allocation& a, int i, int j,
                                                const WitnessBudget& budget, double alpha = 0.0);

// v_i(A'_i) + alpha >= v_j(A'_j) within the budget.
std::optional<RoundingWitness> find_eqk_witness(const SetFunction& vi, const SetFunction& vj,
                                                const Allocation& a, int i, int j, int k, double alpha = 0.0);
std::optional<RoundingWitness> find_eqk_witness(const SetFunction& vi, const SetFunction& vj,
                                                const Allocation& a, int i, int j,
                                                const WitnessBudget& budget, double alpha = 0.0);

}  // namespace equidivide
