#pragma once

#include <array>
#include <cstdint>

#include "credence/params.hpp"

namespace credence {

// Share of consumers attracted by one expert in the single post-shock round, indexed by
// [other expert 2 invests][other expert 3 invests] with 1 = Invest, 0 = NotInvest.
struct OneShotMatrix {
  std::array<std::array<std::int64_t, 2>, 2> invest_num{};
  std::array<std::array<std::int64_t, 2>, 2> invest_den{};
  std::array<std::array<std::int64_t, 2>, 2> ninv_num{};
  std::array<std::array<std::int64_t, 2>, 2> ninv_den{};
};

OneShotMatrix default_oneshot_matrix();

// Difference of expected attraction between investing and not investing, in the simplified
// units of the one-shot derivation: 1 - (p2 + p3).
double oneshot_payoff_diff(double p2, double p3);

// Expected attraction difference from an explicit matrix.
double oneshot_matrix_diff(const OneShotMatrix& m, double p2, double p3);

enum class OneShotKind { Mixed, InvestDominant, NotInvestDominant, Degenerate };

struct OneShotSolution {
  OneShotKind kind = OneShotKind::Mixed;
  double p = 0.5;
  bool exact = false;          // p is an exact rational
  std::int64_t p_num = 1;      // valid when exact
  std::int64_t p_den = 2;
};

// Symmetric investment probability that leaves every expert indifferent, or the dominance corner.
OneShotSolution oneshot_mixed_solver(const OneShotMatrix& m = default_oneshot_matrix());

// Consumer income from a non-investing expert when a high- and a low-ability expert pool.
double oneshot_pooled_income(const MarketParams& params);

}  // namespace credence
