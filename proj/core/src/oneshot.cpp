#include "credence/oneshot.hpp"

#include <boost/rational.hpp>
#include <cmath>

#include "credence/market.hpp"

namespace credence {

namespace {

using Q = boost::rational<std::int64_t>;

// Coefficients (c0, c1, c2) of the symmetric difference E_inv(p,p) - E_ninv(p,p).
std::array<Q, 3> symmetric_poly(const OneShotMatrix& m) {
  std::array<Q, 3> c{Q(0), Q(0), Q(0)};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const Q cell = Q(m.invest_num[a][b], m.invest_den[a][b]) - Q(m.ninv_num[a][b], m.ninv_den[a][b]);
      // weight of (a, b): (a ? p : 1 - p)(b ? p : 1 - p)
      const int ones = a + b;
      if (ones == 2) {
        c[2] += cell;
      } else if (ones == 1) {
        c[1] += cell;
        c[2] -= cell;
      } else {
        c[0] += cell;
        c[1] -= 2 * cell;
        c[2] += cell;
      }
    }
  }
  return c;
}

double eval(const std::array<Q, 3>& c, double p) {
  return boost::rational_cast<double>(c[0]) + p * (boost::rational_cast<double>(c[1]) +
                                                   p * boost::rational_cast<double>(c[2]));
}

}  // namespace

OneShotMatrix default_oneshot_matrix() {
  OneShotMatrix m;
  m.invest_num = {{{1, 0}, {0, 1}}};
  m.invest_den = {{{1, 1}, {1, 3}}};
  m.ninv_num = {{{1, 0}, {0, 1}}};
  m.ninv_den = {{{3, 1}, {1, 1}}};
  return m;
}

double oneshot_payoff_diff(double p2, double p3) { return 1.0 - (p2 + p3); }

double oneshot_matrix_diff(const OneShotMatrix& m, double p2, double p3) {
  double out = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double w = (a ? p2 : 1.0 - p2) * (b ? p3 : 1.0 - p3);
      const double cell = static_cast<double>(m.invest_num[a][b]) / static_cast<double>(m.invest_den[a][b]) -
                          static_cast<double>(m.ninv_num[a][b]) / static_cast<double>(m.ninv_den[a][b]);
      out += w * cell;
    }
  }
  return out;
}

OneShotSolution oneshot_mixed_solver(const OneShotMatrix& m) {
  const auto c = symmetric_poly(m);
  OneShotSolution out;
  const Q zero(0);
  const Q f0 = c[0];
  const Q f1 = c[0] + c[1] + c[2];
  if (c[1] == zero && c[2] == zero) {
    if (c[0] == zero) {
      out.kind = OneShotKind::Degenerate;
      out.p = 0.5;
      out.exact = true;
      return out;
    }
    out.kind = c[0] > zero ? OneShotKind::InvestDominant : OneShotKind::NotInvestDominant;
    out.p = c[0] > zero ? 1.0 : 0.0;
    out.exact = true;
    out.p_num = c[0] > zero ? 1 : 0;
    out.p_den = 1;
    return out;
  }
  if (c[2] == zero) {
    const Q root = -c[0] / c[1];
    if (root > zero && root < Q(1)) {
      out.p = boost::rational_cast<double>(root);
      out.exact = true;
      out.p_num = root.numerator();
      out.p_den = root.denominator();
      return out;
    }
  } else {
    const double a = boost::rational_cast<double>(c[2]);
    const double b = boost::rational_cast<double>(c[1]);
    const double k = boost::rational_cast<double>(c[0]);
    const double disc = b * b - 4.0 * a * k;
    if (disc >= 0.0) {
      for (double sign : {-1.0, 1.0}) {
        const double root = (-b + sign * std::sqrt(disc)) / (2.0 * a);
        if (root > 0.0 && root < 1.0) {
          out.p = root;
          out.exact = false;
          return out;
        }
      }
    }
  }
  // No interior indifference: one action is weakly better everywhere on [0,1].
  const bool invest = eval(c, 0.5) > 0.0 || (f0 >= zero && f1 >= zero && (f0 > zero || f1 > zero));
  out.kind = invest ? OneShotKind::InvestDominant : OneShotKind::NotInvestDominant;
  out.p = invest ? 1.0 : 0.0;
  out.exact = true;
  out.p_num = invest ? 1 : 0;
  out.p_den = 1;
  return out;
}

double oneshot_pooled_income(const MarketParams& params) {
  const double high = expected_consumer_income(MenuKind::Pe, IncomeMode::TransparentHigh, false, params);
  const double low = expected_consumer_income(MenuKind::Pe, IncomeMode::TransparentLow, false, params);
  return 0.5 * high + 0.5 * low;
}

}  // namespace credence
