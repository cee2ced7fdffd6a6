#pragma once

#include <cstddef>
#include <cstdint>

#include "credence/attraction.hpp"

namespace credence {

struct OracleEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_sims = 0;
};

// Monte Carlo estimate of the share of consumer rounds `role` attracts, simulating
// individual consumers through the switching process the payoff tables describe:
//  * nobody switches when all three experts make the same choice; with nobody investing,
//    consumers of the high-ability expert stay while consumers of an imitator stay for
//    t of the horizon and then probe the not-yet-visited non-investors in uniform order;
//  * with a single investor, alpha-type consumers move to it for the whole horizon; other
//    consumers probe non-investors (an imitator holds them for t, the high-ability expert
//    keeps them) and fall back to the investor once every non-investor was tried;
//  * with two investors, everybody visits the remaining non-investor; an imitator keeps
//    them for t, after which they split evenly between the investors.
// Time is continuous, so the estimate converges to the exact expectation of this process.
OracleEstimate mc_attraction_oracle(const AttractionScenario& scenario, Role role, const InvestmentProfile& profile,
                                    const RegionParams& rp, std::size_t n_sims, std::uint64_t seed);

}  // namespace credence
