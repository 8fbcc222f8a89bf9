#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ghzsim/angle.hpp"
#include "ghzsim/dyadic.hpp"

namespace ghzsim {

/// Ground-truth probabilities are delivered as dyadics at this scale; the
/// working precision behind them keeps the total error far below 2^-60.
inline constexpr unsigned kOracleScale = 80;

/// Cap on full 2^n outcome enumeration.
inline constexpr int kMaxEnumParties = 16;

/// Probability table over all outcome vectors of n parties. Entry index
/// has bit j set iff x_j = -1 (index 0 is the all +1 outcome).
struct OutcomeDistribution {
    int n = 0;
    std::vector<Dyadic> table;
};

uint32_t outcome_index(const std::vector<int>& x);
std::vector<int> outcome_from_index(int n, uint32_t index);

/// The two product amplitudes (a1, a2) of the outcome decomposition:
/// a1 = prod cos(h_j), a2 = prod -sin(h_j) with h_j = (phi_j - (pi/2)x_j)/2.
std::pair<Dyadic, Dyadic> amplitudes(const MeasurementSet& m, const std::vector<int>& x);

struct SubDistributions {
    Dyadic p1;  // (a1+a2)^2 / 2
    Dyadic p2;  // (a1-a2)^2 / 2
    Dyadic q1;  // a1^2
    Dyadic q2;  // a2^2
};
SubDistributions sub_distributions(const MeasurementSet& m, const std::vector<int>& x);

/// Outcome probability via the convex decomposition
/// p(x) = cos^2(theta/2) p1(x) + sin^2(theta/2) p2(x), theta = sum theta_j.
Dyadic ghz_prob(const MeasurementSet& m, const std::vector<int>& x);

/// The same probability by the independent density-matrix trace route:
/// p(x) = (f1 + f2 + f3 + f4)/2 with f2 + f3 = 2 cos(sum theta_j) *
/// prod(-sin h_j cos h_j).
Dyadic trace_prob(const MeasurementSet& m, const std::vector<int>& x);

OutcomeDistribution full_distribution(const MeasurementSet& m);  // TooLarge past the cap

/// E[prod x_j] = cos(sum theta_j) for equatorial sets (all phi_j = 0).
Dyadic equatorial_correlation(const MeasurementSet& m);  // NotEquatorial otherwise

/// Shannon entropy in bits; at most n for an n-party table.
double entropy_bits(const OutcomeDistribution& d);

}  // namespace ghzsim
