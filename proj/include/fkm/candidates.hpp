#ifndef FKM_CANDIDATES_HPP
#define FKM_CANDIDATES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fkm/core.hpp"

namespace fkm {

/// Approximation factor of estimate_opt_cost: Delta* <= Delta <= kEstimateFactor * Delta*.
inline constexpr double kEstimateFactor = 15.0;

inline constexpr std::size_t kDefaultCandidateCap = 20'000'000;

struct CandidateSet {
    std::vector<TimeSeries> centers;  // each of complexity l, deduplicated
    std::vector<double> radii_used;
    double delta_estimate = 0.0;
};

/**
 * Grid candidates around a simplification x_tilde (|x_tilde| = l).
 *
 * For each traversal T of two length-l series and each j, let i_j be the
 * first index matched to j; the ball contains the product over j of the
 * multiples of eps*r inside [x_tilde[i_j] - (2+eps)r, x_tilde[i_j] + (2+eps)r].
 * Any y with d_dF(x, y) <= r, where x_tilde simplifies x, has a member
 * within eps*r. Output is sorted and duplicate-free.
 */
std::vector<TimeSeries> candidate_ball(const TimeSeries& x_tilde, double r, double eps,
                                       std::size_t cap = kDefaultCandidateCap);

/**
 * Constant-factor estimate of the optimal (k,l)-median cost of `clients`.
 *
 * Single-swap local search over the clients' minimum-error
 * l-simplifications. That facility set contains a solution of cost at most
 * 3*Delta*, and local search is within 5 of its best, so the result lies in
 * [Delta*, 15*Delta*]. Zero exactly when the optimum is zero.
 */
double estimate_opt_cost(std::span<const TimeSeries> clients, std::size_t k, std::size_t l);

/**
 * Candidate centre set containing k centres of cost at most (1 + 3 eps) Delta*.
 *
 * With Delta = estimate_opt_cost, uses radii 2^i * Delta / (15 n) for
 * i = 0 .. ceil(log2(15 n)) + 1 and unions candidate_ball over every client
 * and radius, plus the simplifications themselves. When Delta is 0 the
 * simplifications alone are returned.
 */
CandidateSet candidate_centers(std::span<const TimeSeries> clients, std::size_t k, std::size_t l,
                               double eps, std::size_t cap = kDefaultCandidateCap,
                               unsigned threads = 1);

}  // namespace fkm

#endif  // FKM_CANDIDATES_HPP
