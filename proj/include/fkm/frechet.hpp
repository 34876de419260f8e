#ifndef FKM_FRECHET_HPP
#define FKM_FRECHET_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "fkm/core.hpp"

namespace fkm {

inline constexpr std::uint64_t kDefaultTraversalCap = 10'000'000;

/**
 * Discrete Fréchet distance between two 1-D series.
 *
 * Standard O(|a|·|b|) dynamic program over the coupling grid, keeping two
 * rolling rows of length min(|a|, |b|).
 */
double discrete_frechet(std::span<const double> a, std::span<const double> b);

inline double discrete_frechet(const TimeSeries& a, const TimeSeries& b) {
    return discrete_frechet(a.values(), b.values());
}

/// Number of traversals of an m x l grid (Delannoy number), saturating at UINT64_MAX.
std::uint64_t count_traversals(std::size_t m, std::size_t l);

/**
 * Every traversal from (0,0) to (m-1,l-1), each once, in lexicographic
 * order of the pair sequence. Throws CapExceeded if there are more than cap.
 */
std::vector<Traversal> enumerate_traversals(std::size_t m, std::size_t l,
                                            std::uint64_t cap = kDefaultTraversalCap);

/// Bottleneck cost of one traversal: max over matched pairs of |x_i - y_j|.
double traversal_cost(const TimeSeries& x, const TimeSeries& y, const Traversal& t);

/// Fréchet distance by exhaustive minimisation over all traversals. Test oracle.
double brute_force_frechet(const TimeSeries& x, const TimeSeries& y,
                           std::uint64_t cap = kDefaultTraversalCap);

}  // namespace fkm

#endif  // FKM_FRECHET_HPP
