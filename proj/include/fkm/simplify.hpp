#ifndef FKM_SIMPLIFY_HPP
#define FKM_SIMPLIFY_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "fkm/core.hpp"

namespace fkm {

/// Inclusive 0-based index interval [first, last].
struct IndexRange {
    std::size_t first = 0;
    std::size_t last = 0;

    bool operator==(const IndexRange&) const = default;
};

/**
 * Minimum-error l-simplification of a series.
 *
 * `series` has exactly l entries; `blocks` partitions the source indices
 * into at most l contiguous runs, block b being matched to series entry
 * (l - blocks.size() + b). Leading entries beyond the block count repeat
 * the first centre.
 */
struct Simplification {
    TimeSeries series;
    double error = 0.0;
    std::vector<IndexRange> blocks;
};

/**
 * Decides whether some y in R^l has d_dF(x, y) <= delta.
 *
 * Greedily cuts x into maximal blocks whose value range is at most
 * 2*delta and succeeds iff at most l blocks are needed. Returns the blocks
 * on success.
 */
std::optional<std::vector<IndexRange>> simplify_decide(const TimeSeries& x, std::size_t l,
                                                       double delta);

/// Optimal complexity-l approximation of x under the discrete Fréchet distance.
Simplification min_error_simplification(const TimeSeries& x, std::size_t l);

}  // namespace fkm

#endif  // FKM_SIMPLIFY_HPP
