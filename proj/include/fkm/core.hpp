#ifndef FKM_CORE_HPP
#define FKM_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fkm {

/// Raised when an enumeration or search would exceed a configured limit.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * A one-dimensional time series: a non-empty sequence of finite reals.
 *
 * The invariants are checked at construction, so every TimeSeries that
 * exists is valid. Equality is exact element-wise comparison.
 */
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> values);
    TimeSeries(std::initializer_list<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double front() const noexcept { return values_.front(); }
    double back() const noexcept { return values_.back(); }

    std::span<const double> values() const noexcept { return values_; }
    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    bool operator==(const TimeSeries&) const = default;

private:
    std::vector<double> values_;
};

using Rank = std::uint32_t;

/// Sequence over the alphabet {1,...,alphabet_size}.
struct RankSequence {
    std::vector<Rank> ranks;
    Rank alphabet_size = 0;

    std::size_t size() const noexcept { return ranks.size(); }
    bool is_surjective() const;
    bool operator==(const RankSequence&) const = default;
    auto operator<=>(const RankSequence&) const = default;
};

/// 0-based index pair (i into the first series, j into the second).
using IndexPair = std::pair<std::size_t, std::size_t>;

/**
 * Monotone alignment of a length-m series with a length-l series.
 * Indices are 0-based: it runs from (0,0) to (m-1,l-1).
 */
struct Traversal {
    std::vector<IndexPair> pairs;

    bool operator==(const Traversal&) const = default;
};

/// True iff t is a valid traversal for complexities (m, l).
bool is_valid_traversal(const Traversal& t, std::size_t m, std::size_t l);

/// Collapses maximal runs of equal consecutive values to a single value.
TimeSeries canonicalize(const TimeSeries& x);

/// Sorted distinct values of x.
std::vector<double> distinct_values(const TimeSeries& x);

/// Replaces each value by its 1-based rank among the distinct values of x.
RankSequence rank_sequence(const TimeSeries& x);

/// Inverse of rank_sequence: output[i] = sorted_values[ranks[i] - 1].
TimeSeries apply_values(const RankSequence& rs, std::span<const double> sorted_values);

/// Collapses runs of equal consecutive symbols.
RankSequence collapse_runs(const RankSequence& rs);

}  // namespace fkm

#endif  // FKM_CORE_HPP
