#ifndef FKM_PROFILE_REDUCTION_HPP
#define FKM_PROFILE_REDUCTION_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fkm/core.hpp"
#include "fkm/frechet.hpp"

namespace fkm {

inline constexpr std::size_t kDefaultReductionCap = 12;

/// Profile machinery lifts query complexities 1 and 2 to 3.
inline std::size_t effective_query_complexity(std::size_t l) { return l < 3 ? 3 : l; }

/// Result of value-domain quantisation.
struct QuantizedSeries {
    TimeSeries series;
    double grid_width = 0.0;    // eps * source_error, 0 when nothing was rounded
    double source_error = 0.0;  // minimum l-simplification error of the source
};

/**
 * Rounds every value of x up to the next multiple of eps*Delta, where Delta
 * is the minimum-error l-simplification error of x. Distances to every
 * complexity-l series move by at most a factor (1 +- eps). When Delta is 0
 * the series is returned unchanged.
 */
QuantizedSeries reduce_value_domain(const TimeSeries& x, std::size_t l, double eps);

/// Ranks of the minimum and maximum of one traversal sector (1-based).
struct RankPair {
    Rank min = 0;
    Rank max = 0;

    auto operator<=>(const RankPair&) const = default;
};

/// l-profile: one RankPair per query entry.
struct Profile {
    std::vector<RankPair> entries;

    auto operator<=>(const Profile&) const = default;
};

struct ProfileSet {
    std::set<Profile> profiles;
    Rank alphabet_size = 0;
    std::size_t query_complexity = 0;

    bool operator==(const ProfileSet&) const = default;
};

/// Value sets S_1..S_l matched to each query entry by t (each sorted, distinct).
std::vector<std::vector<double>> traversal_sectors(const TimeSeries& x, std::size_t l,
                                                   const Traversal& t);

/**
 * Decides whether (p_values[h].first, p_values[h].second) can be the
 * (min, max) of sector h for every h under some traversal of x with a
 * length-l query, l = p_values.size().
 *
 * Runs the three boolean tables feas / hmin / hmax over (sector, prefix
 * length); O(|x| * l). A sector may start on the last element of the
 * previous one (horizontal step) or on the element after it.
 */
bool assignment_dp(const TimeSeries& x, std::span<const std::pair<double, double>> p_values);

/// Same decision on a rank sequence with rank-valued profile entries.
bool assignment_dp(std::span<const Rank> ranks, std::span<const RankPair> profile);

/// Set of all l-profiles of x, by enumerating candidate profiles and checking each.
ProfileSet profile_set(const TimeSeries& x, std::size_t l);
ProfileSet profile_set(const RankSequence& rs, std::size_t l);

/// Set of all l-profiles of x read directly off every traversal. Test oracle.
ProfileSet brute_profile_set(const TimeSeries& x, std::size_t l,
                             std::uint64_t cap = kDefaultTraversalCap);

/**
 * Memo of reduced rank sequences keyed by (source rank sequence, l).
 *
 * Safe for concurrent use. Entries are never modified after insertion;
 * re-inserting a key keeps the first value (values are deterministic).
 *
 * Text format, one entry per line:
 *     r,ell:k1 k2 ... kn -> v1 v2 ... vt
 */
class ReductionCache {
public:
    std::optional<RankSequence> find(const RankSequence& key, std::size_t ell) const;
    void insert(const RankSequence& key, std::size_t ell, const RankSequence& value);
    std::size_t size() const;

    /// Reads entries, skipping malformed lines. Returns the number of lines skipped.
    std::size_t load(std::istream& in, std::ostream& warnings);
    void save(std::ostream& out) const;

private:
    using Key = std::tuple<Rank, std::size_t, std::vector<Rank>>;
    mutable std::shared_mutex mutex_;
    std::map<Key, std::vector<Rank>> entries_;
};

struct ReductionResult {
    TimeSeries series;
    std::size_t source_complexity = 0;
    bool cache_hit = false;
    bool cap_exceeded = false;  // series is the canonical quantised input, not a shortest one
};

/**
 * Replaces x by a short series whose distance to every complexity-l series
 * is within a factor (1 +- eps) of x's.
 *
 * x is quantised, run-collapsed, and its rank sequence is replaced by the
 * shortest (then lexicographically smallest) rank sequence with the same
 * profile set for l_eff = max(l, 3), searching lengths up to `cap`. If no
 * such sequence is found within the cap the canonical quantised series is
 * returned with cap_exceeded set.
 */
ReductionResult complexity_reduction(const TimeSeries& x, std::size_t l, double eps,
                                     std::size_t cap, ReductionCache& cache);

/// complexity_reduction over a dataset sharing one cache; output order matches input.
std::vector<ReductionResult> reduce_dataset(std::span<const TimeSeries> data, std::size_t l,
                                            double eps, std::size_t cap, ReductionCache& cache,
                                            unsigned threads = 1);

/**
 * Shortest, then lexicographically smallest, run-free sequence over the
 * alphabet of `target` with the same l-profile set, of length at most
 * max_length. Requires l >= 3 (equal profile sets then force the same
 * alphabet). Breadth-first over prefixes, merging prefixes whose sets of
 * partial sector assignments coincide and discarding prefixes that already
 * realise a profile prefix the target lacks. Returns nullopt if none is
 * found, or if more than max_states distinct prefix states are visited.
 */
std::optional<RankSequence> shortest_equivalent(const RankSequence& target, std::size_t l,
                                                std::size_t max_length,
                                                std::size_t max_states = 4'000'000);

/**
 * Same answer by plain enumeration: lengths r, r+1, ..., and within each
 * length all surjective run-free sequences in lexicographic order, compared
 * through profile_set. Exponential; used as an oracle on small inputs.
 */
std::optional<RankSequence> shortest_equivalent_by_enumeration(const RankSequence& target,
                                                               std::size_t l,
                                                               std::size_t max_length);

}  // namespace fkm

#endif  // FKM_PROFILE_REDUCTION_HPP
