#ifndef FKM_CLUSTER_HPP
#define FKM_CLUSTER_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fkm/core.hpp"

namespace fkm {

inline constexpr std::uint64_t kDefaultExhaustiveCap = 1'000'000;

/// Improvement threshold of local search: a swap must lower the cost below (1 - this) * cost.
inline constexpr double kLocalSearchTolerance = 1e-6;

enum class SolverKind { exhaustive, local_search };

std::string_view to_string(SolverKind kind);

struct ClusterSolution {
    std::vector<TimeSeries> centers;
    std::vector<std::size_t> assignment;  // per client: index into centers, ties to the lowest
    double cost = 0.0;
    SolverKind solver_used = SolverKind::exhaustive;
};

/// Client x facility distance table (row-major by client).
class DistanceMatrix {
public:
    DistanceMatrix(std::span<const TimeSeries> clients, std::span<const TimeSeries> facilities,
                   unsigned threads = 1);

    std::size_t clients() const noexcept { return clients_; }
    std::size_t facilities() const noexcept { return facilities_; }
    double operator()(std::size_t c, std::size_t f) const noexcept {
        return data_[c * facilities_ + f];
    }

private:
    std::size_t clients_;
    std::size_t facilities_;
    std::vector<double> data_;
};

/// Facility indices of a solution and its cost on the matrix's clients.
struct FacilityChoice {
    std::vector<std::size_t> facilities;
    double cost = 0.0;
};

/// Cost of serving every client from its nearest chosen facility.
double choice_cost(const DistanceMatrix& d, std::span<const std::size_t> chosen);

/**
 * Optimal k facilities.
 *
 * When C(|F|, k) <= cap, every k-subset is scored in lexicographic order and
 * the first minimum wins. Otherwise, for at most 20 clients and
 * |F| * 2^n within the work budget, the optimum is found by dynamic
 * programming over client groups (best single facility per group, then
 * best split into at most k groups); ties there go to the lowest facility
 * per group. Throws CapExceeded when neither route fits.
 */
FacilityChoice exhaustive_choice(const DistanceMatrix& d, std::size_t k,
                                 std::uint64_t cap = kDefaultExhaustiveCap);

/**
 * Single-swap local search. Starts from a seeded facility and adds the
 * best facility greedily up to k, then repeatedly applies the best single
 * swap while it lowers the cost by more than kLocalSearchTolerance.
 * Deterministic for a given seed.
 */
FacilityChoice local_search_choice(const DistanceMatrix& d, std::size_t k, std::uint64_t seed);

/// Sum over clients of the distance to the nearest center. Throws on empty centers.
double kmedian_cost(std::span<const TimeSeries> clients, std::span<const TimeSeries> centers);

/// Assigns each client to its nearest center (lowest index on ties) and sums the cost.
ClusterSolution make_solution(std::span<const TimeSeries> clients, std::vector<TimeSeries> centers,
                              SolverKind solver);

ClusterSolution exhaustive_kmedian(std::span<const TimeSeries> clients,
                                   std::span<const TimeSeries> facilities, std::size_t k,
                                   std::uint64_t cap = kDefaultExhaustiveCap);

ClusterSolution local_search_kmedian(std::span<const TimeSeries> clients,
                                     std::span<const TimeSeries> facilities, std::size_t k,
                                     std::uint64_t seed);

}  // namespace fkm

#endif  // FKM_CLUSTER_HPP
