#include "fkm/cluster.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "fkm/frechet.hpp"
#include "fkm/parallel.hpp"
#include "fkm/rng.hpp"

namespace fkm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxPartitionClients = 20;
constexpr std::uint64_t kPartitionWorkBudget = 2'000'000'000;

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k, std::uint64_t limit) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    uint128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > limit) return limit + 1;
    }
    return static_cast<std::uint64_t>(acc);
}

void check_k(const DistanceMatrix& d, std::size_t k) {
    if (k == 0) throw std::invalid_argument("k must be positive");
    if (k > d.facilities()) {
        throw std::invalid_argument("k exceeds the number of candidate centers");
    }
}

FacilityChoice enumerate_subsets(const DistanceMatrix& d, std::size_t k) {
    const std::size_t nf = d.facilities();
    std::vector<std::size_t> subset(k);
    for (std::size_t i = 0; i < k; ++i) subset[i] = i;
    FacilityChoice best{subset, kInf};
    for (;;) {
        const double cost = choice_cost(d, subset);
        if (cost < best.cost) best = {subset, cost};
        std::size_t pos = k;
        while (pos-- > 0 && subset[pos] == nf - k + pos) {
        }
        if (pos == static_cast<std::size_t>(-1)) break;
        ++subset[pos];
        for (std::size_t i = pos + 1; i < k; ++i) subset[i] = subset[i - 1] + 1;
    }
    return best;
}

FacilityChoice partition_dp(const DistanceMatrix& d, std::size_t k) {
    const std::size_t n = d.clients();
    const std::size_t nf = d.facilities();
    const std::size_t full = (std::size_t{1} << n) - 1;

    // Best single facility for every client group.
    std::vector<double> group_cost(full + 1, kInf);
    std::vector<std::size_t> group_facility(full + 1, 0);
    std::vector<double> sums(full + 1, 0.0);
    group_cost[0] = 0.0;
    for (std::size_t f = 0; f < nf; ++f) {
        for (std::size_t mask = 1; mask <= full; ++mask) {
            const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
            sums[mask] = sums[mask & (mask - 1)] + d(low, f);
            if (sums[mask] < group_cost[mask]) {
                group_cost[mask] = sums[mask];
                group_facility[mask] = f;
            }
        }
    }

    // best[j][mask]: cheapest split of mask into at most j+1 groups;
    // split[j][mask] is the group holding mask's lowest client.
    const std::size_t groups = std::min(k, n);
    std::vector<std::vector<double>> best(groups, std::vector<double>(full + 1, kInf));
    std::vector<std::vector<std::size_t>> split(groups, std::vector<std::size_t>(full + 1, 0));
    for (std::size_t mask = 0; mask <= full; ++mask) {
        best[0][mask] = group_cost[mask];
        split[0][mask] = mask;
    }
    for (std::size_t j = 1; j < groups; ++j) {
        best[j][0] = 0.0;
        for (std::size_t mask = 1; mask <= full; ++mask) {
            best[j][mask] = best[j - 1][mask];
            split[j][mask] = split[j - 1][mask];
            const std::size_t low = mask & (~mask + 1);
            const std::size_t rest = mask ^ low;
            // enumerate sub = low | part, part a proper subset of rest
            for (std::size_t part = rest;; part = (part - 1) & rest) {
                const std::size_t sub = low | part;
                if (sub != mask) {
                    const double c = group_cost[sub] + best[j - 1][mask ^ sub];
                    if (c < best[j][mask]) {
                        best[j][mask] = c;
                        split[j][mask] = sub;
                    }
                }
                if (part == 0) break;
            }
        }
    }

    std::vector<std::size_t> chosen;
    std::size_t mask = full;
    for (std::size_t j = groups; j-- > 0 && mask != 0;) {
        const std::size_t sub = split[j][mask];
        chosen.push_back(group_facility[sub]);
        mask ^= sub;
    }
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    for (std::size_t f = 0; chosen.size() < k; ++f) {
        if (!std::binary_search(chosen.begin(), chosen.end(), f)) {
            chosen.insert(std::upper_bound(chosen.begin(), chosen.end(), f), f);
        }
    }
    return {chosen, choice_cost(d, chosen)};
}

}  // namespace

std::string_view to_string(SolverKind kind) {
    return kind == SolverKind::exhaustive ? "exhaustive" : "local-search";
}

DistanceMatrix::DistanceMatrix(std::span<const TimeSeries> clients,
                               std::span<const TimeSeries> facilities, unsigned threads)
    : clients_(clients.size()),
      facilities_(facilities.size()),
      data_(clients.size() * facilities.size()) {
    parallel_for(clients_, threads, [&](std::size_t c) {
        for (std::size_t f = 0; f < facilities_; ++f) {
            data_[c * facilities_ + f] = discrete_frechet(clients[c], facilities[f]);
        }
    });
}

double choice_cost(const DistanceMatrix& d, std::span<const std::size_t> chosen) {
    double total = 0.0;
    for (std::size_t c = 0; c < d.clients(); ++c) {
        double m = kInf;
        for (std::size_t f : chosen) m = std::min(m, d(c, f));
        total += m;
    }
    return total;
}

FacilityChoice exhaustive_choice(const DistanceMatrix& d, std::size_t k, std::uint64_t cap) {
    check_k(d, k);
    const std::uint64_t subsets = binomial_saturating(d.facilities(), k, cap);
    if (subsets <= cap) return enumerate_subsets(d, k);

    const std::size_t n = d.clients();
    if (n <= kMaxPartitionClients &&
        d.facilities() <= kPartitionWorkBudget >> n) {
        return partition_dp(d, k);
    }
    throw CapExceeded("exhaustive search over " + std::to_string(d.facilities()) +
                      " candidates with k = " + std::to_string(k) + " exceeds cap " +
                      std::to_string(cap));
}

FacilityChoice local_search_choice(const DistanceMatrix& d, std::size_t k, std::uint64_t seed) {
    check_k(d, k);
    const std::size_t n = d.clients();
    const std::size_t nf = d.facilities();

    SplitMix64 rng(seed);
    std::vector<std::size_t> chosen{static_cast<std::size_t>(rng.below(nf))};
    std::vector<char> in_set(nf, 0);
    in_set[chosen[0]] = 1;
    std::vector<double> nearest(n);
    for (std::size_t c = 0; c < n; ++c) nearest[c] = d(c, chosen[0]);

    while (chosen.size() < k) {
        std::size_t pick = nf;
        double pick_cost = kInf;
        for (std::size_t f = 0; f < nf; ++f) {
            if (in_set[f]) continue;
            double cost = 0.0;
            for (std::size_t c = 0; c < n; ++c) cost += std::min(nearest[c], d(c, f));
            if (cost < pick_cost) {
                pick_cost = cost;
                pick = f;
            }
        }
        chosen.push_back(pick);
        in_set[pick] = 1;
        for (std::size_t c = 0; c < n; ++c) nearest[c] = std::min(nearest[c], d(c, pick));
    }

    double cost = choice_cost(d, chosen);
    std::vector<double> without(n);
    for (;;) {
        std::size_t best_pos = k, best_f = nf;
        double best_cost = cost * (1.0 - kLocalSearchTolerance);
        for (std::size_t p = 0; p < k; ++p) {
            for (std::size_t c = 0; c < n; ++c) {
                double m = kInf;
                for (std::size_t q = 0; q < k; ++q) {
                    if (q != p) m = std::min(m, d(c, chosen[q]));
                }
                without[c] = m;
            }
            for (std::size_t f = 0; f < nf; ++f) {
                if (in_set[f]) continue;
                double swapped = 0.0;
                for (std::size_t c = 0; c < n && swapped < best_cost; ++c) {
                    swapped += std::min(without[c], d(c, f));
                }
                if (swapped < best_cost) {
                    best_cost = swapped;
                    best_pos = p;
                    best_f = f;
                }
            }
        }
        if (best_pos == k) break;
        in_set[chosen[best_pos]] = 0;
        in_set[best_f] = 1;
        chosen[best_pos] = best_f;
        cost = choice_cost(d, chosen);
    }
    std::sort(chosen.begin(), chosen.end());
    return {chosen, cost};
}

double kmedian_cost(std::span<const TimeSeries> clients, std::span<const TimeSeries> centers) {
    if (centers.empty()) throw std::invalid_argument("center set must be non-empty");
    double total = 0.0;
    for (const auto& x : clients) {
        double m = kInf;
        for (const auto& c : centers) m = std::min(m, discrete_frechet(x, c));
        total += m;
    }
    return total;
}

ClusterSolution make_solution(std::span<const TimeSeries> clients, std::vector<TimeSeries> centers,
                              SolverKind solver) {
    if (centers.empty()) throw std::invalid_argument("center set must be non-empty");
    ClusterSolution out;
    out.assignment.reserve(clients.size());
    for (const auto& x : clients) {
        std::size_t arg = 0;
        double m = kInf;
        for (std::size_t j = 0; j < centers.size(); ++j) {
            const double dist = discrete_frechet(x, centers[j]);
            if (dist < m) {
                m = dist;
                arg = j;
            }
        }
        out.assignment.push_back(arg);
        out.cost += m;
    }
    out.centers = std::move(centers);
    out.solver_used = solver;
    return out;
}

namespace {

std::vector<TimeSeries> pick(std::span<const TimeSeries> facilities,
                             const std::vector<std::size_t>& idx) {
    std::vector<TimeSeries> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(facilities[i]);
    return out;
}

}  // namespace

ClusterSolution exhaustive_kmedian(std::span<const TimeSeries> clients,
                                   std::span<const TimeSeries> facilities, std::size_t k,
                                   std::uint64_t cap) {
    const DistanceMatrix d(clients, facilities);
    const auto choice = exhaustive_choice(d, k, cap);
    return make_solution(clients, pick(facilities, choice.facilities), SolverKind::exhaustive);
}

ClusterSolution local_search_kmedian(std::span<const TimeSeries> clients,
                                     std::span<const TimeSeries> facilities, std::size_t k,
                                     std::uint64_t seed) {
    const DistanceMatrix d(clients, facilities);
    const auto choice = local_search_choice(d, k, seed);
    return make_solution(clients, pick(facilities, choice.facilities), SolverKind::local_search);
}

}  // namespace fkm
