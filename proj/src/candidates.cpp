#include "fkm/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "fkm/cluster.hpp"
#include "fkm/frechet.hpp"
#include "fkm/parallel.hpp"
#include "fkm/simplify.hpp"

namespace fkm {

namespace {

bool series_less(const TimeSeries& a, const TimeSeries& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void sort_unique(std::vector<TimeSeries>& v) {
    std::sort(v.begin(), v.end(), series_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// For each traversal of two length-l series, the first index matched to
// every position j; duplicates removed.
std::vector<std::vector<std::size_t>> first_match_tuples(std::size_t l) {
    std::vector<std::vector<std::size_t>> tuples;
    for (const auto& t : enumerate_traversals(l, l)) {
        std::vector<std::size_t> first(l, l);
        for (const auto& [i, j] : t.pairs) first[j] = std::min(first[j], i);
        tuples.push_back(std::move(first));
    }
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    return tuples;
}

void append_ball(const TimeSeries& x_tilde, double r, double eps,
                 const std::vector<std::vector<std::size_t>>& tuples, std::size_t cap,
                 std::vector<TimeSeries>& out) {
    const std::size_t l = x_tilde.size();
    const double width = eps * r;
    const double reach = (2.0 + eps) * r;

    std::vector<std::vector<double>> axis(l);
    for (std::size_t i = 0; i < l; ++i) {
        const double lo = std::ceil((x_tilde[i] - reach) / width);
        const double hi = std::floor((x_tilde[i] + reach) / width);
        for (double k = lo; k <= hi; k += 1.0) axis[i].push_back(k * width);
    }

    std::vector<double> point(l);
    std::vector<std::size_t> digit(l);
    for (const auto& tuple : tuples) {
        double count = 1.0;
        for (std::size_t j = 0; j < l; ++j) count *= static_cast<double>(axis[tuple[j]].size());
        if (count == 0.0) continue;
        if (static_cast<double>(out.size()) + count > static_cast<double>(cap)) {
            throw CapExceeded("candidate set exceeds cap " + std::to_string(cap));
        }
        std::fill(digit.begin(), digit.end(), 0);
        for (;;) {
            for (std::size_t j = 0; j < l; ++j) point[j] = axis[tuple[j]][digit[j]];
            out.emplace_back(point);
            std::size_t j = l;
            while (j-- > 0) {
                if (++digit[j] < axis[tuple[j]].size()) break;
                digit[j] = 0;
            }
            if (j == static_cast<std::size_t>(-1)) break;
        }
    }
}

}  // namespace

std::vector<TimeSeries> candidate_ball(const TimeSeries& x_tilde, double r, double eps,
                                       std::size_t cap) {
    if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
    std::vector<TimeSeries> out;
    append_ball(x_tilde, r, eps, first_match_tuples(x_tilde.size()), cap, out);
    sort_unique(out);
    return out;
}

double estimate_opt_cost(std::span<const TimeSeries> clients, std::size_t k, std::size_t l) {
    if (clients.empty()) throw std::invalid_argument("client set must be non-empty");
    std::vector<TimeSeries> simplified;
    simplified.reserve(clients.size());
    for (const auto& x : clients) simplified.push_back(min_error_simplification(x, l).series);
    sort_unique(simplified);
    if (k >= simplified.size()) {
        std::vector<std::size_t> all(simplified.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return choice_cost(DistanceMatrix(clients, simplified), all);
    }
    return local_search_choice(DistanceMatrix(clients, simplified), k, 0).cost;
}

CandidateSet candidate_centers(std::span<const TimeSeries> clients, std::size_t k, std::size_t l,
                               double eps, std::size_t cap, unsigned threads) {
    if (clients.empty()) throw std::invalid_argument("client set must be non-empty");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
    const std::size_t n = clients.size();

    std::vector<TimeSeries> simplified;
    simplified.reserve(n);
    for (const auto& x : clients) simplified.push_back(min_error_simplification(x, l).series);

    CandidateSet out;
    out.delta_estimate = estimate_opt_cost(clients, k, l);
    if (out.delta_estimate == 0.0) {
        out.centers = std::move(simplified);
        sort_unique(out.centers);
        return out;
    }

    const double scale = kEstimateFactor * static_cast<double>(n);
    const int top = static_cast<int>(std::ceil(std::log2(scale))) + 1;
    for (int i = 0; i <= top; ++i) {
        out.radii_used.push_back(std::ldexp(out.delta_estimate, i) / scale);
    }

    const auto tuples = first_match_tuples(l);
    std::vector<std::vector<TimeSeries>> per_client(n);
    parallel_for(n, threads, [&](std::size_t c) {
        for (double r : out.radii_used) append_ball(simplified[c], r, eps, tuples, cap, per_client[c]);
        sort_unique(per_client[c]);
    });

    std::size_t total = simplified.size();
    for (const auto& v : per_client) total += v.size();
    out.centers.reserve(total);
    for (auto& v : per_client) {
        std::move(v.begin(), v.end(), std::back_inserter(out.centers));
        v.clear();
        v.shrink_to_fit();
    }
    std::move(simplified.begin(), simplified.end(), std::back_inserter(out.centers));
    sort_unique(out.centers);
    if (out.centers.size() > cap) {
        throw CapExceeded("candidate set exceeds cap " + std::to_string(cap));
    }
    return out;
}

}  // namespace fkm
