#include "fkm/simplify.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fkm/frechet.hpp"

namespace fkm {

namespace {

// Greedy maximal blocks of range <= width; stops early once more than
// max_blocks are needed.
std::vector<IndexRange> greedy_blocks(const TimeSeries& x, double width, std::size_t max_blocks) {
    std::vector<IndexRange> blocks;
    std::size_t start = 0;
    double lo = x[0], hi = x[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double nlo = std::min(lo, x[i]);
        const double nhi = std::max(hi, x[i]);
        if (nhi - nlo <= width) {
            lo = nlo;
            hi = nhi;
            continue;
        }
        blocks.push_back({start, i - 1});
        if (blocks.size() >= max_blocks) {
            blocks.push_back({i, x.size() - 1});
            return blocks;
        }
        start = i;
        lo = hi = x[i];
    }
    blocks.push_back({start, x.size() - 1});
    return blocks;
}

bool width_feasible(const TimeSeries& x, double width, std::size_t l) {
    return greedy_blocks(x, width, l).size() <= l;
}

// Smallest feasible width among the pairwise differences of the distinct
// values. The differences form an implicitly sorted matrix (row a holds
// u[a] - u[a - c] for c = 0..a, increasing in c); each round tests the
// weighted median of row medians and discards the half it rules out.
double optimal_width(const TimeSeries& x, std::size_t l) {
    const auto u = distinct_values(x);
    const std::size_t r = u.size();
    auto value = [&](std::size_t a, std::size_t c) { return u[a] - u[a - c]; };

    std::vector<std::ptrdiff_t> lo(r, 0), hi(r);
    for (std::size_t a = 0; a < r; ++a) hi[a] = static_cast<std::ptrdiff_t>(a);
    double best = u[r - 1] - u[0];

    struct Median {
        double value;
        std::size_t weight;
    };
    std::vector<Median> medians;
    for (;;) {
        medians.clear();
        std::size_t total = 0;
        for (std::size_t a = 0; a < r; ++a) {
            if (lo[a] > hi[a]) continue;
            const auto w = static_cast<std::size_t>(hi[a] - lo[a] + 1);
            medians.push_back({value(a, static_cast<std::size_t>((lo[a] + hi[a]) / 2)), w});
            total += w;
        }
        if (medians.empty()) break;
        std::sort(medians.begin(), medians.end(),
                  [](const Median& p, const Median& q) { return p.value < q.value; });
        double pivot = medians.back().value;
        std::size_t acc = 0;
        for (const auto& m : medians) {
            acc += m.weight;
            if (2 * acc >= total) {
                pivot = m.value;
                break;
            }
        }

        const bool feasible = width_feasible(x, pivot, l);
        if (feasible) best = std::min(best, pivot);
        for (std::size_t a = 0; a < r; ++a) {
            if (lo[a] > hi[a]) continue;
            if (feasible) {
                // keep only entries < pivot
                std::ptrdiff_t l0 = lo[a], h0 = hi[a];
                while (l0 <= h0) {
                    const auto mid = l0 + (h0 - l0) / 2;
                    if (value(a, static_cast<std::size_t>(mid)) < pivot) l0 = mid + 1;
                    else h0 = mid - 1;
                }
                hi[a] = l0 - 1;
            } else {
                // keep only entries > pivot
                std::ptrdiff_t l0 = lo[a], h0 = hi[a];
                while (l0 <= h0) {
                    const auto mid = l0 + (h0 - l0) / 2;
                    if (value(a, static_cast<std::size_t>(mid)) <= pivot) l0 = mid + 1;
                    else h0 = mid - 1;
                }
                lo[a] = l0;
            }
        }
    }
    return best;
}

TimeSeries centres_for(const TimeSeries& x, const std::vector<IndexRange>& blocks, std::size_t l) {
    std::vector<double> centres;
    centres.reserve(l);
    for (const auto& b : blocks) {
        const auto [mn, mx] = std::minmax_element(x.begin() + static_cast<std::ptrdiff_t>(b.first),
                                                  x.begin() + static_cast<std::ptrdiff_t>(b.last) + 1);
        centres.push_back(std::midpoint(*mn, *mx));
    }
    std::vector<double> out(l - centres.size(), centres.front());
    out.insert(out.end(), centres.begin(), centres.end());
    return TimeSeries(std::move(out));
}

}  // namespace

std::optional<std::vector<IndexRange>> simplify_decide(const TimeSeries& x, std::size_t l,
                                                       double delta) {
    if (l == 0) throw std::invalid_argument("simplification complexity must be positive");
    if (!(delta >= 0.0)) throw std::invalid_argument("delta must be non-negative");
    auto blocks = greedy_blocks(x, 2.0 * delta, l);
    if (blocks.size() > l) return std::nullopt;
    return blocks;
}

Simplification min_error_simplification(const TimeSeries& x, std::size_t l) {
    if (l == 0) throw std::invalid_argument("simplification complexity must be positive");
    if (x.size() <= l) {
        std::vector<IndexRange> blocks;
        for (std::size_t i = 0; i < x.size(); ++i) blocks.push_back({i, i});
        std::vector<double> out(l - x.size(), x.front());
        out.insert(out.end(), x.begin(), x.end());
        return {TimeSeries(std::move(out)), 0.0, std::move(blocks)};
    }
    const double width = optimal_width(x, l);
    auto blocks = greedy_blocks(x, width, l);
    TimeSeries series = centres_for(x, blocks, l);
    const double error = discrete_frechet(x, series);
    return {std::move(series), error, std::move(blocks)};
}

}  // namespace fkm
