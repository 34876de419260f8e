#include "fkm/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fkm {

double discrete_frechet(std::span<const double> a, std::span<const double> b) {
    // Rows run over the longer series, columns over the shorter one.
    if (a.size() < b.size()) std::swap(a, b);
    const std::size_t cols = b.size();
    std::vector<double> prev(cols), cur(cols);

    prev[0] = std::abs(a[0] - b[0]);
    for (std::size_t j = 1; j < cols; ++j) {
        prev[j] = std::max(prev[j - 1], std::abs(a[0] - b[j]));
    }
    for (std::size_t i = 1; i < a.size(); ++i) {
        cur[0] = std::max(prev[0], std::abs(a[i] - b[0]));
        for (std::size_t j = 1; j < cols; ++j) {
            const double reach = std::min({prev[j], cur[j - 1], prev[j - 1]});
            cur[j] = std::max(reach, std::abs(a[i] - b[j]));
        }
        std::swap(prev, cur);
    }
    return prev[cols - 1];
}

std::uint64_t count_traversals(std::size_t m, std::size_t l) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    auto add = [](std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; };

    std::vector<std::uint64_t> prev(l, 1), cur(l);
    for (std::size_t i = 1; i < m; ++i) {
        cur[0] = 1;
        for (std::size_t j = 1; j < l; ++j) {
            cur[j] = add(add(prev[j], cur[j - 1]), prev[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[l - 1];
}

namespace {

// Successors in the order that makes depth-first output lexicographic:
// (i, j+1) < (i+1, j) < (i+1, j+1).
void extend(std::size_t m, std::size_t l, Traversal& path, std::vector<Traversal>& out) {
    const auto [i, j] = path.pairs.back();
    if (i == m - 1 && j == l - 1) {
        out.push_back(path);
        return;
    }
    const IndexPair next[] = {{i, j + 1}, {i + 1, j}, {i + 1, j + 1}};
    for (const auto& p : next) {
        if (p.first < m && p.second < l) {
            path.pairs.push_back(p);
            extend(m, l, path, out);
            path.pairs.pop_back();
        }
    }
}

}  // namespace

std::vector<Traversal> enumerate_traversals(std::size_t m, std::size_t l, std::uint64_t cap) {
    if (m == 0 || l == 0) throw std::invalid_argument("traversal dimensions must be positive");
    const std::uint64_t count = count_traversals(m, l);
    if (count > cap) {
        throw CapExceeded("traversal count " + std::to_string(count) + " exceeds cap " +
                          std::to_string(cap));
    }
    std::vector<Traversal> out;
    out.reserve(count);
    Traversal path;
    path.pairs.reserve(m + l - 1);
    path.pairs.emplace_back(0, 0);
    extend(m, l, path, out);
    return out;
}

double traversal_cost(const TimeSeries& x, const TimeSeries& y, const Traversal& t) {
    double worst = 0.0;
    for (const auto& [i, j] : t.pairs) worst = std::max(worst, std::abs(x[i] - y[j]));
    return worst;
}

double brute_force_frechet(const TimeSeries& x, const TimeSeries& y, std::uint64_t cap) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : enumerate_traversals(x.size(), y.size(), cap)) {
        best = std::min(best, traversal_cost(x, y, t));
    }
    return best;
}

}  // namespace fkm
