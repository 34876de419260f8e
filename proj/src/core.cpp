#include "fkm/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fkm {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("time series must contain at least one value");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw std::invalid_argument("time series value at index " + std::to_string(i) +
                                        " is not finite");
        }
    }
}

TimeSeries::TimeSeries(std::initializer_list<double> values)
    : TimeSeries(std::vector<double>(values)) {}

bool RankSequence::is_surjective() const {
    std::vector<bool> seen(alphabet_size + 1, false);
    for (Rank r : ranks) {
        if (r >= 1 && r <= alphabet_size) seen[r] = true;
    }
    return std::all_of(seen.begin() + 1, seen.end(), [](bool b) { return b; });
}

bool is_valid_traversal(const Traversal& t, std::size_t m, std::size_t l) {
    const auto& p = t.pairs;
    if (p.empty() || p.front() != IndexPair{0, 0} || p.back() != IndexPair{m - 1, l - 1}) {
        return false;
    }
    for (std::size_t k = 1; k < p.size(); ++k) {
        const auto [i0, j0] = p[k - 1];
        const auto [i1, j1] = p[k];
        const bool ok = (i1 == i0 + 1 && j1 == j0) || (i1 == i0 && j1 == j0 + 1) ||
                        (i1 == i0 + 1 && j1 == j0 + 1);
        if (!ok) return false;
    }
    return true;
}

TimeSeries canonicalize(const TimeSeries& x) {
    std::vector<double> out;
    out.reserve(x.size());
    for (double v : x) {
        if (out.empty() || out.back() != v) out.push_back(v);
    }
    return TimeSeries(std::move(out));
}

std::vector<double> distinct_values(const TimeSeries& x) {
    std::vector<double> v(x.begin(), x.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

RankSequence rank_sequence(const TimeSeries& x) {
    const auto sorted = distinct_values(x);
    RankSequence rs;
    rs.alphabet_size = static_cast<Rank>(sorted.size());
    rs.ranks.reserve(x.size());
    for (double v : x) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
        rs.ranks.push_back(static_cast<Rank>(it - sorted.begin()) + 1);
    }
    return rs;
}

TimeSeries apply_values(const RankSequence& rs, std::span<const double> sorted_values) {
    if (sorted_values.size() != rs.alphabet_size) {
        throw std::invalid_argument("value list length does not match alphabet size");
    }
    for (std::size_t i = 1; i < sorted_values.size(); ++i) {
        if (!(sorted_values[i - 1] < sorted_values[i])) {
            throw std::invalid_argument("value list must be strictly increasing");
        }
    }
    std::vector<double> out;
    out.reserve(rs.size());
    for (Rank r : rs.ranks) {
        if (r < 1 || r > rs.alphabet_size) {
            throw std::invalid_argument("rank outside alphabet");
        }
        out.push_back(sorted_values[r - 1]);
    }
    return TimeSeries(std::move(out));
}

RankSequence collapse_runs(const RankSequence& rs) {
    RankSequence out;
    out.alphabet_size = rs.alphabet_size;
    for (Rank r : rs.ranks) {
        if (out.ranks.empty() || out.ranks.back() != r) out.ranks.push_back(r);
    }
    return out;
}

}  // namespace fkm
