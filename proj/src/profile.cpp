#include <algorithm>
#include <stdexcept>
#include <string>

#include "fkm/profile_reduction.hpp"

namespace fkm {

namespace {

// One row of the assignment tables: entry t refers to the prefix x_1..x_t.
struct DpRow {
    std::vector<char> feas, hmin, hmax;

    explicit DpRow(std::size_t m) : feas(m + 1, 0), hmin(m + 1, 0), hmax(m + 1, 0) {}

    bool done(std::size_t t) const { return feas[t] && hmin[t] && hmax[t]; }
};

DpRow initial_row(std::size_t m) {
    DpRow row(m);
    row.feas[0] = row.hmin[0] = row.hmax[0] = 1;
    return row;
}

// Row h from row h-1 for the sector bounds [lo, hi].
//
// Sector h may be continued from (h, t-1), or opened with x_t alone once
// sector h-1 is complete, either ending at t-1 (diagonal step) or at t
// itself (horizontal step, the two sectors sharing x_t). Continuing takes
// precedence: the continued sector is a superset of {x_t}, so its flags
// dominate.
template <typename T>
DpRow next_row(std::span<const T> x, const DpRow& prev, T lo, T hi) {
    const std::size_t m = x.size();
    DpRow row(m);
    for (std::size_t t = 1; t <= m; ++t) {
        const T v = x[t - 1];
        if (v < lo || v > hi) continue;
        if (row.feas[t - 1]) {
            row.feas[t] = 1;
            row.hmin[t] = row.hmin[t - 1] || v == lo;
            row.hmax[t] = row.hmax[t - 1] || v == hi;
        } else if (prev.done(t - 1) || prev.done(t)) {
            row.feas[t] = 1;
            row.hmin[t] = v == lo;
            row.hmax[t] = v == hi;
        }
    }
    return row;
}

template <typename T>
bool run_assignment(std::span<const T> x, std::span<const std::pair<T, T>> bounds) {
    DpRow row = initial_row(x.size());
    for (const auto& [lo, hi] : bounds) {
        row = next_row(x, row, lo, hi);
    }
    return row.done(x.size());
}

bool any_done(const DpRow& row) {
    for (std::size_t t = 0; t < row.feas.size(); ++t) {
        if (row.done(t)) return true;
    }
    return false;
}

void enumerate_profiles(std::span<const Rank> x, Rank r, std::size_t l, const DpRow& row,
                        std::vector<RankPair>& prefix, std::set<Profile>& out) {
    const std::size_t h = prefix.size();
    for (Rank lo = 1; lo <= r; ++lo) {
        for (Rank hi = lo; hi <= r; ++hi) {
            DpRow next = next_row<Rank>(x, row, lo, hi);
            prefix.push_back({lo, hi});
            if (h + 1 == l) {
                if (next.done(x.size())) out.insert(Profile{prefix});
            } else if (any_done(next)) {
                enumerate_profiles(x, r, l, next, prefix, out);
            }
            prefix.pop_back();
        }
    }
}

}  // namespace

std::vector<std::vector<double>> traversal_sectors(const TimeSeries& x, std::size_t l,
                                                   const Traversal& t) {
    if (!is_valid_traversal(t, x.size(), l)) {
        throw std::invalid_argument("not a traversal for the given complexities");
    }
    std::vector<std::vector<double>> sectors(l);
    for (const auto& [i, j] : t.pairs) sectors[j].push_back(x[i]);
    for (auto& s : sectors) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return sectors;
}

bool assignment_dp(const TimeSeries& x, std::span<const std::pair<double, double>> p_values) {
    if (p_values.empty()) throw std::invalid_argument("profile must have at least one entry");
    const auto values = distinct_values(x);
    auto member = [&](double v) { return std::binary_search(values.begin(), values.end(), v); };
    for (std::size_t h = 0; h < p_values.size(); ++h) {
        const auto [lo, hi] = p_values[h];
        if (!member(lo) || !member(hi)) {
            throw std::invalid_argument("profile entry " + std::to_string(h + 1) +
                                        " uses a value that does not occur in the series");
        }
        if (lo > hi) {
            throw std::invalid_argument("profile entry " + std::to_string(h + 1) +
                                        " has min greater than max");
        }
    }
    return run_assignment<double>(x.values(), p_values);
}

bool assignment_dp(std::span<const Rank> ranks, std::span<const RankPair> profile) {
    if (profile.empty()) throw std::invalid_argument("profile must have at least one entry");
    std::vector<std::pair<Rank, Rank>> bounds;
    bounds.reserve(profile.size());
    for (const auto& p : profile) bounds.emplace_back(p.min, p.max);
    return run_assignment<Rank>(ranks, bounds);
}

ProfileSet profile_set(const RankSequence& rs, std::size_t l) {
    if (l == 0) throw std::invalid_argument("query complexity must be positive");
    ProfileSet out;
    out.alphabet_size = rs.alphabet_size;
    out.query_complexity = l;
    std::vector<RankPair> prefix;
    prefix.reserve(l);
    enumerate_profiles(rs.ranks, rs.alphabet_size, l, initial_row(rs.size()), prefix,
                       out.profiles);
    return out;
}

ProfileSet profile_set(const TimeSeries& x, std::size_t l) {
    return profile_set(rank_sequence(x), l);
}

ProfileSet brute_profile_set(const TimeSeries& x, std::size_t l, std::uint64_t cap) {
    const RankSequence rs = rank_sequence(x);
    ProfileSet out;
    out.alphabet_size = rs.alphabet_size;
    out.query_complexity = l;
    for (const auto& t : enumerate_traversals(x.size(), l, cap)) {
        Profile p;
        p.entries.assign(l, RankPair{rs.alphabet_size + 1, 0});
        for (const auto& [i, j] : t.pairs) {
            auto& e = p.entries[j];
            e.min = std::min(e.min, rs.ranks[i]);
            e.max = std::max(e.max, rs.ranks[i]);
        }
        out.profiles.insert(std::move(p));
    }
    return out;
}

}  // namespace fkm
