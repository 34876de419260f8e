#include <algorithm>
#include <cmath>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "fkm/parallel.hpp"
#include "fkm/profile_reduction.hpp"
#include "fkm/simplify.hpp"

namespace fkm {

namespace {

// Smallest multiple k*w with k*w >= v, corrected for rounding in v / w.
double round_up_to_grid(double v, double w) {
    double k = std::ceil(v / w);
    while (k * w < v) k += 1.0;
    while ((k - 1.0) * w >= v) k -= 1.0;
    return k * w;
}

void check_eps(double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
}

}  // namespace

QuantizedSeries reduce_value_domain(const TimeSeries& x, std::size_t l, double eps) {
    check_eps(eps);
    const double delta = min_error_simplification(x, l).error;
    if (delta == 0.0) return {x, 0.0, 0.0};
    const double width = eps * delta;
    std::vector<double> out;
    out.reserve(x.size());
    for (double v : x) out.push_back(round_up_to_grid(v, width));
    return {TimeSeries(std::move(out)), width, delta};
}

std::optional<RankSequence> ReductionCache::find(const RankSequence& key, std::size_t ell) const {
    std::shared_lock lock(mutex_);
    const auto it = entries_.find(Key{key.alphabet_size, ell, key.ranks});
    if (it == entries_.end()) return std::nullopt;
    return RankSequence{it->second, key.alphabet_size};
}

void ReductionCache::insert(const RankSequence& key, std::size_t ell, const RankSequence& value) {
    std::unique_lock lock(mutex_);
    entries_.try_emplace(Key{key.alphabet_size, ell, key.ranks}, value.ranks);
}

std::size_t ReductionCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

namespace {

std::optional<std::vector<Rank>> parse_symbols(const std::string& text, Rank r) {
    std::istringstream in(text);
    std::vector<Rank> out;
    long long v;
    while (in >> v) {
        if (v < 1 || v > static_cast<long long>(r)) return std::nullopt;
        out.push_back(static_cast<Rank>(v));
    }
    if (!in.eof() || out.empty()) return std::nullopt;
    return out;
}

}  // namespace

std::size_t ReductionCache::load(std::istream& in, std::ostream& warnings) {
    std::size_t skipped = 0;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        auto reject = [&] {
            warnings << "warning: cache line " << lineno << " is malformed; skipped\n";
            ++skipped;
        };
        const auto colon = line.find(':');
        const auto arrow = line.find("->");
        const auto comma = line.find(',');
        if (colon == std::string::npos || arrow == std::string::npos ||
            comma == std::string::npos || !(comma < colon && colon < arrow)) {
            reject();
            continue;
        }
        long long r = 0, ell = 0;
        std::istringstream head(line.substr(0, colon));
        char sep = 0;
        if (!(head >> r >> sep >> ell) || sep != ',' || r < 1 || r > 0xffff || ell < 1) {
            reject();
            continue;
        }
        const auto key = parse_symbols(line.substr(colon + 1, arrow - colon - 1), static_cast<Rank>(r));
        const auto value = parse_symbols(line.substr(arrow + 2), static_cast<Rank>(r));
        RankSequence k{key.value_or(std::vector<Rank>{}), static_cast<Rank>(r)};
        RankSequence v{value.value_or(std::vector<Rank>{}), static_cast<Rank>(r)};
        if (!key || !value || !k.is_surjective() || !v.is_surjective()) {
            reject();
            continue;
        }
        insert(k, static_cast<std::size_t>(ell), v);
    }
    return skipped;
}

void ReductionCache::save(std::ostream& out) const {
    std::shared_lock lock(mutex_);
    for (const auto& [key, value] : entries_) {
        const auto& [r, ell, ranks] = key;
        out << r << ',' << ell << ':';
        for (std::size_t i = 0; i < ranks.size(); ++i) out << (i ? " " : "") << ranks[i];
        out << " ->";
        for (Rank v : value) out << ' ' << v;
        out << '\n';
    }
}

namespace {

struct Prepared {
    TimeSeries canonical;
    RankSequence key;
    std::vector<double> values;
};

Prepared prepare(const TimeSeries& x, std::size_t l_eff, double eps) {
    TimeSeries canonical = canonicalize(reduce_value_domain(x, l_eff, eps).series);
    RankSequence key = rank_sequence(canonical);
    std::vector<double> values = distinct_values(canonical);
    return {std::move(canonical), std::move(key), std::move(values)};
}

void check_reduction_args(std::size_t l, std::size_t cap) {
    if (l == 0) throw std::invalid_argument("query complexity must be positive");
    if (cap == 0) throw std::invalid_argument("reduction cap must be positive");
}

}  // namespace

ReductionResult complexity_reduction(const TimeSeries& x, std::size_t l, double eps,
                                     std::size_t cap, ReductionCache& cache) {
    check_reduction_args(l, cap);
    const std::size_t l_eff = effective_query_complexity(l);
    Prepared p = prepare(x, l_eff, eps);
    if (auto hit = cache.find(p.key, l_eff)) {
        return {apply_values(*hit, p.values), x.size(), true, false};
    }
    const std::size_t max_length = std::min(cap, p.canonical.size());
    if (auto found = shortest_equivalent(p.key, l_eff, max_length)) {
        cache.insert(p.key, l_eff, *found);
        return {apply_values(*found, p.values), x.size(), false, false};
    }
    return {std::move(p.canonical), x.size(), false, true};
}

// Deterministic regardless of thread count: an item counts as a cache hit
// when its key was cached before the call or occurs earlier in the batch.
std::vector<ReductionResult> reduce_dataset(std::span<const TimeSeries> data, std::size_t l,
                                            double eps, std::size_t cap, ReductionCache& cache,
                                            unsigned threads) {
    check_reduction_args(l, cap);
    const std::size_t l_eff = effective_query_complexity(l);
    const std::size_t n = data.size();

    std::vector<std::optional<Prepared>> prepared(n);
    parallel_for(n, threads, [&](std::size_t i) { prepared[i] = prepare(data[i], l_eff, eps); });

    // For every item: its cached value, or the job that computes it.
    std::vector<std::optional<RankSequence>> cached(n);
    std::vector<std::size_t> job_of(n, 0);
    std::vector<std::size_t> jobs;  // item index of each job's first occurrence
    std::map<RankSequence, std::size_t> job_by_key;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& key = prepared[i]->key;
        if ((cached[i] = cache.find(key, l_eff))) {
            continue;
        }
        const auto [it, inserted] = job_by_key.try_emplace(key, jobs.size());
        if (inserted) jobs.push_back(i);
        job_of[i] = it->second;
    }

    std::vector<std::optional<RankSequence>> found(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t j) {
        const auto& p = *prepared[jobs[j]];
        found[j] = shortest_equivalent(p.key, l_eff, std::min(cap, p.canonical.size()));
    });
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (found[j]) cache.insert(prepared[jobs[j]]->key, l_eff, *found[j]);
    }

    std::vector<ReductionResult> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& p = *prepared[i];
        if (cached[i]) {
            out.push_back({apply_values(*cached[i], p.values), data[i].size(), true, false});
            continue;
        }
        const std::size_t j = job_of[i];
        const bool repeat = jobs[j] != i;
        if (found[j]) {
            out.push_back({apply_values(*found[j], p.values), data[i].size(), repeat, false});
        } else {
            out.push_back({std::move(p.canonical), data[i].size(), false, true});
        }
    }
    return out;
}

namespace {

// Next run-free sequence of the same length in lexicographic order.
bool next_run_free(std::vector<Rank>& seq, Rank r) {
    std::size_t pos = seq.size();
    while (pos-- > 0) {
        Rank v = seq[pos] + 1;
        if (pos > 0 && v == seq[pos - 1]) ++v;
        if (v > r) continue;
        seq[pos] = v;
        for (std::size_t i = pos + 1; i < seq.size(); ++i) seq[i] = seq[i - 1] == 1 ? 2 : 1;
        return true;
    }
    return false;
}

}  // namespace

std::optional<RankSequence> shortest_equivalent_by_enumeration(const RankSequence& target,
                                                               std::size_t l,
                                                               std::size_t max_length) {
    const Rank r = target.alphabet_size;
    const ProfileSet goal = profile_set(target, l);
    for (std::size_t len = r; len <= max_length; ++len) {
        if (r == 1 && len > 1) break;
        RankSequence cand{std::vector<Rank>(len), r};
        for (std::size_t i = 0; i < len; ++i) cand.ranks[i] = (i % 2 == 0) ? 1 : 2;
        do {
            if (cand.is_surjective() && profile_set(cand, l) == goal) return cand;
        } while (next_run_free(cand.ranks, r));
    }
    return std::nullopt;
}

}  // namespace fkm
