// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fkm/candidates.hpp"
#include "fkm/cluster.hpp"
#include "fkm/frechet.hpp"
#include "fkm/pipeline.hpp"
#include "fkm/profile_reduction.hpp"
#include "fkm/simplify.hpp"
#include "oracles.hpp"

namespace {

using namespace fkm;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Tolerances and budgets.
constexpr double kSlack = 1e-9;
constexpr double kLimit1 = 10, kLimit2 = 30, kLimit3 = 60, kLimit4 = 60, kLimit5 = 60;
constexpr double kLimit6 = 300, kLimit7 = 60, kLimit8 = 600, kLimit10 = 10;
constexpr double kLocalSearchFactor = 5.0;
constexpr std::size_t kGridPointsL1 = 100'000;
constexpr std::size_t kGridPointsL2 = 1'000;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Criterion 8 instances feed criterion 9.
struct Instance {
    std::vector<TimeSeries> data;
    std::size_t k = 1, l = 1;
};
constexpr double kPipelineEps = 0.5;
std::vector<Instance> g_instances;

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

std::vector<std::vector<Rank>> all_words(Rank r, std::size_t max_len) {
    std::vector<std::vector<Rank>> out, layer{{}};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::vector<Rank>> next;
        for (const auto& w : layer) {
            for (Rank s = 1; s <= r; ++s) {
                auto v = w;
                v.push_back(s);
                next.push_back(std::move(v));
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

TimeSeries as_series(const std::vector<Rank>& w) {
    return TimeSeries(std::vector<double>(w.begin(), w.end()));
}

Outcome criterion1() {
    std::mt19937_64 rng(1001);
    for (int t = 0; t < 1000; ++t) {
        const auto x = oracle::random_int_series(rng, 1, 6, 0, 3);
        const auto y = oracle::random_int_series(rng, 1, 6, 0, 3);
        if (discrete_frechet(x, y) != brute_force_frechet(x, y)) {
            return {false, "mismatch on pair " + std::to_string(t)};
        }
    }
    return {true, "1000 pairs equal"};
}

Outcome criterion2() {
    std::mt19937_64 rng(1002);
    std::uniform_int_distribution<std::size_t> ell(1, 3);
    for (int t = 0; t < 500; ++t) {
        const auto x = oracle::random_int_series(rng, 1, 6, 0, 4);
        const std::size_t l = ell(rng);
        if (min_error_simplification(x, l).error != oracle::midpoint_min_error(x, l)) {
            return {false, "mismatch on series " + std::to_string(t)};
        }
    }
    return {true, "500 series equal"};
}

Outcome criterion3() {
    std::mt19937_64 rng(1003);
    std::uniform_int_distribution<std::size_t> len(1, 40);
    std::uniform_real_distribution<double> val(0, 100), qval(-10, 110);
    double worst = 0.0;  // largest |d' - d| / (eps d) seen
    std::size_t combos = 0;
    for (int t = 0; t < 200; ++t) {
        const auto x = oracle::random_real_series(rng, len(rng), 0, 100);
        for (double eps : {0.1, 0.25, 0.5}) {
            for (std::size_t l = 1; l <= 3; ++l) {
                const std::size_t l_eff = effective_query_complexity(l);
                const double bound = static_cast<double>(l_eff) * (std::ceil((2 + eps) / eps) + 2);
                // Quantised at the query complexity and at the lifted one used downstream.
                for (std::size_t lq : {l, l_eff}) {
                    ++combos;
                    const auto q = reduce_value_domain(x, lq, eps);
                    const auto alphabet = static_cast<double>(distinct_values(q.series).size());
                    if (alphabet > bound) {
                        return {false, "alphabet " + fmt(alphabet) + " > " + fmt(bound)};
                    }
                    for (int s = 0; s < 200; ++s) {
                        const auto y = oracle::random_real_series(rng, l, -10, 110);
                        const double d = discrete_frechet(x, y);
                        const double dq = discrete_frechet(q.series, y);
                        if (dq > (1 + eps) * d + kSlack || dq < (1 - eps) * d - kSlack) {
                            return {false, "sandwich violated: d=" + fmt(d) + " d'=" + fmt(dq)};
                        }
                        if (d > 0) worst = std::max(worst, std::abs(dq - d) / (eps * d));
                    }
                }
            }
        }
    }
    return {true, std::to_string(combos) + " combinations x 200 queries; worst |d'-d|/(eps d) = " +
                      fmt(worst)};
}

Outcome criterion4() {
    std::size_t checks = 0, feasible = 0;
    for (const auto& w : all_words(3, 7)) {
        const TimeSeries x = as_series(w);
        const RankSequence rs = rank_sequence(x);
        const auto values = distinct_values(x);
        for (std::size_t l = 1; l <= 3; ++l) {
            std::set<oracle::Pairs> truth;
            for (const auto& p : oracle::sector_profiles(rs.ranks, l)) truth.insert(p);
            // Every profile of rank pairs (lo <= hi) over the series' alphabet.
            std::vector<RankPair> cells;
            for (Rank lo = 1; lo <= rs.alphabet_size; ++lo) {
                for (Rank hi = lo; hi <= rs.alphabet_size; ++hi) cells.push_back({lo, hi});
            }
            std::vector<std::size_t> digit(l, 0);
            for (;;) {
                std::vector<RankPair> profile;
                oracle::Pairs ranks, vals;
                for (std::size_t j = 0; j < l; ++j) {
                    const RankPair c = cells[digit[j]];
                    profile.push_back(c);
                    ranks.emplace_back(c.min, c.max);
                    vals.emplace_back(values[c.min - 1], values[c.max - 1]);
                }
                const bool expected = truth.contains(ranks);
                ++checks;
                feasible += expected ? 1 : 0;
                if (assignment_dp(rs.ranks, profile) != expected || assignment_dp(x, vals) != expected) {
                    return {false, "mismatch at |x|=" + std::to_string(w.size())};
                }
                std::size_t j = l;
                while (j > 0 && ++digit[j - 1] == cells.size()) digit[--j] = 0;
                if (j == 0) break;
            }
        }
    }
    return {true, std::to_string(checks) + " (x, profile) pairs, " + std::to_string(feasible) +
                      " feasible"};
}

Outcome criterion5() {
    std::mt19937_64 rng(1005);
    std::uniform_real_distribution<double> gap(0.001, 50.0);
    std::size_t n = 0;
    for (const auto& w : all_words(3, 6)) {
        const TimeSeries x = as_series(w);
        const ProfileSet ps = profile_set(x, 3);
        if (ps != brute_profile_set(x, 3)) return {false, "profile_set != brute_profile_set"};
        const RankSequence rs = rank_sequence(x);
        std::vector<double> values;
        double v = -100.0;
        for (Rank s = 0; s < rs.alphabet_size; ++s) values.push_back(v += gap(rng));
        if (profile_set(apply_values(rs, values), 3) != ps) {
            return {false, "profile set changed under re-valuation"};
        }
        ++n;
    }
    return {true, std::to_string(n) + " series"};
}

Outcome criterion6() {
    std::mt19937_64 rng(1006);
    std::uniform_int_distribution<std::size_t> len(1, 30);
    ReductionCache cache;
    std::size_t runs = 0, capped = 0, shrunk = 0;
    for (int t = 0; t < 100; ++t) {
        const auto x = oracle::random_real_series(rng, len(rng), 0, 100);
        const std::size_t l = 1 + static_cast<std::size_t>(t) % 3;
        const std::size_t l_eff = effective_query_complexity(l);
        for (double eps : {0.5, 0.99}) {
            ++runs;
            const auto r = complexity_reduction(x, l, eps, kDefaultReductionCap, cache);
            const TimeSeries xq = reduce_value_domain(x, l_eff, eps).series;
            const TimeSeries canon = canonicalize(xq);
            capped += r.cap_exceeded ? 1 : 0;
            shrunk += r.series.size() < canon.size() ? 1 : 0;
            if (r.series.size() > canon.size()) return {false, "|z| > |canonicalize(x')|"};
            if (profile_set(r.series, l_eff) != profile_set(xq, l_eff)) {
                return {false, "profile sets differ at trial " + std::to_string(t)};
            }
            for (int s = 0; s < 200; ++s) {
                const auto y = oracle::random_real_series(rng, l, -10, 110);
                const double d = discrete_frechet(x, y);
                const double dz = discrete_frechet(r.series, y);
                if (dz > (1 + eps) * d + kSlack || dz < (1 - eps) * d - kSlack) {
                    return {false, "sandwich violated at trial " + std::to_string(t)};
                }
            }
        }
    }
    return {true, std::to_string(runs) + " reductions, " + std::to_string(shrunk) +
                      " shorter than canonical, " + std::to_string(capped) + " at the cap"};
}

Outcome criterion7() {
    std::mt19937_64 rng(1007);
    std::uniform_int_distribution<std::size_t> len(1, 20);
    std::uniform_real_distribution<double> stretch(1.0, 4.0), eps_dist(0.1, 0.9);
    std::size_t samples = 0;
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const std::size_t l = 1 + static_cast<std::size_t>(t) % 3;
        const auto x = oracle::random_real_series(rng, len(rng), 0, 10);
        const auto simp = min_error_simplification(x, l);
        const double r = std::max(simp.error, 0.1) * stretch(rng);
        const double eps = eps_dist(rng);
        const auto ball = candidate_ball(simp.series, r, eps);
        for (int s = 0; s < 100; ++s) {
            const auto y = oracle::sample_in_ball(rng, x, l, r);
            if (!y) return {false, "rejection sampling failed"};
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : ball) best = std::min(best, discrete_frechet(c, *y));
            if (best > eps * r + kSlack) return {false, "uncovered sample at config " + std::to_string(t)};
            worst = std::max(worst, best / (eps * r));
            ++samples;
        }
    }
    return {true, std::to_string(samples) + " samples over 10 (x, r, eps); worst dist/(eps r) = " +
                      fmt(worst)};
}

Outcome criterion8() {
    std::mt19937_64 rng(1008);
    std::uniform_int_distribution<std::size_t> n_dist(2, 8), m_dist(1, 10), kl(1, 2);
    std::size_t coarse = 0;
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        Instance inst;
        const std::size_t n = n_dist(rng);
        for (std::size_t i = 0; i < n; ++i) {
            inst.data.push_back(oracle::random_real_series(rng, m_dist(rng), 0, 10));
        }
        inst.k = kl(rng);
        inst.l = kl(rng);
        ReductionCache cache;
        PipelineConfig config;
        config.k = inst.k;
        config.l = inst.l;
        config.eps = kPipelineEps;
        config.solver = SolverKind::exhaustive;
        const auto result = nltas_pipeline(inst.data, config, cache);
        if (result.stats.solver_fallback) return {false, "exhaustive solver fell back"};
        const auto grid = oracle::opt_grid(inst.data, inst.k, inst.l, kPipelineEps,
                                           inst.l == 1 ? kGridPointsL1 : kGridPointsL2);
        coarse += grid.spacing > grid.target_spacing ? 1 : 0;
        const double cost = result.solution.cost;
        if (cost > (1 + kPipelineEps) * grid.cost + kSlack) {
            return {false, "instance " + std::to_string(t) + ": cost " + fmt(cost) + " > (1+eps) " +
                               fmt(grid.cost)};
        }
        if (grid.cost > 0) worst = std::max(worst, cost / grid.cost);
        g_instances.push_back(std::move(inst));
    }
    return {true, "50 instances; worst cost/OPT_grid = " + fmt(worst) + "; " +
                      std::to_string(coarse) + " grids capped above the target spacing"};
}

Outcome criterion9() {
    if (g_instances.size() != 50) return {false, "criterion 8 instances unavailable"};
    double worst = 0.0;
    for (const auto& inst : g_instances) {
        ReductionCache cache;
        const auto reduced = reduce_dataset(inst.data, inst.l, kPipelineEps / 16, kDefaultReductionCap, cache);
        std::vector<TimeSeries> clients;
        for (const auto& r : reduced) clients.push_back(r.series);
        auto f = candidate_centers(clients, inst.k, inst.l, kPipelineEps / 12).centers;
        for (std::size_t i = 0; f.size() < inst.k; ++i) f.push_back(f[i]);
        const DistanceMatrix d(clients, f);
        const double best = exhaustive_choice(d, inst.k).cost;
        const double local = local_search_choice(d, inst.k, 0).cost;
        if (local > kLocalSearchFactor * best) {
            return {false, "local " + fmt(local) + " > 5 x " + fmt(best)};
        }
        if (best > 0) worst = std::max(worst, local / best);
    }
    return {true, "50 instances; worst local/exhaustive = " + fmt(worst)};
}

// Runs the CLI binary, capturing stdout; returns the exit status.
int run_cli(const std::string& args, std::string& out) {
    const std::string cmd = std::string(FKM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return -1;
    out.clear();
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion10() {
    const fs::path dir = fs::temp_directory_path() / "fkm_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string corpus = (dir / "corpus.jsonl").string();
    const std::string cache = (dir / "cache.txt").string();
    {
        std::mt19937_64 rng(1010);
        std::ofstream out(corpus);
        for (int i = 0; i < 8; ++i) {
            const auto x = oracle::random_real_series(rng, 4 + i % 5, 0, 10);
            nlohmann::json j;
            j["id"] = "s" + std::to_string(i);
            j["values"] = std::vector<double>(x.begin(), x.end());
            out << j.dump() << '\n';
        }
    }
    const std::string base = "cluster --input " + corpus + " --k 2 --ell 2 --eps 0.5 ";
    std::string baseline;  // exhaustive, no cache
    for (const std::string solver : {"local-search", "exhaustive"}) {
        std::string a, b;
        const std::string args = base + "--solver " + solver + " --seed 42";
        if (run_cli(args + " --threads 1", a) != 0 || run_cli(args + " --threads 4", b) != 0) {
            return {false, solver + " run failed"};
        }
        if (a != b || a.empty()) return {false, solver + " output differs between runs"};
        baseline = a;
    }

    // Reducing at eps/16 warms the cache for the clustering runs.
    std::string first, second;
    const std::string reduce = "reduce --input " + corpus + " --ell 2 --eps 0.03125 --cache " + cache;
    if (run_cli(reduce, first) != 0 || run_cli(reduce, second) != 0) return {false, "reduce failed"};
    if (first != second) return {false, "cached reductions differ"};
    std::string warm;
    if (run_cli(base + "--solver exhaustive --seed 42 --cache " + cache, warm) != 0) {
        return {false, "cluster failed"};
    }
    auto warm_json = nlohmann::json::parse(warm);
    auto no_cache = nlohmann::json::parse(baseline);
    if (warm_json["stats"]["cache_hits"].get<int>() != 8) return {false, "warm run missed the cache"};
    warm_json["stats"].erase("cache_hits");
    no_cache["stats"].erase("cache_hits");
    if (warm_json.dump() != no_cache.dump()) return {false, "cache changed the clustering"};
    fs::remove_all(dir);
    return {true, "byte-identical runs; warm cache run has 8/8 hits and identical result"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "Frechet DP equals traversal brute force", kLimit1, criterion1},
        {2, "simplification error equals midpoint brute force", kLimit2, criterion2},
        {3, "quantisation keeps distances within (1 +- eps) and bounds the alphabet", kLimit3, criterion3},
        {4, "assignment DP equals sector-partition search", kLimit4, criterion4},
        {5, "profile_set equals brute force and is rank invariant", kLimit5, criterion5},
        {6, "complexity reduction keeps profiles and distances", kLimit6, criterion6},
        {7, "candidate ball covers the radius ball within eps r", kLimit7, criterion7},
        {8, "exhaustive pipeline within (1 + eps) of grid optimum", kLimit8, criterion8},
        {9, "local search within 5x of exhaustive", kLimit8, criterion9},
        {10, "CLI determinism and cache round trip", kLimit10, criterion10},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (o.pass && secs > c.limit) {
            o = {false, o.detail + "; over the " + fmt(c.limit) + " s budget"};
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " ("
                  << o.detail << "; " << fmt(secs) << " s)" << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
              << std::endl;
    return failed == 0 ? 0 : 1;
}
