#include "fkm/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <stdexcept>

namespace fkm {

namespace {

class StageTimer {
public:
    explicit StageTimer(std::ostream* out) : out_(out), start_(std::chrono::steady_clock::now()) {}

    void lap(const char* stage) {
        const auto now = std::chrono::steady_clock::now();
        if (out_ != nullptr) {
            const std::chrono::duration<double, std::milli> ms = now - start_;
            *out_ << "[timing] " << stage << ": " << ms.count() << " ms\n";
        }
        start_ = now;
    }

private:
    std::ostream* out_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

PipelineResult nltas_pipeline(std::span<const TimeSeries> data, const PipelineConfig& config,
                              ReductionCache& cache) {
    if (data.empty()) throw std::invalid_argument("input must contain at least one series");
    if (config.k == 0 || config.l == 0) throw std::invalid_argument("k and l must be positive");
    if (!(config.eps > 0.0 && config.eps <= 0.5)) {
        throw std::invalid_argument("eps must lie in (0, 1/2]");
    }

    PipelineResult result;
    auto& stats = result.stats;
    StageTimer timer(config.timings);

    const auto reduced = reduce_dataset(data, config.l, config.eps / 16.0, config.reduction_cap,
                                        cache, config.threads);
    std::vector<TimeSeries> clients;
    clients.reserve(reduced.size());
    for (const auto& r : reduced) {
        stats.cache_hits += r.cache_hit ? 1 : 0;
        stats.reduction_warnings += r.cap_exceeded ? 1 : 0;
        stats.reduced_max_complexity = std::max(stats.reduced_max_complexity, r.series.size());
        clients.push_back(r.series);
    }
    timer.lap("reduce");

    CandidateSet candidates = candidate_centers(clients, config.k, config.l, config.eps / 12.0,
                                                config.candidate_cap, config.threads);
    auto& facilities = candidates.centers;
    stats.candidates = facilities.size();
    for (std::size_t i = 0; facilities.size() < config.k; ++i) {
        facilities.push_back(facilities[i]);
    }
    timer.lap("candidates");

    const DistanceMatrix distances(clients, facilities, config.threads);
    timer.lap("distances");

    FacilityChoice choice;
    SolverKind used = config.solver;
    if (config.solver == SolverKind::exhaustive) {
        try {
            choice = exhaustive_choice(distances, config.k, config.exhaustive_cap);
        } catch (const CapExceeded&) {
            stats.solver_fallback = true;
            used = SolverKind::local_search;
        }
    }
    if (used == SolverKind::local_search) {
        choice = local_search_choice(distances, config.k, config.seed);
    }
    timer.lap("solve");

    std::vector<TimeSeries> centers;
    centers.reserve(choice.facilities.size());
    for (std::size_t f : choice.facilities) centers.push_back(facilities[f]);
    result.solution = make_solution(data, std::move(centers), used);
    timer.lap("assign");
    return result;
}

}  // namespace fkm
