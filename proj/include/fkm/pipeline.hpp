#ifndef FKM_PIPELINE_HPP
#define FKM_PIPELINE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "fkm/candidates.hpp"
#include "fkm/cluster.hpp"
#include "fkm/core.hpp"
#include "fkm/profile_reduction.hpp"

namespace fkm {

struct PipelineConfig {
    std::size_t k = 1;
    std::size_t l = 1;
    double eps = 0.5;  // in (0, 1/2]
    SolverKind solver = SolverKind::exhaustive;
    std::uint64_t seed = 0;
    std::size_t reduction_cap = kDefaultReductionCap;
    std::uint64_t exhaustive_cap = kDefaultExhaustiveCap;
    std::size_t candidate_cap = kDefaultCandidateCap;
    unsigned threads = 1;
    std::ostream* timings = nullptr;  // stage timings are written here when set
};

struct PipelineStats {
    std::size_t cache_hits = 0;
    std::size_t candidates = 0;
    std::size_t reduced_max_complexity = 0;
    std::size_t reduction_warnings = 0;  // series kept at canonical length (cap reached)
    bool solver_fallback = false;        // exhaustive search was over budget; local search used
};

struct PipelineResult {
    ClusterSolution solution;
    PipelineStats stats;
};

/**
 * (k,l)-median clustering of `data`.
 *
 * 1. Reduce every series with complexity_reduction at eps/16.
 * 2. Build candidate centres for the reduced series at eps/12.
 * 3. Pick k candidates with the configured solver on (reduced, candidates).
 *
 * The returned assignment and cost are evaluated against the original
 * series. Reduction cap overruns and an over-budget exhaustive search are
 * reported in the stats instead of failing.
 */
PipelineResult nltas_pipeline(std::span<const TimeSeries> data, const PipelineConfig& config,
                              ReductionCache& cache);

}  // namespace fkm

#endif  // FKM_PIPELINE_HPP
