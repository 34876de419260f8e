#include "fkm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fkm/frechet.hpp"
#include "fkm/parallel.hpp"
#include "fkm/pipeline.hpp"
#include "fkm/profile_reduction.hpp"
#include "fkm/simplify.hpp"

namespace fkm::cli {

using Json = nlohmann::ordered_json;

namespace {

std::string line_error(std::size_t lineno, const std::string& what) {
    return "line " + std::to_string(lineno) + ": " + what;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

TimeSeries csv_row(const std::string& line, std::size_t lineno) {
    std::vector<double> values;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        const std::string field =
            trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos
                                                                                   : comma - start));
        if (field.empty()) throw DataError(line_error(lineno, "empty field"));
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || ptr != field.data() + field.size()) {
            throw DataError(line_error(lineno, "cannot parse '" + field + "' as a number"));
        }
        if (!std::isfinite(v)) throw DataError(line_error(lineno, "non-finite value"));
        values.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return TimeSeries(std::move(values));
}

CorpusEntry jsonl_row(const std::string& line, std::size_t lineno) {
    Json obj;
    try {
        obj = Json::parse(line);
    } catch (const Json::parse_error& e) {
        throw DataError(line_error(lineno, std::string("invalid JSON: ") + e.what()));
    }
    if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string() ||
        !obj.contains("values") || !obj["values"].is_array()) {
        throw DataError(line_error(lineno, "expected {\"id\": string, \"values\": array}"));
    }
    std::vector<double> values;
    for (const auto& v : obj["values"]) {
        if (!v.is_number()) throw DataError(line_error(lineno, "non-numeric value"));
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw DataError(line_error(lineno, "non-finite value"));
        values.push_back(d);
    }
    if (values.empty()) throw DataError(line_error(lineno, "empty series"));
    return {obj["id"].get<std::string>(), TimeSeries(std::move(values))};
}

}  // namespace

Corpus parse_corpus(std::istream& in, CorpusFormat format) {
    Corpus corpus;
    std::set<std::string> ids;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (trim(line).empty()) throw DataError(line_error(lineno, "empty row"));
        CorpusEntry entry = format == CorpusFormat::csv
                                ? CorpusEntry{std::to_string(lineno), csv_row(line, lineno)}
                                : jsonl_row(line, lineno);
        if (!ids.insert(entry.id).second) {
            throw DataError(line_error(lineno, "duplicate id '" + entry.id + "'"));
        }
        corpus.push_back(std::move(entry));
    }
    if (in.bad()) throw DataError("read error");
    if (corpus.empty()) throw DataError("input contains no series");
    return corpus;
}

Corpus parse_corpus(const std::string& path, CorpusFormat format) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    try {
        return parse_corpus(in, format);
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

CorpusFormat format_from_path(const std::string& path) {
    const auto ext = std::filesystem::path(path).extension().string();
    return ext == ".jsonl" || ext == ".json" ? CorpusFormat::jsonl : CorpusFormat::csv;
}

namespace {

struct Options {
    std::string format;  // empty: by extension
    std::string a, b, input, cache, solver = "exhaustive";
    std::size_t k = 1, ell = 1, cap = kDefaultReductionCap;
    double eps = 0.5;
    std::uint64_t seed = 0;
    unsigned threads = default_thread_count();
    bool verbose = false;
};

Corpus load(const std::string& path, const Options& opt) {
    CorpusFormat format = format_from_path(path);
    if (opt.format == "csv") format = CorpusFormat::csv;
    if (opt.format == "jsonl") format = CorpusFormat::jsonl;
    return parse_corpus(path, format);
}

Json series_json(const TimeSeries& x) { return Json(std::vector<double>(x.begin(), x.end())); }

void load_cache(const Options& opt, ReductionCache& cache, std::ostream& err) {
    if (opt.cache.empty() || !std::filesystem::exists(opt.cache)) return;
    std::ifstream in(opt.cache);
    if (!in) throw DataError("cannot open cache '" + opt.cache + "'");
    cache.load(in, err);
}

void save_cache(const Options& opt, const ReductionCache& cache) {
    if (opt.cache.empty()) return;
    std::ofstream out(opt.cache, std::ios::trunc);
    if (!out) throw DataError("cannot write cache '" + opt.cache + "'");
    cache.save(out);
}

int cmd_frechet(const Options& opt, std::ostream& out) {
    const Corpus a = load(opt.a, opt);
    const Corpus b = load(opt.b, opt);
    if (a.size() != 1 || b.size() != 1) {
        throw DataError("frechet expects exactly one series per input file");
    }
    Json j;
    j["distance"] = discrete_frechet(a[0].series, b[0].series);
    out << j.dump() << '\n';
    return kOk;
}

int cmd_simplify(const Options& opt, std::ostream& out) {
    const Corpus corpus = load(opt.input, opt);
    Json arr = Json::array();
    for (const auto& e : corpus) {
        const Simplification s = min_error_simplification(e.series, opt.ell);
        Json j;
        j["id"] = e.id;
        j["simplified"] = series_json(s.series);
        j["delta"] = s.error;
        arr.push_back(std::move(j));
    }
    out << arr.dump() << '\n';
    return kOk;
}

std::vector<TimeSeries> series_of(const Corpus& corpus) {
    std::vector<TimeSeries> out;
    out.reserve(corpus.size());
    for (const auto& e : corpus) out.push_back(e.series);
    return out;
}

int cmd_reduce(const Options& opt, std::ostream& out, std::ostream& err) {
    const Corpus corpus = load(opt.input, opt);
    ReductionCache cache;
    load_cache(opt, cache, err);
    const auto data = series_of(corpus);
    const auto results = reduce_dataset(data, opt.ell, opt.eps, opt.cap, cache, opt.threads);
    save_cache(opt, cache);

    Json arr = Json::array();
    bool capped = false;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        Json j;
        j["id"] = corpus[i].id;
        j["reduced"] = series_json(r.series);
        j["original_complexity"] = r.source_complexity;
        j["reduced_complexity"] = r.series.size();
        if (r.cap_exceeded) {
            j["warning"] = "no equivalent series within the reduction cap; canonical quantized "
                           "series returned";
            err << "warning: series '" << corpus[i].id << "' exceeded the reduction cap\n";
            capped = true;
        }
        arr.push_back(std::move(j));
    }
    out << arr.dump() << '\n';
    return capped ? kCapExceeded : kOk;
}

int cmd_cluster(const Options& opt, std::ostream& out, std::ostream& err) {
    const Corpus corpus = load(opt.input, opt);
    ReductionCache cache;
    load_cache(opt, cache, err);

    PipelineConfig config;
    config.k = opt.k;
    config.l = opt.ell;
    config.eps = opt.eps;
    config.solver = opt.solver == "exhaustive" ? SolverKind::exhaustive : SolverKind::local_search;
    config.seed = opt.seed;
    config.reduction_cap = opt.cap;
    config.threads = opt.threads;
    config.timings = opt.verbose ? &err : nullptr;

    const auto data = series_of(corpus);
    PipelineResult result;
    try {
        result = nltas_pipeline(data, config, cache);
    } catch (const CapExceeded& e) {
        throw DataError(std::string(e.what()) + "; increase --eps or lower --ell");
    }
    save_cache(opt, cache);

    const auto& stats = result.stats;
    if (stats.reduction_warnings > 0) {
        err << "warning: " << stats.reduction_warnings
            << " series exceeded the reduction cap and were kept at canonical length\n";
    }
    if (stats.solver_fallback) {
        err << "warning: exhaustive search exceeds its budget; used local search instead\n";
    }

    const auto& sol = result.solution;
    Json j;
    j["centers"] = Json::array();
    for (const auto& c : sol.centers) j["centers"].push_back(series_json(c));
    j["assignment"] = Json::object();
    for (std::size_t i = 0; i < corpus.size(); ++i) j["assignment"][corpus[i].id] = sol.assignment[i];
    j["cost"] = sol.cost;
    j["solver"] = std::string(to_string(sol.solver_used));
    j["stats"]["cache_hits"] = stats.cache_hits;
    j["stats"]["candidates"] = stats.candidates;
    j["stats"]["reduced_max_complexity"] = stats.reduced_max_complexity;
    out << j.dump() << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"(k,l)-median clustering of time series under the discrete Frechet distance",
                 "fkm"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Print help for all subcommands and exit");

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "Input format (default: by file extension)")
            ->check(CLI::IsMember({"csv", "jsonl"}));
    };
    auto add_threads = [&](CLI::App* sub) {
        sub->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto* frechet = app.add_subcommand("frechet", "Distance between two single-series files");
    frechet->add_option("--a", opt.a, "First series file")->required();
    frechet->add_option("--b", opt.b, "Second series file")->required();
    add_format(frechet);

    auto* simplify = app.add_subcommand("simplify", "Minimum-error l-simplification per series");
    simplify->add_option("--input", opt.input, "Corpus file")->required();
    simplify->add_option("--ell", opt.ell, "Simplification complexity")
        ->required()
        ->check(CLI::PositiveNumber);
    add_format(simplify);

    auto* reduce = app.add_subcommand("reduce", "Complexity reduction per series");
    reduce->add_option("--input", opt.input, "Corpus file")->required();
    reduce->add_option("--ell", opt.ell, "Query complexity")->required()->check(CLI::PositiveNumber);
    reduce->add_option("--eps", opt.eps, "Approximation parameter in (0, 1]")
        ->required()
        ->check(CLI::Range(0.0, 1.0))
        ->check(CLI::PositiveNumber);
    reduce->add_option("--cap", opt.cap, "Longest reduced series searched")
        ->check(CLI::PositiveNumber);
    reduce->add_option("--cache", opt.cache, "Reduction cache file (read and rewritten)");
    add_format(reduce);
    add_threads(reduce);

    auto* cluster = app.add_subcommand("cluster", "(k,l)-median clustering");
    cluster->add_option("--input", opt.input, "Corpus file")->required();
    cluster->add_option("--k", opt.k, "Number of centers")->required()->check(CLI::PositiveNumber);
    cluster->add_option("--ell", opt.ell, "Center complexity")->required()->check(CLI::PositiveNumber);
    cluster->add_option("--eps", opt.eps, "Approximation parameter in (0, 1/2]")
        ->required()
        ->check(CLI::Range(0.0, 0.5))
        ->check(CLI::PositiveNumber);
    cluster->add_option("--solver", opt.solver, "exhaustive or local-search")
        ->check(CLI::IsMember({"exhaustive", "local-search"}));
    cluster->add_option("--seed", opt.seed, "Seed for local search");
    cluster->add_option("--cap", opt.cap, "Longest reduced series searched")
        ->check(CLI::PositiveNumber);
    cluster->add_option("--cache", opt.cache, "Reduction cache file (read and rewritten)");
    cluster->add_flag("--verbose", opt.verbose, "Print stage timings to standard error");
    add_format(cluster);
    add_threads(cluster);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (frechet->parsed()) return cmd_frechet(opt, out);
        if (simplify->parsed()) return cmd_simplify(opt, out);
        if (reduce->parsed()) return cmd_reduce(opt, out, err);
        return cmd_cluster(opt, out, err);
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kCapExceeded;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
}

}  // namespace fkm::cli
