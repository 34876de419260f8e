#ifndef FKM_CLI_HPP
#define FKM_CLI_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fkm/core.hpp"

namespace fkm::cli {

enum ExitCode : int {
    kOk = 0,
    kUsageError = 1,
    kDataError = 2,
    kCapExceeded = 3,
};

/// Malformed or invalid input data.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class CorpusFormat { csv, jsonl };

struct CorpusEntry {
    std::string id;
    TimeSeries series;
};

/// Ordered, id-unique, non-empty collection of series.
using Corpus = std::vector<CorpusEntry>;

/**
 * csv: one series per line, comma-separated decimals, id = 1-based line number.
 * jsonl: one {"id": string, "values": [numbers]} object per line.
 * Throws DataError naming the offending line.
 */
Corpus parse_corpus(std::istream& in, CorpusFormat format);
Corpus parse_corpus(const std::string& path, CorpusFormat format);

/// jsonl for *.jsonl / *.json paths, csv otherwise.
CorpusFormat format_from_path(const std::string& path);

/**
 * Runs one subcommand (frechet, simplify, reduce, cluster). args excludes
 * the program name. Results go to `out` as JSON, diagnostics to `err`.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fkm::cli

#endif  // FKM_CLI_HPP
