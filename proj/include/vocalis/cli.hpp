#pragma once

#include "vocalis/classify.hpp"
#include "vocalis/corpus.hpp"
#include "vocalis/stats.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace vocalis {

// Default master seed; 1466 is the year the substance of these claims was
// written down.
inline constexpr std::uint64_t kDefaultSeed = 1466;

enum class Command { count, test, samplesize, simulate, report_all };

enum class OutputFormat { text, json, csv };

OutputFormat output_format_from_string(std::string_view text); // throws ConfigError

struct RunConfig {
    Command command = Command::count;
    std::filesystem::path corpus_manifest; // required except for samplesize
    std::filesystem::path out_dir = "out";
    CountingScheme scheme;                 // per-command default applied by the parser
    NormalizationOptions normalization;
    double alpha = 0.05;
    double target_power = 0.95;
    std::vector<int> ks = {1, 2, 3, 4, 5, 6};
    std::size_t reps = 10000;
    std::uint64_t seed = kDefaultSeed;
    std::vector<TestId> tests = {TestId::T1, TestId::T2, TestId::T3};
    SampleSizeModel model = SampleSizeModel::normal_approximation;
    std::optional<double> p0_override; // null proportion (T1/T2)
    std::optional<double> p1_override; // alternative / poet proportion
    std::optional<double> p2_override; // orator proportion (T3)
    OutputFormat format = OutputFormat::text;
    unsigned threads = 0;
};

// Parses "2", "1,3,5", or "1..6".
std::vector<int> parse_k_list(std::string_view text); // throws ConfigError

// Executes one command, writing artifacts under config.out_dir and a summary
// to `out`. Throws ConfigError / DataError; partially written output files
// are removed before the exception propagates.
void run(const RunConfig& config, std::ostream& out);

// Maps an exception (or success) to the process exit code: 0 success,
// 1 configuration error, 2 data error.
int run_for_exit_code(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace vocalis
