#pragma once

#include "vocalis/corpus.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace vocalis {

// Letters per page; Alberti's 300 vowels + 400 consonants.
inline constexpr std::int64_t kPageLetters = 700;

// Vowel shares observed on our corpus under the i-before-vowel count,
// taken at 4-decimal precision. Defaults for the sample-size commands.
inline constexpr double kDefaultPoetVowelShare = 0.4441;
inline constexpr double kDefaultOratorVowelShare = 0.4319;

enum class Direction { greater, less };

std::string_view to_string(Direction direction);

enum class TestId { T1, T2, T3 };

std::string_view to_string(TestId id);
TestId test_id_from_string(std::string_view text); // throws ConfigError

// T1: poets' vowel share P > 7/16. T2: orators' share R > 3/7.
// T3: P > R (two-sample; null_value unused).
struct HypothesisSpec {
    TestId id = TestId::T1;
    double null_value = 7.0 / 16.0;
    double alpha = 0.05;
};

HypothesisSpec make_hypothesis(TestId id, double alpha = 0.05);
std::vector<HypothesisSpec> default_hypotheses(double alpha = 0.05);

struct TestResult {
    double statistic = 0.0;
    double df = 0.0;
    double p_value = 1.0;
    Direction direction = Direction::greater;
};

// Per-document vowel shares for one group, plus the aggregate share
// computed from pooled counts.
struct ProportionSummary {
    Category group = Category::poet;
    std::vector<double> values;
    double aggregate = 0.0;
};

// One-sample Student t-test of mean(xs) against mu0. Sample standard
// deviation uses the n-1 denominator; df = n-1. Throws DataError when fewer
// than two values or zero variance.
TestResult one_sample_t_test(std::span<const double> xs, double mu0, Direction direction);

enum class VarianceModel { pooled, unequal };

// Two-sample t-test; direction `greater` tests H1: mean(xs) > mean(ys).
// Pooled variance with df = n1+n2-2 by default; VarianceModel::unequal
// selects the Welch variant with Satterthwaite df.
TestResult two_sample_t_test(std::span<const double> xs, std::span<const double> ys,
                             Direction direction, VarianceModel variance = VarianceModel::pooled);

enum class SampleSizeModel { normal_approximation, exact_binomial };

SampleSizeModel sample_size_model_from_string(std::string_view text); // throws ConfigError

struct SampleSizeResult {
    std::int64_t letters = 0; // minimal n
    std::int64_t pages = 0;   // ceil(letters / 700)
    SampleSizeModel model = SampleSizeModel::normal_approximation;
};

// Minimal n for the one-sided one-proportion test of p0 against p1 > p0 to
// reach `target_power` at level `alpha`. Throws ConfigError when p1 == p0
// or parameters leave (0,1).
SampleSizeResult sample_size_one_proportion(double p0, double p1, double alpha,
                                            double target_power,
                                            SampleSizeModel model = SampleSizeModel::normal_approximation);

// Minimal per-group n for the one-sided two-proportion test (p1 vs p2).
// Only the normal-approximation model is defined for two groups.
SampleSizeResult sample_size_two_proportions(double p1, double p2, double alpha,
                                             double target_power);

// Power of the exact one-sided level-alpha binomial test of p0 against
// `greater`, evaluated under p1, with the conservative (non-randomized)
// critical value. n >= 1.
double exact_binomial_power(double p0, double p1, double alpha, std::int64_t n);

} // namespace vocalis
