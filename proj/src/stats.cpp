#include "vocalis/stats.hpp"

#include "vocalis/distributions.hpp"
#include "vocalis/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vocalis {

namespace {

struct MeanVar {
    double mean = 0.0;
    double variance = 0.0; // n-1 denominator
    std::size_t n = 0;
};

MeanVar mean_and_variance(std::span<const double> xs) {
    MeanVar mv;
    mv.n = xs.size();
    if (mv.n == 0) {
        return mv;
    }
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    mv.mean = sum / static_cast<double>(mv.n);
    double ss = 0.0;
    for (double x : xs) {
        const double d = x - mv.mean;
        ss += d * d;
    }
    mv.variance = mv.n > 1 ? ss / static_cast<double>(mv.n - 1) : 0.0;
    return mv;
}

double directed_p_value(double t, double df, Direction direction) {
    const double upper = dist::student_t_upper_tail(t, df);
    return direction == Direction::greater ? upper : 1.0 - upper;
}

void check_proportion(double p, const char* name) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw ConfigError(std::string(name) + " must lie strictly between 0 and 1");
    }
}

void check_level(double alpha, double target_power) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw ConfigError("alpha must lie strictly between 0 and 1");
    }
    if (!(target_power > 0.0) || !(target_power < 1.0)) {
        throw ConfigError("target power must lie strictly between 0 and 1");
    }
}

SampleSizeResult make_result(std::int64_t letters, SampleSizeModel model) {
    SampleSizeResult r;
    r.letters = letters;
    r.pages = (letters + kPageLetters - 1) / kPageLetters;
    r.model = model;
    return r;
}

// Smallest critical value c with P[X >= c | p0] <= alpha; may be n+1,
// meaning the critical region is empty.
std::int64_t binomial_critical_value(std::int64_t n, double p0, double alpha) {
    std::int64_t lo = 0;      // tail(lo) > alpha
    std::int64_t hi = n + 1;  // tail(hi) = 0 <= alpha
    if (dist::binomial_upper_tail(n, p0, lo) <= alpha) {
        return lo;
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (dist::binomial_upper_tail(n, p0, mid) <= alpha) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

// Smallest n whose exact test reaches the target power. Exact power is not
// monotone in n (it sawtooths as the critical value steps), so scan n
// upward, carrying the critical value, which is nondecreasing in n.
std::int64_t exact_binomial_sample_size(double p0, double p1, double alpha, double target_power) {
    constexpr std::int64_t kMaxN = 50'000'000;
    std::int64_t c = binomial_critical_value(1, p0, alpha);
    for (std::int64_t n = 1; n <= kMaxN; ++n) {
        while (c <= n && dist::binomial_upper_tail(n, p0, c) > alpha) {
            ++c;
        }
        if (dist::binomial_upper_tail(n, p1, c) >= target_power) {
            return n;
        }
    }
    throw ConfigError("exact binomial sample size exceeds search bound");
}

} // namespace

std::string_view to_string(Direction direction) {
    return direction == Direction::greater ? "greater" : "less";
}

std::string_view to_string(TestId id) {
    switch (id) {
    case TestId::T1: return "T1";
    case TestId::T2: return "T2";
    case TestId::T3: return "T3";
    }
    throw ConfigError("unknown test id");
}

TestId test_id_from_string(std::string_view text) {
    if (text == "T1" || text == "t1") {
        return TestId::T1;
    }
    if (text == "T2" || text == "t2") {
        return TestId::T2;
    }
    if (text == "T3" || text == "t3") {
        return TestId::T3;
    }
    throw ConfigError("unknown test id \"" + std::string(text) + "\" (expected T1, T2, or T3)");
}

HypothesisSpec make_hypothesis(TestId id, double alpha) {
    HypothesisSpec spec;
    spec.id = id;
    spec.alpha = alpha;
    switch (id) {
    case TestId::T1:
        spec.null_value = 7.0 / 16.0;
        break;
    case TestId::T2:
        spec.null_value = 3.0 / 7.0;
        break;
    case TestId::T3:
        spec.null_value = 0.0; // equality of two proportions
        break;
    }
    return spec;
}

std::vector<HypothesisSpec> default_hypotheses(double alpha) {
    return {make_hypothesis(TestId::T1, alpha), make_hypothesis(TestId::T2, alpha),
            make_hypothesis(TestId::T3, alpha)};
}

TestResult one_sample_t_test(std::span<const double> xs, double mu0, Direction direction) {
    if (xs.size() < 2) {
        throw DataError("one-sample t-test needs at least two values");
    }
    const MeanVar mv = mean_and_variance(xs);
    if (!(mv.variance > 0.0)) {
        throw DataError("one-sample t-test needs nonzero sample variance");
    }
    TestResult r;
    r.direction = direction;
    r.df = static_cast<double>(mv.n - 1);
    r.statistic = (mv.mean - mu0) / std::sqrt(mv.variance / static_cast<double>(mv.n));
    r.p_value = directed_p_value(r.statistic, r.df, direction);
    return r;
}

TestResult two_sample_t_test(std::span<const double> xs, std::span<const double> ys,
                             Direction direction, VarianceModel variance) {
    if (xs.size() < 2 || ys.size() < 2) {
        throw DataError("two-sample t-test needs at least two values per group");
    }
    const MeanVar a = mean_and_variance(xs);
    const MeanVar b = mean_and_variance(ys);
    const double n1 = static_cast<double>(a.n);
    const double n2 = static_cast<double>(b.n);

    TestResult r;
    r.direction = direction;
    if (variance == VarianceModel::pooled) {
        const double pooled =
            ((n1 - 1.0) * a.variance + (n2 - 1.0) * b.variance) / (n1 + n2 - 2.0);
        if (!(pooled > 0.0)) {
            throw DataError("two-sample t-test needs nonzero pooled variance");
        }
        r.df = n1 + n2 - 2.0;
        r.statistic = (a.mean - b.mean) / std::sqrt(pooled * (1.0 / n1 + 1.0 / n2));
    } else {
        const double se2 = a.variance / n1 + b.variance / n2;
        if (!(se2 > 0.0)) {
            throw DataError("two-sample t-test needs nonzero variance");
        }
        const double v1 = a.variance / n1;
        const double v2 = b.variance / n2;
        r.df = se2 * se2 / (v1 * v1 / (n1 - 1.0) + v2 * v2 / (n2 - 1.0));
        r.statistic = (a.mean - b.mean) / std::sqrt(se2);
    }
    r.p_value = directed_p_value(r.statistic, r.df, direction);
    return r;
}

SampleSizeResult sample_size_one_proportion(double p0, double p1, double alpha,
                                            double target_power, SampleSizeModel model) {
    check_proportion(p0, "p0");
    check_proportion(p1, "p1");
    check_level(alpha, target_power);
    if (p1 == p0) {
        throw ConfigError("p1 must differ from p0: no sample size can separate equal proportions");
    }

    if (model == SampleSizeModel::exact_binomial) {
        if (p1 < p0) {
            throw ConfigError("exact binomial model evaluates H1: p > p0 and needs p1 > p0");
        }
        return make_result(exact_binomial_sample_size(p0, p1, alpha, target_power),
                           SampleSizeModel::exact_binomial);
    }

    const double z_alpha = dist::normal_quantile(1.0 - alpha);
    const double z_power = dist::normal_quantile(target_power);
    const double numerator =
        z_alpha * std::sqrt(p0 * (1.0 - p0)) + z_power * std::sqrt(p1 * (1.0 - p1));
    const double root = numerator / (p1 - p0);
    const auto n = static_cast<std::int64_t>(std::ceil(root * root));
    return make_result(std::max<std::int64_t>(n, 1), SampleSizeModel::normal_approximation);
}

SampleSizeResult sample_size_two_proportions(double p1, double p2, double alpha,
                                             double target_power) {
    check_proportion(p1, "p1");
    check_proportion(p2, "p2");
    check_level(alpha, target_power);
    if (p1 == p2) {
        throw ConfigError("p1 must differ from p2: no sample size can separate equal proportions");
    }

    const double z_alpha = dist::normal_quantile(1.0 - alpha);
    const double z_power = dist::normal_quantile(target_power);
    const double pbar = 0.5 * (p1 + p2);
    const double numerator = z_alpha * std::sqrt(2.0 * pbar * (1.0 - pbar)) +
                             z_power * std::sqrt(p1 * (1.0 - p1) + p2 * (1.0 - p2));
    const double root = numerator / (p1 - p2);
    const auto n = static_cast<std::int64_t>(std::ceil(root * root));
    return make_result(std::max<std::int64_t>(n, 1), SampleSizeModel::normal_approximation);
}

double exact_binomial_power(double p0, double p1, double alpha, std::int64_t n) {
    if (n < 1) {
        throw ConfigError("exact binomial power requires n >= 1");
    }
    check_proportion(p0, "p0");
    check_proportion(p1, "p1");
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw ConfigError("alpha must lie strictly between 0 and 1");
    }
    const std::int64_t c = binomial_critical_value(n, p0, alpha);
    return dist::binomial_upper_tail(n, p1, c);
}

} // namespace vocalis
