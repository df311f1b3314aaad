#include "vocalis/cli.hpp"
#include "vocalis/error.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

struct CliOptions {
    std::string corpus;
    std::string out_dir = "out";
    std::string scheme;
    std::string prefixes;
    std::string tests = "T1,T2,T3";
    std::string ks = "1..6";
    std::string model = "normal";
    std::string format = "text";
    double alpha = 0.05;
    double power = 0.95;
    std::size_t reps = 10000;
    std::uint64_t seed = vocalis::kDefaultSeed;
    unsigned threads = 0;
    bool no_strip_numerals = false;
    double p0 = -1.0;
    double p1 = -1.0;
    double p2 = -1.0;
};

std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) {
            comma = text.size();
        }
        if (comma > pos) {
            out.push_back(text.substr(pos, comma - pos));
        }
        if (comma == text.size()) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

vocalis::RunConfig build_config(const CliOptions& opt, vocalis::Command command) {
    using namespace vocalis;
    RunConfig config;
    config.command = command;
    config.corpus_manifest = opt.corpus;
    config.out_dir = opt.out_dir;
    config.alpha = opt.alpha;
    config.target_power = opt.power;
    config.reps = opt.reps;
    config.seed = opt.seed;
    config.threads = opt.threads;
    config.normalization.strip_roman_numerals = !opt.no_strip_numerals;
    config.format = output_format_from_string(opt.format);
    config.model = opt.model == "exact"
                       ? SampleSizeModel::exact_binomial
                       : (opt.model == "normal" ? SampleSizeModel::normal_approximation
                                                : throw ConfigError("unknown model \"" + opt.model +
                                                                    "\" (expected normal or exact)"));

    std::string scheme_name = opt.scheme;
    if (scheme_name.empty()) {
        // The count command defaults to the grammatical rules; everything
        // downstream of the vowel-share claims uses i-before-vowel.
        scheme_name = command == Command::count ? "grammatical" : "i-before-vowel";
    }
    config.scheme.kind = scheme_from_string(scheme_name);
    if (!opt.prefixes.empty()) {
        config.scheme.prefixes = split_csv_list(opt.prefixes);
    }

    config.tests.clear();
    for (const auto& name : split_csv_list(opt.tests)) {
        config.tests.push_back(test_id_from_string(name));
    }
    if (config.tests.empty()) {
        throw ConfigError("no tests selected");
    }
    config.ks = parse_k_list(opt.ks);

    if (opt.p0 >= 0.0) {
        config.p0_override = opt.p0;
    }
    if (opt.p1 >= 0.0) {
        config.p1_override = opt.p1;
    }
    if (opt.p2 >= 0.0) {
        config.p2_override = opt.p2;
    }
    return config;
}

void add_corpus_options(CLI::App* cmd, CliOptions& opt, bool required) {
    auto* corpus = cmd->add_option("--corpus", opt.corpus, "corpus manifest (JSON)");
    if (required) {
        corpus->required();
    }
    cmd->add_flag("--no-strip-numerals", opt.no_strip_numerals,
                  "keep Roman-numeral words when normalizing");
    cmd->add_option("--prefixes", opt.prefixes,
                    "comma-separated prefixes for the grammatical i rule (default ad,ab,con,ex)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vocalis: vowel statistics for a Latin corpus.\n"
                 "Counts vowels under three schemes, tests the claimed vowel shares\n"
                 "(poets > 7/16, orators > 3/7, poets > orators), sizes the samples the\n"
                 "claims need, and estimates test power by resampling 700-letter pages."};
    app.require_subcommand(1);

    CliOptions opt;

    auto* count = app.add_subcommand("count", "count letters and write the percentage table");
    add_corpus_options(count, opt, true);
    count->add_option("--scheme", opt.scheme, "naive|grammatical|i-before-vowel (default grammatical)");
    count->add_option("--out-dir", opt.out_dir, "output directory");

    auto* test = app.add_subcommand("test", "run the vowel-share hypothesis tests");
    test->alias("ttest");
    add_corpus_options(test, opt, true);
    test->add_option("--scheme", opt.scheme, "naive|grammatical|i-before-vowel (default i-before-vowel)");
    test->add_option("--tests", opt.tests, "comma-separated subset of T1,T2,T3");
    test->add_option("--alpha", opt.alpha, "significance level");
    test->add_option("--format", opt.format, "text|json|csv");

    auto* samplesize = app.add_subcommand(
        "samplesize", "pages needed for 95% power (normal approximation or exact binomial)");
    samplesize->add_option("--test", opt.tests, "T1|T2|T3 or a comma-separated list");
    samplesize->add_option("--alpha", opt.alpha, "significance level");
    samplesize->add_option("--power", opt.power, "target power");
    samplesize->add_option("--model", opt.model, "normal|exact");
    samplesize->add_option("--p0", opt.p0, "override the null proportion (T1/T2)");
    samplesize->add_option("--p1", opt.p1, "override the alternative (T1/T2) or poet (T3) proportion");
    samplesize->add_option("--p2", opt.p2, "override the orator proportion (T3)");
    samplesize->add_option("--format", opt.format, "text|json|csv");

    auto* simulate = app.add_subcommand(
        "simulate", "Monte-Carlo power of the tests from random pages; writes table3/table4 CSV");
    add_corpus_options(simulate, opt, true);
    simulate->add_option("--scheme", opt.scheme, "counting scheme (default i-before-vowel)");
    simulate->add_option("--k", opt.ks, "pages per document: N, N..M, or a comma list");
    simulate->add_option("--reps", opt.reps, "replications");
    simulate->add_option("--seed", opt.seed, "master RNG seed");
    simulate->add_option("--tests", opt.tests, "comma-separated subset of T1,T2,T3");
    simulate->add_option("--alpha", opt.alpha, "significance level");
    simulate->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
    simulate->add_option("--out-dir", opt.out_dir, "output directory");

    auto* report = app.add_subcommand("report-all",
                                      "write every table and figure (CSV + SVG) in one run");
    add_corpus_options(report, opt, true);
    report->add_option("--scheme", opt.scheme,
                       "scheme for the page-resampling outputs (default i-before-vowel)");
    report->add_option("--reps", opt.reps, "replications for tables 3/4 and figure 3");
    report->add_option("--seed", opt.seed, "master RNG seed");
    report->add_option("--k", opt.ks, "pages per document for table 4");
    report->add_option("--alpha", opt.alpha, "significance level");
    report->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
    report->add_option("--out-dir", opt.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    vocalis::Command command;
    if (count->parsed()) {
        command = vocalis::Command::count;
    } else if (test->parsed()) {
        command = vocalis::Command::test;
    } else if (samplesize->parsed()) {
        command = vocalis::Command::samplesize;
    } else if (simulate->parsed()) {
        command = vocalis::Command::simulate;
    } else {
        command = vocalis::Command::report_all;
    }

    try {
        const vocalis::RunConfig config = build_config(opt, command);
        return vocalis::run_for_exit_code(config, std::cout, std::cerr);
    } catch (const vocalis::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
