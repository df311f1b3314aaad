#include "vocalis/cli.hpp"

#include "vocalis/error.hpp"
#include "vocalis/mc.hpp"
#include "vocalis/report.hpp"
#include "vocalis/rng.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace vocalis {

namespace {

// Removes everything this run wrote if it fails partway.
class OutputTracker {
public:
    void record(const std::filesystem::path& path) { written_.push_back(path); }

    void discard_all() {
        for (const auto& path : written_) {
            std::error_code ec;
            std::filesystem::remove(path, ec);
        }
        written_.clear();
    }

private:
    std::vector<std::filesystem::path> written_;
};

void write_file(OutputTracker& tracker, const std::filesystem::path& path,
                std::string_view content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    tracker.record(path);
    out << content;
    if (!out) {
        throw DataError("failed while writing " + path.string());
    }
}

Corpus load_corpus_for(const RunConfig& config) {
    if (config.corpus_manifest.empty()) {
        throw ConfigError("this command needs --corpus <manifest.json>");
    }
    const Manifest manifest = Manifest::load(config.corpus_manifest);
    return load_corpus(manifest, config.normalization);
}

std::vector<DocumentStats> document_stats(const Corpus& corpus, const CountingScheme& scheme) {
    std::vector<DocumentStats> stats;
    stats.reserve(corpus.documents.size());
    for (const auto& doc : corpus.documents) {
        DocumentStats ds;
        ds.code = doc.meta.code;
        ds.category = doc.meta.category;
        ds.tally = tally(classify(doc.seq, scheme));
        stats.push_back(std::move(ds));
    }
    return stats;
}

ProportionSummary proportion_summary(std::span<const DocumentStats> stats, Category category) {
    ProportionSummary summary;
    summary.group = category;
    std::uint64_t vowels = 0;
    std::uint64_t total = 0;
    for (const auto& doc : stats) {
        if (doc.category != category) {
            continue;
        }
        if (doc.tally.total == 0) {
            throw DataError("document " + doc.code + " has no letters");
        }
        summary.values.push_back(static_cast<double>(doc.tally.vowels) /
                                 static_cast<double>(doc.tally.total));
        vowels += doc.tally.vowels;
        total += doc.tally.total;
    }
    summary.aggregate = total > 0 ? static_cast<double>(vowels) / static_cast<double>(total) : 0.0;
    return summary;
}

std::string format_p(double p) {
    std::ostringstream out;
    out << std::scientific << std::setprecision(3) << p;
    return out.str();
}

struct TestRow {
    std::string id;
    std::string detail;
    Direction direction = Direction::greater;
    TestResult result;
    double alpha = 0.05;
};

void print_test_rows(const std::vector<TestRow>& rows, OutputFormat format, std::ostream& out) {
    switch (format) {
    case OutputFormat::text:
        for (const auto& row : rows) {
            out << row.id << " (" << row.detail << "): t=" << std::fixed << std::setprecision(4)
                << row.result.statistic << std::defaultfloat << ", df=" << row.result.df
                << ", one-sided p=" << format_p(row.result.p_value) << " -> "
                << (row.result.p_value < row.alpha ? "reject" : "no rejection") << " at "
                << row.alpha * 100 << "%\n";
        }
        break;
    case OutputFormat::json: {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& row : rows) {
            doc.push_back({{"id", row.id},
                           {"detail", row.detail},
                           {"direction", std::string(to_string(row.direction))},
                           {"statistic", row.result.statistic},
                           {"df", row.result.df},
                           {"p_value", row.result.p_value},
                           {"alpha", row.alpha},
                           {"reject", row.result.p_value < row.alpha}});
        }
        out << doc.dump(2) << "\n";
        break;
    }
    case OutputFormat::csv: {
        CsvTable table;
        table.header = {"id", "detail", "direction", "statistic", "df", "p_value", "reject"};
        for (const auto& row : rows) {
            std::ostringstream stat;
            stat << std::setprecision(10) << row.result.statistic;
            std::ostringstream df;
            df << std::setprecision(10) << row.result.df;
            table.rows.push_back({row.id, row.detail, std::string(to_string(row.direction)),
                                  stat.str(), df.str(), format_p(row.result.p_value),
                                  row.result.p_value < row.alpha ? "yes" : "no"});
        }
        out << table.to_string();
        break;
    }
    }
}

void run_count(const RunConfig& config, OutputTracker& tracker, std::ostream& out) {
    const Corpus corpus = load_corpus_for(config);
    for (const auto& warning : corpus.warnings) {
        out << "warning: " << warning << "\n";
    }
    const auto stats = document_stats(corpus, config.scheme);

    out << "scheme: " << to_string(config.scheme.kind) << "\n";
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
        const auto& doc = corpus.documents[i];
        out << "  " << doc.meta.code << " (" << to_string(doc.meta.category)
            << "): " << doc.seq.size() << " letters";
        if (stats[i].tally.total > 0) {
            out << ", vowels " << percent_cell(stats[i].tally.vowels, stats[i].tally.total) << "%";
        }
        out << "\n";
    }
    out << "total letters: " << corpus.total_letters() << "\n";

    const CsvTable table = percentage_table(stats, config.scheme.kind);
    const char* name = config.scheme.kind == SchemeKind::grammatical ? "table1.csv" : "table2.csv";
    const auto path = config.out_dir / name;
    write_file(tracker, path, table.to_string());
    out << "wrote " << path.string() << "\n";
}

void run_test(const RunConfig& config, OutputTracker& tracker, std::ostream& out) {
    (void)tracker;
    const Corpus corpus = load_corpus_for(config);
    const auto stats = document_stats(corpus, config.scheme);
    const ProportionSummary poets = proportion_summary(stats, Category::poet);
    const ProportionSummary orators = proportion_summary(stats, Category::orator);

    std::vector<TestRow> rows;
    for (TestId id : config.tests) {
        const HypothesisSpec spec = make_hypothesis(id, config.alpha);
        TestRow row;
        row.id = std::string(to_string(id));
        row.alpha = config.alpha;
        row.direction = Direction::greater;
        switch (id) {
        case TestId::T1:
            row.detail = "poets' vowel share > 7/16";
            row.result = one_sample_t_test(poets.values, spec.null_value, Direction::greater);
            break;
        case TestId::T2:
            row.detail = "orators' vowel share > 3/7";
            row.result = one_sample_t_test(orators.values, spec.null_value, Direction::greater);
            break;
        case TestId::T3:
            row.detail = "poets' vowel share > orators'";
            row.result = two_sample_t_test(poets.values, orators.values, Direction::greater);
            break;
        }
        rows.push_back(std::move(row));
    }

    // Under the grammatical count, also compare each vowel letter's share:
    // a, e, y claimed larger for poets; i, o, u claimed smaller.
    if (config.scheme.kind == SchemeKind::grammatical) {
        for (char letter : kVowelLetters) {
            const Direction direction =
                (letter == 'a' || letter == 'e' || letter == 'y') ? Direction::greater
                                                                  : Direction::less;
            std::vector<double> poet_vals;
            std::vector<double> orator_vals;
            for (const auto& doc : stats) {
                const double share = 100.0 * static_cast<double>(doc.tally.vowel_count(letter)) /
                                     static_cast<double>(doc.tally.total);
                (doc.category == Category::poet ? poet_vals : orator_vals).push_back(share);
            }
            TestRow row;
            row.id = std::string(1, static_cast<char>(letter - 'a' + 'A'));
            row.detail = std::string("percent of ") + letter + " " +
                         (direction == Direction::greater ? "larger" : "smaller") + " for poets";
            row.direction = direction;
            row.alpha = config.alpha;
            row.result = two_sample_t_test(poet_vals, orator_vals, direction);
            rows.push_back(std::move(row));
        }
    }

    out << "scheme: " << to_string(config.scheme.kind) << "; poets aggregate "
        << std::fixed << std::setprecision(4) << poets.aggregate << ", orators aggregate "
        << orators.aggregate << std::defaultfloat << "\n";
    print_test_rows(rows, config.format, out);
}

void run_samplesize(const RunConfig& config, std::ostream& out) {
    struct SizeRow {
        std::string id;
        std::string detail;
        SampleSizeResult result;
        double p0 = 0.0;
        double p1 = 0.0;
        bool per_group = false;
    };
    std::vector<SizeRow> rows;
    for (TestId id : config.tests) {
        SizeRow row;
        row.id = std::string(to_string(id));
        switch (id) {
        case TestId::T1: {
            row.p0 = config.p0_override.value_or(7.0 / 16.0);
            row.p1 = config.p1_override.value_or(kDefaultPoetVowelShare);
            row.detail = "P > 7/16";
            row.result = sample_size_one_proportion(row.p0, row.p1, config.alpha,
                                                    config.target_power, config.model);
            break;
        }
        case TestId::T2: {
            row.p0 = config.p0_override.value_or(3.0 / 7.0);
            row.p1 = config.p1_override.value_or(kDefaultOratorVowelShare);
            row.detail = "R > 3/7";
            row.result = sample_size_one_proportion(row.p0, row.p1, config.alpha,
                                                    config.target_power, config.model);
            break;
        }
        case TestId::T3: {
            if (config.model == SampleSizeModel::exact_binomial) {
                throw ConfigError("the exact binomial model applies to one-proportion tests "
                                  "(T1, T2) only");
            }
            row.p0 = config.p1_override.value_or(kDefaultPoetVowelShare);
            row.p1 = config.p2_override.value_or(kDefaultOratorVowelShare);
            row.detail = "P > R";
            row.per_group = true;
            row.result =
                sample_size_two_proportions(row.p0, row.p1, config.alpha, config.target_power);
            break;
        }
        }
        rows.push_back(std::move(row));
    }

    const char* model_name = config.model == SampleSizeModel::exact_binomial
                                 ? "exact-binomial"
                                 : "normal-approximation";
    switch (config.format) {
    case OutputFormat::text:
        for (const auto& row : rows) {
            out << row.id << " (" << row.detail << "): " << row.result.pages << " pages"
                << (row.per_group ? " per group" : "") << " (" << row.result.letters << " letters"
                << (row.per_group ? " per group" : "") << "), model=" << model_name
                << ", alpha=" << config.alpha << ", power=" << config.target_power
                << ", proportions " << row.p0 << " vs " << row.p1 << "\n";
        }
        break;
    case OutputFormat::json: {
        nlohmann::json doc = nlohmann::json::array();
        for (const auto& row : rows) {
            doc.push_back({{"test", row.id},
                           {"pages", row.result.pages},
                           {"letters", row.result.letters},
                           {"per_group", row.per_group},
                           {"model", model_name},
                           {"alpha", config.alpha},
                           {"power", config.target_power},
                           {"p0", row.p0},
                           {"p1", row.p1}});
        }
        out << doc.dump(2) << "\n";
        break;
    }
    case OutputFormat::csv: {
        CsvTable table;
        table.header = {"test", "pages", "letters", "per_group", "model", "alpha", "power",
                        "p0", "p1"};
        for (const auto& row : rows) {
            std::ostringstream alpha_s;
            alpha_s << config.alpha;
            std::ostringstream power_s;
            power_s << config.target_power;
            std::ostringstream p0_s;
            p0_s << row.p0;
            std::ostringstream p1_s;
            p1_s << row.p1;
            table.rows.push_back({row.id, std::to_string(row.result.pages),
                                  std::to_string(row.result.letters),
                                  row.per_group ? "yes" : "no", model_name, alpha_s.str(),
                                  power_s.str(), p0_s.str(), p1_s.str()});
        }
        out << table.to_string();
        break;
    }
    }
}

// Streams 0..reps-1 of a seed drive power replications; per-document page
// draws for sd/boxplot summaries use streams from this offset.
constexpr std::uint64_t kDocumentStreamOffset = 1'000'000'000ull;

std::vector<SdRow> document_sds(const SimulationCorpus& sim, std::size_t reps,
                                std::uint64_t seed) {
    std::vector<SdRow> rows;
    rows.reserve(sim.documents().size());
    for (std::size_t i = 0; i < sim.documents().size(); ++i) {
        const auto& doc = sim.documents()[i];
        SdRow row;
        row.category = doc.category();
        row.estimate = estimate_page_sd(doc, reps, derive_seed(seed, kDocumentStreamOffset + i));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<PowerEstimate> sweep_power(const RunConfig& config, const SimulationCorpus& sim) {
    std::vector<HypothesisSpec> specs;
    for (TestId id : config.tests) {
        specs.push_back(make_hypothesis(id, config.alpha));
    }
    PowerOptions options;
    options.reps = config.reps;
    options.alpha = config.alpha;
    options.seed = config.seed;
    options.threads = config.threads;
    std::vector<PowerEstimate> all;
    for (int k : config.ks) {
        const auto estimates = estimate_power(sim, k, specs, options);
        all.insert(all.end(), estimates.begin(), estimates.end());
    }
    return all;
}

void run_simulate(const RunConfig& config, OutputTracker& tracker, std::ostream& out) {
    const Corpus corpus = load_corpus_for(config);
    const SimulationCorpus sim = SimulationCorpus::build(corpus, config.scheme);

    const auto estimates = sweep_power(config, sim);
    const auto power_csv = power_table(estimates);
    const auto table4 = config.out_dir / "table4.csv";
    write_file(tracker, table4, power_csv.to_string());

    const auto sds = document_sds(sim, config.reps, config.seed);
    const auto table3 = config.out_dir / "table3.csv";
    write_file(tracker, table3, sd_table(sds).to_string());

    out << "scheme: " << to_string(config.scheme.kind) << ", reps=" << config.reps
        << ", seed=" << config.seed << ", alpha=" << config.alpha << "\n";
    for (const auto& est : estimates) {
        out << "  k=" << est.pages_per_document << " " << to_string(est.test_id) << " power "
            << fixed_cell(est.power * 100.0, 2) << "%\n";
    }
    out << "wrote " << table4.string() << "\n";
    out << "wrote " << table3.string() << "\n";
}

void run_report_all(const RunConfig& config, OutputTracker& tracker, std::ostream& out) {
    const Corpus corpus = load_corpus_for(config);
    for (const auto& warning : corpus.warnings) {
        out << "warning: " << warning << "\n";
    }

    // Tables 1/2 and figures 1/2: grammatical and i-before-vowel counts.
    const auto grammatical_stats = document_stats(corpus, CountingScheme::grammatical());
    const auto ibv_stats = document_stats(corpus, CountingScheme::i_before_vowel());

    write_file(tracker, config.out_dir / "table1.csv",
               percentage_table(grammatical_stats, SchemeKind::grammatical).to_string());
    write_file(tracker, config.out_dir / "table2.csv",
               percentage_table(ibv_stats, SchemeKind::i_before_vowel).to_string());

    const auto guides = claim_guides();
    {
        const auto points = scatter_points(grammatical_stats);
        const auto aggregates = scatter_aggregates(grammatical_stats);
        write_file(tracker, config.out_dir / "fig1.svg",
                   render_scatter_svg(points, aggregates, guides));
    }
    {
        const auto points = scatter_points(ibv_stats);
        const auto aggregates = scatter_aggregates(ibv_stats);
        write_file(tracker, config.out_dir / "fig2.svg",
                   render_scatter_svg(points, aggregates, guides));
    }

    // Tables 3/4 and figure 3 come from page resampling under config.scheme.
    const SimulationCorpus sim = SimulationCorpus::build(corpus, config.scheme);
    std::vector<SdRow> sd_rows;
    std::vector<BoxplotStats> boxes;
    for (std::size_t i = 0; i < sim.documents().size(); ++i) {
        const auto& doc = sim.documents()[i];
        auto props = draw_page_proportions(doc, config.reps,
                                           derive_seed(config.seed, kDocumentStreamOffset + i));
        SdRow row;
        row.category = doc.category();
        row.estimate = SdEstimate{doc.code(), props.size(), 0.0, 0.0};
        double sum = 0.0;
        for (double v : props) {
            sum += v;
        }
        row.estimate.mean = sum / static_cast<double>(props.size());
        double ss = 0.0;
        for (double v : props) {
            const double d = v - row.estimate.mean;
            ss += d * d;
        }
        row.estimate.sd = std::sqrt(ss / static_cast<double>(props.size() - 1));
        sd_rows.push_back(std::move(row));
        boxes.push_back(boxplot_stats(doc.code(), doc.category(), std::move(props)));
    }
    write_file(tracker, config.out_dir / "table3.csv", sd_table(sd_rows).to_string());
    write_file(tracker, config.out_dir / "fig3_summary.csv", boxplot_table(boxes).to_string());
    write_file(tracker, config.out_dir / "fig3.svg",
               render_boxplot_svg(boxes, 7.0 / 16.0, 3.0 / 7.0));

    const auto estimates = sweep_power(config, sim);
    write_file(tracker, config.out_dir / "table4.csv", power_table(estimates).to_string());

    out << "wrote table1.csv table2.csv table3.csv table4.csv fig1.svg fig2.svg fig3.svg "
           "fig3_summary.csv under "
        << config.out_dir.string() << "\n";
}

} // namespace

OutputFormat output_format_from_string(std::string_view text) {
    if (text == "text") {
        return OutputFormat::text;
    }
    if (text == "json") {
        return OutputFormat::json;
    }
    if (text == "csv") {
        return OutputFormat::csv;
    }
    throw ConfigError("unknown output format \"" + std::string(text) +
                      "\" (expected text, json, or csv)");
}

std::vector<int> parse_k_list(std::string_view text) {
    auto parse_int = [](std::string_view token) {
        int value = 0;
        const auto* begin = token.data();
        const auto* end = token.data() + token.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr != end || value < 1) {
            throw ConfigError("invalid page count \"" + std::string(token) +
                              "\" (expected a positive integer)");
        }
        return value;
    };

    std::vector<int> ks;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) {
            comma = text.size();
        }
        const std::string_view token = text.substr(pos, comma - pos);
        const std::size_t dots = token.find("..");
        if (dots != std::string_view::npos) {
            const int lo = parse_int(token.substr(0, dots));
            const int hi = parse_int(token.substr(dots + 2));
            if (hi < lo) {
                throw ConfigError("invalid page range \"" + std::string(token) + "\"");
            }
            for (int k = lo; k <= hi; ++k) {
                ks.push_back(k);
            }
        } else if (!token.empty()) {
            ks.push_back(parse_int(token));
        } else {
            throw ConfigError("empty page count in \"" + std::string(text) + "\"");
        }
        if (comma == text.size()) {
            break;
        }
        pos = comma + 1;
    }
    if (ks.empty()) {
        throw ConfigError("no page counts given");
    }
    return ks;
}

void run(const RunConfig& config, std::ostream& out) {
    OutputTracker tracker;
    try {
        switch (config.command) {
        case Command::count:
            run_count(config, tracker, out);
            break;
        case Command::test:
            run_test(config, tracker, out);
            break;
        case Command::samplesize:
            run_samplesize(config, out);
            break;
        case Command::simulate:
            run_simulate(config, tracker, out);
            break;
        case Command::report_all:
            run_report_all(config, tracker, out);
            break;
        }
    } catch (...) {
        tracker.discard_all();
        throw;
    }
}

int run_for_exit_code(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        run(config, out);
        return 0;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace vocalis
