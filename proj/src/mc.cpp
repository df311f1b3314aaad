#include "vocalis/mc.hpp"

#include "vocalis/error.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace vocalis {

PagedDocument::PagedDocument(const ManifestEntry& meta, const LetterSequence& seq,
                             const CountingScheme& scheme)
    : code_(meta.code), category_(meta.category) {
    const ClassifiedSequence classified = classify(seq, scheme);
    letters_ = classified.letters;
    vowel_prefix_.resize(classified.size() + 1);
    vowel_prefix_[0] = 0;
    for (std::size_t i = 0; i < classified.size(); ++i) {
        vowel_prefix_[i + 1] =
            vowel_prefix_[i] + (classified.classes[i] == LetterClass::vowel ? 1u : 0u);
    }
}

PageSample PagedDocument::sample_page(std::mt19937_64& rng) const {
    const std::size_t n = letter_count();
    if (n < static_cast<std::size_t>(kPageLetters)) {
        throw DataError("document " + code_ + " is shorter than one page (" +
                        std::to_string(n) + " letters, need " + std::to_string(kPageLetters) + ")");
    }
    const std::uint64_t positions = n - kPageLetters + 1; // starts 1..N-699
    const std::size_t start = 1 + static_cast<std::size_t>(uniform_below(rng, positions));
    PageSample page;
    page.source_code = code_;
    page.start_index = start;
    page.letters = std::string_view(letters_).substr(start - 1, kPageLetters);
    page.vowel_proportion = page_proportion(start);
    return page;
}

PageSample sample_page(const PagedDocument& doc, std::mt19937_64& rng) {
    return doc.sample_page(rng);
}

std::vector<double> draw_page_proportions(const PagedDocument& doc, std::size_t reps,
                                          std::uint64_t seed) {
    std::mt19937_64 rng = stream_rng(seed, 0);
    std::vector<double> proportions;
    proportions.reserve(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        proportions.push_back(doc.sample_page(rng).vowel_proportion);
    }
    return proportions;
}

namespace {

SdEstimate summarize(const std::string& code, const std::vector<double>& values) {
    SdEstimate est;
    est.code = code;
    est.reps = values.size();
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    est.mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) {
        const double d = v - est.mean;
        ss += d * d;
    }
    est.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    return est;
}

} // namespace

SdEstimate estimate_page_sd(const PagedDocument& doc, std::size_t reps, std::uint64_t seed) {
    if (reps < 2) {
        throw ConfigError("page sd estimation needs at least two replications");
    }
    return summarize(doc.code(), draw_page_proportions(doc, reps, seed));
}

SdEstimate estimate_page_sd(const LetterSequence& seq, const CountingScheme& scheme,
                            std::size_t reps, std::uint64_t seed) {
    ManifestEntry meta;
    meta.code = seq.source_code.empty() ? "??" : seq.source_code;
    PagedDocument doc(meta, seq, scheme);
    return estimate_page_sd(doc, reps, seed);
}

SimulationCorpus SimulationCorpus::build(const Corpus& corpus, const CountingScheme& scheme) {
    SimulationCorpus sim;
    sim.documents_.reserve(corpus.documents.size());
    for (const auto& doc : corpus.documents) {
        sim.documents_.emplace_back(doc.meta, doc.seq, scheme);
    }
    return sim;
}

std::vector<const PagedDocument*> SimulationCorpus::by_category(Category category) const {
    std::vector<const PagedDocument*> out;
    for (const auto& doc : documents_) {
        if (doc.category() == category) {
            out.push_back(&doc);
        }
    }
    return out;
}

namespace {

// p-value for one replication; a zero-variance sample cannot reject.
double replication_p_value(const HypothesisSpec& spec, const std::vector<double>& poets,
                           const std::vector<double>& orators) {
    try {
        switch (spec.id) {
        case TestId::T1:
            return one_sample_t_test(poets, spec.null_value, Direction::greater).p_value;
        case TestId::T2:
            return one_sample_t_test(orators, spec.null_value, Direction::greater).p_value;
        case TestId::T3:
            return two_sample_t_test(poets, orators, Direction::greater).p_value;
        }
    } catch (const DataError&) {
        return 1.0;
    }
    return 1.0;
}

} // namespace

std::vector<PowerEstimate> estimate_power(const SimulationCorpus& corpus, int k,
                                          std::span<const HypothesisSpec> tests,
                                          const PowerOptions& options) {
    if (k < 1) {
        throw ConfigError("pages per document (k) must be at least 1");
    }
    if (options.reps < 1) {
        throw ConfigError("replication count must be at least 1");
    }
    if (corpus.documents().empty()) {
        throw DataError("cannot simulate on an empty corpus");
    }
    for (const auto& doc : corpus.documents()) {
        if (doc.letter_count() < static_cast<std::size_t>(kPageLetters)) {
            throw DataError("document " + doc.code() + " is shorter than one page (" +
                            std::to_string(doc.letter_count()) + " letters)");
        }
    }

    const std::vector<const PagedDocument*> poets = corpus.by_category(Category::poet);
    const std::vector<const PagedDocument*> orators = corpus.by_category(Category::orator);

    // One rejection bit per (replication, test), each replication on its own
    // RNG stream so the outcome does not depend on thread partitioning.
    std::vector<std::uint8_t> reject(options.reps * tests.size(), 0);
    auto run_range = [&](std::size_t lo, std::size_t hi) {
        std::vector<double> poet_props;
        std::vector<double> orator_props;
        poet_props.reserve(poets.size() * static_cast<std::size_t>(k));
        orator_props.reserve(orators.size() * static_cast<std::size_t>(k));
        for (std::size_t rep = lo; rep < hi; ++rep) {
            std::mt19937_64 rng = stream_rng(options.seed, rep);
            poet_props.clear();
            orator_props.clear();
            for (const PagedDocument* doc : poets) {
                for (int i = 0; i < k; ++i) {
                    poet_props.push_back(doc->sample_page(rng).vowel_proportion);
                }
            }
            for (const PagedDocument* doc : orators) {
                for (int i = 0; i < k; ++i) {
                    orator_props.push_back(doc->sample_page(rng).vowel_proportion);
                }
            }
            for (std::size_t t = 0; t < tests.size(); ++t) {
                const double p = replication_p_value(tests[t], poet_props, orator_props);
                reject[rep * tests.size() + t] = p < tests[t].alpha ? 1 : 0;
            }
        }
    };

    unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(options.reps)));
    if (threads == 1) {
        run_range(0, options.reps);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(threads);
        const std::size_t chunk = (options.reps + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(options.reps, lo + chunk);
            if (lo < hi) {
                workers.emplace_back(run_range, lo, hi);
            }
        }
        for (auto& worker : workers) {
            worker.join();
        }
    }

    std::vector<PowerEstimate> estimates;
    estimates.reserve(tests.size());
    for (std::size_t t = 0; t < tests.size(); ++t) {
        std::uint64_t rejections = 0;
        for (std::size_t rep = 0; rep < options.reps; ++rep) {
            rejections += reject[rep * tests.size() + t];
        }
        PowerEstimate est;
        est.test_id = tests[t].id;
        est.pages_per_document = k;
        est.reps = options.reps;
        est.power = static_cast<double>(rejections) / static_cast<double>(options.reps);
        est.seed = options.seed;
        estimates.push_back(est);
    }
    return estimates;
}

} // namespace vocalis
