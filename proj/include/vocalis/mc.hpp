#pragma once

#include "vocalis/classify.hpp"
#include "vocalis/corpus.hpp"
#include "vocalis/rng.hpp"
#include "vocalis/stats.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vocalis {

// A page: 700 consecutive letters of a document, with the vowel proportion
// computed from the document-wide classification (context at page edges
// comes from the document, not the page).
struct PageSample {
    std::string_view source_code;
    std::size_t start_index = 0; // 1-based rank of the first letter
    std::string_view letters;    // exactly kPageLetters characters
    double vowel_proportion = 0.0;
};

struct SdEstimate {
    std::string code;
    std::size_t reps = 0;
    double mean = 0.0;
    double sd = 0.0; // sample standard deviation (n-1)
};

struct PowerEstimate {
    TestId test_id = TestId::T1;
    int pages_per_document = 1; // k
    std::size_t reps = 0;
    double power = 0.0;
    std::uint64_t seed = 0;
};

// One document classified once under a scheme, with prefix sums so a page's
// vowel proportion is O(1).
class PagedDocument {
public:
    PagedDocument(const ManifestEntry& meta, const LetterSequence& seq,
                  const CountingScheme& scheme);

    const std::string& code() const { return code_; }
    Category category() const { return category_; }
    std::size_t letter_count() const { return letters_.size(); }

    // Vowel proportion of the page starting at 1-based index `start`.
    double page_proportion(std::size_t start) const {
        const std::size_t lo = start - 1;
        return static_cast<double>(vowel_prefix_[lo + kPageLetters] - vowel_prefix_[lo]) /
               static_cast<double>(kPageLetters);
    }

    // Uniform page draw; throws DataError (naming the code) when the
    // document is shorter than one page.
    PageSample sample_page(std::mt19937_64& rng) const;

private:
    std::string code_;
    Category category_;
    std::string letters_;
    std::vector<std::uint32_t> vowel_prefix_; // vowel_prefix_[i] = vowels among first i letters
};

PageSample sample_page(const PagedDocument& doc, std::mt19937_64& rng);

// Draws `reps` pages and returns their vowel proportions. Deterministic
// given the seed.
std::vector<double> draw_page_proportions(const PagedDocument& doc, std::size_t reps,
                                          std::uint64_t seed);

// Mean and sample sd of `reps` random page proportions. reps >= 2.
SdEstimate estimate_page_sd(const PagedDocument& doc, std::size_t reps, std::uint64_t seed);
SdEstimate estimate_page_sd(const LetterSequence& seq, const CountingScheme& scheme,
                            std::size_t reps, std::uint64_t seed);

// The whole corpus classified under one scheme, in manifest order.
class SimulationCorpus {
public:
    static SimulationCorpus build(const Corpus& corpus, const CountingScheme& scheme);

    const std::vector<PagedDocument>& documents() const { return documents_; }
    std::vector<const PagedDocument*> by_category(Category category) const;

private:
    std::vector<PagedDocument> documents_;
};

struct PowerOptions {
    std::size_t reps = 10000;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    unsigned threads = 0; // 0: hardware concurrency
};

// Monte-Carlo power of the requested tests with k random pages per document
// and `reps` replications. Per replication: T1 = one-sample t of poet page
// proportions vs 7/16 (greater), T2 = orators vs 3/7 (greater), T3 =
// two-sample poets vs orators (greater). Results are identical for a fixed
// seed regardless of thread count. Throws DataError when a document is
// shorter than one page.
std::vector<PowerEstimate> estimate_power(const SimulationCorpus& corpus, int k,
                                          std::span<const HypothesisSpec> tests,
                                          const PowerOptions& options);

} // namespace vocalis
