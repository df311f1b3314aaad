#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vocalis {

enum class Category { poet, orator };

std::string_view to_string(Category category);
Category category_from_string(std::string_view text); // throws ConfigError

struct ManifestEntry {
    std::string code;   // exactly two uppercase ASCII letters
    std::filesystem::path path;
    Category category = Category::poet;
    std::string author;
    std::string title;
};

// A manifest describes the corpus: one entry per document. Loaded from a
// JSON array of {"code","path","category","author","title"} objects.
// Relative paths are resolved against the manifest file's directory.
struct Manifest {
    std::vector<ManifestEntry> entries;

    static Manifest load(const std::filesystem::path& file);

    // Enforces code shape/uniqueness. Throws ConfigError on violation.
    void validate() const;
};

struct NormalizationOptions {
    bool strip_roman_numerals = true;
};

// A document reduced to its letters: lowercase a-z, with the start index of
// each word retained. Nothing else survives normalization.
struct LetterSequence {
    std::string letters;
    std::vector<std::uint32_t> word_starts; // strictly increasing, begins with 0 when non-empty
    std::string source_code;

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    std::size_t word_count() const { return word_starts.size(); }

    // End index (exclusive) of the word beginning at word_starts[w].
    std::size_t word_end(std::size_t w) const {
        return w + 1 < word_starts.size() ? word_starts[w + 1] : letters.size();
    }
};

// True when `word` is removed by numeral stripping: all characters are
// uppercase I,V,X,L,C,D,M; the word is either "I" or at least two letters
// long; and it parses as a well-formed Roman numeral in subtractive notation.
bool is_strippable_roman_numeral(std::string_view word);

// Removes Roman-numeral words, preserving the order of the rest. Words must
// carry their original casing; lowercase forms are never stripped.
std::vector<std::string> strip_roman_numerals(const std::vector<std::string>& words);

// Splits raw text into maximal ASCII-alphabetic runs, optionally strips
// Roman numerals, lowercases, and concatenates. Any input yields a
// (possibly empty) sequence.
LetterSequence normalize(std::string_view raw, const NormalizationOptions& options = {});

struct Document {
    ManifestEntry meta;
    LetterSequence seq;
};

// Documents in manifest order plus any warnings produced while loading.
struct Corpus {
    std::vector<Document> documents;
    std::vector<std::string> warnings;

    const Document* find(std::string_view code) const;
    std::vector<const Document*> by_category(Category category) const;
    std::uint64_t total_letters() const;
};

// Reads and normalizes every manifest entry. Throws ConfigError for manifest
// violations and DataError (naming the code) for unreadable files. Documents
// that normalize to zero letters are retained with a warning.
Corpus load_corpus(const Manifest& manifest, const NormalizationOptions& options = {});

} // namespace vocalis
