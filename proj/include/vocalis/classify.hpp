#pragma once

#include "vocalis/corpus.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vocalis {

enum class SchemeKind { naive, grammatical, i_before_vowel };

std::string_view to_string(SchemeKind kind);
SchemeKind scheme_from_string(std::string_view text); // throws ConfigError

// One of the three classification rulebooks. The prefix set only matters to
// the grammatical scheme, where i after a word-initial prefix and before a
// vowel letter counts as a consonant.
struct CountingScheme {
    SchemeKind kind = SchemeKind::grammatical;
    std::vector<std::string> prefixes = default_prefixes();

    static std::vector<std::string> default_prefixes() { return {"ad", "ab", "con", "ex"}; }
    static CountingScheme naive() { return {SchemeKind::naive, {}}; }
    static CountingScheme grammatical(std::vector<std::string> prefixes = default_prefixes()) {
        return {SchemeKind::grammatical, std::move(prefixes)};
    }
    static CountingScheme i_before_vowel() { return {SchemeKind::i_before_vowel, {}}; }
};

enum class LetterClass : std::uint8_t { consonant = 0, vowel = 1 };

// Letters with their assigned classes, aligned one to one.
struct ClassifiedSequence {
    std::string letters;
    std::vector<LetterClass> classes;
    CountingScheme scheme;

    std::size_t size() const { return classes.size(); }
};

// Assigns vowel/consonant to every letter in a single left-to-right pass per
// word. Throws ConfigError for an unknown scheme kind.
ClassifiedSequence classify(const LetterSequence& seq, const CountingScheme& scheme);

// Per-letter counts split by assigned class, so i-as-vowel and
// i-as-consonant are tallied separately.
struct LetterTally {
    std::array<std::uint64_t, 26> vowel_by_letter{};
    std::array<std::uint64_t, 26> consonant_by_letter{};
    std::uint64_t vowels = 0;
    std::uint64_t consonants = 0;
    std::uint64_t total = 0;

    std::uint64_t vowel_count(char letter) const { return vowel_by_letter[letter - 'a']; }
    std::uint64_t consonant_count(char letter) const { return consonant_by_letter[letter - 'a']; }
};

LetterTally tally(const ClassifiedSequence& classified);

inline constexpr std::array<char, 6> kVowelLetters = {'a', 'e', 'i', 'o', 'u', 'y'};

struct Percentages {
    std::map<char, double> per_letter; // percent of total that is this letter, vowel class only
    double vowel_percent = 0.0;
};

// Percent of all letters that are vowel-class occurrences of each requested
// letter, plus the overall vowel percent. Throws DataError when total is 0.
Percentages percentages(const LetterTally& tally,
                        std::span<const char> letters = std::span<const char>(kVowelLetters));

// True for a, e, i, o, u, y: the letters that can spell a vowel sound.
constexpr bool is_vowel_letter(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

} // namespace vocalis
