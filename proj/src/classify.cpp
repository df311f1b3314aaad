#include "vocalis/classify.hpp"

#include "vocalis/error.hpp"

#include <algorithm>

namespace vocalis {

namespace {

void classify_word_naive(std::string_view word, LetterClass* out) {
    for (std::size_t j = 0; j < word.size(); ++j) {
        out[j] = is_vowel_letter(word[j]) ? LetterClass::vowel : LetterClass::consonant;
    }
}

void classify_word_i_before_vowel(std::string_view word, LetterClass* out) {
    for (std::size_t j = 0; j < word.size(); ++j) {
        const char c = word[j];
        if (c == 'i') {
            const bool before_aeou = j + 1 < word.size() &&
                (word[j + 1] == 'a' || word[j + 1] == 'e' || word[j + 1] == 'o' || word[j + 1] == 'u');
            out[j] = before_aeou ? LetterClass::consonant : LetterClass::vowel;
        } else if (c == 'v') {
            out[j] = LetterClass::consonant;
        } else {
            out[j] = is_vowel_letter(c) ? LetterClass::vowel : LetterClass::consonant;
        }
    }
}

// Grammatical rules, one left-to-right pass. "Between two vowels" looks at
// the class already assigned on the left and the raw letter on the right;
// word boundaries break context.
void classify_word_grammatical(std::string_view word, std::span<const std::string> prefixes,
                               LetterClass* out) {
    for (std::size_t j = 0; j < word.size(); ++j) {
        const char c = word[j];
        const bool has_next = j + 1 < word.size();
        const bool next_is_vowel_letter = has_next && is_vowel_letter(word[j + 1]);
        const bool prev_is_vowel_class = j > 0 && out[j - 1] == LetterClass::vowel;

        LetterClass cls;
        switch (c) {
        case 'a':
        case 'e':
        case 'o':
        case 'y':
            cls = LetterClass::vowel;
            break;
        case 'i': {
            bool consonant = false;
            if (j == 0 && next_is_vowel_letter) {
                consonant = true; // word-initial before a vowel letter
            }
            if (!consonant && next_is_vowel_letter) {
                for (const auto& prefix : prefixes) {
                    if (j == prefix.size() && word.substr(0, j) == prefix) {
                        consonant = true; // right after a word-initial prefix
                        break;
                    }
                }
            }
            if (!consonant && prev_is_vowel_class && next_is_vowel_letter) {
                consonant = true; // between two vowels
            }
            cls = consonant ? LetterClass::consonant : LetterClass::vowel;
            break;
        }
        case 'u': {
            const bool after_q_or_g = j > 0 && (word[j - 1] == 'q' || word[j - 1] == 'g');
            const bool consonant = next_is_vowel_letter &&
                (j == 0 || after_q_or_g || prev_is_vowel_class);
            cls = consonant ? LetterClass::consonant : LetterClass::vowel;
            break;
        }
        case 'v':
            // Vowel before a consonant letter or at word end, consonant otherwise.
            cls = next_is_vowel_letter ? LetterClass::consonant : LetterClass::vowel;
            break;
        default:
            cls = LetterClass::consonant;
            break;
        }
        out[j] = cls;
    }
}

} // namespace

std::string_view to_string(SchemeKind kind) {
    switch (kind) {
    case SchemeKind::naive: return "naive";
    case SchemeKind::grammatical: return "grammatical";
    case SchemeKind::i_before_vowel: return "i-before-vowel";
    }
    throw ConfigError("unknown counting scheme");
}

SchemeKind scheme_from_string(std::string_view text) {
    if (text == "naive") {
        return SchemeKind::naive;
    }
    if (text == "grammatical") {
        return SchemeKind::grammatical;
    }
    if (text == "i-before-vowel" || text == "i_before_vowel") {
        return SchemeKind::i_before_vowel;
    }
    throw ConfigError("unknown counting scheme \"" + std::string(text) +
                      "\" (expected naive, grammatical, or i-before-vowel)");
}

ClassifiedSequence classify(const LetterSequence& seq, const CountingScheme& scheme) {
    if (scheme.kind != SchemeKind::naive && scheme.kind != SchemeKind::grammatical &&
        scheme.kind != SchemeKind::i_before_vowel) {
        throw ConfigError("unknown counting scheme kind");
    }
    for (const auto& prefix : scheme.prefixes) {
        if (prefix.empty() ||
            !std::all_of(prefix.begin(), prefix.end(), [](char c) { return c >= 'a' && c <= 'z'; })) {
            throw ConfigError("scheme prefixes must be nonempty lowercase letter strings");
        }
    }

    ClassifiedSequence result;
    result.letters = seq.letters;
    result.scheme = scheme;
    result.classes.resize(seq.size());

    for (std::size_t w = 0; w < seq.word_count(); ++w) {
        const std::size_t begin = seq.word_starts[w];
        const std::size_t end = seq.word_end(w);
        const std::string_view word(seq.letters.data() + begin, end - begin);
        LetterClass* out = result.classes.data() + begin;
        switch (scheme.kind) {
        case SchemeKind::naive:
            classify_word_naive(word, out);
            break;
        case SchemeKind::grammatical:
            classify_word_grammatical(word, scheme.prefixes, out);
            break;
        case SchemeKind::i_before_vowel:
            classify_word_i_before_vowel(word, out);
            break;
        default:
            throw ConfigError("unknown counting scheme kind");
        }
    }
    return result;
}

LetterTally tally(const ClassifiedSequence& classified) {
    LetterTally t;
    for (std::size_t j = 0; j < classified.size(); ++j) {
        const int idx = classified.letters[j] - 'a';
        if (classified.classes[j] == LetterClass::vowel) {
            ++t.vowel_by_letter[idx];
            ++t.vowels;
        } else {
            ++t.consonant_by_letter[idx];
            ++t.consonants;
        }
    }
    t.total = t.vowels + t.consonants;
    return t;
}

Percentages percentages(const LetterTally& tally, std::span<const char> letters) {
    if (tally.total == 0) {
        throw DataError("cannot compute percentages of an empty tally");
    }
    Percentages result;
    const double total = static_cast<double>(tally.total);
    for (char letter : letters) {
        result.per_letter[letter] = 100.0 * static_cast<double>(tally.vowel_count(letter)) / total;
    }
    result.vowel_percent = 100.0 * static_cast<double>(tally.vowels) / total;
    return result;
}

} // namespace vocalis
