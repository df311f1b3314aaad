#include "vocalis/corpus.hpp"

#include "vocalis/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace vocalis {

namespace {

bool is_ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

int roman_value(char c) {
    switch (c) {
    case 'I': return 1;
    case 'V': return 5;
    case 'X': return 10;
    case 'L': return 50;
    case 'C': return 100;
    case 'D': return 500;
    case 'M': return 1000;
    default: return 0;
    }
}

// Well-formedness in standard subtractive notation: thousands, hundreds,
// tens, units consumed in order, each group in canonical form (at most
// three repeats, subtractive pairs IV/IX/XL/XC/CD/CM only).
bool well_formed_roman(std::string_view w) {
    std::size_t i = 0;
    auto eat = [&](std::string_view token) {
        if (w.substr(i, token.size()) == token) {
            i += token.size();
            return true;
        }
        return false;
    };
    auto eat_group = [&](char one, char five, char ten) {
        const std::string nine{one, ten};
        const std::string four{one, five};
        if (eat(nine) || eat(four)) {
            return;
        }
        eat(std::string_view(&five, 1));
        for (int r = 0; r < 3 && i < w.size() && w[i] == one; ++r) {
            ++i;
        }
    };
    for (int r = 0; r < 3 && i < w.size() && w[i] == 'M'; ++r) {
        ++i;
    }
    eat_group('C', 'D', 'M');
    eat_group('X', 'L', 'C');
    eat_group('I', 'V', 'X');
    return i == w.size();
}

} // namespace

std::string_view to_string(Category category) {
    return category == Category::poet ? "poet" : "orator";
}

Category category_from_string(std::string_view text) {
    if (text == "poet") {
        return Category::poet;
    }
    if (text == "orator") {
        return Category::orator;
    }
    throw ConfigError("unknown category \"" + std::string(text) + "\" (expected \"poet\" or \"orator\")");
}

bool is_strippable_roman_numeral(std::string_view word) {
    if (word.empty()) {
        return false;
    }
    for (char c : word) {
        if (roman_value(c) == 0) {
            return false; // lowercase or non-numeral letter present
        }
    }
    if (word.size() < 2 && word != "I") {
        return false; // single V, X, L, C, D, M are kept (common abbreviations)
    }
    return well_formed_roman(word);
}

std::vector<std::string> strip_roman_numerals(const std::vector<std::string>& words) {
    std::vector<std::string> kept;
    kept.reserve(words.size());
    for (const auto& w : words) {
        if (!is_strippable_roman_numeral(w)) {
            kept.push_back(w);
        }
    }
    return kept;
}

LetterSequence normalize(std::string_view raw, const NormalizationOptions& options) {
    std::vector<std::string> words;
    std::string current;
    for (char c : raw) {
        if (is_ascii_alpha(c)) {
            current.push_back(c);
        } else if (!current.empty()) {
            words.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        words.push_back(std::move(current));
    }

    if (options.strip_roman_numerals) {
        words = strip_roman_numerals(words);
    }

    LetterSequence seq;
    seq.word_starts.reserve(words.size());
    std::size_t total = 0;
    for (const auto& w : words) {
        total += w.size();
    }
    seq.letters.reserve(total);
    for (const auto& w : words) {
        seq.word_starts.push_back(static_cast<std::uint32_t>(seq.letters.size()));
        for (char c : w) {
            seq.letters.push_back(ascii_lower(c));
        }
    }
    return seq;
}

Manifest Manifest::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw ConfigError("cannot open manifest " + file.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("manifest " + file.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.is_array()) {
        throw ConfigError("manifest must be a JSON array of entries");
    }

    Manifest manifest;
    const auto base = file.has_parent_path() ? file.parent_path() : std::filesystem::path(".");
    for (const auto& item : doc) {
        if (!item.is_object()) {
            throw ConfigError("manifest entries must be JSON objects");
        }
        ManifestEntry entry;
        try {
            entry.code = item.at("code").get<std::string>();
            entry.category = category_from_string(item.at("category").get<std::string>());
            std::filesystem::path p = item.at("path").get<std::string>();
            entry.path = p.is_absolute() ? p : base / p;
            entry.author = item.value("author", "");
            entry.title = item.value("title", "");
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("manifest entry missing required field: ") + e.what());
        }
        manifest.entries.push_back(std::move(entry));
    }
    manifest.validate();
    return manifest;
}

void Manifest::validate() const {
    std::unordered_set<std::string> seen;
    for (const auto& entry : entries) {
        if (entry.code.size() != 2 || !std::isupper(static_cast<unsigned char>(entry.code[0])) ||
            !std::isupper(static_cast<unsigned char>(entry.code[1]))) {
            throw ConfigError("document code \"" + entry.code + "\" must be exactly two uppercase ASCII letters");
        }
        if (!seen.insert(entry.code).second) {
            throw ConfigError("duplicate document code \"" + entry.code + "\" in manifest");
        }
    }
}

const Document* Corpus::find(std::string_view code) const {
    for (const auto& doc : documents) {
        if (doc.meta.code == code) {
            return &doc;
        }
    }
    return nullptr;
}

std::vector<const Document*> Corpus::by_category(Category category) const {
    std::vector<const Document*> out;
    for (const auto& doc : documents) {
        if (doc.meta.category == category) {
            out.push_back(&doc);
        }
    }
    return out;
}

std::uint64_t Corpus::total_letters() const {
    std::uint64_t n = 0;
    for (const auto& doc : documents) {
        n += doc.seq.size();
    }
    return n;
}

Corpus load_corpus(const Manifest& manifest, const NormalizationOptions& options) {
    manifest.validate();
    Corpus corpus;
    corpus.documents.reserve(manifest.entries.size());
    for (const auto& entry : manifest.entries) {
        std::ifstream in(entry.path, std::ios::binary);
        if (!in) {
            throw DataError("document " + entry.code + ": cannot read " + entry.path.string());
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        LetterSequence seq = normalize(buffer.str(), options);
        seq.source_code = entry.code;
        if (seq.empty()) {
            corpus.warnings.push_back("document " + entry.code + " normalized to zero letters");
        }
        corpus.documents.push_back(Document{entry, std::move(seq)});
    }
    return corpus;
}

} // namespace vocalis
