#include "vocalis/corpus.hpp"
#include "vocalis/error.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

using namespace vocalis;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const char* tag) {
    auto dir = fs::temp_directory_path() / (std::string("vocalis_corpus_") + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& p, std::string_view content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

std::string render_words(const LetterSequence& seq) {
    std::string text;
    for (std::size_t w = 0; w < seq.word_count(); ++w) {
        if (w) {
            text += ' ';
        }
        text += seq.letters.substr(seq.word_starts[w], seq.word_end(w) - seq.word_starts[w]);
    }
    return text;
}

} // namespace

TEST_CASE("normalize splits on non-letters and lowercases") {
    const LetterSequence seq = normalize("Arma virumque cano");
    CHECK(seq.letters == "armavirumquecano");
    // arma (4) + virumque (8) put cano at offset 12
    CHECK(seq.word_starts == std::vector<std::uint32_t>{0, 4, 12});
}

TEST_CASE("normalize of empty input") {
    const LetterSequence seq = normalize("");
    CHECK(seq.empty());
    CHECK(seq.word_count() == 0);
}

TEST_CASE("normalize strips Roman numerals when enabled") {
    const LetterSequence seq = normalize("Liber XIV. incipit");
    CHECK(seq.letters == "liberincipit");
    CHECK(seq.word_starts == std::vector<std::uint32_t>{0, 5});

    NormalizationOptions keep;
    keep.strip_roman_numerals = false;
    const LetterSequence kept = normalize("Liber XIV. incipit", keep);
    CHECK(kept.letters == "liberxivincipit");
}

TEST_CASE("normalize treats non-ASCII bytes as separators") {
    const LetterSequence seq = normalize("pœna");
    CHECK(seq.letters == "pna");
    CHECK(seq.word_count() == 2);
    const LetterSequence digits = normalize("a1b\tc\nd");
    CHECK(digits.letters == "abcd");
    CHECK(digits.word_count() == 4);
}

TEST_CASE("Roman numeral stripping rules") {
    CHECK(strip_roman_numerals({"Liber", "XIV", "incipit"}) ==
          std::vector<std::string>{"Liber", "incipit"});
    CHECK(strip_roman_numerals({"MIXTA"}) == std::vector<std::string>{"MIXTA"});
    CHECK(strip_roman_numerals({"I"}) == std::vector<std::string>{});
    CHECK(strip_roman_numerals({"i"}) == std::vector<std::string>{"i"});

    // single-letter abbreviations other than I survive
    CHECK(strip_roman_numerals({"M", "C", "D", "L", "X", "V"}) ==
          std::vector<std::string>{"M", "C", "D", "L", "X", "V"});
    // malformed sequences survive
    CHECK(strip_roman_numerals({"IIII", "VV", "IC", "IL", "XM", "VX"}) ==
          std::vector<std::string>{"IIII", "VV", "IC", "IL", "XM", "VX"});
    // well-formed ones go
    CHECK(strip_roman_numerals({"II", "IV", "IX", "XL", "XC", "CD", "CM", "MMXIV", "MCMXCIX"}) ==
          std::vector<std::string>{});
    // lowercase or mixed case is text, not numbering
    CHECK(strip_roman_numerals({"xiv", "Xiv", "dux", "DUX", "mixta"}) ==
          std::vector<std::string>{"xiv", "Xiv", "dux", "DUX", "mixta"});
}

TEST_CASE("word lengths sum to letter count") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::string text = test_helpers::random_text(rng, 80);
        const LetterSequence seq = normalize(text);
        std::size_t sum = 0;
        for (std::size_t w = 0; w < seq.word_count(); ++w) {
            sum += seq.word_end(w) - seq.word_starts[w];
        }
        CHECK(sum == seq.letters.size());
        for (std::size_t w = 1; w < seq.word_count(); ++w) {
            CHECK(seq.word_starts[w] > seq.word_starts[w - 1]);
        }
        if (!seq.empty()) {
            CHECK(seq.word_starts.front() == 0);
        }
    }
}

TEST_CASE("normalize is idempotent on its own rendered output") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::string text = test_helpers::random_text(rng, 60);
        const LetterSequence once = normalize(text);
        const LetterSequence twice = normalize(render_words(once));
        CHECK(once.letters == twice.letters);
        CHECK(once.word_starts == twice.word_starts);
    }
}

TEST_CASE("stripping only ever removes words made of numeral letters") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 2000; ++trial) {
        std::string word;
        const std::size_t len = 1 + rng() % 6;
        for (std::size_t i = 0; i < len; ++i) {
            const char base = "ivxlcdmabet"[rng() % 11];
            word.push_back(rng() % 2 ? static_cast<char>(base - 'a' + 'A') : base);
        }
        if (is_strippable_roman_numeral(word)) {
            for (char c : word) {
                const char lower = static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
                const bool numeral_letter = lower == 'i' || lower == 'v' || lower == 'x' ||
                                            lower == 'l' || lower == 'c' || lower == 'd' ||
                                            lower == 'm';
                CHECK(numeral_letter);
            }
        }
    }
}

TEST_CASE("manifest validation") {
    Manifest manifest;
    manifest.entries.push_back({"CA", "a.txt", Category::poet, "", ""});
    manifest.entries.push_back({"JS", "b.txt", Category::poet, "", ""});
    CHECK_NOTHROW(manifest.validate());

    manifest.entries.push_back({"CA", "c.txt", Category::orator, "", ""});
    CHECK_THROWS_AS(manifest.validate(), ConfigError);

    Manifest bad_code;
    bad_code.entries.push_back({"ca", "a.txt", Category::poet, "", ""});
    CHECK_THROWS_AS(bad_code.validate(), ConfigError);
    bad_code.entries[0].code = "CAT";
    CHECK_THROWS_AS(bad_code.validate(), ConfigError);
}

TEST_CASE("load_corpus reads, normalizes, and reports") {
    const fs::path dir = make_temp_dir("load");
    write_text(dir / "ca.txt", "Arma virumque cano XIV");
    write_text(dir / "am.txt", "At ego tibi sermone isto Milesio");
    write_text(dir / "manifest.json", R"([
      {"code":"CA","path":"ca.txt","category":"poet","author":"","title":""},
      {"code":"AM","path":"am.txt","category":"orator","author":"","title":""}
    ])");

    const Manifest manifest = Manifest::load(dir / "manifest.json");
    REQUIRE(manifest.entries.size() == 2);
    const Corpus corpus = load_corpus(manifest);
    REQUIRE(corpus.documents.size() == 2);
    CHECK(corpus.documents[0].seq.letters == "armavirumquecano");
    CHECK(corpus.documents[0].seq.source_code == "CA");
    CHECK(corpus.find("AM") != nullptr);
    CHECK(corpus.find("ZZ") == nullptr);
    CHECK(corpus.by_category(Category::poet).size() == 1);
    CHECK(corpus.total_letters() ==
          corpus.documents[0].seq.size() + corpus.documents[1].seq.size());
    CHECK(corpus.warnings.empty());
}

TEST_CASE("load_corpus of an empty manifest yields an empty corpus") {
    const Manifest manifest;
    const Corpus corpus = load_corpus(manifest);
    CHECK(corpus.documents.empty());
    CHECK(corpus.total_letters() == 0);
}

TEST_CASE("load_corpus errors name the offending code") {
    const fs::path dir = make_temp_dir("missing");
    write_text(dir / "manifest.json", R"([
      {"code":"QQ","path":"nowhere.txt","category":"poet","author":"","title":""}
    ])");
    const Manifest manifest = Manifest::load(dir / "manifest.json");
    try {
        load_corpus(manifest);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("QQ") != std::string::npos);
    }
}

TEST_CASE("empty documents are retained with a warning") {
    const fs::path dir = make_temp_dir("empty");
    write_text(dir / "e.txt", "123 456 ...");
    write_text(dir / "manifest.json", R"([
      {"code":"EE","path":"e.txt","category":"poet","author":"","title":""}
    ])");
    const Corpus corpus = load_corpus(Manifest::load(dir / "manifest.json"));
    REQUIRE(corpus.documents.size() == 1);
    CHECK(corpus.documents[0].seq.empty());
    REQUIRE(corpus.warnings.size() == 1);
    CHECK(corpus.warnings[0].find("EE") != std::string::npos);
}

TEST_CASE("manifest JSON schema violations") {
    const fs::path dir = make_temp_dir("schema");
    write_text(dir / "manifest.json", R"([{"code":"CA","path":"x","category":"bard"}])");
    CHECK_THROWS_AS(Manifest::load(dir / "manifest.json"), ConfigError);
    write_text(dir / "manifest.json", R"([{"code":"CA","category":"poet"}])");
    CHECK_THROWS_AS(Manifest::load(dir / "manifest.json"), ConfigError);
    write_text(dir / "manifest.json", R"({"not":"an array"})");
    CHECK_THROWS_AS(Manifest::load(dir / "manifest.json"), ConfigError);
    write_text(dir / "manifest.json", "not json at all");
    CHECK_THROWS_AS(Manifest::load(dir / "manifest.json"), ConfigError);
    CHECK_THROWS_AS(Manifest::load(dir / "no_such_manifest.json"), ConfigError);
}
