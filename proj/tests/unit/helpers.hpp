#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace test_helpers {

// Random lowercase text with word breaks; letter mix loosely Latin-shaped so
// i/u/v rules get exercised.
inline std::string random_text(std::mt19937_64& rng, std::size_t target_letters) {
    static const std::string alphabet = "aaaeeeiiiouuvvyqgmnrstcdlpbx";
    std::string text;
    text.reserve(target_letters + target_letters / 4);
    std::size_t letters = 0;
    std::size_t word_len = 0;
    while (letters < target_letters) {
        text.push_back(alphabet[rng() % alphabet.size()]);
        ++letters;
        ++word_len;
        if (word_len >= 2 && rng() % 5 == 0) {
            text.push_back(' ');
            word_len = 0;
        }
    }
    return text;
}

// Tiny XML well-formedness check: tags balance, attributes quoted.
inline bool well_formed_xml(const std::string& xml) {
    std::vector<std::string> stack;
    std::size_t pos = 0;
    while (pos < xml.size()) {
        const std::size_t open = xml.find('<', pos);
        if (open == std::string::npos) {
            break;
        }
        const std::size_t close = xml.find('>', open);
        if (close == std::string::npos) {
            return false;
        }
        std::string tag = xml.substr(open + 1, close - open - 1);
        if (tag.empty()) {
            return false;
        }
        if (tag[0] == '?' || tag[0] == '!') {
            pos = close + 1;
            continue;
        }
        const bool closing = tag[0] == '/';
        const bool self_closing = tag.back() == '/';
        std::string name = tag.substr(closing ? 1 : 0);
        const std::size_t name_end = name.find_first_of(" \t\n/");
        if (name_end != std::string::npos) {
            name = name.substr(0, name_end);
        }
        if (name.empty()) {
            return false;
        }
        if (closing) {
            if (stack.empty() || stack.back() != name) {
                return false;
            }
            stack.pop_back();
        } else if (!self_closing) {
            stack.push_back(name);
        }
        pos = close + 1;
    }
    return stack.empty();
}

// Number of occurrences of `needle` in `haystack`.
inline std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

} // namespace test_helpers
