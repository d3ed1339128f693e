#include "bibdedup/textkit.hpp"

#include <cctype>
#include <stdexcept>

namespace bibdedup {

const TextConfig& default_text_config() {
    static const TextConfig cfg{};
    return cfg;
}

std::string to_lower_ascii(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    return out;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!out.empty()) pending_space = true;
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(c);
        }
    }
    return out;
}

std::vector<std::string> tokenize_words(std::string_view s, const TextConfig& cfg,
                                        SplitMode mode) {
    const std::string lowered = to_lower_ascii(s);
    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            tokens.push_back(cur);
            cur.clear();
        }
    };
    for (char c : lowered) {
        const bool split = mode == SplitMode::WhitespaceOnly
                               ? std::isspace(static_cast<unsigned char>(c)) != 0
                               : cfg.is_delimiter(c);
        if (split)
            flush();
        else
            cur.push_back(c);
    }
    flush();
    return tokens;
}

std::vector<std::string> char_ngrams(std::string_view s, std::size_t n) {
    if (n == 0) throw std::invalid_argument("char_ngrams: n must be positive");
    std::vector<std::string> grams;
    if (s.size() < n) return grams;
    grams.reserve(s.size() - n + 1);
    for (std::size_t i = 0; i + n <= s.size(); ++i)
        grams.emplace_back(s.substr(i, n));
    return grams;
}

std::set<std::string> collocations(std::string_view s, const std::set<std::size_t>& sizes,
                                   const TextConfig& cfg) {
    const auto tokens = tokenize_words(s, cfg, SplitMode::Delimiters);
    std::set<std::string> out;
    for (std::size_t n : sizes) {
        if (n == 0) throw std::invalid_argument("collocations: sizes must be positive");
        if (tokens.size() < n) continue;
        for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
            std::string joined = tokens[i];
            for (std::size_t k = 1; k < n; ++k) {
                joined.push_back(' ');
                joined += tokens[i + k];
            }
            out.insert(std::move(joined));
        }
    }
    return out;
}

std::string unique_scan(std::string_view s, const TextConfig& cfg) {
    std::string out;
    bool seen[256] = {};
    for (char raw : s) {
        char c = raw >= 'A' && raw <= 'Z' ? static_cast<char>(raw - 'A' + 'a') : raw;
        if (!cfg.in_alphabet(c)) continue;
        auto& flag = seen[static_cast<unsigned char>(c)];
        if (!flag) {
            flag = true;
            out.push_back(c);
        }
    }
    return out;
}

} // namespace bibdedup
