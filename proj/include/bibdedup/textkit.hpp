#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace bibdedup {

/// Character classes for tokenization and key building. The defaults follow
/// the bibliographic convention: words are made of a-z/0-9 plus hyphen and
/// apostrophe, everything in `delimiters` separates words, and space is the
/// main delimiter.
struct TextConfig {
    std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
    std::string word_extras = "-'";
    std::string delimiters = " _.;:{}()*+,?!%[]\"";

    bool in_alphabet(char c) const { return alphabet.find(c) != std::string::npos; }
    bool is_delimiter(char c) const { return delimiters.find(c) != std::string::npos; }
};

const TextConfig& default_text_config();

enum class SplitMode {
    Delimiters,     // split on every configured delimiter
    WhitespaceOnly, // split on runs of whitespace; punctuation stays in tokens
};

/// ASCII case folding; bytes outside A-Z pass through unchanged.
std::string to_lower_ascii(std::string_view s);

/// Trim and collapse internal whitespace runs to single spaces.
std::string collapse_whitespace(std::string_view s);

/// Lowercased tokens of `s`; empty tokens are dropped.
std::vector<std::string> tokenize_words(std::string_view s, const TextConfig& cfg,
                                        SplitMode mode);

/// All contiguous length-n substrings of `s`, in order. Empty when |s| < n.
/// Throws std::invalid_argument for n = 0.
std::vector<std::string> char_ngrams(std::string_view s, std::size_t n);

/// Set of all contiguous word sequences of the requested sizes, words joined
/// by single spaces. Tokenization uses SplitMode::Delimiters.
std::set<std::string> collocations(std::string_view s, const std::set<std::size_t>& sizes,
                                   const TextConfig& cfg);

/// Lowercases `s` and emits each alphabet character the first time it
/// appears, preserving first-occurrence order. Delimiters and word extras
/// never reach the output, so the result has at most 36 distinct characters.
std::string unique_scan(std::string_view s, const TextConfig& cfg);

} // namespace bibdedup
