#include "bibdedup/keys.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bibdedup/textkit.hpp"

namespace bibdedup {

bool is_key_method(Method m) {
    switch (m) {
    case Method::SVS:
    case Method::CSB:
    case Method::MC: return false;
    default: return true;
    }
}

std::string_view method_name(Method m) {
    switch (m) {
    case Method::AF: return "af";
    case Method::TF: return "tf";
    case Method::MTF: return "mtf";
    case Method::ARDF: return "ardf";
    case Method::SSF: return "ssf";
    case Method::MGF: return "mgf";
    case Method::SMGF: return "smgf";
    case Method::BGF: return "bgf";
    case Method::SVS: return "svs";
    case Method::CSB: return "csb";
    case Method::MC: return "mc";
    }
    return "?";
}

std::optional<Method> method_from_name(std::string_view name) {
    for (Method m : all_methods())
        if (method_name(m) == name) return m;
    return std::nullopt;
}

std::vector<Method> all_methods() {
    return {Method::AF,  Method::TF,   Method::MTF, Method::ARDF, Method::SSF, Method::MGF,
            Method::SMGF, Method::BGF, Method::SVS, Method::CSB,  Method::MC};
}

std::vector<Method> key_methods() {
    return {Method::AF,  Method::TF,  Method::MTF, Method::ARDF,
            Method::SSF, Method::MGF, Method::SMGF, Method::BGF};
}

void AnchorDict::rebuild_lookup() {
    lookup_.clear();
    lookup_.insert(bigrams.begin(), bigrams.end());
}

void AnchorDict::save(std::ostream& out) const {
    for (std::size_t i = 0; i < bigrams.size(); ++i) {
        out << bigrams[i];
        if (i < counts.size()) out << "\t" << counts[i];
        out << "\n";
    }
}

AnchorDict AnchorDict::load(std::istream& in) {
    AnchorDict dict;
    const TextConfig& cfg = default_text_config();
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        std::string bigram = tab == std::string::npos ? line : line.substr(0, tab);
        if (bigram.size() != 2 || !cfg.in_alphabet(bigram[0]) || !cfg.in_alphabet(bigram[1]))
            throw std::runtime_error("AnchorDict::load: bad bigram '" + bigram + "'");
        if (std::find(dict.bigrams.begin(), dict.bigrams.end(), bigram) != dict.bigrams.end())
            throw std::runtime_error("AnchorDict::load: duplicate bigram '" + bigram + "'");
        dict.bigrams.push_back(std::move(bigram));
    }
    dict.size = dict.bigrams.size();
    dict.rebuild_lookup();
    return dict;
}

AnchorDict AnchorDict::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("AnchorDict::load_file: cannot open " + path);
    return load(in);
}

std::set<std::string> load_stoplist(std::istream& in) {
    std::set<std::string> stop;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        stop.insert(line);
    }
    return stop;
}

AnchorDict build_anchor_dict(const std::vector<const Corpus*>& corpora, std::size_t size,
                             std::set<std::string> stoplist) {
    if (corpora.empty())
        throw std::invalid_argument("build_anchor_dict: no corpora");
    const TextConfig& cfg = default_text_config();

    // std::map keeps the count table in lexicographic order, which makes the
    // tie-break deterministic for free.
    std::map<std::string, std::uint64_t> freq;
    for (const Corpus* corpus : corpora) {
        for (const Record& r : *corpus) {
            if (!r.title) continue;
            for (const auto& word : tokenize_words(*r.title, cfg, SplitMode::Delimiters)) {
                for (std::size_t i = 0; i + 2 <= word.size(); ++i) {
                    if (!cfg.in_alphabet(word[i]) || !cfg.in_alphabet(word[i + 1])) continue;
                    ++freq[word.substr(i, 2)];
                }
            }
        }
    }
    for (const auto& s : stoplist) freq.erase(s);

    if (freq.size() < size) {
        std::ostringstream msg;
        msg << "build_anchor_dict: need " << size << " bigrams, corpora provide " << freq.size()
            << " after stoplist";
        throw std::runtime_error(msg.str());
    }

    std::vector<std::pair<std::string, std::uint64_t>> ranked(freq.begin(), freq.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    ranked.resize(size);

    AnchorDict dict;
    dict.size = size;
    dict.stoplist = std::move(stoplist);
    for (auto& [bigram, count] : ranked) {
        dict.bigrams.push_back(std::move(bigram));
        dict.counts.push_back(count);
    }
    dict.rebuild_lookup();
    return dict;
}

Key key_af(const Record& r) {
    return {Method::AF, first_author_surname(r)};
}

std::optional<Key> key_tf(const Record& r) {
    if (!r.title) return std::nullopt;
    return Key{Method::TF, to_lower_ascii(collapse_whitespace(*r.title))};
}

std::optional<Key> key_mtf(const Record& r) {
    auto tf = key_tf(r);
    if (!tf) return std::nullopt;
    std::string value;
    value.reserve(tf->value.size());
    for (char c : tf->value)
        if (c != ' ') value.push_back(c);
    return Key{Method::MTF, std::move(value)};
}

Key key_ardf(const Record& r) {
    std::string value = first_author_surname(r);
    value.push_back('-');
    if (r.journal) value += to_lower_ascii(*r.journal);
    value.push_back('-');
    if (r.year) value += std::to_string(*r.year);
    return {Method::ARDF, std::move(value)};
}

namespace {

std::string first_bigram(std::string_view token) {
    return std::string(token.substr(0, 2)); // short tokens contribute themselves
}

} // namespace

std::optional<Key> key_ssf(const Record& r, std::size_t n_max) {
    if (n_max == 0) throw std::invalid_argument("key_ssf: n_max must be positive");
    const std::string surname = first_author_surname(r);
    if (!r.title || surname.empty()) return std::nullopt;

    const auto tokens =
        tokenize_words(*r.title, default_text_config(), SplitMode::WhitespaceOnly);
    std::string value;
    const std::size_t take = std::min(n_max, tokens.size());
    for (std::size_t i = 0; i < take; ++i) {
        if (!value.empty()) value.push_back(' ');
        value += first_bigram(tokens[i]);
    }
    if (!value.empty()) value.push_back(' ');
    value += first_bigram(surname);
    return Key{Method::SSF, std::move(value)};
}

std::optional<Key> key_mgf(const Record& r) {
    if (!r.title) return std::nullopt;
    return Key{Method::MGF, unique_scan(*r.title, default_text_config())};
}

std::optional<Key> key_smgf(const Record& r) {
    auto mgf = key_mgf(r);
    if (!mgf) return std::nullopt;
    std::string value = std::move(mgf->value);
    std::sort(value.begin(), value.end()); // ASCII order: digits before letters
    return Key{Method::SMGF, std::move(value)};
}

std::optional<Key> key_bgf(const Record& r, const AnchorDict& dict) {
    if (!r.title) return std::nullopt;
    std::string value;
    for (const auto& word :
         tokenize_words(*r.title, default_text_config(), SplitMode::Delimiters)) {
        for (std::size_t i = 0; i + 2 <= word.size(); ++i) {
            const std::string_view bigram(word.data() + i, 2);
            if (!dict.contains(bigram)) continue;
            if (!value.empty()) value.push_back(' ');
            value += bigram;
        }
    }
    return Key{Method::BGF, std::move(value)};
}

std::optional<Key> make_key(const Record& r, Method m, const KeyParams& params) {
    std::optional<Key> key;
    switch (m) {
    case Method::AF:
        if (r.authors.empty()) return std::nullopt;
        key = key_af(r);
        break;
    case Method::TF: key = key_tf(r); break;
    case Method::MTF: key = key_mtf(r); break;
    case Method::ARDF:
        if (first_author_surname(r).empty() && !(r.journal && !r.journal->empty()) && !r.year)
            return std::nullopt;
        key = key_ardf(r);
        break;
    case Method::SSF: key = key_ssf(r, params.ssf_n); break;
    case Method::MGF: key = key_mgf(r); break;
    case Method::SMGF: key = key_smgf(r); break;
    case Method::BGF:
        if (!params.anchor)
            throw std::invalid_argument("make_key: BGF requires an anchor dictionary");
        key = key_bgf(r, *params.anchor);
        break;
    default:
        throw std::invalid_argument(std::string("make_key: ") + std::string(method_name(m)) +
                                    " is not a key method");
    }
    if (key && key->value.empty()) return std::nullopt;
    return key;
}

} // namespace bibdedup
