#include "bibdedup/synth.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "bibdedup/rng.hpp"

namespace bibdedup {

namespace {

// Title building blocks. The cover word is an isogram over exactly the
// letters of the encode lexicon, so every generated title has the same
// letter tail and the signature word alone decides the monogram keys.
constexpr std::string_view kCoverWord = "bankruptcies";

constexpr std::array<std::string_view, 16> kLexicon = {
    "beat", "bias", "brat", "bunt", "cake", "cent", "crab", "curb",
    "epic", "iris", "kite", "knit", "nape", "near", "pack", "puck",
};

// 16 leading bigrams of the lexicon plus 34 bigrams that occur in no
// generated title word; see synthetic_anchor_dict().
constexpr std::array<std::string_view, 50> kAnchorBigrams = {
    "be", "bi", "br", "bu", "ca", "ce", "cr", "cu", "ep", "ir", "ki", "kn", "na",
    "ne", "pa", "pu", "aa", "ae", "ai", "au", "bb", "bc", "bk", "bn", "bp", "bs",
    "bt", "cb", "cc", "cn", "cp", "cs", "ct", "eb", "ec", "ee", "ei", "ek", "er",
    "et", "eu", "ib", "ii", "ik", "in", "ip", "iu", "ka", "kb", "kc",
};

// Signature alphabet: everything outside the cover-word letters. Pool A
// forces {l, 1} into each signature; pool B never uses them.
constexpr std::string_view kSigAlphabet = "dfghjlmoqvwxyz0123456789"; // 24
constexpr std::string_view kSigChoices = "dfghjmoqvwxyz023456789";    // 22, no l/1

constexpr std::size_t kSigSize = 12;

constexpr std::array<std::string_view, 24> kSurnameStems = {
    "adler",  "barton", "chen",  "durand", "evans", "fontana", "garcia", "hughes",
    "ito",    "jensen", "keller", "larsen", "meyer", "novak",  "olsen",  "petit",
    "quinn",  "rossi",  "silva",  "tanaka", "unger", "varga",  "weber",  "young",
};

constexpr std::array<std::string_view, 8> kJournals = {
    "JOURNAL OF RECORD LINKAGE",      "ANNALS OF METADATA RESEARCH",
    "ARCHIVE PROCESSING LETTERS",     "JOURNAL OF CORPUS ENGINEERING",
    "INDEXING AND RETRIEVAL REVIEW",  "DOCUMENT SCIENCE QUARTERLY",
    "JOURNAL OF LIBRARY AUTOMATION",  "BIBLIOGRAPHIC SYSTEMS JOURNAL",
};

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// index -> k-subset of [0, n), the combinatorial number system.
std::vector<std::size_t> combinadic(std::uint64_t index, std::size_t n, std::size_t k) {
    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t kk = k; kk >= 1; --kk) {
        std::size_t c = kk - 1;
        for (std::size_t t = kk - 1; t < n; ++t)
            if (binom(t, kk) <= index) c = t;
        out.push_back(c);
        index -= binom(c, kk);
        n = c;
    }
    return out; // descending positions
}

std::string signature_word(std::size_t global_index, SynthConfig::Pool pool) {
    std::string chars;
    if (pool == SynthConfig::Pool::A) {
        const auto picks = combinadic(global_index, kSigChoices.size(), kSigSize - 2);
        chars = "l1";
        for (std::size_t p : picks) chars.push_back(kSigChoices[p]);
    } else {
        const auto picks = combinadic(global_index, kSigChoices.size(), kSigSize);
        for (std::size_t p : picks) chars.push_back(kSigChoices[p]);
    }
    // canonical order, then a rotation so titles do not all sort alike
    std::sort(chars.begin(), chars.end(), [](char a, char b) {
        return kSigAlphabet.find(a) < kSigAlphabet.find(b);
    });
    const std::size_t rot = global_index % chars.size();
    std::rotate(chars.begin(), chars.begin() + static_cast<std::ptrdiff_t>(rot), chars.end());
    return chars;
}

std::string base26(std::size_t value, std::size_t width) {
    std::string out(width, 'a');
    for (std::size_t i = width; i-- > 0 && value > 0;) {
        out[i] = static_cast<char>('a' + value % 26);
        value /= 26;
    }
    return out;
}

std::string zero_pad(std::size_t value, std::size_t width) {
    std::string digits = std::to_string(value);
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return digits;
}

} // namespace

Corpus make_synthetic_corpus(const SynthConfig& cfg) {
    const std::uint64_t capacity =
        cfg.pool == SynthConfig::Pool::A ? binom(kSigChoices.size(), kSigSize - 2)
                                         : binom(kSigChoices.size(), kSigSize);
    if (cfg.start_index + cfg.count > capacity)
        throw std::invalid_argument("make_synthetic_corpus: index range exceeds pool capacity");
    if (cfg.start_index + cfg.count > kSurnameStems.size() * 26 * 26 * 26)
        throw std::invalid_argument("make_synthetic_corpus: index range exceeds surname space");

    Corpus corpus(cfg.source);
    for (std::size_t i = 0; i < cfg.count; ++i) {
        const std::size_t global = cfg.start_index + i;
        Rng rng(mix64(cfg.seed, global));

        std::string title = signature_word(global, cfg.pool);
        title += " ";
        title += kCoverWord;
        // six words encoding the record index in base 16, salted per slot so
        // consecutive titles do not repeat the same word run
        std::size_t v = global;
        std::array<std::size_t, 6> digits{};
        for (std::size_t d = 6; d-- > 0;) {
            digits[d] = v % kLexicon.size();
            v /= kLexicon.size();
        }
        for (std::size_t d = 0; d < digits.size(); ++d) {
            title += " ";
            title += kLexicon[(digits[d] + d * 7) % kLexicon.size()];
        }
        // hyphenated tail, beyond the prefix-bigram window
        title += " ";
        title += kLexicon[rng.below(kLexicon.size())];
        title += "-";
        title += kLexicon[rng.below(kLexicon.size())];

        Record rec;
        rec.id = cfg.id_prefix + zero_pad(global, 7);
        rec.source = cfg.source;
        rec.title = title;

        std::string surname(kSurnameStems[global % kSurnameStems.size()]);
        surname += base26(global / kSurnameStems.size(), 3);
        std::string display = surname;
        display[0] = static_cast<char>(display[0] - 'a' + 'A');
        display += ", ";
        display += static_cast<char>('A' + global % 26);
        rec.authors.push_back(display);
        if (rng.coin()) {
            std::string second(kSurnameStems[rng.below(kSurnameStems.size())]);
            second[0] = static_cast<char>(second[0] - 'a' + 'A');
            rec.authors.push_back(second + ", " + static_cast<char>('A' + rng.below(26)));
        }

        rec.journal = std::string(kJournals[global % kJournals.size()]);
        rec.year = 1951 + static_cast<int>(global * 7 % 60);

        if (cfg.with_abstracts) {
            std::string abstract;
            const std::size_t words = 8 + rng.below(8);
            for (std::size_t w = 0; w < words; ++w) {
                if (w) abstract += " ";
                abstract += kLexicon[rng.below(kLexicon.size())];
            }
            abstract += ".";
            rec.abstract = abstract;
        }
        corpus.add(std::move(rec));
    }
    return corpus;
}

AnchorDict synthetic_anchor_dict() {
    AnchorDict dict;
    dict.size = kAnchorBigrams.size();
    for (auto bg : kAnchorBigrams) dict.bigrams.emplace_back(bg);
    dict.rebuild_lookup();
    return dict;
}

} // namespace bibdedup
