#include "bibdedup/eval.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include "bibdedup/rng.hpp"

namespace bibdedup {

void GoldStandard::add(std::string test_id, std::optional<std::string> target_id) {
    if (pos_.count(test_id))
        throw std::invalid_argument("GoldStandard::add: duplicate test id " + test_id);
    pos_.emplace(test_id, entries_.size());
    if (target_id) ++positives_;
    entries_.emplace_back(std::move(test_id), std::move(target_id));
}

const std::optional<std::string>* GoldStandard::find(std::string_view test_id) const {
    auto it = pos_.find(std::string(test_id));
    return it == pos_.end() ? nullptr : &entries_[it->second].second;
}

GoldStandard GoldStandard::identity_over(const Corpus& c) {
    GoldStandard gold;
    for (const Record& r : c) gold.add(r.id, r.id);
    return gold;
}

GoldStandard GoldStandard::all_negative_over(const Corpus& c) {
    GoldStandard gold;
    for (const Record& r : c) gold.add(r.id, std::nullopt);
    return gold;
}

GoldStandard GoldStandard::read_tsv(std::istream& in) {
    GoldStandard gold;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("GoldStandard::read_tsv: line " + std::to_string(lineno) +
                                     ": expected test_id<TAB>target_id-or-dash");
        std::string test_id = line.substr(0, tab);
        std::string target = line.substr(tab + 1);
        if (target == "-")
            gold.add(std::move(test_id), std::nullopt);
        else
            gold.add(std::move(test_id), std::move(target));
    }
    return gold;
}

void GoldStandard::write_tsv(std::ostream& out) const {
    for (const auto& [test_id, target] : entries_)
        out << test_id << "\t" << (target ? *target : "-") << "\n";
}

EvalReport report_from_counts(std::size_t gold_duplicates, std::size_t true_positives,
                              std::size_t false_positives, std::size_t false_negatives) {
    EvalReport r;
    r.gold_duplicates = gold_duplicates;
    r.true_positives = true_positives;
    r.false_positives = false_positives;
    r.false_negatives = false_negatives;
    r.predicted = true_positives + false_positives;
    r.precision = r.predicted == 0
                      ? 1.0
                      : static_cast<double>(true_positives) / static_cast<double>(r.predicted);
    const std::size_t relevant = true_positives + false_negatives;
    r.recall = relevant == 0
                   ? 1.0
                   : static_cast<double>(true_positives) / static_cast<double>(relevant);
    return r;
}

EvalReport score(const std::vector<DuplicatePair>& pairs, const GoldStandard& gold) {
    std::size_t tp = 0;
    std::unordered_set<std::string> hit; // test ids with a correct pair
    for (const auto& p : pairs) {
        const auto* target = gold.find(p.test_id);
        if (!target)
            throw std::invalid_argument("score: pair test id " + p.test_id +
                                        " is outside the gold standard");
        if (*target && **target == p.target_id) {
            ++tp;
            hit.insert(p.test_id);
        }
    }
    const std::size_t fp = pairs.size() - tp;
    const std::size_t fn = gold.positives() - hit.size();
    return report_from_counts(gold.positives(), tp, fp, fn);
}

std::vector<DuplicatePair> monte_carlo(const GoldStandard& gold, std::uint64_t seed) {
    Rng rng(mix64(seed, 0x6d63ull)); // "mc"
    std::vector<DuplicatePair> pairs;
    for (const auto& [test_id, target] : gold.entries()) {
        if (!rng.coin()) continue;
        const std::string target_id = target ? *target : "mc:" + test_id;
        pairs.push_back({test_id, target_id, Method::MC, 1.0});
    }
    return pairs;
}

std::pair<Corpus, Corpus> half_split(const Corpus& c, std::uint64_t seed) {
    if (c.size() < 2)
        throw std::invalid_argument("half_split: corpus must hold at least 2 records");

    std::vector<std::size_t> order(c.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(mix64(seed, 0x73706c6974ull)); // "split"
    for (std::size_t i = order.size() - 1; i > 0; --i)
        std::swap(order[i], order[rng.below(i + 1)]);

    const std::size_t first_size = (c.size() + 1) / 2;
    std::vector<bool> in_first(c.size(), false);
    for (std::size_t i = 0; i < first_size; ++i) in_first[order[i]] = true;

    // keep file order within each half
    Corpus a(c.source()), b(c.source());
    for (std::size_t i = 0; i < c.size(); ++i)
        (in_first[i] ? a : b).add(c.at(i));
    return {std::move(a), std::move(b)};
}

std::vector<DuplicatePair> run_method(const Corpus& test, const Corpus& target, Method method,
                                      const ProtocolParams& params, const GoldStandard* gold) {
    if (method == Method::MC) {
        if (!gold)
            throw std::invalid_argument("run_method: mc needs a gold standard");
        return monte_carlo(*gold, params.seed);
    }
    if (method == Method::SVS || method == Method::CSB)
        return dedup_by_similarity(test, target, method, params.sim);
    const KeyIndex index = build_index(target, method, params.key);
    return dedup_by_key(test, index, method, params.key, PairMode::FirstMatch);
}

EvalReport run_fpm(const Corpus& c, Method method, const ProtocolParams& params) {
    const GoldStandard gold = GoldStandard::identity_over(c);
    return score(run_method(c, c, method, params, &gold), gold);
}

EvalReport run_hpm(const Corpus& c, Method method, const ProtocolParams& params) {
    auto [test, target] = half_split(c, params.seed);
    const GoldStandard gold = GoldStandard::all_negative_over(test);
    return score(run_method(test, target, method, params, &gold), gold);
}

EvalReport run_gold(const Corpus& test, const Corpus& target, const GoldStandard& gold,
                    Method method, const ProtocolParams& params) {
    return score(run_method(test, target, method, params, &gold), gold);
}

std::string_view perturbation_name(PerturbationKind k) {
    switch (k) {
    case PerturbationKind::CaseFlip: return "case_flip";
    case PerturbationKind::LDigit1Swap: return "l_digit1_swap";
    case PerturbationKind::HyphenSplit: return "hyphen_split";
    case PerturbationKind::PunctuationEdit: return "punctuation_edit";
    case PerturbationKind::WhitespaceInsert: return "whitespace_insert";
    }
    return "?";
}

std::optional<PerturbationKind> perturbation_from_name(std::string_view name) {
    for (auto k : {PerturbationKind::CaseFlip, PerturbationKind::LDigit1Swap,
                   PerturbationKind::HyphenSplit, PerturbationKind::PunctuationEdit,
                   PerturbationKind::WhitespaceInsert})
        if (perturbation_name(k) == name) return k;
    return std::nullopt;
}

namespace {

std::vector<std::size_t> positions_of(std::string_view s, char c) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == c) out.push_back(i);
    return out;
}

} // namespace

std::string perturb_title(std::string_view title, PerturbationKind kind, std::uint64_t rng_seed) {
    std::string t(title);
    Rng rng(rng_seed);
    switch (kind) {
    case PerturbationKind::CaseFlip: {
        bool flipped = false;
        std::size_t first_alpha = t.size();
        for (std::size_t i = 0; i < t.size(); ++i) {
            const unsigned char c = static_cast<unsigned char>(t[i]);
            if (!std::isalpha(c)) continue;
            if (first_alpha == t.size()) first_alpha = i;
            if (rng.coin()) {
                t[i] = std::isupper(c) ? static_cast<char>(std::tolower(c))
                                       : static_cast<char>(std::toupper(c));
                flipped = true;
            }
        }
        if (!flipped && first_alpha < t.size()) {
            const unsigned char c = static_cast<unsigned char>(t[first_alpha]);
            t[first_alpha] = std::isupper(c) ? static_cast<char>(std::tolower(c))
                                             : static_cast<char>(std::toupper(c));
        }
        break;
    }
    case PerturbationKind::LDigit1Swap: {
        // the PM/WOS gene-name confusion: one '1' becomes 'l' (or back)
        auto ones = positions_of(t, '1');
        if (!ones.empty()) {
            t[ones[rng.below(ones.size())]] = 'l';
        } else {
            auto els = positions_of(t, 'l');
            if (!els.empty()) t[els[rng.below(els.size())]] = '1';
        }
        break;
    }
    case PerturbationKind::HyphenSplit: {
        auto hyphens = positions_of(t, '-');
        if (!hyphens.empty()) t[hyphens[rng.below(hyphens.size())]] = ' ';
        break;
    }
    case PerturbationKind::PunctuationEdit: {
        static const char punct[] = {',', ';', ':', '(', ')', '!'};
        const char c = punct[rng.below(sizeof(punct))];
        const std::size_t pos = rng.below(t.size() + 1);
        t.insert(t.begin() + static_cast<std::ptrdiff_t>(pos), c);
        break;
    }
    case PerturbationKind::WhitespaceInsert: {
        // split inside a word, the line-break failure mode
        std::vector<std::size_t> candidates;
        for (std::size_t i = 1; i < t.size(); ++i)
            if (!std::isspace(static_cast<unsigned char>(t[i - 1])) &&
                !std::isspace(static_cast<unsigned char>(t[i])))
                candidates.push_back(i);
        if (!candidates.empty()) {
            const std::size_t pos = candidates[rng.below(candidates.size())];
            t.insert(t.begin() + static_cast<std::ptrdiff_t>(pos), ' ');
        }
        break;
    }
    }
    return t;
}

std::pair<Corpus, GoldStandard> perturb(const Corpus& c, const PerturbationSpec& spec) {
    if (spec.rate < 0.0 || spec.rate > 1.0)
        throw std::invalid_argument("perturb: rate outside [0,1]");

    Corpus out(c.source());
    GoldStandard gold;
    std::size_t index = 0;
    for (const Record& r : c) {
        Record copy = r;
        const std::uint64_t stream = mix64(spec.seed, index++);
        Rng decide(mix64(stream, 1));
        if (copy.title && decide.real01() < spec.rate)
            copy.title = perturb_title(*copy.title, spec.kind, mix64(stream, 2));
        out.add(std::move(copy));
        gold.add(r.id, r.id);
    }
    return {std::move(out), std::move(gold)};
}

} // namespace bibdedup
