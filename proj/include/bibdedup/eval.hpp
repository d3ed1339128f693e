#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bibdedup/corpus.hpp"
#include "bibdedup/engine.hpp"

namespace bibdedup {

/// Hand-verified (or synthetic) duplicate mapping. An entry with a target id
/// is a known duplicate; an entry without one is a known non-duplicate.
/// Insertion order is preserved so seeded runs are reproducible.
class GoldStandard {
public:
    void add(std::string test_id, std::optional<std::string> target_id);

    /// nullptr when the id is not part of the evaluation set.
    const std::optional<std::string>* find(std::string_view test_id) const;

    std::size_t size() const { return entries_.size(); }
    std::size_t positives() const { return positives_; }
    const auto& entries() const { return entries_; }

    static GoldStandard identity_over(const Corpus& c);
    static GoldStandard all_negative_over(const Corpus& c);

    /// TSV "test_id<TAB>target_id-or-dash".
    static GoldStandard read_tsv(std::istream& in);
    void write_tsv(std::ostream& out) const;

private:
    std::vector<std::pair<std::string, std::optional<std::string>>> entries_;
    std::unordered_map<std::string, std::size_t> pos_;
    std::size_t positives_ = 0;
};

/// Confusion counts plus the derived ratios. The 0/0 cases are defined as
/// 1.0 so an ideal "found nothing, nothing to find" run scores perfectly.
struct EvalReport {
    std::size_t gold_duplicates = 0;
    std::size_t predicted = 0;
    std::size_t true_positives = 0;
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;
    double precision = 1.0;
    double recall = 1.0;
};

/// Build a report from pairs against gold. A pair is a true positive when
/// its test id has a gold target equal to its target id. Throws
/// std::invalid_argument for a pair whose test id is outside gold: the
/// evaluation set is closed.
EvalReport score(const std::vector<DuplicatePair>& pairs, const GoldStandard& gold);

/// Recompute precision/recall from raw counts (the published-table check).
EvalReport report_from_counts(std::size_t gold_duplicates, std::size_t true_positives,
                              std::size_t false_positives, std::size_t false_negatives);

/// Random baseline: for each gold entry, with probability 1/2 emit a pair
/// whose target is the gold target when one exists, else a synthetic wrong
/// target. Seeded and reproducible.
std::vector<DuplicatePair> monte_carlo(const GoldStandard& gold, std::uint64_t seed);

/// Random disjoint halves with sizes differing by at most one; the first
/// half gets the extra record. Throws std::invalid_argument when |c| < 2.
std::pair<Corpus, Corpus> half_split(const Corpus& c, std::uint64_t seed);

enum class Protocol { FPM, HPM, GOLD };

struct ProtocolParams {
    KeyParams key;
    SimParams sim;
    std::uint64_t seed = 0; // HPM split / MC tags
};

/// Full self-join: the corpus is test and target at once, gold is the
/// identity mapping; every record should be found as its own duplicate.
EvalReport run_fpm(const Corpus& c, Method method, const ProtocolParams& params = {});

/// Half split: disjoint halves, all-negative gold; an ideal method finds
/// nothing.
EvalReport run_hpm(const Corpus& c, Method method, const ProtocolParams& params = {});

/// Gold-standard run of test against target.
EvalReport run_gold(const Corpus& test, const Corpus& target, const GoldStandard& gold,
                    Method method, const ProtocolParams& params = {});

/// Run any method (key, similarity, or MC) of test against target and
/// return the emitted pairs; the building block behind the protocols.
std::vector<DuplicatePair> run_method(const Corpus& test, const Corpus& target, Method method,
                                      const ProtocolParams& params, const GoldStandard* gold);

enum class PerturbationKind { CaseFlip, LDigit1Swap, HyphenSplit, PunctuationEdit, WhitespaceInsert };

std::string_view perturbation_name(PerturbationKind k);
std::optional<PerturbationKind> perturbation_from_name(std::string_view name);

struct PerturbationSpec {
    PerturbationKind kind = PerturbationKind::CaseFlip;
    double rate = 1.0; // probability that a record's title is edited
    std::uint64_t seed = 0;
};

/// Copy each record, applying the configured title edit at the given rate,
/// and return the copies plus the gold mapping from each copy to its
/// original. Throws std::invalid_argument for rate outside [0,1].
std::pair<Corpus, GoldStandard> perturb(const Corpus& c, const PerturbationSpec& spec);

/// One edited title (applied unconditionally); exposed for tests.
std::string perturb_title(std::string_view title, PerturbationKind kind, std::uint64_t rng_seed);

} // namespace bibdedup
