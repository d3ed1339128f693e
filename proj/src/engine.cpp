#include "bibdedup/engine.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "bibdedup/simvec.hpp"

namespace bibdedup {

std::size_t KeyIndex::indexed_records() const {
    std::size_t n = 0;
    for (const auto& [key, ids] : entries) n += ids.size();
    return n;
}

namespace {

void check_compatible(const KeyIndex& index, Method method, const KeyParams& params) {
    if (method != index.method)
        throw std::invalid_argument("dedup_by_key: index was built for method " +
                                    std::string(method_name(index.method)));
    if (method == Method::SSF && params.ssf_n != index.params.ssf_n)
        throw std::invalid_argument("dedup_by_key: index was built with ssf_n=" +
                                    std::to_string(index.params.ssf_n));
    if (method == Method::BGF) {
        const bool same = params.anchor && index.params.anchor &&
                          *params.anchor == *index.params.anchor;
        if (!same)
            throw std::invalid_argument(
                "dedup_by_key: index was built with a different anchor dictionary");
    }
}

} // namespace

KeyIndex build_index(const Corpus& target, Method method, const KeyParams& params) {
    if (!is_key_method(method))
        throw std::invalid_argument("build_index: " + std::string(method_name(method)) +
                                    " is not a key method");
    KeyIndex index;
    index.method = method;
    index.params = params;
    index.entries.reserve(target.size());
    for (const Record& r : target) {
        auto key = make_key(r, method, params);
        if (!key) {
            index.no_key_ids.push_back(r.id);
            continue;
        }
        index.entries[key->value].push_back(r.id);
    }
    return index;
}

std::vector<DuplicatePair> dedup_by_key(const Corpus& test, const KeyIndex& index, Method method,
                                        const KeyParams& params, PairMode mode,
                                        std::vector<std::string>* no_key) {
    check_compatible(index, method, params);
    std::vector<DuplicatePair> pairs;
    for (const Record& r : test) {
        auto key = make_key(r, method, params);
        if (!key) {
            if (no_key) no_key->push_back(r.id);
            continue;
        }
        auto it = index.entries.find(key->value);
        if (it == index.entries.end()) continue;
        if (mode == PairMode::FirstMatch) {
            pairs.push_back({r.id, it->second.front(), method, 1.0});
        } else {
            for (const auto& target_id : it->second)
                pairs.push_back({r.id, target_id, method, 1.0});
        }
    }
    return pairs;
}

std::vector<DuplicatePair> dedup_by_similarity(const Corpus& test, const Corpus& target,
                                               Method scorer, const SimParams& params) {
    if (scorer != Method::SVS && scorer != Method::CSB)
        throw std::invalid_argument("dedup_by_similarity: scorer must be svs or csb");
    if (params.threshold < 0.0 || params.threshold > 1.0)
        throw std::invalid_argument("dedup_by_similarity: threshold outside [0,1]");

    const std::vector<const Corpus*> both{&test, &target};
    const unsigned jobs = std::max(1u, params.jobs);

    // Per-test-record result slots keep the output order independent of the
    // thread count.
    std::vector<std::vector<DuplicatePair>> slots(test.size());

    if (scorer == Method::SVS) {
        const auto dict = build_word_dictionary(both, params.min_count);
        std::vector<SparseVector> target_vecs;
        target_vecs.reserve(target.size());
        for (const Record& r : target) target_vecs.push_back(doc_vector(r, dict, params.tfidf));

        auto scan = [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                const Record& t = test.at(i);
                const auto v = doc_vector(t, dict, params.tfidf);
                for (std::size_t j = 0; j < target_vecs.size(); ++j) {
                    const double s = cosine(v, target_vecs[j]);
                    if (s > params.threshold)
                        slots[i].push_back({t.id, target.at(j).id, scorer, s});
                }
            }
        };
        if (jobs == 1) {
            scan(0, test.size());
        } else {
            std::vector<std::thread> workers;
            const std::size_t chunk = (test.size() + jobs - 1) / jobs;
            for (unsigned w = 0; w < jobs; ++w) {
                const std::size_t b = std::min<std::size_t>(w * chunk, test.size());
                const std::size_t e = std::min<std::size_t>(b + chunk, test.size());
                if (b < e) workers.emplace_back(scan, b, e);
            }
            for (auto& t : workers) t.join();
        }
    } else {
        std::vector<CollocSet> target_sets;
        target_sets.reserve(target.size());
        for (const Record& r : target) target_sets.push_back(collocation_set(r));

        auto scan = [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                const Record& t = test.at(i);
                const auto set = collocation_set(t);
                for (std::size_t j = 0; j < target_sets.size(); ++j) {
                    const double s = jaccard(set, target_sets[j]);
                    if (s > params.threshold)
                        slots[i].push_back({t.id, target.at(j).id, scorer, s});
                }
            }
        };
        if (jobs == 1) {
            scan(0, test.size());
        } else {
            std::vector<std::thread> workers;
            const std::size_t chunk = (test.size() + jobs - 1) / jobs;
            for (unsigned w = 0; w < jobs; ++w) {
                const std::size_t b = std::min<std::size_t>(w * chunk, test.size());
                const std::size_t e = std::min<std::size_t>(b + chunk, test.size());
                if (b < e) workers.emplace_back(scan, b, e);
            }
            for (auto& t : workers) t.join();
        }
    }

    std::vector<DuplicatePair> pairs;
    for (auto& slot : slots)
        pairs.insert(pairs.end(), slot.begin(), slot.end());
    return pairs;
}

MergeResult merge_corpora(const Corpus& test, const Corpus& target,
                          const std::vector<DuplicatePair>& pairs) {
    std::unordered_set<std::string> drop;
    for (const auto& p : pairs) {
        if (!test.contains(p.test_id))
            throw std::invalid_argument("merge_corpora: unknown test id " + p.test_id);
        if (!target.contains(p.target_id))
            throw std::invalid_argument("merge_corpora: unknown target id " + p.target_id);
        drop.insert(p.test_id);
    }

    MergeResult result;
    result.removed = pairs;
    Corpus merged(test.source() == target.source() ? test.source() : Source::Other);
    for (const Record& r : target) merged.add(r);
    result.kept_from_target = target.size();
    for (const Record& r : test) {
        if (drop.count(r.id)) continue;
        merged.add(r);
        ++result.kept_from_test;
    }
    result.merged = std::move(merged);
    return result;
}

void write_pairs(const std::vector<DuplicatePair>& pairs, std::ostream& out) {
    char buf[32];
    for (const auto& p : pairs) {
        std::snprintf(buf, sizeof(buf), "%.6f", p.score);
        out << p.test_id << "\t" << p.target_id << "\t" << method_name(p.method) << "\t" << buf
            << "\n";
    }
}

std::vector<DuplicatePair> read_pairs(std::istream& in) {
    std::vector<DuplicatePair> pairs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        DuplicatePair p;
        std::size_t start = 0;
        std::vector<std::string> cols;
        while (true) {
            const auto tab = line.find('\t', start);
            cols.push_back(line.substr(start, tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (cols.size() < 4)
            throw std::runtime_error("read_pairs: line " + std::to_string(lineno) +
                                     ": expected 4 tab-separated columns");
        p.test_id = cols[0];
        p.target_id = cols[1];
        auto m = method_from_name(cols[2]);
        if (!m)
            throw std::runtime_error("read_pairs: line " + std::to_string(lineno) +
                                     ": unknown method " + cols[2]);
        p.method = *m;
        p.score = std::stod(cols[3]);
        pairs.push_back(std::move(p));
    }
    return pairs;
}

} // namespace bibdedup
