// bibdedup: deduplicate and merge bibliographic record files.
//
// Exit codes: 0 success, 2 data error (unreadable or malformed input,
// id mismatches), 64 usage error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bibdedup/engine.hpp"
#include "bibdedup/eval.hpp"
#include "bibdedup/synth.hpp"

using namespace bibdedup;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 2;
constexpr int kExitUsage = 64;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::optional<FileFormat> parse_format_flag(const std::string& name) {
    if (name == "auto") return std::nullopt;
    if (name == "medline") return FileFormat::Medline;
    if (name == "isi") return FileFormat::Isi;
    if (name == "canonical") return FileFormat::Canonical;
    throw UsageError("unknown input format: " + name);
}

Corpus load_corpus(const std::string& path, const std::string& format) {
    try {
        auto result = parse_file(path, parse_format_flag(format));
        if (!result.skipped.empty()) {
            std::cerr << path << ": skipped " << result.skipped.size() << " record(s)";
            std::cerr << " (first: " << result.skipped.front().reason << ")\n";
        }
        return std::move(result.corpus);
    } catch (const ParseError& e) {
        throw DataError(e.what());
    }
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
    std::vector<Method> methods;
    for (const auto& name : names) {
        const auto m = method_from_name(name);
        if (!m) throw UsageError("unknown method: " + name);
        methods.push_back(*m);
    }
    if (methods.empty()) throw UsageError("no method given");
    return methods;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    return out;
}

std::string fmt(double v, int digits = 3) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

struct MethodOptions {
    std::size_t ssf_n = 8;
    std::string anchor_dict_path;
    std::string save_anchor_dict_path;
    std::string stoplist_path;
    std::size_t dict_size = 50;
    double threshold = 0.95;
    std::size_t min_count = 3;
    bool tfidf = false;
    unsigned jobs = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--ssf-n", ssf_n, "leading title bigrams kept by ssf (default 8)");
        cmd->add_option("--anchor-dict", anchor_dict_path,
                        "bigram dictionary file for bgf (one bigram per line)");
        cmd->add_option("--save-anchor-dict", save_anchor_dict_path,
                        "write the bgf dictionary built from the inputs to this file");
        cmd->add_option("--stoplist", stoplist_path,
                        "bigrams excluded when building the bgf dictionary");
        cmd->add_option("--dict-size", dict_size, "bgf dictionary size (default 50)");
        cmd->add_option("--threshold", threshold,
                        "similarity decision threshold for svs/csb (default 0.95)");
        cmd->add_option("--min-count", min_count,
                        "word dictionary frequency cut for svs (default 3)");
        cmd->add_flag("--tfidf", tfidf, "weight svs vectors by tf-idf instead of presence");
        cmd->add_option("--jobs", jobs, "scoring threads for svs/csb (output is identical)");
    }

    // BGF dictionary: pinned file when given, else built from the corpora.
    std::shared_ptr<const AnchorDict> anchor_for(const std::vector<const Corpus*>& corpora) {
        if (!anchor_dict_path.empty())
            return std::make_shared<AnchorDict>(AnchorDict::load_file(anchor_dict_path));
        std::set<std::string> stop;
        if (!stoplist_path.empty()) {
            std::ifstream in(stoplist_path);
            if (!in) throw DataError("cannot open " + stoplist_path);
            stop = load_stoplist(in);
        }
        auto dict =
            std::make_shared<AnchorDict>(build_anchor_dict(corpora, dict_size, std::move(stop)));
        if (!save_anchor_dict_path.empty()) {
            auto out = open_output(save_anchor_dict_path);
            dict->save(out);
        }
        return dict;
    }

    ProtocolParams protocol_params(const std::vector<const Corpus*>& corpora, bool needs_bgf,
                                   std::uint64_t seed) {
        ProtocolParams p;
        p.key.ssf_n = ssf_n;
        if (needs_bgf) p.key.anchor = anchor_for(corpora);
        p.sim.threshold = threshold;
        p.sim.min_count = min_count;
        p.sim.tfidf = tfidf;
        p.sim.jobs = jobs;
        p.seed = seed;
        return p;
    }
};

bool needs_anchor(const std::vector<Method>& methods) {
    return std::find(methods.begin(), methods.end(), Method::BGF) != methods.end();
}

void warn_quadratic(std::size_t n, std::size_t m) {
    if (static_cast<double>(n) * static_cast<double>(m) > 1e8)
        std::cerr << "warning: full pairwise scan of " << n << " x " << m
                  << " documents; this is the quadratic path\n";
}

// --- subcommand runners ---------------------------------------------------

int run_parse(const std::string& input, const std::string& format, const std::string& output) {
    const Corpus corpus = load_corpus(input, format);
    auto out = open_output(output);
    write_canonical(corpus, out);
    std::cout << "parsed " << corpus.size() << " " << source_name(corpus.source())
              << " record(s) -> " << output << "\n";
    return kExitOk;
}

int run_keys(const std::string& input, const std::string& format, const std::string& method_name_,
             MethodOptions& opts, const std::string& output) {
    const Method method = parse_methods({method_name_}).front();
    if (!is_key_method(method)) throw UsageError("keys: " + method_name_ + " builds no key");
    const Corpus corpus = load_corpus(input, format);
    KeyParams params;
    params.ssf_n = opts.ssf_n;
    if (method == Method::BGF) params.anchor = opts.anchor_for({&corpus});

    auto out = open_output(output);
    std::size_t no_key = 0;
    for (const Record& r : corpus) {
        const auto key = make_key(r, method, params);
        if (!key) {
            ++no_key;
            continue;
        }
        out << r.id << "\t" << key->value << "\n";
    }
    std::cout << method_name(method) << ": " << corpus.size() - no_key << " key(s), " << no_key
              << " record(s) without key -> " << output << "\n";
    return kExitOk;
}

int run_dedup(const std::string& test_path, const std::string& target_path,
              const std::string& format, const std::vector<std::string>& method_names,
              MethodOptions& opts, const std::string& pair_mode, const std::string& output) {
    const auto methods = parse_methods(method_names);
    if (pair_mode != "first" && pair_mode != "all")
        throw UsageError("--pair-mode must be first or all");
    const PairMode mode = pair_mode == "all" ? PairMode::AllMatches : PairMode::FirstMatch;

    const Corpus test = load_corpus(test_path, format);
    const Corpus target = load_corpus(target_path, format);
    auto params = opts.protocol_params({&test, &target}, needs_anchor(methods), 0);

    auto out = open_output(output);
    for (Method m : methods) {
        std::vector<DuplicatePair> pairs;
        std::size_t no_key = 0;
        if (m == Method::SVS || m == Method::CSB) {
            warn_quadratic(test.size(), target.size());
            pairs = dedup_by_similarity(test, target, m, params.sim);
        } else if (m == Method::MC) {
            throw UsageError("dedup: mc is an evaluation baseline; use evaluate");
        } else {
            const auto index = build_index(target, m, params.key);
            std::vector<std::string> missing;
            pairs = dedup_by_key(test, index, m, params.key, mode, &missing);
            no_key = missing.size();
        }
        write_pairs(pairs, out);
        std::cout << method_name(m) << ": " << pairs.size() << " pair(s), " << no_key
                  << " test record(s) without key\n";
    }
    return kExitOk;
}

int run_merge(const std::string& test_path, const std::string& target_path,
              const std::string& format, const std::string& pairs_path,
              const std::string& output) {
    const Corpus test = load_corpus(test_path, format);
    const Corpus target = load_corpus(target_path, format);
    std::ifstream pairs_in(pairs_path);
    if (!pairs_in) throw DataError("cannot open " + pairs_path);
    std::vector<DuplicatePair> pairs;
    try {
        pairs = read_pairs(pairs_in);
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
    try {
        const auto result = merge_corpora(test, target, pairs);
        auto out = open_output(output);
        write_canonical(result.merged, out);
        std::cout << "merged " << result.merged.size() << " record(s): kept "
                  << result.kept_from_target << " target + " << result.kept_from_test
                  << " test, removed " << test.size() - result.kept_from_test
                  << " duplicate(s)\n";
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }
    return kExitOk;
}

void write_report_rows(const std::vector<std::pair<Method, EvalReport>>& rows,
                       const std::string& format, std::ostream& out) {
    if (format == "json") {
        json doc = json::array();
        for (const auto& [m, r] : rows)
            doc.push_back({{"method", std::string(method_name(m))},
                           {"gold_duplicates", r.gold_duplicates},
                           {"predicted", r.predicted},
                           {"true_positives", r.true_positives},
                           {"false_positives", r.false_positives},
                           {"false_negatives", r.false_negatives},
                           {"precision", r.precision},
                           {"recall", r.recall}});
        out << doc.dump(2) << "\n";
        return;
    }
    out << "method\tgold_duplicates\tpredicted\ttrue_positives\tfalse_positives\t"
           "false_negatives\tprecision\trecall\n";
    for (const auto& [m, r] : rows)
        out << method_name(m) << "\t" << r.gold_duplicates << "\t" << r.predicted << "\t"
            << r.true_positives << "\t" << r.false_positives << "\t" << r.false_negatives
            << "\t" << fmt(r.precision) << "\t" << fmt(r.recall) << "\n";
}

int run_evaluate(const std::string& protocol, const std::string& test_path,
                 const std::string& target_path, const std::string& gold_path,
                 const std::string& format, const std::vector<std::string>& method_names,
                 MethodOptions& opts, std::uint64_t seed, const std::string& report_format,
                 const std::string& output) {
    const auto methods = parse_methods(method_names);
    if (report_format != "tsv" && report_format != "json")
        throw UsageError("--report-format must be tsv or json");

    std::vector<std::pair<Method, EvalReport>> rows;
    if (protocol == "fpm" || protocol == "hpm") {
        const Corpus corpus = load_corpus(test_path, format);
        auto params = opts.protocol_params({&corpus}, needs_anchor(methods), seed);
        for (Method m : methods)
            rows.emplace_back(m, protocol == "fpm" ? run_fpm(corpus, m, params)
                                                   : run_hpm(corpus, m, params));
    } else if (protocol == "gold") {
        if (gold_path.empty()) throw UsageError("gold protocol needs --gold");
        if (target_path.empty()) throw UsageError("gold protocol needs --target");
        const Corpus test = load_corpus(test_path, format);
        const Corpus target = load_corpus(target_path, format);
        std::ifstream gold_in(gold_path);
        if (!gold_in) throw DataError("cannot open " + gold_path);
        GoldStandard gold;
        try {
            gold = GoldStandard::read_tsv(gold_in);
        } catch (const std::exception& e) {
            throw DataError(e.what());
        }
        auto params = opts.protocol_params({&test, &target}, needs_anchor(methods), seed);
        for (Method m : methods) {
            try {
                rows.emplace_back(m, run_gold(test, target, gold, m, params));
            } catch (const std::invalid_argument& e) {
                throw DataError(e.what()); // pair/gold id mismatch
            }
        }
    } else {
        throw UsageError("unknown protocol: " + protocol);
    }

    auto out = open_output(output);
    write_report_rows(rows, report_format, out);
    for (const auto& [m, r] : rows)
        std::cout << method_name(m) << ": precision " << fmt(r.precision) << ", recall "
                  << fmt(r.recall) << " (" << r.predicted << " predicted / "
                  << r.gold_duplicates << " gold)\n";
    return kExitOk;
}

int run_benchmark(std::size_t test_size, std::size_t target_size,
                  const std::vector<std::string>& method_names, MethodOptions& opts,
                  std::uint64_t seed, std::size_t repeats, const std::string& report_format,
                  const std::string& output) {
    const auto methods = parse_methods(method_names);
    if (repeats == 0) throw UsageError("--repeats must be positive");

    SynthConfig test_cfg;
    test_cfg.count = test_size;
    test_cfg.seed = seed;
    test_cfg.source = Source::PM;
    test_cfg.id_prefix = "P";
    SynthConfig target_cfg;
    target_cfg.count = target_size;
    target_cfg.seed = seed + 1;
    target_cfg.pool = SynthConfig::Pool::B;
    target_cfg.source = Source::WOS;
    target_cfg.id_prefix = "W";
    target_cfg.start_index = test_size;

    const Corpus test = make_synthetic_corpus(test_cfg);
    const Corpus target = make_synthetic_corpus(target_cfg);

    KeyParams params;
    params.ssf_n = opts.ssf_n;
    if (needs_anchor(methods)) params.anchor = std::make_shared<AnchorDict>(synthetic_anchor_dict());

    json doc = json::array();
    std::ostringstream tsv;
    tsv << "method\ttest_records\ttarget_records\tpairs\tmillis\n";
    for (Method m : methods) {
        if (!is_key_method(m)) throw UsageError("benchmark: " + std::string(method_name(m)) +
                                                " is not a key method");
        double best_ms = 0.0;
        std::size_t pair_count = 0;
        for (std::size_t rep = 0; rep < repeats; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto index = build_index(target, m, params);
            const auto pairs = dedup_by_key(test, index, m, params);
            const auto t1 = std::chrono::steady_clock::now();
            const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            if (rep == 0 || ms < best_ms) best_ms = ms;
            pair_count = pairs.size();
        }
        tsv << method_name(m) << "\t" << test.size() << "\t" << target.size() << "\t"
            << pair_count << "\t" << fmt(best_ms, 1) << "\n";
        doc.push_back({{"method", std::string(method_name(m))},
                       {"test_records", test.size()},
                       {"target_records", target.size()},
                       {"pairs", pair_count},
                       {"millis", best_ms}});
        std::cout << method_name(m) << ": " << test.size() << "+" << target.size()
                  << " records in " << fmt(best_ms, 1) << " ms\n";
    }
    auto out = open_output(output);
    if (report_format == "json") out << doc.dump(2) << "\n";
    else out << tsv.str();
    return kExitOk;
}

int run_split(const std::string& input, const std::string& format, std::uint64_t seed,
              const std::string& out_a, const std::string& out_b) {
    const Corpus corpus = load_corpus(input, format);
    try {
        const auto [a, b] = half_split(corpus, seed);
        auto fa = open_output(out_a);
        write_canonical(a, fa);
        auto fb = open_output(out_b);
        write_canonical(b, fb);
        std::cout << "split " << corpus.size() << " record(s) into " << a.size() << " + "
                  << b.size() << "\n";
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deduplicate and merge bibliographic record corpora"};
    app.require_subcommand(1);

    std::string format = "auto";
    app.add_option("--format", format, "input format: auto, medline, isi, canonical")
        ->capture_default_str();

    // parse
    auto* parse_cmd = app.add_subcommand("parse", "parse a record file to canonical form");
    std::string parse_input, parse_output;
    parse_cmd->add_option("--input", parse_input)->required();
    parse_cmd->add_option("--output", parse_output)->required();

    // keys
    auto* keys_cmd = app.add_subcommand("keys", "write one fingerprint key per record");
    std::string keys_input, keys_method, keys_output;
    MethodOptions keys_opts;
    keys_cmd->add_option("--input", keys_input)->required();
    keys_cmd->add_option("--method", keys_method)->required();
    keys_cmd->add_option("--output", keys_output)->required();
    keys_opts.attach(keys_cmd);

    // dedup
    auto* dedup_cmd = app.add_subcommand("dedup", "find test records duplicated in the target");
    std::string dedup_test, dedup_target, dedup_output, dedup_pair_mode = "first";
    std::vector<std::string> dedup_methods;
    MethodOptions dedup_opts;
    dedup_cmd->add_option("--test", dedup_test)->required();
    dedup_cmd->add_option("--target", dedup_target)->required();
    dedup_cmd->add_option("--method", dedup_methods, "method name(s)")
        ->required()
        ->delimiter(',');
    dedup_cmd->add_option("--pair-mode", dedup_pair_mode, "first or all")
        ->capture_default_str();
    dedup_cmd->add_option("--output", dedup_output)->required();
    dedup_opts.attach(dedup_cmd);

    // merge
    auto* merge_cmd = app.add_subcommand("merge", "write the deduplicated union corpus");
    std::string merge_test, merge_target, merge_pairs, merge_output;
    merge_cmd->add_option("--test", merge_test)->required();
    merge_cmd->add_option("--target", merge_target)->required();
    merge_cmd->add_option("--pairs", merge_pairs, "pair TSV from dedup")->required();
    merge_cmd->add_option("--output", merge_output)->required();

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "score methods under a protocol");
    std::string eval_protocol = "gold", eval_test, eval_target, eval_gold, eval_output;
    std::string eval_report_format = "tsv";
    std::vector<std::string> eval_methods;
    std::uint64_t eval_seed = 0;
    MethodOptions eval_opts;
    eval_cmd->add_option("--protocol", eval_protocol, "gold, fpm, or hpm")
        ->capture_default_str();
    eval_cmd->add_option("--test", eval_test)->required();
    eval_cmd->add_option("--target", eval_target);
    eval_cmd->add_option("--gold", eval_gold, "gold TSV: test_id<TAB>target_id-or-dash");
    eval_cmd->add_option("--method", eval_methods)->required()->delimiter(',');
    eval_cmd->add_option("--seed", eval_seed, "hpm split / mc tag seed")->capture_default_str();
    eval_cmd->add_option("--report-format", eval_report_format, "tsv or json")
        ->capture_default_str();
    eval_cmd->add_option("--output", eval_output)->required();
    eval_opts.attach(eval_cmd);

    // benchmark
    auto* bench_cmd = app.add_subcommand("benchmark", "time key methods on synthetic corpora");
    std::size_t bench_test_size = 7709, bench_target_size = 12658, bench_repeats = 1;
    std::uint64_t bench_seed = 0;
    std::string bench_output, bench_report_format = "tsv";
    std::vector<std::string> bench_methods;
    bench_cmd->add_option("--test-size", bench_test_size)->capture_default_str();
    bench_cmd->add_option("--target-size", bench_target_size)->capture_default_str();
    bench_cmd->add_option("--method", bench_methods)->required()->delimiter(',');
    bench_cmd->add_option("--seed", bench_seed)->capture_default_str();
    bench_cmd->add_option("--repeats", bench_repeats, "keep the best of N runs")
        ->capture_default_str();
    bench_cmd->add_option("--report-format", bench_report_format)->capture_default_str();
    bench_cmd->add_option("--output", bench_output)->required();
    MethodOptions bench_opts;
    bench_opts.attach(bench_cmd);

    // split
    auto* split_cmd = app.add_subcommand("split", "random disjoint halves of a corpus");
    std::string split_input, split_out_a, split_out_b;
    std::uint64_t split_seed = 0;
    split_cmd->add_option("--input", split_input)->required();
    split_cmd->add_option("--seed", split_seed)->capture_default_str();
    split_cmd->add_option("--out-a", split_out_a)->required();
    split_cmd->add_option("--out-b", split_out_b)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (parse_cmd->parsed()) return run_parse(parse_input, format, parse_output);
        if (keys_cmd->parsed())
            return run_keys(keys_input, format, keys_method, keys_opts, keys_output);
        if (dedup_cmd->parsed())
            return run_dedup(dedup_test, dedup_target, format, dedup_methods, dedup_opts,
                             dedup_pair_mode, dedup_output);
        if (merge_cmd->parsed())
            return run_merge(merge_test, merge_target, format, merge_pairs, merge_output);
        if (eval_cmd->parsed())
            return run_evaluate(eval_protocol, eval_test, eval_target, eval_gold, format,
                                eval_methods, eval_opts, eval_seed, eval_report_format,
                                eval_output);
        if (bench_cmd->parsed())
            return run_benchmark(bench_test_size, bench_target_size, bench_methods, bench_opts,
                                 bench_seed, bench_repeats, bench_report_format, bench_output);
        if (split_cmd->parsed())
            return run_split(split_input, format, split_seed, split_out_a, split_out_b);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
