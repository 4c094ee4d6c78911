#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "coocnet/corpus.hpp"
#include "coocnet/csv.hpp"
#include "coocnet/experiment.hpp"
#include "coocnet/metrics.hpp"
#include "coocnet/network.hpp"

namespace {

struct PreprocessOptions {
    std::string text_path;
    std::string stopword_path; // empty = keep stopwords
    std::string lemma_path;
    int length = 0; // 0 = whole document
};

struct EnrichOptions {
    std::string embedding_path; // empty = co-occurrence only
    double p = 0.0;
    std::string strategy = "global";
};

void add_preprocess_flags(CLI::App* cmd, PreprocessOptions& opts) {
    cmd->add_option("--text", opts.text_path, "UTF-8 text file")->required();
    cmd->add_option("--stopwords", opts.stopword_path,
                    "stopword file; removal is off when omitted");
    cmd->add_option("--lemma", opts.lemma_path, "tab-separated surface<TAB>lemma file");
    cmd->add_option("--length", opts.length, "sample length in tokens (default: whole text)");
}

void add_enrich_flags(CLI::App* cmd, EnrichOptions& opts) {
    cmd->add_option("--embedding", opts.embedding_path, "embedding table for virtual edges");
    cmd->add_option("--p", opts.p, "virtual edges to add, percent of co-occurrence edges");
    cmd->add_option("--strategy", opts.strategy, "global|local")->check(CLI::IsMember({"global", "local"}));
}

coocnet::TokenSequence preprocess(const PreprocessOptions& opts) {
    std::ifstream in(opts.text_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + opts.text_path);
    std::ostringstream buf;
    buf << in.rdbuf();

    auto tokens = coocnet::tokenize(buf.str());
    if (!opts.stopword_path.empty())
        tokens = coocnet::filter_stopwords(tokens, coocnet::load_stopword_file(opts.stopword_path),
                                           false);
    if (!opts.lemma_path.empty())
        tokens = coocnet::normalize_tokens(tokens, coocnet::load_lemma_file(opts.lemma_path));
    if (opts.length > 0) tokens = coocnet::take_sample(tokens, coocnet::SampleSpec{opts.length});
    return tokens;
}

coocnet::TextNetwork build_network(const PreprocessOptions& pre, const EnrichOptions& enrich) {
    auto tokens = preprocess(pre);
    auto net = coocnet::build_cooccurrence(tokens);
    if (enrich.embedding_path.empty() || enrich.p == 0.0) return net;

    std::unordered_set<std::string> vocab(net.words().begin(), net.words().end());
    auto table = coocnet::EmbeddingTable::load(enrich.embedding_path, &vocab);

    coocnet::WordPairSet exclude;
    for (const auto& e : net.edges()) {
        std::string a = net.word(e.a), b = net.word(e.b);
        if (a > b) std::swap(a, b);
        exclude.insert({a, b});
    }
    auto candidates = coocnet::rank_candidate_pairs(vocab, table, exclude);
    coocnet::EnrichmentLevel level{enrich.p};
    auto result = enrich.strategy == "local"
                      ? coocnet::enrich_local(net, candidates, level, table)
                      : coocnet::enrich_global(net, candidates, level);
    if (result.added < result.requested)
        std::cerr << "note: only " << result.added << " of " << result.requested
                  << " requested virtual edges available\n";
    return result.network;
}

int cmd_run(const std::string& config_path, int workers, std::optional<std::uint64_t> seed,
            const std::string& out_dir) {
    auto config = coocnet::ExperimentConfig::from_json_file(config_path);
    if (seed) config.seed = *seed;
    if (!out_dir.empty()) config.output_dir = out_dir;
    auto report = coocnet::run_experiment(config, workers);
    coocnet::emit_report(report, config.output_dir);
    std::cerr << "report written to " << config.output_dir << '\n';
    return 0;
}

int cmd_dump_network(const PreprocessOptions& pre, const EnrichOptions& enrich,
                     const std::string& out_path) {
    auto net = build_network(pre, enrich);
    coocnet::write_edge_list(net, out_path);
    std::cerr << net.node_count() << " nodes, " << net.edge_count() << " edges -> " << out_path
              << '\n';
    return 0;
}

int cmd_measure(const PreprocessOptions& pre, const EnrichOptions& enrich,
                const std::string& words_arg, const std::string& measures_arg,
                const std::string& out_path) {
    auto net = build_network(pre, enrich);

    std::vector<std::string> words;
    if (words_arg.empty()) {
        words.assign(net.words().begin(), net.words().end());
        std::sort(words.begin(), words.end());
    } else {
        std::istringstream iss(words_arg);
        std::string w;
        while (std::getline(iss, w, ','))
            if (!w.empty()) words.push_back(w);
    }

    coocnet::MeasurementSpec spec = coocnet::MeasurementSpec::all();
    if (!measures_arg.empty()) {
        std::vector<std::string> names;
        std::istringstream iss(measures_arg);
        std::string m;
        while (std::getline(iss, m, ','))
            if (!m.empty()) names.push_back(m);
        spec = coocnet::MeasurementSpec::parse(names);
    }

    auto measured = coocnet::measure_nodes(net, words, spec);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write " + out_path);
        out = &file;
    }
    std::vector<std::string> header{"word"};
    for (auto m : spec.selected) header.push_back(coocnet::to_string(m));
    coocnet::csv::write_row(*out, header);
    for (const auto& nm : measured) {
        std::vector<std::string> row{nm.word};
        for (double v : nm.values) row.push_back(coocnet::csv::format_sig(v));
        coocnet::csv::write_row(*out, row);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"word co-occurrence networks with embedding-based virtual edges"};
    app.require_subcommand(1);

    // run
    std::string config_path, run_out;
    int workers = 1;
    std::optional<std::uint64_t> seed_override;
    auto* run = app.add_subcommand("run", "run the experiment grid from a JSON config");
    run->add_option("--config", config_path, "experiment config (JSON)")->required();
    run->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed_override, "override the config seed");
    run->add_option("--out", run_out, "override the config output directory");

    // dump-network
    PreprocessOptions dump_pre;
    EnrichOptions dump_enrich;
    std::string dump_out;
    auto* dump = app.add_subcommand("dump-network", "write a sample's edge list");
    add_preprocess_flags(dump, dump_pre);
    add_enrich_flags(dump, dump_enrich);
    dump->add_option("--out", dump_out, "edge list output file")->required();

    // measure
    PreprocessOptions measure_pre;
    EnrichOptions measure_enrich;
    std::string words_arg, measures_arg, measure_out;
    auto* measure = app.add_subcommand("measure", "per-word measurement table for one sample");
    add_preprocess_flags(measure, measure_pre);
    add_enrich_flags(measure, measure_enrich);
    measure->add_option("--words", words_arg, "comma-separated words (default: all)");
    measure->add_option("--measures", measures_arg, "comma-separated measurements (default: all)");
    measure->add_option("--out", measure_out, "CSV output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, workers, seed_override, run_out);
        if (dump->parsed()) return cmd_dump_network(dump_pre, dump_enrich, dump_out);
        if (measure->parsed())
            return cmd_measure(measure_pre, measure_enrich, words_arg, measures_arg, measure_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
