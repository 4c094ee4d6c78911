#ifndef COOCNET_EXPERIMENT_HPP_
#define COOCNET_EXPERIMENT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "coocnet/learn.hpp"

namespace coocnet {

enum class Strategy { Global, Local };

const char* to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

struct EmbeddingRef {
    std::string name;
    std::string path;
};

struct ExperimentConfig {
    std::string corpus_manifest;
    std::vector<EmbeddingRef> embeddings;
    bool remove_stopwords = false;
    std::string stopword_file; // required when remove_stopwords
    std::optional<std::string> lemma_map;
    std::vector<int> sample_lengths;
    std::vector<double> p_grid; // ascending, (0,100]; p=0 is the implicit baseline
    Strategy strategy = Strategy::Global;
    MeasurementSpec measurements = MeasurementSpec::all();
    std::vector<ClassifierSpec> classifiers;
    CvMode cv = CvMode::loo();
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    int max_short_samples = 0; // documents allowed to fall short of a length

    // JSON object with exactly these fields; unknown keys are rejected.
    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);
};

// Per (embedding, length) pipeline bookkeeping.
struct LevelRecord {
    std::string embedding;
    int length = 0;
    bool ok = false;
    std::string failure;
    std::size_t sample_count = 0;
    std::size_t skipped_samples = 0;
    std::size_t shared_word_count = 0;
    std::vector<std::size_t> vocabulary_sizes; // per sample
    // per p: virtual edges requested/added, summed over samples
    std::vector<std::tuple<double, std::size_t, std::size_t>> virtual_edges;
};

struct CellRecord {
    std::string embedding;
    int length = 0;
    Strategy strategy = Strategy::Global;
    std::string classifier;
    bool ok = false;
    std::string failure;
    double gamma0 = 0.0;
    std::vector<std::pair<double, double>> accuracy_by_p; // p > 0 entries
    std::optional<SweepStats> stats;                      // absent when the p grid is empty
};

struct SummaryRow {
    int length = 0;
    bool ok = false;
    std::string failure;
    double best_accuracy = 0.0;
    double best_baseline = 0.0;
    std::optional<double> gain_percent;     // absent when nothing beat the baseline
    std::vector<std::string> embeddings;    // winners at p > 0, config order
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<LevelRecord> levels;
    std::vector<CellRecord> cells;
    std::vector<SummaryRow> summary;
};

// Runs the full grid. Cells fail independently; progress and timings go to
// stderr. Deterministic for a fixed config and seed regardless of `workers`.
ExperimentReport run_experiment(const ExperimentConfig& config, int workers = 1);

// cells.csv, sweeps.csv, summary.csv, report.json under out_dir (created if
// missing). Byte-stable for identical reports.
void emit_report(const ExperimentReport& report, const std::string& out_dir);

} // namespace coocnet

#endif
