#ifndef COOCNET_LEARN_HPP_
#define COOCNET_LEARN_HPP_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "coocnet/metrics.hpp"

namespace coocnet {

struct EmptyIntersectionError : std::runtime_error {
    EmptyIntersectionError() : std::runtime_error("no word occurs in every sample") {}
};

// Intersection of all sets, sorted lexicographically. Throws
// EmptyIntersectionError when the intersection is empty.
std::vector<std::string> shared_vocabulary(const std::vector<std::set<std::string>>& sample_token_sets);

struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values; // row-major
    std::vector<std::string> labels;
    std::vector<std::string> column_names;

    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
};

// Row i = measure_nodes(networks[i], words, spec) concatenated word-major;
// column names are `word.measurement`.
FeatureMatrix build_feature_matrix(const std::vector<TextNetwork>& networks,
                                   const std::vector<std::string>& labels,
                                   const std::vector<std::string>& words,
                                   const MeasurementSpec& spec);

// Per-column z-scoring (population stdev). Fit on training data, apply to
// anything with the same schema; zero-variance columns map to 0.
class Scaler {
public:
    static Scaler fit(const FeatureMatrix& train);
    FeatureMatrix apply(const FeatureMatrix& m) const;

private:
    std::vector<double> mean_;
    std::vector<double> stdev_; // 0 flags a constant column
};

FeatureMatrix standardize(const FeatureMatrix& matrix);

enum class ClassifierKind { DecisionTree, Knn, NaiveBayes, SvmLinear };

const char* to_string(ClassifierKind kind);
ClassifierKind classifier_from_string(const std::string& name);

// Unset parameters are tuned by nested cross-validation on the training fold
// over a small fixed grid: k in {1,3,5}, tree depth in {unlimited, 10},
// C in {0.1, 1, 10}.
struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::Knn;
    std::optional<int> k;          // knn
    std::optional<int> max_depth;  // decision tree; 0 = unlimited
    int min_leaf = 1;              // decision tree
    std::optional<double> C;       // svm
};

// One label per test row. Requires matching schemas and >= 2 training
// classes. Unset spec parameters fall back to the first grid value (no
// tuning happens here; see cross_validate).
std::vector<std::string> train_predict(const FeatureMatrix& train, const FeatureMatrix& test,
                                       const ClassifierSpec& spec, std::uint64_t seed);

struct CvMode {
    bool leave_one_out = true;
    int folds = 0; // used when leave_one_out is false

    static CvMode loo() { return {true, 0}; }
    static CvMode stratified(int folds) { return {false, folds}; }
};

// Seeded round-robin assignment within each class; preserves class
// proportions within one row.
std::vector<int> stratified_folds(const std::vector<std::string>& labels, int folds,
                                  std::uint64_t seed);

// Pooled accuracy (total correct / total rows) with per-fold standardization
// fitted on the training fold only. Unset classifier parameters are selected
// per outer fold by an inner stratified CV on that training fold.
double cross_validate(const FeatureMatrix& matrix, const ClassifierSpec& spec, const CvMode& mode,
                      std::uint64_t seed);

struct SweepStats {
    double gamma0 = 0.0;
    std::vector<std::pair<double, double>> gamma_plus; // (p, accuracy), p ascending
    std::optional<double> max_gamma_plus;              // absent when nothing improved
    std::optional<double> mean_abs_improvement;        // over improving cases
    std::optional<double> mean_rel_improvement;        // over improving cases
    int n_plus = 0;
};

// Improvement statistics over a p-sweep; means and max cover improving cases
// only, matching the report's "-" marker semantics when none exist.
SweepStats sweep_stats(double gamma0, const std::vector<std::pair<double, double>>& gamma_by_p);

// (best - baseline) / baseline in percent.
double relative_gain_percent(double best, double baseline);

} // namespace coocnet

#endif
