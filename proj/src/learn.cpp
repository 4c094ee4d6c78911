#include "coocnet/learn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "coocnet/rng.hpp"

namespace coocnet {

namespace {

constexpr double kVarianceFloor = 1e-9;
constexpr int kSvmEpochs = 100;
const std::vector<int> kKnnGrid{1, 3, 5};
const std::vector<int> kDepthGrid{0, 10}; // 0 = unlimited
const std::vector<double> kCGrid{0.1, 1.0, 10.0};

std::vector<std::string> sorted_classes(const std::vector<std::string>& labels) {
    std::vector<std::string> classes(labels);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return classes;
}

std::size_t min_class_count(const std::vector<std::string>& labels) {
    std::unordered_map<std::string, std::size_t> counts;
    for (const auto& l : labels) ++counts[l];
    std::size_t m = labels.size();
    for (const auto& [_, c] : counts) m = std::min(m, c);
    return m;
}

FeatureMatrix select_rows(const FeatureMatrix& m, const std::vector<int>& rows) {
    FeatureMatrix out;
    out.rows = rows.size();
    out.cols = m.cols;
    out.column_names = m.column_names;
    out.values.reserve(out.rows * out.cols);
    out.labels.reserve(out.rows);
    for (int r : rows) {
        out.values.insert(out.values.end(), m.values.begin() + r * m.cols,
                          m.values.begin() + (r + 1) * m.cols);
        out.labels.push_back(m.labels[r]);
    }
    return out;
}

// ---- k nearest neighbors ----

std::string knn_predict_row(const FeatureMatrix& train, const double* x, int k) {
    struct Neighbor {
        double dist;
        const std::string* label;
    };
    std::vector<Neighbor> neighbors;
    neighbors.reserve(train.rows);
    for (std::size_t r = 0; r < train.rows; ++r) {
        double d = 0.0;
        const double* t = train.values.data() + r * train.cols;
        for (std::size_t c = 0; c < train.cols; ++c) {
            double diff = x[c] - t[c];
            d += diff * diff;
        }
        neighbors.push_back({d, &train.labels[r]});
    }
    // (distance, label) is a total order up to interchangeable duplicates, so
    // predictions do not depend on training row order.
    std::sort(neighbors.begin(), neighbors.end(), [](const Neighbor& a, const Neighbor& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        return *a.label < *b.label;
    });
    int kk = std::min<std::size_t>(k, neighbors.size());

    std::map<std::string, std::pair<int, double>> votes; // label -> (count, dist sum)
    for (int i = 0; i < kk; ++i) {
        auto& v = votes[*neighbors[i].label];
        v.first += 1;
        v.second += neighbors[i].dist;
    }
    const std::string* best = nullptr;
    int best_votes = -1;
    double best_dist = 0.0;
    for (const auto& [label, v] : votes) {
        if (v.first > best_votes || (v.first == best_votes && v.second < best_dist)) {
            best = &label;
            best_votes = v.first;
            best_dist = v.second;
        }
    }
    return *best;
}

// ---- Gaussian naive Bayes ----

struct NaiveBayesModel {
    std::vector<std::string> classes;
    std::vector<double> log_prior;
    std::vector<std::vector<double>> mean;     // class x feature
    std::vector<std::vector<double>> variance; // floored
};

NaiveBayesModel nb_fit(const FeatureMatrix& train) {
    NaiveBayesModel model;
    model.classes = sorted_classes(train.labels);
    std::unordered_map<std::string, int> class_idx;
    for (std::size_t i = 0; i < model.classes.size(); ++i) class_idx[model.classes[i]] = i;

    std::size_t nc = model.classes.size();
    std::vector<double> count(nc, 0.0);
    model.mean.assign(nc, std::vector<double>(train.cols, 0.0));
    model.variance.assign(nc, std::vector<double>(train.cols, 0.0));
    for (std::size_t r = 0; r < train.rows; ++r) {
        int c = class_idx[train.labels[r]];
        count[c] += 1.0;
        for (std::size_t j = 0; j < train.cols; ++j) model.mean[c][j] += train.at(r, j);
    }
    for (std::size_t c = 0; c < nc; ++c)
        for (std::size_t j = 0; j < train.cols; ++j) model.mean[c][j] /= count[c];
    for (std::size_t r = 0; r < train.rows; ++r) {
        int c = class_idx[train.labels[r]];
        for (std::size_t j = 0; j < train.cols; ++j) {
            double d = train.at(r, j) - model.mean[c][j];
            model.variance[c][j] += d * d;
        }
    }
    model.log_prior.resize(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        model.log_prior[c] = std::log(count[c] / static_cast<double>(train.rows));
        for (std::size_t j = 0; j < train.cols; ++j)
            model.variance[c][j] = std::max(model.variance[c][j] / count[c], kVarianceFloor);
    }
    return model;
}

std::string nb_predict_row(const NaiveBayesModel& model, const double* x, std::size_t cols) {
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < model.classes.size(); ++c) {
        double score = model.log_prior[c];
        for (std::size_t j = 0; j < cols; ++j) {
            double var = model.variance[c][j];
            double d = x[j] - model.mean[c][j];
            score += -0.5 * std::log(2.0 * M_PI * var) - d * d / (2.0 * var);
        }
        if (score > best_score) { // classes sorted: ties keep the smaller label
            best_score = score;
            best = static_cast<int>(c);
        }
    }
    return model.classes[best];
}

// ---- CART decision tree ----

struct TreeNode {
    int feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    std::string label;
    int left = -1;
    int right = -1;
};

struct DecisionTree {
    std::vector<TreeNode> nodes;

    const std::string& predict(const double* x) const {
        int cur = 0;
        while (nodes[cur].feature >= 0)
            cur = x[nodes[cur].feature] <= nodes[cur].threshold ? nodes[cur].left : nodes[cur].right;
        return nodes[cur].label;
    }
};

std::string majority_label(const FeatureMatrix& m, const std::vector<int>& rows) {
    std::map<std::string, int> counts;
    for (int r : rows) ++counts[m.labels[r]];
    const std::string* best = nullptr;
    int best_count = -1;
    for (const auto& [label, c] : counts)
        if (c > best_count) {
            best = &label;
            best_count = c;
        }
    return *best;
}

double gini_from_counts(const std::vector<int>& counts, int total) {
    double g = 1.0;
    for (int c : counts) {
        double p = static_cast<double>(c) / total;
        g -= p * p;
    }
    return g;
}

int grow_tree(DecisionTree& tree, const FeatureMatrix& m,
              const std::unordered_map<std::string, int>& class_idx, std::vector<int> rows,
              int depth, int max_depth, int min_leaf) {
    const int n = static_cast<int>(rows.size());
    const int nc = static_cast<int>(class_idx.size());
    std::vector<int> counts(nc, 0);
    for (int r : rows) ++counts[class_idx.at(m.labels[r])];
    bool pure = std::count(counts.begin(), counts.end(), 0) == nc - 1;

    int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    if (pure || n < 2 * min_leaf || (max_depth > 0 && depth >= max_depth)) {
        tree.nodes[node_id].label = majority_label(m, rows);
        return node_id;
    }

    double parent_gini = gini_from_counts(counts, n);
    double best_gain = 0.0;
    int best_feature = -1;
    double best_threshold = 0.0;

    std::vector<std::pair<double, int>> column(n); // (value, class)
    std::vector<int> left_counts(nc);
    for (std::size_t j = 0; j < m.cols; ++j) {
        for (int i = 0; i < n; ++i)
            column[i] = {m.at(rows[i], j), class_idx.at(m.labels[rows[i]])};
        std::sort(column.begin(), column.end());
        std::fill(left_counts.begin(), left_counts.end(), 0);
        for (int i = 0; i + 1 < n; ++i) {
            ++left_counts[column[i].second];
            if (column[i].first == column[i + 1].first) continue;
            int nl = i + 1, nr = n - nl;
            if (nl < min_leaf || nr < min_leaf) continue;
            double gl = 1.0, gr = 1.0;
            for (int c = 0; c < nc; ++c) {
                double pl = static_cast<double>(left_counts[c]) / nl;
                double pr = static_cast<double>(counts[c] - left_counts[c]) / nr;
                gl -= pl * pl;
                gr -= pr * pr;
            }
            double weighted = (nl * gl + nr * gr) / n;
            double gain = parent_gini - weighted;
            if (gain > best_gain + 1e-12) {
                double t = 0.5 * (column[i].first + column[i + 1].first);
                if (t >= column[i + 1].first) t = column[i].first; // rounding guard
                best_gain = gain;
                best_feature = static_cast<int>(j);
                best_threshold = t;
            }
        }
    }

    if (best_feature < 0) {
        tree.nodes[node_id].label = majority_label(m, rows);
        return node_id;
    }

    std::vector<int> left_rows, right_rows;
    for (int r : rows)
        (m.at(r, best_feature) <= best_threshold ? left_rows : right_rows).push_back(r);
    rows.clear();
    rows.shrink_to_fit();

    int left = grow_tree(tree, m, class_idx, std::move(left_rows), depth + 1, max_depth, min_leaf);
    int right = grow_tree(tree, m, class_idx, std::move(right_rows), depth + 1, max_depth, min_leaf);
    tree.nodes[node_id].feature = best_feature;
    tree.nodes[node_id].threshold = best_threshold;
    tree.nodes[node_id].left = left;
    tree.nodes[node_id].right = right;
    return node_id;
}

DecisionTree tree_fit(const FeatureMatrix& train, int max_depth, int min_leaf) {
    auto classes = sorted_classes(train.labels);
    std::unordered_map<std::string, int> class_idx;
    for (std::size_t i = 0; i < classes.size(); ++i) class_idx[classes[i]] = i;
    std::vector<int> rows(train.rows);
    std::iota(rows.begin(), rows.end(), 0);
    DecisionTree tree;
    grow_tree(tree, train, class_idx, std::move(rows), 0, max_depth, min_leaf);
    return tree;
}

// ---- one-vs-rest linear SVM, Pegasos-style subgradient descent ----

struct SvmModel {
    std::vector<std::string> classes;
    std::vector<std::vector<double>> weights; // class x feature
    std::vector<double> bias;
};

SvmModel svm_fit(const FeatureMatrix& train, double C, std::uint64_t seed) {
    SvmModel model;
    model.classes = sorted_classes(train.labels);
    const std::size_t nc = model.classes.size();
    const std::size_t n = train.rows;
    const double lambda = 1.0 / (C * static_cast<double>(n));
    model.weights.assign(nc, std::vector<double>(train.cols, 0.0));
    model.bias.assign(nc, 0.0);

    std::vector<int> order(n);
    for (std::size_t c = 0; c < nc; ++c) {
        std::vector<double>& w = model.weights[c];
        double& b = model.bias[c];
        std::vector<double> y(n);
        for (std::size_t r = 0; r < n; ++r)
            y[r] = train.labels[r] == model.classes[c] ? 1.0 : -1.0;

        Rng rng(mix_seed(seed, 0x5fa11ULL + c));
        std::iota(order.begin(), order.end(), 0);
        long long t = 1;
        for (int epoch = 0; epoch < kSvmEpochs; ++epoch) {
            rng.shuffle(order);
            for (int idx : order) {
                const double* x = train.values.data() + static_cast<std::size_t>(idx) * train.cols;
                double margin = b;
                for (std::size_t j = 0; j < train.cols; ++j) margin += w[j] * x[j];
                margin *= y[idx];
                double eta = 1.0 / (lambda * static_cast<double>(t));
                double shrink = 1.0 - 1.0 / static_cast<double>(t); // = 1 - eta*lambda
                for (std::size_t j = 0; j < train.cols; ++j) w[j] *= shrink;
                if (margin < 1.0) {
                    double step = eta * y[idx];
                    for (std::size_t j = 0; j < train.cols; ++j) w[j] += step * x[j];
                    b += step;
                }
                ++t;
            }
        }
    }
    return model;
}

std::string svm_predict_row(const SvmModel& model, const double* x, std::size_t cols) {
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < model.classes.size(); ++c) {
        double score = model.bias[c];
        for (std::size_t j = 0; j < cols; ++j) score += model.weights[c][j] * x[j];
        if (score > best_score) {
            best_score = score;
            best = static_cast<int>(c);
        }
    }
    return model.classes[best];
}

// ---- parameter grids ----

std::vector<ClassifierSpec> candidate_specs(const ClassifierSpec& spec) {
    std::vector<ClassifierSpec> out;
    switch (spec.kind) {
        case ClassifierKind::Knn:
            if (spec.k) return {spec};
            for (int k : kKnnGrid) {
                ClassifierSpec s = spec;
                s.k = k;
                out.push_back(s);
            }
            break;
        case ClassifierKind::DecisionTree:
            if (spec.max_depth) return {spec};
            for (int d : kDepthGrid) {
                ClassifierSpec s = spec;
                s.max_depth = d;
                out.push_back(s);
            }
            break;
        case ClassifierKind::SvmLinear:
            if (spec.C) return {spec};
            for (double c : kCGrid) {
                ClassifierSpec s = spec;
                s.C = c;
                out.push_back(s);
            }
            break;
        case ClassifierKind::NaiveBayes:
            return {spec};
    }
    return out;
}

std::vector<std::vector<int>> fold_row_sets(const std::vector<int>& assignment, int folds) {
    std::vector<std::vector<int>> sets(folds);
    for (std::size_t r = 0; r < assignment.size(); ++r) sets[assignment[r]].push_back(static_cast<int>(r));
    return sets;
}

double pooled_cv(const FeatureMatrix& matrix, const ClassifierSpec& resolved,
                 const std::vector<std::vector<int>>& fold_sets, std::uint64_t seed) {
    std::size_t correct = 0;
    std::vector<int> all_rows(matrix.rows);
    std::iota(all_rows.begin(), all_rows.end(), 0);
    for (const auto& test_rows : fold_sets) {
        if (test_rows.empty()) continue;
        std::vector<char> in_test(matrix.rows, 0);
        for (int r : test_rows) in_test[r] = 1;
        std::vector<int> train_rows;
        train_rows.reserve(matrix.rows - test_rows.size());
        for (int r : all_rows)
            if (!in_test[r]) train_rows.push_back(r);

        FeatureMatrix train = select_rows(matrix, train_rows);
        FeatureMatrix test = select_rows(matrix, test_rows);
        Scaler scaler = Scaler::fit(train);
        auto predictions = train_predict(scaler.apply(train), scaler.apply(test), resolved, seed);
        for (std::size_t i = 0; i < test_rows.size(); ++i)
            if (predictions[i] == matrix.labels[test_rows[i]]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(matrix.rows);
}

ClassifierSpec resolve_spec(const FeatureMatrix& train_raw, const ClassifierSpec& spec,
                            std::uint64_t seed) {
    auto candidates = candidate_specs(spec);
    if (candidates.size() == 1) return candidates[0];
    int inner = static_cast<int>(std::min<std::size_t>(3, min_class_count(train_raw.labels)));
    if (inner < 2) return candidates[0];
    auto fold_sets = fold_row_sets(stratified_folds(train_raw.labels, inner, seed), inner);
    ClassifierSpec best = candidates[0];
    double best_acc = -1.0;
    for (const auto& cand : candidates) {
        double acc = pooled_cv(train_raw, cand, fold_sets, seed);
        if (acc > best_acc) {
            best_acc = acc;
            best = cand;
        }
    }
    return best;
}

} // namespace

std::vector<std::string> shared_vocabulary(
    const std::vector<std::set<std::string>>& sample_token_sets) {
    if (sample_token_sets.empty())
        throw std::invalid_argument("shared_vocabulary needs at least one sample");
    std::vector<std::string> shared(sample_token_sets[0].begin(), sample_token_sets[0].end());
    for (std::size_t i = 1; i < sample_token_sets.size() && !shared.empty(); ++i) {
        const auto& s = sample_token_sets[i];
        std::vector<std::string> kept;
        kept.reserve(shared.size());
        for (auto& w : shared)
            if (s.count(w)) kept.push_back(std::move(w));
        shared = std::move(kept);
    }
    if (shared.empty()) throw EmptyIntersectionError();
    return shared; // set iteration was ordered, so already sorted
}

FeatureMatrix build_feature_matrix(const std::vector<TextNetwork>& networks,
                                   const std::vector<std::string>& labels,
                                   const std::vector<std::string>& words,
                                   const MeasurementSpec& spec) {
    if (networks.size() != labels.size())
        throw std::invalid_argument("one label per network required");
    FeatureMatrix m;
    m.rows = networks.size();
    m.cols = words.size() * spec.selected.size();
    m.labels = labels;
    m.column_names.reserve(m.cols);
    for (const auto& w : words)
        for (Measurement meas : spec.selected)
            m.column_names.push_back(w + "." + to_string(meas));
    m.values.reserve(m.rows * m.cols);
    for (const auto& net : networks) {
        auto measured = measure_nodes(net, words, spec);
        for (const auto& nm : measured)
            m.values.insert(m.values.end(), nm.values.begin(), nm.values.end());
    }
    return m;
}

Scaler Scaler::fit(const FeatureMatrix& train) {
    if (train.rows < 2) throw std::invalid_argument("standardize needs at least 2 rows");
    Scaler s;
    s.mean_.assign(train.cols, 0.0);
    s.stdev_.assign(train.cols, 0.0);
    for (std::size_t r = 0; r < train.rows; ++r)
        for (std::size_t c = 0; c < train.cols; ++c) s.mean_[c] += train.at(r, c);
    for (auto& v : s.mean_) v /= static_cast<double>(train.rows);
    for (std::size_t r = 0; r < train.rows; ++r)
        for (std::size_t c = 0; c < train.cols; ++c) {
            double d = train.at(r, c) - s.mean_[c];
            s.stdev_[c] += d * d;
        }
    for (auto& v : s.stdev_) v = std::sqrt(v / static_cast<double>(train.rows));
    return s;
}

FeatureMatrix Scaler::apply(const FeatureMatrix& m) const {
    if (m.cols != mean_.size()) throw std::invalid_argument("scaler schema mismatch");
    FeatureMatrix out = m;
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c)
            out.at(r, c) = stdev_[c] > 0.0 ? (m.at(r, c) - mean_[c]) / stdev_[c] : 0.0;
    return out;
}

FeatureMatrix standardize(const FeatureMatrix& matrix) {
    return Scaler::fit(matrix).apply(matrix);
}

const char* to_string(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::DecisionTree: return "decision_tree";
        case ClassifierKind::Knn: return "knn";
        case ClassifierKind::NaiveBayes: return "naive_bayes";
        case ClassifierKind::SvmLinear: return "svm_linear";
    }
    throw std::logic_error("unknown classifier kind");
}

ClassifierKind classifier_from_string(const std::string& name) {
    if (name == "decision_tree") return ClassifierKind::DecisionTree;
    if (name == "knn") return ClassifierKind::Knn;
    if (name == "naive_bayes") return ClassifierKind::NaiveBayes;
    if (name == "svm_linear") return ClassifierKind::SvmLinear;
    throw std::invalid_argument("unknown classifier `" + name + "`");
}

std::vector<std::string> train_predict(const FeatureMatrix& train, const FeatureMatrix& test,
                                       const ClassifierSpec& spec, std::uint64_t seed) {
    if (train.cols != test.cols || train.column_names != test.column_names)
        throw std::invalid_argument("train/test column schema mismatch");
    if (train.rows == 0) throw std::invalid_argument("empty training set");
    if (sorted_classes(train.labels).size() < 2)
        throw std::invalid_argument("training set must contain at least 2 classes");

    std::vector<std::string> predictions;
    predictions.reserve(test.rows);
    switch (spec.kind) {
        case ClassifierKind::Knn: {
            int k = spec.k.value_or(kKnnGrid.front());
            if (k < 1) throw std::invalid_argument("knn: k must be >= 1");
            for (std::size_t r = 0; r < test.rows; ++r)
                predictions.push_back(knn_predict_row(train, test.values.data() + r * test.cols, k));
            break;
        }
        case ClassifierKind::NaiveBayes: {
            auto model = nb_fit(train);
            for (std::size_t r = 0; r < test.rows; ++r)
                predictions.push_back(
                    nb_predict_row(model, test.values.data() + r * test.cols, test.cols));
            break;
        }
        case ClassifierKind::DecisionTree: {
            int depth = spec.max_depth.value_or(kDepthGrid.front());
            if (depth < 0) throw std::invalid_argument("decision_tree: max_depth must be >= 0");
            if (spec.min_leaf < 1) throw std::invalid_argument("decision_tree: min_leaf must be >= 1");
            auto tree = tree_fit(train, depth, spec.min_leaf);
            for (std::size_t r = 0; r < test.rows; ++r)
                predictions.push_back(tree.predict(test.values.data() + r * test.cols));
            break;
        }
        case ClassifierKind::SvmLinear: {
            double C = spec.C.value_or(kCGrid.front());
            if (C <= 0.0) throw std::invalid_argument("svm_linear: C must be > 0");
            auto model = svm_fit(train, C, seed);
            for (std::size_t r = 0; r < test.rows; ++r)
                predictions.push_back(
                    svm_predict_row(model, test.values.data() + r * test.cols, test.cols));
            break;
        }
    }
    return predictions;
}

std::vector<int> stratified_folds(const std::vector<std::string>& labels, int folds,
                                  std::uint64_t seed) {
    if (folds < 2) throw std::invalid_argument("stratified folds must be >= 2");
    if (min_class_count(labels) < static_cast<std::size_t>(folds))
        throw std::invalid_argument("stratification infeasible: a class has fewer rows than folds");
    std::map<std::string, std::vector<int>> by_class;
    for (std::size_t r = 0; r < labels.size(); ++r) by_class[labels[r]].push_back(static_cast<int>(r));

    std::vector<int> assignment(labels.size(), -1);
    int next_fold = 0;
    std::uint64_t class_salt = 0;
    for (auto& [_, rows] : by_class) {
        Rng rng(mix_seed(seed, 0xf01d5ULL + class_salt++));
        rng.shuffle(rows);
        for (int r : rows) {
            assignment[r] = next_fold;
            next_fold = (next_fold + 1) % folds;
        }
    }
    return assignment;
}

double cross_validate(const FeatureMatrix& matrix, const ClassifierSpec& spec, const CvMode& mode,
                      std::uint64_t seed) {
    if (matrix.rows < 2) throw std::invalid_argument("cross_validate needs at least 2 rows");

    std::vector<std::vector<int>> fold_sets;
    if (mode.leave_one_out) {
        fold_sets.resize(matrix.rows);
        for (std::size_t r = 0; r < matrix.rows; ++r) fold_sets[r] = {static_cast<int>(r)};
    } else {
        fold_sets = fold_row_sets(stratified_folds(matrix.labels, mode.folds, seed), mode.folds);
    }

    std::size_t correct = 0;
    std::vector<char> in_test(matrix.rows);
    for (const auto& test_rows : fold_sets) {
        if (test_rows.empty()) continue;
        std::fill(in_test.begin(), in_test.end(), 0);
        for (int r : test_rows) in_test[r] = 1;
        std::vector<int> train_rows;
        train_rows.reserve(matrix.rows - test_rows.size());
        for (std::size_t r = 0; r < matrix.rows; ++r)
            if (!in_test[r]) train_rows.push_back(static_cast<int>(r));

        FeatureMatrix train = select_rows(matrix, train_rows);
        FeatureMatrix test = select_rows(matrix, test_rows);
        ClassifierSpec resolved = resolve_spec(train, spec, seed);
        Scaler scaler = Scaler::fit(train);
        auto predictions = train_predict(scaler.apply(train), scaler.apply(test), resolved, seed);
        for (std::size_t i = 0; i < test_rows.size(); ++i)
            if (predictions[i] == matrix.labels[test_rows[i]]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(matrix.rows);
}

SweepStats sweep_stats(double gamma0, const std::vector<std::pair<double, double>>& gamma_by_p) {
    if (gamma_by_p.empty()) throw std::invalid_argument("sweep_stats: empty p grid");
    auto check = [](double g) {
        if (g < 0.0 || g > 1.0) throw std::invalid_argument("sweep_stats: accuracy outside [0,1]");
    };
    check(gamma0);
    SweepStats stats;
    stats.gamma0 = gamma0;
    stats.gamma_plus = gamma_by_p;
    std::sort(stats.gamma_plus.begin(), stats.gamma_plus.end());

    double sum_abs = 0.0, sum_rel = 0.0, best = 0.0;
    for (const auto& [p, g] : stats.gamma_plus) {
        check(g);
        if (g > gamma0) {
            ++stats.n_plus;
            sum_abs += g - gamma0;
            if (gamma0 > 0.0) sum_rel += g / gamma0;
            best = std::max(best, g);
        }
    }
    if (stats.n_plus > 0) {
        stats.max_gamma_plus = best;
        stats.mean_abs_improvement = sum_abs / stats.n_plus;
        if (gamma0 > 0.0) stats.mean_rel_improvement = sum_rel / stats.n_plus;
    }
    return stats;
}

double relative_gain_percent(double best, double baseline) {
    if (baseline <= 0.0) throw std::invalid_argument("relative gain needs a positive baseline");
    return (best - baseline) / baseline * 100.0;
}

} // namespace coocnet
