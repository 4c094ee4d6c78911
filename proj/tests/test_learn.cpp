#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coocnet/csv.hpp"
#include "coocnet/learn.hpp"
#include "coocnet/rng.hpp"

using namespace coocnet;

namespace {

FeatureMatrix make_matrix(std::vector<std::vector<double>> rows, std::vector<std::string> labels) {
    FeatureMatrix m;
    m.rows = rows.size();
    m.cols = rows.empty() ? 0 : rows[0].size();
    m.labels = std::move(labels);
    for (std::size_t c = 0; c < m.cols; ++c) m.column_names.push_back("f" + std::to_string(c));
    for (const auto& r : rows) m.values.insert(m.values.end(), r.begin(), r.end());
    return m;
}

} // namespace

TEST_CASE("shared_vocabulary") {
    CHECK(shared_vocabulary({{"a", "b"}, {"b", "c"}}) == std::vector<std::string>{"b"});
    CHECK(shared_vocabulary({{"a"}, {"a"}}) == std::vector<std::string>{"a"});
    CHECK_THROWS_AS(shared_vocabulary({{"a"}, {"b"}}), EmptyIntersectionError);
    CHECK(shared_vocabulary({{"c", "a", "b"}}) == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("build_feature_matrix") {
    auto net1 = build_cooccurrence({"a", "b", "a"});
    auto net2 = build_cooccurrence({"a", "b", "c", "a"});
    auto spec = MeasurementSpec::parse({"degree"});
    auto m = build_feature_matrix({net1, net2}, {"X", "Y"}, {"a"}, spec);
    CHECK(m.rows == 2);
    CHECK(m.cols == 1);
    CHECK(m.at(0, 0) == 1.0);
    CHECK(m.at(1, 0) == 2.0);
    CHECK(m.column_names == std::vector<std::string>{"a.degree"});

    auto full = build_feature_matrix({net1, net2}, {"X", "Y"}, {"a", "b"},
                                     MeasurementSpec::parse({"degree", "pagerank"}));
    CHECK(full.cols == 2 * 2); // |words| x |spec|
    CHECK(full.column_names ==
          std::vector<std::string>{"a.degree", "a.pagerank", "b.degree", "b.pagerank"});

    auto same = build_feature_matrix({net1, net1, net1}, {"X", "Y", "Z"}, {"a"}, spec);
    CHECK(same.at(0, 0) == same.at(1, 0));
    CHECK(same.at(1, 0) == same.at(2, 0));
}

TEST_CASE("standardize") {
    auto m = make_matrix({{1}, {3}}, {"A", "B"});
    auto z = standardize(m);
    CHECK(z.at(0, 0) == doctest::Approx(-1.0)); // population stdev
    CHECK(z.at(1, 0) == doctest::Approx(1.0));

    auto constant = standardize(make_matrix({{5}, {5}, {5}}, {"A", "B", "C"}));
    for (std::size_t r = 0; r < 3; ++r) CHECK(constant.at(r, 0) == 0.0);

    Rng rng(3);
    std::vector<std::vector<double>> rows(20, std::vector<double>(5));
    for (auto& r : rows)
        for (auto& v : r) v = rng.uniform01() * 10 - 5;
    auto big = standardize(make_matrix(rows, std::vector<std::string>(20, "A")));
    for (std::size_t c = 0; c < big.cols; ++c) {
        double mean = 0;
        for (std::size_t r = 0; r < big.rows; ++r) mean += big.at(r, c);
        CHECK(std::abs(mean / big.rows) <= 1e-9);
    }

    CHECK_THROWS_AS(standardize(make_matrix({{1}}, {"A"})), std::invalid_argument);
}

TEST_CASE("knn basics") {
    auto train = make_matrix({{0}, {10}}, {"A", "B"});
    auto test = make_matrix({{1}}, {"?"});
    ClassifierSpec spec{ClassifierKind::Knn, 1, {}, 1, {}};
    CHECK(train_predict(train, test, spec, 0) == std::vector<std::string>{"A"});

    // uniform positive feature scaling leaves predictions unchanged
    auto train_scaled = make_matrix({{0}, {70}}, {"A", "B"});
    auto test_scaled = make_matrix({{7}}, {"?"});
    CHECK(train_predict(train_scaled, test_scaled, spec, 0) == std::vector<std::string>{"A"});
}

TEST_CASE("knn and naive bayes ignore training row order") {
    Rng rng(11);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    for (int i = 0; i < 30; ++i) {
        int cls = i % 3;
        std::vector<double> r(4);
        for (auto& v : r) v = rng.uniform01() + cls * 2.0;
        rows.push_back(r);
        labels.push_back("c" + std::to_string(cls));
    }
    auto train = make_matrix(rows, labels);

    std::vector<int> perm(30);
    std::iota(perm.begin(), perm.end(), 0);
    Rng shuffler(99);
    shuffler.shuffle(perm);
    std::vector<std::vector<double>> shuffled_rows;
    std::vector<std::string> shuffled_labels;
    for (int i : perm) {
        shuffled_rows.push_back(rows[i]);
        shuffled_labels.push_back(labels[i]);
    }
    auto shuffled = make_matrix(shuffled_rows, shuffled_labels);

    std::vector<std::vector<double>> test_rows;
    for (int i = 0; i < 10; ++i) {
        std::vector<double> r(4);
        for (auto& v : r) v = rng.uniform01() * 6;
        test_rows.push_back(r);
    }
    auto test = make_matrix(test_rows, std::vector<std::string>(10, "?"));

    for (auto kind : {ClassifierKind::Knn, ClassifierKind::NaiveBayes}) {
        ClassifierSpec spec;
        spec.kind = kind;
        spec.k = 3;
        CHECK(train_predict(train, test, spec, 0) == train_predict(shuffled, test, spec, 0));
    }
}

TEST_CASE("naive bayes: exact ties break to the lexicographically smaller label") {
    auto train = make_matrix({{-1}, {1}}, {"zeta", "alpha"}); // symmetric around 0
    auto test = make_matrix({{0}}, {"?"});
    ClassifierSpec spec{ClassifierKind::NaiveBayes, {}, {}, 1, {}};
    CHECK(train_predict(train, test, spec, 0) == std::vector<std::string>{"alpha"});
}

TEST_CASE("naive bayes recovers well-separated Gaussian clusters") {
    // two 2-d Gaussians with known parameters; Box-Muller draws
    Rng rng(7);
    auto normal = [&]() {
        double u1 = std::max(rng.uniform01(), 1e-12), u2 = rng.uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    };
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    for (int i = 0; i < 200; ++i) {
        bool second = i % 2 == 1;
        double mx = second ? 5.0 : 0.0, my = second ? 5.0 : 0.0;
        rows.push_back({mx + normal(), my + normal()});
        labels.push_back(second ? "B" : "A");
    }
    auto train = make_matrix(rows, labels);
    ClassifierSpec spec{ClassifierKind::NaiveBayes, {}, {}, 1, {}};
    auto predictions = train_predict(train, train, spec, 7);

    int correct = 0, agree_with_bayes = 0;
    for (int i = 0; i < 200; ++i) {
        if (predictions[i] == labels[i]) ++correct;
        // Bayes rule with the true generating parameters (unit variance,
        // equal priors): pick the nearer mean
        double d_a = rows[i][0] * rows[i][0] + rows[i][1] * rows[i][1];
        double d_b = (rows[i][0] - 5) * (rows[i][0] - 5) + (rows[i][1] - 5) * (rows[i][1] - 5);
        std::string bayes = d_a <= d_b ? "A" : "B";
        if (predictions[i] == bayes) ++agree_with_bayes;
    }
    CHECK(correct >= 198); // >= 99%
    CHECK(agree_with_bayes >= 198);
}

TEST_CASE("decision tree splits separable data and honors limits") {
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    for (int i = 0; i < 12; ++i) {
        rows.push_back({i < 6 ? i * 0.1 : 5.0 + i * 0.1, 1.0});
        labels.push_back(i < 6 ? "low" : "high");
    }
    auto train = make_matrix(rows, labels);
    ClassifierSpec spec{ClassifierKind::DecisionTree, {}, 0, 1, {}};
    CHECK(train_predict(train, train, spec, 0) == labels);

    auto test = make_matrix({{0.3, 1.0}, {7.7, 1.0}}, {"?", "?"});
    CHECK(train_predict(train, test, spec, 0) == std::vector<std::string>{"low", "high"});

    // a stump cannot shatter 4 alternating groups
    std::vector<std::vector<double>> alt;
    std::vector<std::string> alt_labels;
    for (int i = 0; i < 16; ++i) {
        alt.push_back({static_cast<double>(i)});
        alt_labels.push_back((i / 4) % 2 == 0 ? "even" : "odd");
    }
    ClassifierSpec stump{ClassifierKind::DecisionTree, {}, 1, 1, {}};
    auto stump_pred = train_predict(make_matrix(alt, alt_labels), make_matrix(alt, alt_labels),
                                    stump, 0);
    int right = 0;
    for (int i = 0; i < 16; ++i)
        if (stump_pred[i] == alt_labels[i]) ++right;
    CHECK(right < 16);
    ClassifierSpec deep{ClassifierKind::DecisionTree, {}, 0, 1, {}};
    CHECK(train_predict(make_matrix(alt, alt_labels), make_matrix(alt, alt_labels), deep, 0) ==
          alt_labels);
}

TEST_CASE("linear svm separates clusters and is deterministic under a fixed seed") {
    Rng rng(23);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    const double centers[4][2] = {{0, 0}, {8, 0}, {0, 8}, {8, 8}};
    for (int i = 0; i < 80; ++i) {
        int cls = i % 4;
        rows.push_back({centers[cls][0] + rng.uniform01() - 0.5,
                        centers[cls][1] + rng.uniform01() - 0.5});
        labels.push_back("q" + std::to_string(cls));
    }
    auto train = standardize(make_matrix(rows, labels));
    ClassifierSpec spec{ClassifierKind::SvmLinear, {}, {}, 1, 1.0};
    auto p1 = train_predict(train, train, spec, 42);
    auto p2 = train_predict(train, train, spec, 42);
    CHECK(p1 == p2);
    int correct = 0;
    for (std::size_t i = 0; i < p1.size(); ++i)
        if (p1[i] == labels[i]) ++correct;
    CHECK(correct == 80);
}

TEST_CASE("train_predict validations") {
    auto train = make_matrix({{0}, {1}}, {"A", "B"});
    auto bad_schema = make_matrix({{0, 1}}, {"?"});
    ClassifierSpec spec{ClassifierKind::Knn, 1, {}, 1, {}};
    CHECK_THROWS_AS(train_predict(train, bad_schema, spec, 0), std::invalid_argument);
    auto one_class = make_matrix({{0}, {1}}, {"A", "A"});
    auto test = make_matrix({{0}}, {"?"});
    CHECK_THROWS_AS(train_predict(one_class, test, spec, 0), std::invalid_argument);
}

TEST_CASE("stratified folds partition rows and preserve class balance") {
    std::vector<std::string> labels;
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i < 6; ++i) labels.push_back("c" + std::to_string(c));
    auto assignment = stratified_folds(labels, 3, 5);
    REQUIRE(assignment.size() == labels.size());
    std::vector<std::vector<int>> per_fold_class(3, std::vector<int>(3, 0));
    for (std::size_t r = 0; r < labels.size(); ++r) {
        REQUIRE(assignment[r] >= 0);
        REQUIRE(assignment[r] < 3);
        per_fold_class[assignment[r]][labels[r][1] - '0'] += 1;
    }
    for (int f = 0; f < 3; ++f)
        for (int c = 0; c < 3; ++c) CHECK(per_fold_class[f][c] == 2);

    CHECK(stratified_folds(labels, 3, 5) == assignment); // seeded determinism
    CHECK_THROWS_AS(stratified_folds({"a", "a", "b"}, 2, 0), std::invalid_argument);
}

TEST_CASE("cross_validate: leave-one-out accuracy is a multiple of 1/N") {
    // 13 classes x 6 rows; two tight, eleven interleaved so their nearest
    // neighbor always belongs to another class: exactly 12/78 correct
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    auto cls = [](int c) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "c%02d", c);
        return std::string(buf);
    };
    for (int i = 0; i < 6; ++i) {
        rows.push_back({i * 0.01});
        labels.push_back(cls(0));
    }
    for (int i = 0; i < 6; ++i) {
        rows.push_back({1000.0 + i * 0.01});
        labels.push_back(cls(1));
    }
    for (int site = 0; site < 6; ++site)
        for (int c = 2; c < 13; ++c) {
            rows.push_back({10000.0 + site * 100.0 + c * 0.1});
            labels.push_back(cls(c));
        }
    auto m = make_matrix(rows, labels);
    REQUIRE(m.rows == 78);
    ClassifierSpec spec{ClassifierKind::Knn, 1, {}, 1, {}};
    double acc = cross_validate(m, spec, CvMode::loo(), 0);
    CHECK(acc == doctest::Approx(12.0 / 78.0));
    CHECK(csv::format_percent2(acc) == "15.38");
    double scaled = acc * 78.0;
    CHECK(std::abs(scaled - std::round(scaled)) <= 1e-9);
}

TEST_CASE("cross_validate: duplicated separable rows give 100% under LOO") {
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i < 4; ++i) {
            rows.push_back({c * 10.0, c * -5.0});
            labels.push_back("c" + std::to_string(c));
        }
    ClassifierSpec spec{ClassifierKind::Knn, 1, {}, 1, {}};
    CHECK(cross_validate(make_matrix(rows, labels), spec, CvMode::loo(), 0) == 1.0);
}

TEST_CASE("cross_validate: random labels score near chance") {
    Rng rng(8);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    for (int i = 0; i < 200; ++i) {
        rows.push_back({rng.uniform01(), rng.uniform01(), rng.uniform01()});
        labels.push_back(i % 2 ? "A" : "B");
    }
    ClassifierSpec spec{ClassifierKind::Knn, 5, {}, 1, {}};
    double acc = cross_validate(make_matrix(rows, labels), spec, CvMode::stratified(5), 8);
    CHECK(acc >= 0.35);
    CHECK(acc <= 0.65);
}

TEST_CASE("cross_validate with nested parameter selection stays deterministic") {
    Rng rng(15);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    for (int i = 0; i < 24; ++i) {
        int cls = i % 4;
        rows.push_back({cls * 3.0 + rng.uniform01(), cls % 2 + rng.uniform01()});
        labels.push_back("c" + std::to_string(cls));
    }
    auto m = make_matrix(rows, labels);
    for (auto kind : {ClassifierKind::Knn, ClassifierKind::DecisionTree, ClassifierKind::SvmLinear}) {
        ClassifierSpec spec;
        spec.kind = kind; // parameters unset: tuned per fold
        double a = cross_validate(m, spec, CvMode::loo(), 3);
        double b = cross_validate(m, spec, CvMode::loo(), 3);
        CHECK(a == b);
        CHECK(a >= 0.5); // easily separable
    }
}

TEST_CASE("sweep_stats") {
    // published row: baseline 12/78, three improving cases, best 13/78
    std::vector<std::pair<double, double>> gamma;
    for (int p = 1; p <= 20; ++p) gamma.push_back({static_cast<double>(p), 11.0 / 78.0});
    gamma[2].second = 13.0 / 78.0;
    gamma[6].second = 12.5 / 78.0;
    gamma[10].second = 12.2 / 78.0;
    auto stats = sweep_stats(12.0 / 78.0, gamma);
    CHECK(stats.n_plus == 3);
    REQUIRE(stats.max_gamma_plus.has_value());
    CHECK(csv::format_percent2(*stats.max_gamma_plus) == "16.67");
    CHECK(csv::format_percent2(stats.gamma0) == "15.38");

    // no improvement anywhere: markers stay absent
    std::vector<std::pair<double, double>> flat;
    for (int p = 1; p <= 5; ++p) flat.push_back({static_cast<double>(p), 0.4});
    auto none = sweep_stats(0.4, flat);
    CHECK(none.n_plus == 0);
    CHECK_FALSE(none.max_gamma_plus.has_value());
    CHECK_FALSE(none.mean_abs_improvement.has_value());

    // means cover improving cases only
    auto some = sweep_stats(0.20, {{1.0, 0.25}, {2.0, 0.15}});
    CHECK(some.n_plus == 1);
    CHECK(*some.mean_rel_improvement == doctest::Approx(1.25));
    CHECK(*some.mean_abs_improvement == doctest::Approx(0.05));

    CHECK_THROWS_AS(sweep_stats(0.5, {}), std::invalid_argument);
    CHECK_THROWS_AS(sweep_stats(1.5, {{1.0, 0.5}}), std::invalid_argument);
}

TEST_CASE("summary gain arithmetic matches the published two-decimal rendering") {
    double gain = relative_gain_percent(0.5128, 0.4103);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", gain);
    CHECK(std::string(buf) == "24.98");
    CHECK_THROWS_AS(relative_gain_percent(0.5, 0.0), std::invalid_argument);
}
