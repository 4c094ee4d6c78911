#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coocnet/corpus.hpp"
#include "coocnet/embedding.hpp"
#include "coocnet/experiment.hpp"
#include "coocnet/learn.hpp"
#include "coocnet/metrics.hpp"
#include "coocnet/network.hpp"

namespace py = pybind11;
using namespace coocnet;

namespace {

MeasurementSpec spec_from_names(const std::vector<std::string>& names) {
    return names.empty() ? MeasurementSpec::all() : MeasurementSpec::parse(names);
}

ClassifierSpec classifier_spec(const std::string& kind, std::optional<int> k,
                               std::optional<int> max_depth, int min_leaf,
                               std::optional<double> C) {
    ClassifierSpec spec;
    spec.kind = classifier_from_string(kind);
    spec.k = k;
    spec.max_depth = max_depth;
    spec.min_leaf = min_leaf;
    spec.C = C;
    return spec;
}

py::dict matrix_to_dict(const FeatureMatrix& m) {
    py::list rows;
    for (std::size_t r = 0; r < m.rows; ++r) {
        py::list row;
        for (std::size_t c = 0; c < m.cols; ++c) row.append(m.at(r, c));
        rows.append(row);
    }
    py::dict d;
    d["values"] = rows;
    d["labels"] = m.labels;
    d["column_names"] = m.column_names;
    return d;
}

FeatureMatrix matrix_from_args(const std::vector<std::vector<double>>& values,
                               const std::vector<std::string>& labels,
                               const std::vector<std::string>& column_names) {
    FeatureMatrix m;
    m.rows = values.size();
    m.cols = values.empty() ? column_names.size() : values[0].size();
    for (const auto& row : values) {
        if (row.size() != m.cols) throw std::invalid_argument("ragged feature rows");
        m.values.insert(m.values.end(), row.begin(), row.end());
    }
    m.labels = labels;
    m.column_names = column_names;
    if (m.column_names.empty())
        for (std::size_t c = 0; c < m.cols; ++c) m.column_names.push_back("f" + std::to_string(c));
    return m;
}

} // namespace

PYBIND11_MODULE(_coocnet, m) {
    m.doc() = "word co-occurrence networks enriched with embedding-based virtual edges";

    // corpus
    py::class_<Document>(m, "Document")
        .def(py::init<const std::string&, const std::string&, const std::string&>(),
             py::arg("author"), py::arg("title"), py::arg("text"))
        .def_readwrite("author", &Document::author)
        .def_readwrite("title", &Document::title)
        .def_readwrite("text", &Document::text)
        .def("__repr__", [](const Document& d) {
            return "<Document author='" + d.author + "' title='" + d.title + "'>";
        });
    m.def("load_corpus", &load_corpus, py::arg("manifest_path"));
    m.def("tokenize", &tokenize, py::arg("text"));
    m.def(
        "filter_stopwords",
        [](const TokenSequence& tokens, const std::unordered_set<std::string>& stopwords,
           bool keep) { return filter_stopwords(tokens, stopwords, keep); },
        py::arg("tokens"), py::arg("stopwords"), py::arg("keep") = false);
    m.def("normalize_tokens", &normalize_tokens, py::arg("tokens"), py::arg("lemma_map"));
    m.def(
        "take_sample",
        [](const TokenSequence& tokens, int length) {
            return take_sample(tokens, SampleSpec{length});
        },
        py::arg("tokens"), py::arg("length"));
    m.def("load_stopword_file", &load_stopword_file, py::arg("path"));
    m.def("load_lemma_file", &load_lemma_file, py::arg("path"));

    // embeddings
    py::class_<EmbeddingTable>(m, "EmbeddingTable")
        .def_static(
            "load",
            [](const std::string& path, std::optional<std::unordered_set<std::string>> vocab) {
                return EmbeddingTable::load(path, vocab ? &*vocab : nullptr);
            },
            py::arg("path"), py::arg("vocabulary") = py::none())
        .def("save", &EmbeddingTable::save, py::arg("path"))
        .def_property_readonly("dimension", &EmbeddingTable::dimension)
        .def("__len__", &EmbeddingTable::size)
        .def("__contains__", &EmbeddingTable::contains)
        .def("words", &EmbeddingTable::words)
        .def("insert", &EmbeddingTable::insert, py::arg("word"), py::arg("values"))
        .def("vector_of", [](const EmbeddingTable& t, const std::string& word) {
            auto v = t.vector_of(word);
            return std::vector<double>(v.begin(), v.end());
        });
    m.def(
        "cosine_similarity",
        [](const std::vector<double>& u, const std::vector<double>& v) {
            return cosine_similarity(u, v);
        },
        py::arg("u"), py::arg("v"));
    m.def(
        "rank_candidate_pairs",
        [](const std::unordered_set<std::string>& vocabulary, const EmbeddingTable& table,
           const std::set<std::pair<std::string, std::string>>& exclude) {
            auto pairs = rank_candidate_pairs(vocabulary, table, exclude);
            py::list out;
            for (const auto& p : pairs) out.append(py::make_tuple(p.word_a, p.word_b, p.similarity));
            return out;
        },
        py::arg("vocabulary"), py::arg("table"),
        py::arg("exclude") = std::set<std::pair<std::string, std::string>>{});

    // networks
    py::enum_<EdgeKind>(m, "EdgeKind")
        .value("cooccurrence", EdgeKind::Cooccurrence)
        .value("virtual_", EdgeKind::Virtual);
    py::class_<TextNetwork>(m, "TextNetwork")
        .def(py::init<>())
        .def("add_edge",
             py::overload_cast<const std::string&, const std::string&, EdgeKind, int, double>(
                 &TextNetwork::add_edge),
             py::arg("a"), py::arg("b"), py::arg("kind"), py::arg("count"), py::arg("weight"))
        .def("node_count", &TextNetwork::node_count)
        .def("edge_count", py::overload_cast<>(&TextNetwork::edge_count, py::const_))
        .def("words", &TextNetwork::words)
        .def("degree",
             [](const TextNetwork& n, const std::string& w) {
                 int id = n.node_index(w);
                 if (id < 0) throw std::out_of_range("node `" + w + "` not in network");
                 return n.degree(id);
             })
        .def("edges", [](const TextNetwork& n) {
            py::list out;
            for (const auto& e : n.edges())
                out.append(py::make_tuple(n.word(e.a), n.word(e.b), to_string(e.kind),
                                          e.cooccurrence_count, e.weight));
            return out;
        });
    m.def("build_cooccurrence", &build_cooccurrence, py::arg("sample"));
    m.def(
        "edge_budget",
        [](const TextNetwork& net, double p) { return edge_budget(net, EnrichmentLevel{p}); },
        py::arg("network"), py::arg("p"));
    m.def(
        "disparity_alpha",
        [](double strength, int degree, double weight) {
            auto s = disparity_alpha(strength, degree, weight);
            return py::make_tuple(s.alpha, s.pi);
        },
        py::arg("total_strength"), py::arg("degree"), py::arg("weight"));

    auto unpack = [](const py::iterable& candidates) {
        std::vector<CandidatePair> out;
        for (py::handle h : candidates) {
            auto t = h.cast<py::tuple>();
            out.push_back({t[0].cast<std::string>(), t[1].cast<std::string>(),
                           t[2].cast<double>()});
        }
        return out;
    };
    m.def(
        "enrich_global",
        [unpack](const TextNetwork& net, const py::iterable& candidates, double p) {
            auto r = enrich_global(net, unpack(candidates), EnrichmentLevel{p});
            return py::make_tuple(r.network, r.requested, r.added);
        },
        py::arg("network"), py::arg("candidates"), py::arg("p"));
    m.def(
        "enrich_local",
        [unpack](const TextNetwork& net, const py::iterable& candidates, double p,
                 const EmbeddingTable& table) {
            auto r = enrich_local(net, unpack(candidates), EnrichmentLevel{p}, table);
            return py::make_tuple(r.network, r.requested, r.added);
        },
        py::arg("network"), py::arg("candidates"), py::arg("p"), py::arg("table"));

    // measurements
    m.def("measurement_names", [] {
        std::vector<std::string> names;
        for (Measurement mm : MeasurementSpec::all().selected) names.push_back(to_string(mm));
        return names;
    });
    m.def(
        "measure_nodes",
        [](const TextNetwork& net, const std::vector<std::string>& words,
           const std::vector<std::string>& measurements) {
            auto rows = measure_nodes(net, words, spec_from_names(measurements));
            py::dict out;
            for (const auto& r : rows) out[py::str(r.word)] = r.values;
            return out;
        },
        py::arg("network"), py::arg("words"), py::arg("measurements") = std::vector<std::string>{});
    m.def(
        "pagerank",
        [](const TextNetwork& net, double damping, double tolerance, int max_iterations) {
            auto values = pagerank(net, PagerankOptions{damping, tolerance, max_iterations});
            py::dict out;
            for (std::size_t v = 0; v < net.node_count(); ++v)
                out[py::str(net.word(static_cast<int>(v)))] = values[v];
            return out;
        },
        py::arg("network"), py::arg("damping") = 0.85, py::arg("tolerance") = 1e-10,
        py::arg("max_iterations") = 200);
    m.def("accessibility", &accessibility, py::arg("network"), py::arg("node"), py::arg("h"));
    m.def(
        "symmetry",
        [](const TextNetwork& net, const std::string& node, int h, const std::string& variant) {
            SymmetryVariant v;
            if (variant == "backbone") v = SymmetryVariant::Backbone;
            else if (variant == "merged") v = SymmetryVariant::Merged;
            else throw std::invalid_argument("variant must be backbone or merged");
            return symmetry(net, node, h, v);
        },
        py::arg("network"), py::arg("node"), py::arg("h"), py::arg("variant") = "backbone");

    // learning
    m.def(
        "shared_vocabulary",
        [](const std::vector<std::set<std::string>>& sets) { return shared_vocabulary(sets); },
        py::arg("sample_token_sets"));
    m.def(
        "build_feature_matrix",
        [](const std::vector<TextNetwork>& networks, const std::vector<std::string>& labels,
           const std::vector<std::string>& words, const std::vector<std::string>& measurements) {
            return matrix_to_dict(
                build_feature_matrix(networks, labels, words, spec_from_names(measurements)));
        },
        py::arg("networks"), py::arg("labels"), py::arg("words"),
        py::arg("measurements") = std::vector<std::string>{});
    m.def(
        "standardize",
        [](const std::vector<std::vector<double>>& values, const std::vector<std::string>& labels) {
            return matrix_to_dict(standardize(matrix_from_args(values, labels, {})));
        },
        py::arg("values"), py::arg("labels"));
    m.def(
        "train_predict",
        [](const std::vector<std::vector<double>>& train_values,
           const std::vector<std::string>& train_labels,
           const std::vector<std::vector<double>>& test_values, const std::string& kind,
           std::optional<int> k, std::optional<int> max_depth, int min_leaf,
           std::optional<double> C, std::uint64_t seed) {
            auto train = matrix_from_args(train_values, train_labels, {});
            auto test = matrix_from_args(
                test_values, std::vector<std::string>(test_values.size(), ""), train.column_names);
            return train_predict(train, test, classifier_spec(kind, k, max_depth, min_leaf, C),
                                 seed);
        },
        py::arg("train_values"), py::arg("train_labels"), py::arg("test_values"), py::arg("kind"),
        py::arg("k") = py::none(), py::arg("max_depth") = py::none(), py::arg("min_leaf") = 1,
        py::arg("C") = py::none(), py::arg("seed") = 0);
    m.def(
        "cross_validate",
        [](const std::vector<std::vector<double>>& values, const std::vector<std::string>& labels,
           const std::string& kind, const std::string& cv_mode, int folds, std::optional<int> k,
           std::optional<int> max_depth, int min_leaf, std::optional<double> C,
           std::uint64_t seed) {
            CvMode mode = cv_mode == "loo" ? CvMode::loo() : CvMode::stratified(folds);
            return cross_validate(matrix_from_args(values, labels, {}),
                                  classifier_spec(kind, k, max_depth, min_leaf, C), mode, seed);
        },
        py::arg("values"), py::arg("labels"), py::arg("kind"), py::arg("cv_mode") = "loo",
        py::arg("folds") = 0, py::arg("k") = py::none(), py::arg("max_depth") = py::none(),
        py::arg("min_leaf") = 1, py::arg("C") = py::none(), py::arg("seed") = 0);
    m.def(
        "sweep_stats",
        [](double gamma0, const std::vector<std::pair<double, double>>& gamma_by_p) {
            auto s = sweep_stats(gamma0, gamma_by_p);
            py::dict d;
            d["gamma0"] = s.gamma0;
            d["n_plus"] = s.n_plus;
            d["max_gamma_plus"] = s.max_gamma_plus ? py::cast(*s.max_gamma_plus) : py::none();
            d["mean_abs_improvement"] =
                s.mean_abs_improvement ? py::cast(*s.mean_abs_improvement) : py::none();
            d["mean_rel_improvement"] =
                s.mean_rel_improvement ? py::cast(*s.mean_rel_improvement) : py::none();
            return d;
        },
        py::arg("gamma0"), py::arg("gamma_by_p"));
    m.def("relative_gain_percent", &relative_gain_percent, py::arg("best"), py::arg("baseline"));

    // experiment runner
    m.def(
        "run_experiment",
        [](const std::string& config_path, int workers, std::optional<std::string> out_dir,
           std::optional<std::uint64_t> seed) {
            auto cfg = ExperimentConfig::from_json_file(config_path);
            if (seed) cfg.seed = *seed;
            if (out_dir) cfg.output_dir = *out_dir;
            auto report = run_experiment(cfg, workers);
            emit_report(report, cfg.output_dir);
            return cfg.output_dir;
        },
        py::arg("config_path"), py::arg("workers") = 1, py::arg("out_dir") = py::none(),
        py::arg("seed") = py::none(),
        "Run the full experiment grid from a JSON config and write cells.csv, sweeps.csv, "
        "summary.csv and report.json to the output directory; returns that directory.");
}
