#include "coocnet/embedding.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace coocnet {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> parts;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) parts.push_back(tok);
    return parts;
}

bool parse_double(const std::string& s, double& out) {
    errno = 0;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && !s.empty() && errno == 0;
}

bool is_plain_integer(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

} // namespace

EmbeddingTable EmbeddingTable::load(const std::string& path,
                                    const std::unordered_set<std::string>* vocabulary) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open embedding file " + path);

    EmbeddingTable table;
    std::string line;
    std::size_t lineno = 0;
    bool first_content_line = true;
    std::vector<double> vec;

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto parts = split_ws(line);
        if (parts.empty()) continue;

        if (first_content_line) {
            first_content_line = false;
            // word2vec/FastText header: exactly two integer tokens
            if (parts.size() == 2 && is_plain_integer(parts[0]) && is_plain_integer(parts[1]))
                continue;
        }

        if (parts.size() < 2)
            throw std::runtime_error(path + " line " + std::to_string(lineno) +
                                     ": expected `word v1 .. vd`");
        const std::string& word = parts[0];
        int dim = static_cast<int>(parts.size()) - 1;
        if (table.dimension_ == 0) {
            table.dimension_ = dim;
        } else if (dim != table.dimension_) {
            throw std::runtime_error(path + " line " + std::to_string(lineno) +
                                     ": dimension mismatch (got " + std::to_string(dim) +
                                     ", expected " + std::to_string(table.dimension_) + ")");
        }
        if (vocabulary && !vocabulary->count(word)) continue;

        vec.clear();
        vec.reserve(dim);
        double norm_sq = 0.0;
        for (int i = 0; i < dim; ++i) {
            double v;
            if (!parse_double(parts[i + 1], v))
                throw std::runtime_error(path + " line " + std::to_string(lineno) +
                                         ": non-numeric vector component `" + parts[i + 1] + "`");
            vec.push_back(v);
            norm_sq += v * v;
        }
        if (norm_sq == 0.0) {
            std::cerr << "warning: " << path << " line " << lineno << ": skipping zero vector for `"
                      << word << "`\n";
            continue;
        }
        if (table.contains(word))
            std::cerr << "warning: " << path << " line " << lineno << ": duplicate word `" << word
                      << "` overwrites earlier entry\n";
        table.insert(word, vec);
    }
    if (table.size() == 0)
        throw std::runtime_error(path + ": no embedding vectors loaded");
    return table;
}

void EmbeddingTable::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write embedding file " + path);
    char buf[40];
    for (std::size_t i = 0; i < words_.size(); ++i) {
        out << words_[i];
        for (int d = 0; d < dimension_; ++d) {
            std::snprintf(buf, sizeof(buf), "%.17g", values_[i * dimension_ + d]);
            out << ' ' << buf;
        }
        out << '\n';
    }
}

std::span<const double> EmbeddingTable::vector_of(const std::string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) throw std::out_of_range("no vector for word `" + word + "`");
    return {values_.data() + it->second * dimension_, static_cast<std::size_t>(dimension_)};
}

std::optional<std::span<const double>> EmbeddingTable::find(const std::string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) return std::nullopt;
    return std::span<const double>{values_.data() + it->second * dimension_,
                                   static_cast<std::size_t>(dimension_)};
}

void EmbeddingTable::insert(const std::string& word, const std::vector<double>& values) {
    if (dimension_ == 0) dimension_ = static_cast<int>(values.size());
    if (static_cast<int>(values.size()) != dimension_)
        throw std::invalid_argument("vector dimension " + std::to_string(values.size()) +
                                    " does not match table dimension " + std::to_string(dimension_));
    auto it = index_.find(word);
    if (it != index_.end()) {
        std::copy(values.begin(), values.end(), values_.begin() + it->second * dimension_);
        return;
    }
    index_.emplace(word, words_.size());
    words_.push_back(word);
    values_.insert(values_.end(), values.begin(), values.end());
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size())
        throw std::invalid_argument("cosine_similarity: dimension mismatch (" +
                                    std::to_string(u.size()) + " vs " + std::to_string(v.size()) + ")");
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0)
        throw std::invalid_argument("cosine_similarity: zero-norm input");
    double c = dot / (std::sqrt(nu) * std::sqrt(nv));
    return std::clamp(c, -1.0, 1.0);
}

namespace detail {

std::vector<IndexedPair> rank_pairs_indexed(const std::vector<std::string>& sorted_words,
                                            const EmbeddingTable& table,
                                            const std::set<std::pair<int, int>>& exclude) {
    const int n = static_cast<int>(sorted_words.size());
    // unit-normalized copies so each pair costs one dot product
    const int dim = table.dimension();
    std::vector<double> unit(static_cast<std::size_t>(n) * dim);
    std::vector<bool> embedded(n, false);
    for (int i = 0; i < n; ++i) {
        auto v = table.find(sorted_words[i]);
        if (!v) continue;
        double norm_sq = 0.0;
        for (int d = 0; d < dim; ++d) norm_sq += (*v)[d] * (*v)[d];
        double inv = 1.0 / std::sqrt(norm_sq);
        for (int d = 0; d < dim; ++d) unit[static_cast<std::size_t>(i) * dim + d] = (*v)[d] * inv;
        embedded[i] = true;
    }
    std::vector<IndexedPair> pairs;
    for (int a = 0; a < n; ++a) {
        if (!embedded[a]) continue;
        const double* ua = unit.data() + static_cast<std::size_t>(a) * dim;
        for (int b = a + 1; b < n; ++b) {
            if (!embedded[b]) continue;
            if (exclude.count({a, b})) continue;
            const double* ub = unit.data() + static_cast<std::size_t>(b) * dim;
            double dot = 0.0;
            for (int d = 0; d < dim; ++d) dot += ua[d] * ub[d];
            pairs.push_back({a, b, std::clamp(dot, -1.0, 1.0)});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const IndexedPair& x, const IndexedPair& y) {
        if (x.similarity != y.similarity) return x.similarity > y.similarity;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return pairs;
}

} // namespace detail

std::vector<CandidatePair> rank_candidate_pairs(const std::unordered_set<std::string>& vocabulary,
                                                const EmbeddingTable& table,
                                                const WordPairSet& exclude) {
    std::vector<std::string> words(vocabulary.begin(), vocabulary.end());
    std::sort(words.begin(), words.end());

    std::set<std::pair<int, int>> excluded_idx;
    if (!exclude.empty()) {
        std::unordered_map<std::string, int> pos;
        for (int i = 0; i < static_cast<int>(words.size()); ++i) pos[words[i]] = i;
        for (const auto& [a, b] : exclude) {
            auto ia = pos.find(a), ib = pos.find(b);
            if (ia == pos.end() || ib == pos.end()) continue;
            int x = ia->second, y = ib->second;
            if (x > y) std::swap(x, y);
            if (x != y) excluded_idx.insert({x, y});
        }
    }

    auto indexed = detail::rank_pairs_indexed(words, table, excluded_idx);
    std::vector<CandidatePair> out;
    out.reserve(indexed.size());
    for (const auto& p : indexed)
        out.push_back({words[p.a], words[p.b], p.similarity});
    return out;
}

} // namespace coocnet
