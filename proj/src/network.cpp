#include "coocnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "coocnet/csv.hpp"

namespace coocnet {

namespace {

long long pack_pair(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<long long>(a) << 32) | static_cast<unsigned int>(b);
}

} // namespace

const char* to_string(EdgeKind kind) {
    return kind == EdgeKind::Cooccurrence ? "cooccurrence" : "virtual";
}

int TextNetwork::add_node(const std::string& word) {
    auto it = index_.find(word);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(words_.size());
    index_.emplace(word, id);
    words_.push_back(word);
    adjacency_.emplace_back();
    return id;
}

int TextNetwork::node_index(const std::string& word) const {
    auto it = index_.find(word);
    return it == index_.end() ? -1 : it->second;
}

bool TextNetwork::has_edge(int a, int b) const {
    return edge_index_.count(pack_pair(a, b)) != 0;
}

void TextNetwork::add_edge(int a, int b, EdgeKind kind, int count, double weight) {
    if (a == b) throw std::invalid_argument("self-loop on `" + words_[a] + "`");
    if (a < 0 || b < 0 || a >= static_cast<int>(words_.size()) || b >= static_cast<int>(words_.size()))
        throw std::out_of_range("edge endpoint out of range");
    if (a > b) std::swap(a, b);
    long long key = pack_pair(a, b);
    if (edge_index_.count(key))
        throw std::invalid_argument("duplicate edge {" + words_[a] + ", " + words_[b] + "}");
    if (kind == EdgeKind::Virtual && count != 0)
        throw std::invalid_argument("virtual edges carry no co-occurrence count");
    int pos = static_cast<int>(edges_.size());
    edges_.push_back(Edge{a, b, kind, count, weight});
    edge_index_.emplace(key, pos);
    adjacency_[a].emplace_back(b, pos);
    adjacency_[b].emplace_back(a, pos);
}

void TextNetwork::add_edge(const std::string& a, const std::string& b, EdgeKind kind, int count,
                           double weight) {
    int ia = add_node(a); // sequenced: node insertion order must follow (a, b)
    int ib = add_node(b);
    add_edge(ia, ib, kind, count, weight);
}

void TextNetwork::increment_cooccurrence(int a, int b) {
    long long key = pack_pair(a, b);
    auto it = edge_index_.find(key);
    if (it == edge_index_.end()) {
        add_edge(a, b, EdgeKind::Cooccurrence, 1, 1.0);
        return;
    }
    Edge& e = edges_[it->second];
    e.cooccurrence_count += 1;
    e.weight = e.cooccurrence_count;
}

std::size_t TextNetwork::edge_count(EdgeKind kind) const {
    std::size_t n = 0;
    for (const auto& e : edges_)
        if (e.kind == kind) ++n;
    return n;
}

TextNetwork build_cooccurrence(const TokenSequence& sample) {
    if (sample.empty()) throw std::invalid_argument("cannot build a network from an empty sample");
    TextNetwork net;
    int prev = net.add_node(sample[0]);
    for (std::size_t i = 1; i < sample.size(); ++i) {
        int cur = net.add_node(sample[i]);
        if (cur != prev) net.increment_cooccurrence(prev, cur);
        prev = cur;
    }
    return net;
}

std::size_t edge_budget(const TextNetwork& network, const EnrichmentLevel& level) {
    if (level.percent < 0.0 || level.percent > 100.0)
        throw std::invalid_argument("enrichment percent must be in [0, 100]");
    double e = static_cast<double>(network.edge_count(EdgeKind::Cooccurrence));
    return static_cast<std::size_t>(std::floor(level.percent * e / 100.0));
}

DisparityScore disparity_alpha(double total_strength, int degree, double weight) {
    if (total_strength <= 0.0) throw std::invalid_argument("disparity_alpha: strength must be > 0");
    if (weight <= 0.0) throw std::invalid_argument("disparity_alpha: weight must be > 0");
    if (weight > total_strength)
        throw std::invalid_argument("disparity_alpha: weight exceeds total strength");
    if (degree < 1) throw std::invalid_argument("disparity_alpha: degree must be >= 1");
    double pi = weight / total_strength;
    double alpha = degree == 1 ? 1.0 : std::pow(1.0 - pi, degree - 1);
    return DisparityScore{alpha, pi, "", degree};
}

EnrichmentResult enrich_global(const TextNetwork& network,
                               const std::vector<CandidatePair>& candidates,
                               const EnrichmentLevel& level) {
    std::size_t budget = edge_budget(network, level);
    EnrichmentResult result{network, budget, 0};
    for (const auto& c : candidates) {
        if (result.added == budget) break;
        result.network.add_edge(c.word_a, c.word_b, EdgeKind::Virtual, 0, c.similarity);
        ++result.added;
    }
    return result;
}

namespace detail {

std::vector<std::size_t> local_selection_order_indexed(const TextNetwork& network,
                                                       const std::vector<std::string>& words,
                                                       const std::vector<IndexedPair>& candidates,
                                                       const EmbeddingTable& table) {
    const std::size_t n = words.size();
    std::unordered_map<std::string, int> pos;
    pos.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) pos.emplace(words[i], static_cast<int>(i));

    std::vector<std::span<const double>> vectors(n);
    std::vector<bool> embedded(n, false);
    for (std::size_t i = 0; i < n; ++i)
        if (auto v = table.find(words[i])) {
            vectors[i] = *v;
            embedded[i] = true;
        }

    // Provisional graph = all co-occurrence edges + every candidate, each
    // weighted by endpoint similarity for the null model (clamped to >= 0).
    std::vector<int> degree(n, 0);
    std::vector<double> strength(n, 0.0);
    auto account = [&](int a, int b, double clamped) {
        degree[a] += 1;
        degree[b] += 1;
        strength[a] += clamped;
        strength[b] += clamped;
    };

    std::vector<std::pair<int, int>> edge_ids(network.edge_count());
    std::vector<double> edge_weight(network.edge_count());
    for (std::size_t k = 0; k < network.edge_count(); ++k) {
        const Edge& e = network.edges()[k];
        auto ia = pos.find(network.word(e.a));
        auto ib = pos.find(network.word(e.b));
        if (ia == pos.end() || ib == pos.end())
            throw std::invalid_argument("word list does not cover network node `" +
                                        network.word(ia == pos.end() ? e.a : e.b) + "`");
        int a = ia->second, b = ib->second;
        double sim = 1.0;
        if (e.kind == EdgeKind::Virtual) sim = e.weight;
        else if (embedded[a] && embedded[b]) sim = cosine_similarity(vectors[a], vectors[b]);
        edge_ids[k] = {a, b};
        edge_weight[k] = std::max(sim, 0.0);
        account(a, b, edge_weight[k]);
    }
    for (const auto& c : candidates) account(c.a, c.b, std::max(c.similarity, 0.0));

    auto endpoint_alpha = [&](int node, double w) {
        if (w <= 0.0 || strength[node] <= 0.0) return 1.0;
        return disparity_alpha(strength[node], degree[node], std::min(w, strength[node])).alpha;
    };

    std::vector<std::pair<double, std::size_t>> scored(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& c = candidates[i];
        double w = std::max(c.similarity, 0.0);
        scored[i] = {std::min(endpoint_alpha(c.a, w), endpoint_alpha(c.b, w)), i};
    }
    std::sort(scored.begin(), scored.end(), [&](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        const auto& cx = candidates[x.second];
        const auto& cy = candidates[y.second];
        if (cx.similarity != cy.similarity) return cx.similarity > cy.similarity;
        if (cx.a != cy.a) return cx.a < cy.a;
        return cx.b < cy.b;
    });

    std::vector<std::size_t> order(scored.size());
    for (std::size_t i = 0; i < scored.size(); ++i) order[i] = scored[i].second;
    return order;
}

std::vector<std::size_t> local_selection_order(const TextNetwork& network,
                                               const std::vector<CandidatePair>& candidates,
                                               const EmbeddingTable& table) {
    std::set<std::string> vocab(network.words().begin(), network.words().end());
    for (const auto& c : candidates) {
        vocab.insert(c.word_a);
        vocab.insert(c.word_b);
    }
    std::vector<std::string> words(vocab.begin(), vocab.end());
    std::unordered_map<std::string, int> pos;
    for (std::size_t i = 0; i < words.size(); ++i) pos.emplace(words[i], static_cast<int>(i));

    std::vector<IndexedPair> indexed(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        int a = pos.at(candidates[i].word_a);
        int b = pos.at(candidates[i].word_b);
        if (a > b) std::swap(a, b);
        indexed[i] = {a, b, candidates[i].similarity};
    }
    return local_selection_order_indexed(network, words, indexed, table);
}

} // namespace detail

EnrichmentResult enrich_local(const TextNetwork& network,
                              const std::vector<CandidatePair>& candidates,
                              const EnrichmentLevel& level, const EmbeddingTable& table) {
    std::size_t budget = edge_budget(network, level);
    EnrichmentResult result{network, budget, 0};
    if (budget == 0 || candidates.empty()) return result;

    auto order = detail::local_selection_order(network, candidates, table);
    for (std::size_t i = 0; i < order.size() && result.added < budget; ++i) {
        const auto& c = candidates[order[i]];
        result.network.add_edge(c.word_a, c.word_b, EdgeKind::Virtual, 0, c.similarity);
        ++result.added;
    }
    return result;
}

void write_edge_list(const TextNetwork& network, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write edge list " + path);
    for (const auto& e : network.edges())
        out << network.word(e.a) << ' ' << network.word(e.b) << ' ' << to_string(e.kind) << ' '
            << csv::format_sig(e.weight) << '\n';
}

} // namespace coocnet
