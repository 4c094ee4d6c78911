#ifndef COOCNET_NETWORK_HPP_
#define COOCNET_NETWORK_HPP_

#include <string>
#include <unordered_map>
#include <vector>

#include "coocnet/corpus.hpp"
#include "coocnet/embedding.hpp"

namespace coocnet {

enum class EdgeKind { Cooccurrence, Virtual };

const char* to_string(EdgeKind kind);

struct Edge {
    int a; // a < b, node indices
    int b;
    EdgeKind kind;
    int cooccurrence_count; // 0 for virtual edges
    double weight;          // count for co-occurrence, similarity for virtual
};

// Undirected word graph. No self-loops, at most one edge per pair. Node and
// edge order follow insertion, so identical inputs reproduce identical
// iteration order everywhere downstream.
class TextNetwork {
public:
    int add_node(const std::string& word);
    int node_index(const std::string& word) const; // -1 if absent
    bool has_node(const std::string& word) const { return node_index(word) >= 0; }
    bool has_edge(int a, int b) const;

    // Creates missing endpoint nodes. Throws on self-loops and duplicates.
    void add_edge(int a, int b, EdgeKind kind, int count, double weight);
    void add_edge(const std::string& a, const std::string& b, EdgeKind kind, int count,
                  double weight);
    void increment_cooccurrence(int a, int b);

    std::size_t node_count() const { return words_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t edge_count(EdgeKind kind) const;

    const std::vector<std::string>& words() const { return words_; }
    const std::string& word(int node) const { return words_[node]; }
    const std::vector<Edge>& edges() const { return edges_; }
    // (neighbor node, edge index) pairs in insertion order.
    const std::vector<std::pair<int, int>>& neighbors(int node) const { return adjacency_[node]; }
    int degree(int node) const { return static_cast<int>(adjacency_[node].size()); }

private:
    std::vector<std::string> words_;
    std::unordered_map<std::string, int> index_;
    std::vector<Edge> edges_;
    std::unordered_map<long long, int> edge_index_; // packed (a,b) -> edge position
    std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

// Window-1 adjacency network: one node per distinct token, co-occurrence
// count = number of adjacent occurrences, weight initialized to the count.
TextNetwork build_cooccurrence(const TokenSequence& sample);

struct EnrichmentLevel {
    double percent = 0.0; // 0..100
};

// floor(percent/100 * co-occurrence edge count)
std::size_t edge_budget(const TextNetwork& network, const EnrichmentLevel& level);

struct DisparityScore {
    double alpha;
    double pi;
    std::string endpoint; // filled when scored against a concrete node
    int endpoint_degree;
};

// Significance of an edge of weight `weight` at a node with the given total
// strength and degree: pi = weight/strength, alpha = (1-pi)^(degree-1)
// (closed form of the disparity-filter null model; degree 1 gives alpha 1).
DisparityScore disparity_alpha(double total_strength, int degree, double weight);

struct EnrichmentResult {
    TextNetwork network;
    std::size_t requested;
    std::size_t added;
};

// Global strategy: append the `edge_budget` most similar candidates as
// virtual edges. Candidates must be sorted as by rank_candidate_pairs and
// exclude existing edges.
EnrichmentResult enrich_global(const TextNetwork& network,
                               const std::vector<CandidatePair>& candidates,
                               const EnrichmentLevel& level);

// Local strategy: provisionally add every candidate, weight all edges by
// endpoint cosine similarity (1.0 when a vector is missing; weights clamped
// to >= 0 for the null model), score each virtual edge by the smaller of its
// two endpoint alphas on the provisional graph, and keep the budget-many
// most significant (lowest alpha; ties by higher similarity, then
// lexicographic). Co-occurrence edges always survive.
EnrichmentResult enrich_local(const TextNetwork& network,
                              const std::vector<CandidatePair>& candidates,
                              const EnrichmentLevel& level, const EmbeddingTable& table);

// `word_a word_b kind weight` lines, edge insertion order.
void write_edge_list(const TextNetwork& network, const std::string& path);

namespace detail {

// Shared by enrich_local and the pipeline: orders candidate virtual edges by
// local significance against `network`. Entries are indices into
// `candidates`.
std::vector<std::size_t> local_selection_order(const TextNetwork& network,
                                               const std::vector<CandidatePair>& candidates,
                                               const EmbeddingTable& table);

// Index-based core; `words` must cover every network word and candidate
// endpoint, and candidate indices refer into it.
std::vector<std::size_t> local_selection_order_indexed(const TextNetwork& network,
                                                       const std::vector<std::string>& words,
                                                       const std::vector<IndexedPair>& candidates,
                                                       const EmbeddingTable& table);

} // namespace detail

} // namespace coocnet

#endif
