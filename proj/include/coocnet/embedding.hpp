#ifndef COOCNET_EMBEDDING_HPP_
#define COOCNET_EMBEDDING_HPP_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace coocnet {

// Word -> dense vector table, fixed dimension. Immutable after load.
class EmbeddingTable {
public:
    EmbeddingTable() = default;

    // Whitespace-separated text, one `word v1 .. vd` per line; a first line of
    // exactly two integers (count, dimension) is detected and skipped, which
    // covers GloVe text, word2vec text and FastText .vec distributions.
    // `vocabulary`, when given, restricts loading to those words.
    // Duplicate words overwrite earlier entries with a warning on stderr;
    // zero-norm vectors are skipped with a warning.
    static EmbeddingTable load(const std::string& path,
                               const std::unordered_set<std::string>* vocabulary = nullptr);

    // Plain text form (no header) that load() reads back identically.
    void save(const std::string& path) const;

    int dimension() const { return dimension_; }
    std::size_t size() const { return words_.size(); }
    bool contains(const std::string& word) const { return index_.count(word) != 0; }
    const std::vector<std::string>& words() const { return words_; }

    std::span<const double> vector_of(const std::string& word) const;
    std::optional<std::span<const double>> find(const std::string& word) const;

    void insert(const std::string& word, const std::vector<double>& values);

private:
    int dimension_ = 0;
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<double> values_; // row-major, words_.size() x dimension_
};

// (u.v)/(|u||v|), clamped to [-1,1]. Throws on dimension mismatch or
// zero-norm input.
double cosine_similarity(std::span<const double> u, std::span<const double> v);

struct CandidatePair {
    std::string word_a; // word_a < word_b
    std::string word_b;
    double similarity;
};

using WordPairSet = std::set<std::pair<std::string, std::string>>;

// All unordered pairs over (vocabulary ∩ table), minus `exclude`, sorted by
// similarity descending with (word_a, word_b) lexicographic tie-break. Words
// absent from the table contribute no pairs.
std::vector<CandidatePair> rank_candidate_pairs(const std::unordered_set<std::string>& vocabulary,
                                                const EmbeddingTable& table,
                                                const WordPairSet& exclude = {});

namespace detail {

// Index-based variant used by the experiment pipeline to avoid materializing
// string pairs for large vocabularies. `words` must be sorted so index order
// doubles as the lexicographic tie-break.
struct IndexedPair {
    int a;
    int b;
    double similarity;
};

std::vector<IndexedPair> rank_pairs_indexed(const std::vector<std::string>& sorted_words,
                                            const EmbeddingTable& table,
                                            const std::set<std::pair<int, int>>& exclude);

} // namespace detail

} // namespace coocnet

#endif
