#ifndef COOCNET_CORPUS_HPP_
#define COOCNET_CORPUS_HPP_

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace coocnet {

struct Document {
    std::string author;
    std::string title;
    std::string text;
};

using TokenSequence = std::vector<std::string>;

struct SampleSpec {
    int length = 1; // sample size in tokens
};

struct SampleTooShortError : std::runtime_error {
    SampleTooShortError(std::size_t available, int wanted)
        : std::runtime_error("sample too short: " + std::to_string(available) +
                             " tokens available, " + std::to_string(wanted) + " requested"),
          available(available), wanted(wanted) {}
    std::size_t available;
    int wanted;
};

struct ManifestRow {
    std::string path;
    std::string author;
    std::string title;
};

// Manifest format: CSV with header `path,author,title`, UTF-8. Relative paths
// resolve against the manifest's directory.
std::vector<ManifestRow> read_manifest(const std::string& manifest_path);
std::vector<Document> load_corpus(const std::string& manifest_path);

// Lowercases and splits on runs of non-letters. ASCII apostrophes between two
// letters stay inside the token ("don't"); digits and all bytes >= 0x80 act
// as separators.
TokenSequence tokenize(const std::string& text);

// keep=true returns the input unchanged; otherwise drops every member of the
// stopword set, preserving order.
TokenSequence filter_stopwords(const TokenSequence& tokens,
                               const std::unordered_set<std::string>& stopwords,
                               bool keep);

TokenSequence normalize_tokens(const TokenSequence& tokens,
                               const std::unordered_map<std::string, std::string>& lemma_map);

// First `spec.length` tokens; throws SampleTooShortError when fewer remain.
TokenSequence take_sample(const TokenSequence& tokens, const SampleSpec& spec);

// One lowercase token per line.
std::unordered_set<std::string> load_stopword_file(const std::string& path);

// Tab-separated `surface<TAB>lemma`, one pair per line.
std::unordered_map<std::string, std::string> load_lemma_file(const std::string& path);

bool is_valid_utf8(const std::string& bytes);

} // namespace coocnet

#endif
