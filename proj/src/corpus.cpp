#include "coocnet/corpus.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "coocnet/csv.hpp"

namespace coocnet {

namespace {

bool is_ascii_letter(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

bool is_valid_utf8(const std::string& bytes) {
    size_t i = 0, n = bytes.size();
    while (i < n) {
        unsigned char c = bytes[i];
        size_t len;
        if (c < 0x80) len = 1;
        else if ((c & 0xe0) == 0xc0) len = 2;
        else if ((c & 0xf0) == 0xe0) len = 3;
        else if ((c & 0xf8) == 0xf0) len = 4;
        else return false;
        if (i + len > n) return false;
        for (size_t k = 1; k < len; ++k)
            if ((static_cast<unsigned char>(bytes[i + k]) & 0xc0) != 0x80) return false;
        if (len == 2 && c < 0xc2) return false;                       // overlong
        if (len == 4 && c > 0xf4) return false;                       // > U+10FFFF
        i += len;
    }
    return true;
}

std::vector<ManifestRow> read_manifest(const std::string& manifest_path) {
    auto rows = csv::read_file(manifest_path);
    if (rows.empty()) throw std::runtime_error("manifest " + manifest_path + " is empty");
    const auto& header = rows[0];
    if (header.size() != 3 || header[0] != "path" || header[1] != "author" || header[2] != "title")
        throw std::runtime_error("manifest " + manifest_path +
                                 ": expected header `path,author,title`");

    std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();
    std::vector<ManifestRow> out;
    std::set<std::pair<std::string, std::string>> seen;
    for (size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() == 1 && row[0].empty()) continue; // trailing blank line
        if (row.size() != 3)
            throw std::runtime_error("manifest row " + std::to_string(r) + ": expected 3 fields, got " +
                                     std::to_string(row.size()));
        ManifestRow m{row[0], row[1], row[2]};
        if (m.author.empty() || m.title.empty())
            throw std::runtime_error("manifest row " + std::to_string(r) + ": empty author or title");
        if (!seen.insert({m.author, m.title}).second)
            throw std::runtime_error("manifest row " + std::to_string(r) + ": duplicate (author,title) pair `" +
                                     m.author + "`, `" + m.title + "`");
        std::filesystem::path p(m.path);
        if (p.is_relative()) p = base / p;
        m.path = p.string();
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<Document> load_corpus(const std::string& manifest_path) {
    auto manifest = read_manifest(manifest_path);
    std::vector<Document> docs;
    docs.reserve(manifest.size());
    for (size_t r = 0; r < manifest.size(); ++r) {
        const auto& m = manifest[r];
        std::string text;
        try {
            text = read_text_file(m.path);
        } catch (const std::exception& e) {
            throw std::runtime_error("manifest row " + std::to_string(r + 1) + ": " + e.what());
        }
        if (!is_valid_utf8(text))
            throw std::runtime_error("manifest row " + std::to_string(r + 1) + ": " + m.path +
                                     " is not valid UTF-8");
        if (text.empty())
            throw std::runtime_error("manifest row " + std::to_string(r + 1) + ": " + m.path + " is empty");
        docs.push_back(Document{m.author, m.title, std::move(text)});
    }
    return docs;
}

TokenSequence tokenize(const std::string& text) {
    TokenSequence tokens;
    std::string current;
    const size_t n = text.size();
    for (size_t i = 0; i < n; ++i) {
        unsigned char c = text[i];
        if (is_ascii_letter(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (c == '\'' && !current.empty() && i + 1 < n &&
                   is_ascii_letter(static_cast<unsigned char>(text[i + 1]))) {
            current.push_back('\'');
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

TokenSequence filter_stopwords(const TokenSequence& tokens,
                               const std::unordered_set<std::string>& stopwords,
                               bool keep) {
    if (keep) return tokens;
    TokenSequence out;
    out.reserve(tokens.size());
    for (const auto& t : tokens)
        if (!stopwords.count(t)) out.push_back(t);
    return out;
}

TokenSequence normalize_tokens(const TokenSequence& tokens,
                               const std::unordered_map<std::string, std::string>& lemma_map) {
    TokenSequence out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        auto it = lemma_map.find(t);
        out.push_back(it == lemma_map.end() ? t : it->second);
    }
    return out;
}

TokenSequence take_sample(const TokenSequence& tokens, const SampleSpec& spec) {
    if (spec.length < 1) throw std::invalid_argument("sample length must be >= 1");
    if (tokens.size() < static_cast<std::size_t>(spec.length))
        throw SampleTooShortError(tokens.size(), spec.length);
    return TokenSequence(tokens.begin(), tokens.begin() + spec.length);
}

std::unordered_set<std::string> load_stopword_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stopword file " + path);
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        std::string w = trim(line);
        if (!w.empty()) words.insert(w);
    }
    return words;
}

std::unordered_map<std::string, std::string> load_lemma_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lemma file " + path);
    std::unordered_map<std::string, std::string> map;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("lemma file " + path + " line " + std::to_string(lineno) +
                                     ": expected `surface<TAB>lemma`");
        std::string surface = trim(line.substr(0, tab));
        std::string lemma = trim(line.substr(tab + 1));
        if (surface.empty() || lemma.empty())
            throw std::runtime_error("lemma file " + path + " line " + std::to_string(lineno) +
                                     ": empty surface or lemma");
        map[surface] = lemma;
    }
    return map;
}

} // namespace coocnet
