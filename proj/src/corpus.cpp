#include "semnet/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "semnet/errors.hpp"

namespace semnet {

namespace {

bool is_word_char(unsigned char c, const TokenizerRules& rules) {
    if (std::isalpha(c)) return true;
    if (rules.allow_digits && std::isdigit(c)) return true;
    return false;
}

bool is_joiner(unsigned char c) { return c == '-' || c == '\''; }

std::string read_whole_file(const std::string& path, std::vector<std::string>& warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    // Accept plain 8-bit and UTF-8. Bytes >= 0x80 that are not part of a valid
    // UTF-8 sequence are replaced (they fall outside the word alphabet anyway).
    bool replaced = false;
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(bytes[i]);
        if (c < 0x80) continue;
        std::size_t extra = (c >= 0xF0) ? 3 : (c >= 0xE0) ? 2 : (c >= 0xC0) ? 1 : 0;
        bool valid = extra > 0 && i + extra < bytes.size();
        for (std::size_t k = 1; valid && k <= extra; ++k) {
            unsigned char cc = static_cast<unsigned char>(bytes[i + k]);
            if ((cc & 0xC0) != 0x80) valid = false;
        }
        if (valid) {
            i += extra;
        } else {
            bytes[i] = '?';
            replaced = true;
        }
    }
    if (replaced) warnings.push_back("replaced invalid byte sequences in " + path);
    return bytes;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            if (!current.empty() && current.back() == '\r') current.pop_back();
            lines.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) {
        if (current.back() == '\r') current.pop_back();
        lines.push_back(current);
    }
    return lines;
}

bool is_blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

void tokenize_into(const std::string& raw, const TokenizerRules& rules, Corpus& corpus,
                   std::vector<std::string>& out) {
    std::string current;
    auto flush = [&] {
        // trim joiners that ended up at the edges ("co-word," keeps its hyphen,
        // a dangling "-word" does not)
        while (!current.empty() && is_joiner(static_cast<unsigned char>(current.front())))
            current.erase(current.begin());
        while (!current.empty() && is_joiner(static_cast<unsigned char>(current.back())))
            current.pop_back();
        if (current.size() >= rules.min_token_length && !current.empty()) {
            std::string surface = current;
            std::string token =
                rules.strip_plurals ? normalize_plural(current, rules.min_plural_length) : current;
            corpus.surface_forms.emplace(token, surface);
            out.push_back(std::move(token));
        }
        current.clear();
    };
    for (unsigned char c : raw) {
        if (is_word_char(c, rules)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (is_joiner(c) && !current.empty()) {
            current.push_back(static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
}

// Document sources record the file name only, so output files do not depend
// on where the corpus happens to live.
std::string basename_of(const std::string& path) {
    auto slash = path.find_last_of("/\\");
    return slash == std::string::npos ? path : path.substr(slash + 1);
}

// Numeric suffix immediately before the extension: "text12.txt" -> 12.
long numeric_suffix(const std::string& path) {
    std::string name = basename_of(path);
    auto dot = name.find_last_of('.');
    if (dot != std::string::npos) name = name.substr(0, dot);
    std::size_t end = name.size();
    std::size_t start = end;
    while (start > 0 && std::isdigit(static_cast<unsigned char>(name[start - 1]))) --start;
    if (start == end) return -1;
    return std::stol(name.substr(start));
}

}  // namespace

std::vector<std::string> tokenize(const std::string& raw, const TokenizerRules& rules) {
    Corpus scratch;
    TokenizerRules no_plural = rules;
    no_plural.strip_plurals = false;  // tokenize is the raw split; plural handling is separate
    std::vector<std::string> out;
    tokenize_into(raw, no_plural, scratch, out);
    return out;
}

std::string normalize_plural(const std::string& token, std::size_t min_plural_length) {
    if (token.size() <= min_plural_length) return token;
    if (token.back() != 's') return token;
    if (token.size() >= 2 && token[token.size() - 2] == 's') return token;  // "class"
    return token.substr(0, token.size() - 1);
}

Corpus load_line_corpus(const std::string& path, const TokenizerRules& rules) {
    Corpus corpus;
    corpus.mode = CorpusMode::LineCorpus;
    std::string bytes = read_whole_file(path, corpus.warnings);
    int line_no = 0;
    for (const std::string& line : split_lines(bytes)) {
        ++line_no;
        if (is_blank(line)) {
            ++corpus.blank_lines_skipped;
            continue;
        }
        Document doc;
        doc.id = static_cast<int>(corpus.documents.size()) + 1;
        doc.source = basename_of(path) + ":" + std::to_string(line_no);
        tokenize_into(line, rules, corpus, doc.tokens);
        corpus.documents.push_back(std::move(doc));
    }
    if (corpus.documents.empty())
        throw EmptyResultError("no non-blank lines in corpus file: " + path);
    return corpus;
}

Corpus load_file_corpus(const std::vector<std::string>& paths, const TokenizerRules& rules) {
    Corpus corpus;
    corpus.mode = CorpusMode::FileCorpus;
    std::map<long, std::string> by_suffix;
    for (const std::string& path : paths) {
        long n = numeric_suffix(path);
        if (n < 0) throw IoError("file name lacks a numeric suffix: " + path);
        auto [it, inserted] = by_suffix.emplace(n, path);
        if (!inserted)
            throw IoError("duplicate numeric suffix " + std::to_string(n) + ": " + path +
                          " vs " + it->second);
    }
    if (by_suffix.empty()) throw EmptyResultError("no corpus files given");
    long expected = by_suffix.begin()->first;
    for (const auto& [n, path] : by_suffix) {
        while (expected < n) {
            corpus.warnings.push_back("missing file with suffix " + std::to_string(expected));
            ++expected;
        }
        ++expected;
        Document doc;
        doc.id = static_cast<int>(corpus.documents.size()) + 1;
        doc.source = basename_of(path);
        std::string bytes = read_whole_file(path, corpus.warnings);
        tokenize_into(bytes, rules, corpus, doc.tokens);
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

Stoplist load_stoplist(const std::string& path, const TokenizerRules& rules) {
    Stoplist stoplist;
    std::vector<std::string> warnings;
    std::string bytes = read_whole_file(path, warnings);
    Corpus scratch;
    for (std::string line : split_lines(bytes)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::vector<std::string> tokens;
        tokenize_into(line, rules, scratch, tokens);
        for (auto& t : tokens) stoplist.entries.insert(std::move(t));
    }
    return stoplist;
}

Corpus apply_stopwords(const Corpus& corpus, const Stoplist& stoplist) {
    Corpus filtered = corpus;
    for (Document& doc : filtered.documents) {
        std::erase_if(doc.tokens,
                      [&](const std::string& t) { return stoplist.entries.count(t) > 0; });
    }
    return filtered;
}

}  // namespace semnet
