#ifndef SEMNET_CORPUS_HPP
#define SEMNET_CORPUS_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

namespace semnet {

struct TokenizerRules {
    std::size_t min_token_length = 1;
    bool allow_digits = false;
    bool strip_plurals = true;          // drop trailing 's' (length > 3, not "ss")
    std::size_t min_plural_length = 3;  // tokens this short keep their 's'
};

struct Document {
    int id = 0;  // 1-based, contiguous within a corpus
    std::string source;
    std::vector<std::string> tokens;
};

enum class CorpusMode { LineCorpus, FileCorpus };

struct Corpus {
    std::vector<Document> documents;
    CorpusMode mode = CorpusMode::LineCorpus;
    int blank_lines_skipped = 0;
    std::vector<std::string> warnings;
    // normalized token -> first surface form seen (pre plural stripping, lowercased)
    std::map<std::string, std::string> surface_forms;

    std::size_t size() const { return documents.size(); }
};

struct Stoplist {
    std::set<std::string> entries;  // normalized the same way as corpus tokens
};

std::vector<std::string> tokenize(const std::string& raw, const TokenizerRules& rules);
std::string normalize_plural(const std::string& token, std::size_t min_plural_length = 3);

Corpus load_line_corpus(const std::string& path, const TokenizerRules& rules = {});
// Documents ordered by the numeric suffix of text<N>; input order is irrelevant.
Corpus load_file_corpus(const std::vector<std::string>& paths, const TokenizerRules& rules = {});

Stoplist load_stoplist(const std::string& path, const TokenizerRules& rules = {});
Corpus apply_stopwords(const Corpus& corpus, const Stoplist& stoplist);

}  // namespace semnet

#endif
