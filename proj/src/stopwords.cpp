#include "kex/stopwords.hpp"

#include "kex/errors.hpp"
#include "kex/strutil.hpp"

#include <fstream>

namespace kex {

namespace {

// Built-in English stopword list, version 1. 180 entries, kept in sync
// with data/stopwords_en.txt (a unit test compares the two).
constexpr const char* kDefaultStopwords[] = {
    "a", "about", "above", "across", "after", "again", "against", "all",
    "along", "also", "although", "always", "am", "among", "an", "and",
    "another", "any", "are", "around", "as", "at",
    "be", "because", "been", "before", "being", "below", "beside", "besides",
    "between", "beyond", "both", "but", "by",
    "can", "cannot", "could",
    "did", "do", "does", "doing", "down", "during",
    "each", "either", "etc", "every",
    "few", "for", "from", "further",
    "had", "has", "have", "having", "he", "hence", "her", "here", "hers",
    "herself", "him", "himself", "his", "how", "however",
    "i", "if", "in", "into", "is", "it", "its", "itself",
    "just",
    "less",
    "many", "may", "me", "might", "more", "most", "much", "must", "my",
    "myself",
    "neither", "never", "nevertheless", "no", "nor", "not", "now",
    "of", "off", "on", "once", "only", "onto", "or", "other", "otherwise",
    "our", "ours", "ourselves", "out", "over", "own",
    "per",
    "rather",
    "same", "shall", "she", "should", "since", "so", "some", "still", "such",
    "than", "that", "the", "their", "theirs", "them", "themselves", "then",
    "there", "therefore", "these", "they", "this", "those", "though",
    "through", "throughout", "thus", "to", "too", "toward", "towards",
    "under", "unless", "until", "up", "upon", "us",
    "very", "via",
    "was", "we", "well", "were", "what", "whatever", "when", "whenever",
    "where", "whereas", "wherever", "whether", "which", "while", "who",
    "whoever", "whom", "whose", "why", "will", "with", "within", "without",
    "would",
    "yet", "you", "your", "yours", "yourself", "yourselves",
};

} // namespace

StopwordSet::StopwordSet(std::string name, std::vector<std::string> words) : name_(std::move(name)) {
    for (auto& w : words) {
        words_.insert(to_lower(w));
    }
}

bool StopwordSet::contains(std::string_view word) const {
    return words_.count(to_lower(word)) > 0;
}

std::shared_ptr<const StopwordSet> default_stopwords() {
    static const std::shared_ptr<const StopwordSet> instance = [] {
        std::vector<std::string> words(std::begin(kDefaultStopwords), std::end(kDefaultStopwords));
        return std::make_shared<const StopwordSet>("english-default-v1", std::move(words));
    }();
    return instance;
}

std::shared_ptr<const StopwordSet> load_stopwords(std::istream& in, std::string name) {
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto word = trim(line);
        if (!word.empty()) {
            words.emplace_back(word);
        }
    }
    return std::make_shared<const StopwordSet>(std::move(name), std::move(words));
}

std::shared_ptr<const StopwordSet> load_stopwords_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open stopword file: " + path);
    }
    return load_stopwords(in, path);
}

} // namespace kex
