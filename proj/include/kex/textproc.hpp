#ifndef KEX_TEXTPROC_HPP
#define KEX_TEXTPROC_HPP

#include "kex/stopwords.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace kex {

enum class LexicalCategory { NounLike, Other, Unknown };

enum class Normalizer { Identity, LightStem };

struct Token {
    std::string surface;
    std::string normalized; // filled by filter_tokens; equals surface after tokenize
    int sentence_index = 0;
    int token_index = 0; // position among all tokens of the text
    std::size_t begin = 0; // byte offsets into the source text
    std::size_t end = 0;
    bool is_stopword = false;
    bool is_punct = false;
    bool is_numeric = false;
    LexicalCategory category = LexicalCategory::Unknown;
};

struct TokenizedText {
    std::string source;
    std::vector<Token> tokens;
    int sentence_count = 0;
};

struct PipelineConfig {
    bool lowercase = true;
    bool remove_numbers = true;
    int min_token_len = 3; // in code points
    std::shared_ptr<const StopwordSet> stopwords = default_stopwords();
    bool nouns_only = false;
    Normalizer normalizer = Normalizer::Identity;
    // Phrase formation. When agglomerate is false the extraction pipeline
    // emits each ranked term as its own single-word phrase.
    bool agglomerate = false;
    int bridge_stopwords_max = 0;
    // When true, non-alphanumeric characters inside a token also split it
    // ("C4H*Cl" -> "C4H", "*", "Cl"); the default keeps such runs intact.
    bool split_inner_punct = false;
};

struct TokenizerOptions {
    bool split_inner_punct = false;
};

// Splits text into sentence-indexed tokens. Sentences end at '.', '!' or '?'
// followed by whitespace (or end of input) unless the preceding word is a
// known abbreviation or a single initial. Leading/trailing punctuation of a
// whitespace-delimited run is peeled off into one-character punctuation
// tokens; interior punctuation stays inside the token unless
// split_inner_punct is set.
TokenizedText tokenize(std::string_view text, const TokenizerOptions& options = {});

// Case folding plus the configured normalizer. LightStem repeatedly strips a
// terminal "es"/"s" from words of length >= 4 unless the word ends in "ss",
// "us" or "is"; iterating to a fixed point keeps the map idempotent.
std::string normalize_token(std::string_view surface, const PipelineConfig& config);

// Keeps candidate tokens only: drops punctuation, stopwords, numerics (if
// configured), tokens shorter than min_token_len, and non-noun-like tokens
// when nouns_only is set (Unknown is kept). Survivors keep their original
// indices and spans and get their normalized form filled in.
TokenizedText filter_tokens(const TokenizedText& tt, const PipelineConfig& config);

// Heuristic lexical category from a function-word lexicon and suffix table.
// Total and deterministic; anything unrecognized is Unknown.
LexicalCategory categorize_token(std::string_view surface);

// Number of UTF-8 code points (continuation bytes are not counted).
std::size_t codepoint_count(std::string_view s);

} // namespace kex

#endif // KEX_TEXTPROC_HPP
