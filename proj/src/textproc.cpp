#include "kex/textproc.hpp"

#include "kex/errors.hpp"
#include "kex/strutil.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace kex {

namespace {

bool is_space_char(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_digit_char(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

// ASCII punctuation; bytes >= 0x80 count as word characters so UTF-8
// sequences are never split.
bool is_punct_char(char c) {
    auto u = static_cast<unsigned char>(c);
    return u < 0x80 && std::ispunct(u) != 0;
}

bool is_sentence_terminator(char c) {
    return c == '.' || c == '!' || c == '?';
}

// Words that keep a trailing '.' from ending the sentence.
const std::unordered_set<std::string>& abbreviations() {
    static const std::unordered_set<std::string> set = {
        "e.g", "i.e", "etc", "vs", "cf", "al", "fig", "figs", "eq", "eqs",
        "ref", "refs", "dr", "mr", "mrs", "ms", "prof", "st", "jr", "sr",
        "inc", "ltd", "approx", "resp", "ca",
    };
    return set;
}

bool is_single_initial(std::string_view core) {
    return core.size() == 1 && std::isalpha(static_cast<unsigned char>(core[0])) != 0;
}

// Numeric tokens: at least one digit and nothing but digits and the
// separators that survive punctuation peeling ("2020", "3.5", "10-20").
bool looks_numeric(std::string_view core) {
    bool has_digit = false;
    for (char c : core) {
        if (is_digit_char(c)) {
            has_digit = true;
        } else if (c != '.' && c != ',' && c != '-' && c != '+' && c != '/' && c != '%') {
            return false;
        }
    }
    return has_digit;
}

struct SuffixRule {
    std::string_view suffix;
    LexicalCategory category;
};

// Longest suffix wins; a rule applies only when at least two characters of
// stem remain.
constexpr std::array<SuffixRule, 24> kSuffixTable = {{
    {"ology", LexicalCategory::NounLike},
    {"graphy", LexicalCategory::NounLike},
    {"metry", LexicalCategory::NounLike},
    {"scopy", LexicalCategory::NounLike},
    {"ation", LexicalCategory::NounLike},
    {"ance", LexicalCategory::NounLike},
    {"ence", LexicalCategory::NounLike},
    {"ness", LexicalCategory::NounLike},
    {"ship", LexicalCategory::NounLike},
    {"hood", LexicalCategory::NounLike},
    {"tion", LexicalCategory::NounLike},
    {"sion", LexicalCategory::NounLike},
    {"ment", LexicalCategory::NounLike},
    {"ity", LexicalCategory::NounLike},
    {"ism", LexicalCategory::NounLike},
    {"ist", LexicalCategory::NounLike},
    {"ure", LexicalCategory::NounLike},
    {"age", LexicalCategory::NounLike},
    {"ously", LexicalCategory::Other},
    {"ize", LexicalCategory::Other},
    {"ise", LexicalCategory::Other},
    {"ify", LexicalCategory::Other},
    {"ous", LexicalCategory::Other},
    {"ly", LexicalCategory::Other},
}};

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

} // namespace

std::size_t codepoint_count(std::string_view s) {
    std::size_t n = 0;
    for (char c : s) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++n;
        }
    }
    return n;
}

LexicalCategory categorize_token(std::string_view surface) {
    const std::string w = to_lower(surface);
    if (default_stopwords()->words().count(w) > 0) {
        return LexicalCategory::Other;
    }
    // Longest match over the suffix table.
    const SuffixRule* best = nullptr;
    for (const auto& rule : kSuffixTable) {
        if (w.size() >= rule.suffix.size() + 2 && ends_with(w, rule.suffix)) {
            if (best == nullptr || rule.suffix.size() > best->suffix.size()) {
                best = &rule;
            }
        }
    }
    return best != nullptr ? best->category : LexicalCategory::Unknown;
}

std::string normalize_token(std::string_view surface, const PipelineConfig& config) {
    std::string w = config.lowercase ? to_lower(surface) : std::string(surface);
    if (config.normalizer == Normalizer::LightStem) {
        // Iterated to a fixed point so the map is idempotent.
        for (;;) {
            if (w.size() < 4 || ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) {
                break;
            }
            if (ends_with(w, "es")) {
                w.erase(w.size() - 2);
            } else if (ends_with(w, "s")) {
                w.erase(w.size() - 1);
            } else {
                break;
            }
        }
    }
    return w;
}

namespace {

struct TokenSink {
    TokenizedText& out;
    int sentence_index = 0;
    int token_index = 0;

    void emit(std::string_view source, std::size_t begin, std::size_t end, bool punct) {
        Token t;
        t.surface = std::string(source.substr(begin, end - begin));
        t.normalized = t.surface;
        t.sentence_index = sentence_index;
        t.token_index = token_index++;
        t.begin = begin;
        t.end = end;
        t.is_punct = punct;
        if (!punct) {
            t.is_numeric = looks_numeric(t.surface);
            t.is_stopword = default_stopwords()->contains(t.surface);
            t.category = categorize_token(t.surface);
        }
        out.tokens.push_back(std::move(t));
    }
};

} // namespace

TokenizedText tokenize(std::string_view text, const TokenizerOptions& options) {
    TokenizedText result;
    result.source = std::string(text);

    TokenSink sink{result};
    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        if (is_space_char(text[i])) {
            ++i;
            continue;
        }
        const std::size_t run_begin = i;
        while (i < n && !is_space_char(text[i])) {
            ++i;
        }
        const std::size_t run_end = i;

        // Peel punctuation off both ends of the run.
        std::size_t core_begin = run_begin;
        std::size_t core_end = run_end;
        while (core_begin < core_end && is_punct_char(text[core_begin])) {
            ++core_begin;
        }
        while (core_end > core_begin && is_punct_char(text[core_end - 1])) {
            --core_end;
        }

        for (std::size_t p = run_begin; p < core_begin; ++p) {
            sink.emit(text, p, p + 1, true);
        }
        if (core_begin < core_end) {
            if (options.split_inner_punct) {
                std::size_t w = core_begin;
                for (std::size_t p = core_begin; p < core_end; ++p) {
                    if (is_punct_char(text[p])) {
                        if (w < p) {
                            sink.emit(text, w, p, false);
                        }
                        sink.emit(text, p, p + 1, true);
                        w = p + 1;
                    }
                }
                if (w < core_end) {
                    sink.emit(text, w, core_end, false);
                }
            } else {
                sink.emit(text, core_begin, core_end, false);
            }
        }
        for (std::size_t p = core_end; p < run_end; ++p) {
            sink.emit(text, p, p + 1, true);
        }

        // Sentence boundary: the run's trailing punctuation contains a
        // terminator and the run is followed by whitespace or end of input.
        const bool followed_by_break = run_end == n || is_space_char(text[run_end]);
        bool terminator = false;
        bool only_period = true;
        for (std::size_t p = core_end; p < run_end; ++p) {
            if (is_sentence_terminator(text[p])) {
                terminator = true;
            }
            if (text[p] != '.') {
                only_period = false;
            }
        }
        if (core_begin == core_end && core_begin > run_begin) {
            // Fully-punctuation run ("...", standalone "."); the leading peel
            // consumed everything, so scan the whole run.
            only_period = true;
            for (std::size_t p = run_begin; p < run_end; ++p) {
                if (is_sentence_terminator(text[p])) {
                    terminator = true;
                }
                if (text[p] != '.') {
                    only_period = false;
                }
            }
        }
        if (terminator && followed_by_break) {
            bool suppressed = false;
            if (only_period && core_begin < core_end) {
                const std::string core = to_lower(text.substr(core_begin, core_end - core_begin));
                suppressed = abbreviations().count(core) > 0 || is_single_initial(core) ||
                             core.find('.') != std::string::npos;
            }
            if (!suppressed) {
                ++sink.sentence_index;
            }
        }
    }

    if (!result.tokens.empty()) {
        result.sentence_count = result.tokens.back().sentence_index + 1;
    }
    return result;
}

TokenizedText filter_tokens(const TokenizedText& tt, const PipelineConfig& config) {
    if (config.min_token_len < 1) {
        throw ConfigError("min_token_len must be at least 1");
    }
    TokenizedText result;
    result.source = tt.source;
    result.sentence_count = tt.sentence_count;
    for (const Token& token : tt.tokens) {
        if (token.is_punct) {
            continue;
        }
        if (config.stopwords && config.stopwords->contains(token.surface)) {
            continue;
        }
        if (config.remove_numbers && token.is_numeric) {
            continue;
        }
        if (codepoint_count(token.surface) < static_cast<std::size_t>(config.min_token_len)) {
            continue;
        }
        if (config.nouns_only && token.category == LexicalCategory::Other) {
            continue;
        }
        Token kept = token;
        kept.is_stopword = false;
        kept.normalized = normalize_token(kept.surface, config);
        result.tokens.push_back(std::move(kept));
    }
    return result;
}

} // namespace kex
