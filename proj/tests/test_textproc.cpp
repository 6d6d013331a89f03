#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kex/textproc.hpp"

#include <random>
#include <sstream>

using namespace kex;

namespace {

std::vector<std::string> surfaces(const TokenizedText& tt, bool skip_punct = false) {
    std::vector<std::string> out;
    for (const auto& t : tt.tokens) {
        if (!skip_punct || !t.is_punct) {
            out.push_back(t.surface);
        }
    }
    return out;
}

const Token& find_token(const TokenizedText& tt, const std::string& surface) {
    for (const auto& t : tt.tokens) {
        if (t.surface == surface) {
            return t;
        }
    }
    REQUIRE(false);
    return tt.tokens.front();
}

} // namespace

TEST_CASE("tokenize splits sentences at terminal punctuation") {
    const auto tt = tokenize("This is a very cute dog. This is another cute cat.");
    CHECK(tt.sentence_count == 2);
    CHECK(find_token(tt, "cute").sentence_index == 0);
    CHECK(find_token(tt, "cat").sentence_index == 1);
    CHECK(find_token(tt, "dog").sentence_index == 0);

    int previous = -1;
    for (const auto& t : tt.tokens) {
        CHECK(t.token_index == previous + 1);
        previous = t.token_index;
        CHECK(t.sentence_index >= 0);
    }
}

TEST_CASE("tokenize: empty input gives no tokens and no sentences") {
    const auto tt = tokenize("");
    CHECK(tt.tokens.empty());
    CHECK(tt.sentence_count == 0);
}

TEST_CASE("tokenize keeps interior non-alphabetics unless configured otherwise") {
    const auto tt = tokenize("C4H*Cl reacts.");
    const auto words = surfaces(tt, true);
    REQUIRE(words.size() == 2);
    CHECK(words[0] == "C4H*Cl");
    CHECK(words[1] == "reacts");

    TokenizerOptions split_all;
    split_all.split_inner_punct = true;
    const auto split_tt = tokenize("C4H*Cl reacts.", split_all);
    const auto split_words = surfaces(split_tt, true);
    REQUIRE(split_words.size() == 3);
    CHECK(split_words[0] == "C4H");
    CHECK(split_words[1] == "Cl");
    CHECK(split_words[2] == "reacts");
}

TEST_CASE("tokenize peels punctuation and flags it") {
    const auto tt = tokenize("(Cats, dogs!)");
    const auto all = surfaces(tt);
    const std::vector<std::string> expected = {"(", "Cats", ",", "dogs", "!", ")"};
    CHECK(all == expected);
    CHECK(find_token(tt, "(").is_punct);
    CHECK(find_token(tt, ",").is_punct);
    CHECK_FALSE(find_token(tt, "Cats").is_punct);
}

TEST_CASE("tokenize span fidelity: every surface equals its source slice") {
    const std::vector<std::string> samples = {
        "This is a very cute dog. This is another cute cat.",
        "  Leading spaces, trailing...   ",
        "Values rose 3.5% (p < 0.05) in 2020; see e.g. Fig. 2 for details.",
        "Hyphenated co-occurrence terms survive: state-of-the-art models.",
        "Unicode caf\xC3\xA9 tokens work too.",
        "C4H*Cl reacts with \"quoted\" material!",
    };
    for (const auto& text : samples) {
        for (const bool split_inner : {false, true}) {
            TokenizerOptions options;
            options.split_inner_punct = split_inner;
            const auto tt = tokenize(text, options);
            for (const auto& t : tt.tokens) {
                REQUIRE(t.end <= tt.source.size());
                CHECK(tt.source.substr(t.begin, t.end - t.begin) == t.surface);
            }
        }
    }
}

TEST_CASE("tokenize invariants hold on random inputs") {
    std::mt19937_64 rng(91);
    const std::vector<std::string> atoms = {
        "word",  "Cap",   "C4H*Cl", "3.5",  "2020", "state-of-the-art",
        "caf\xC3\xA9",   "(",     ")",      "\"",  ",",    ".",
        "!",     "?",     "e.g.",  "etc.",  " ",    "  ",
        "\n",    "\t",    "a",     "don't", "x;y",  "...",
    };
    PipelineConfig config;
    for (int trial = 0; trial < 200; ++trial) {
        std::string text;
        const auto pieces = rng() % 30;
        for (std::uint64_t i = 0; i < pieces; ++i) {
            text += atoms[rng() % atoms.size()];
        }
        TokenizerOptions options;
        options.split_inner_punct = (rng() % 2) == 0;
        const auto tt = tokenize(text, options);
        CHECK(tt.source == text);

        int last_token = -1;
        int last_sentence = 0;
        for (const auto& t : tt.tokens) {
            REQUIRE(t.end <= text.size());
            REQUIRE(t.begin < t.end);
            CHECK(text.substr(t.begin, t.end - t.begin) == t.surface);
            CHECK(t.token_index == last_token + 1);
            last_token = t.token_index;
            CHECK(t.sentence_index >= last_sentence);
            last_sentence = t.sentence_index;
        }
        if (!tt.tokens.empty()) {
            CHECK(tt.sentence_count == tt.tokens.back().sentence_index + 1);
        } else {
            CHECK(tt.sentence_count == 0);
        }

        // Filtering yields a subsequence with normalization applied.
        const auto filtered = filter_tokens(tt, config);
        int previous = -1;
        for (const auto& t : filtered.tokens) {
            CHECK(t.token_index > previous);
            previous = t.token_index;
            CHECK(t.normalized == normalize_token(t.surface, config));
            CHECK_FALSE(t.is_punct);
        }
    }
}

TEST_CASE("normalize_token is idempotent on random letter strings") {
    std::mt19937_64 rng(92);
    const std::string letters = "abcdefghijklmnopqrstuvwxyzsse";
    for (const auto mode : {Normalizer::Identity, Normalizer::LightStem}) {
        PipelineConfig config;
        config.normalizer = mode;
        for (int trial = 0; trial < 300; ++trial) {
            std::string word;
            const auto len = rng() % 12;
            for (std::uint64_t i = 0; i < len; ++i) {
                word.push_back(letters[rng() % letters.size()]);
            }
            const auto once = normalize_token(word, config);
            CHECK(normalize_token(once, config) == once);
        }
    }
}

TEST_CASE("tokenize sentence boundaries respect abbreviations and decimals") {
    CHECK(tokenize("See e.g. the manual.").sentence_count == 1);
    CHECK(tokenize("It rose 3.5 percent today.").sentence_count == 1);
    CHECK(tokenize("J. Smith et al. wrote this.").sentence_count == 1);
    CHECK(tokenize("The end. A new start!").sentence_count == 2);
    CHECK(tokenize("One. Two? Three!").sentence_count == 3);
}

TEST_CASE("normalize_token applies casing and the light stemmer") {
    PipelineConfig config;
    CHECK(normalize_token("The", config) == "the");
    CHECK(normalize_token("Tension", config) == "tension");

    config.normalizer = Normalizer::LightStem;
    CHECK(normalize_token("solitons", config) == "soliton");
    CHECK(normalize_token("analysis", config) == "analysis"); // "is" guard
    CHECK(normalize_token("glasses", config) == "glass");     // stops at the "ss" guard
    CHECK(normalize_token("classes", config) == "class");
    CHECK(normalize_token("buses", config) == "bus");
    CHECK(normalize_token("campus", config) == "campus"); // "us" guard
    CHECK(normalize_token("gas", config) == "gas");       // too short
    CHECK(normalize_token("properties", config) == "properti");

    config.lowercase = false;
    CHECK(normalize_token("Solitons", config) == "Soliton");
}

TEST_CASE("normalize_token is idempotent in both modes") {
    const std::vector<std::string> words = {
        "solitons", "analysis",  "classes", "theses",   "glasses", "The",     "buses",
        "స",        "mass",      "species", "surfaces", "indices", "tension", "Properties",
        "focus",    "ELLIPSES",  "news",    "is",       "axes",    "boss",    "a",
        "stresses", "processes", "bases",   "aliases",  "lenses",
    };
    for (const auto mode : {Normalizer::Identity, Normalizer::LightStem}) {
        PipelineConfig config;
        config.normalizer = mode;
        for (const auto& w : words) {
            const auto once = normalize_token(w, config);
            CHECK(normalize_token(once, config) == once);
        }
    }
}

TEST_CASE("filter_tokens keeps the cute-dog sanity candidates") {
    PipelineConfig config;
    const auto tt = tokenize("This is a very cute dog .");
    const auto filtered = filter_tokens(tt, config);
    const auto words = surfaces(filtered);
    REQUIRE(words.size() == 2);
    CHECK(words[0] == "cute");
    CHECK(words[1] == "dog");
    CHECK(filtered.tokens[0].normalized == "cute");
}

TEST_CASE("filter_tokens drops numbers when configured") {
    PipelineConfig config;
    const auto tt = tokenize("in 2020");
    CHECK(filter_tokens(tt, config).tokens.empty());

    config.remove_numbers = false;
    const auto kept = filter_tokens(tt, config);
    REQUIRE(kept.tokens.size() == 1);
    CHECK(kept.tokens[0].surface == "2020");
}

TEST_CASE("filter_tokens: all-stopword sentences produce no candidates") {
    PipelineConfig config;
    CHECK(filter_tokens(tokenize("It is what it is."), config).tokens.empty());
}

TEST_CASE("filter_tokens enforces the minimum token length in code points") {
    PipelineConfig config;
    const auto tt = tokenize("go fly yearly");
    const auto words = surfaces(filter_tokens(tt, config));
    REQUIRE(words.size() == 2); // "go" is too short
    CHECK(words[0] == "fly");

    config.min_token_len = 4;
    CHECK(surfaces(filter_tokens(tt, config)) == std::vector<std::string>{"yearly"});
}

TEST_CASE("filter_tokens with nouns_only keeps NounLike and Unknown") {
    PipelineConfig config;
    config.nouns_only = true;
    const auto tt = tokenize("treatment quickly zorblat");
    const auto words = surfaces(filter_tokens(tt, config));
    REQUIRE(words.size() == 2);
    CHECK(words[0] == "treatment"); // NounLike by suffix
    CHECK(words[1] == "zorblat");   // Unknown stays
}

TEST_CASE("filter_tokens output is a subsequence preserving indices and spans") {
    PipelineConfig config;
    config.normalizer = Normalizer::LightStem;
    const auto tt = tokenize("Solitons and waves: 42 properties of nonlinear media.");
    const auto filtered = filter_tokens(tt, config);
    int last_index = -1;
    for (const auto& t : filtered.tokens) {
        CHECK(t.token_index > last_index);
        last_index = t.token_index;
        const auto& original = tt.tokens[static_cast<std::size_t>(t.token_index)];
        CHECK(original.surface == t.surface);
        CHECK(original.begin == t.begin);
        CHECK(original.end == t.end);
        CHECK(t.normalized == normalize_token(t.surface, config));
    }
    CHECK(filtered.tokens.size() <= tt.tokens.size());
}

TEST_CASE("categorize_token follows the shipped lexicon and suffix table") {
    CHECK(categorize_token("quickly") == LexicalCategory::Other);
    CHECK(categorize_token("treatment") == LexicalCategory::NounLike);
    CHECK(categorize_token("stabilometry") == LexicalCategory::NounLike); // -metry
    CHECK(categorize_token("the") == LexicalCategory::Other);             // lexicon
    CHECK(categorize_token("famous") == LexicalCategory::Other);          // -ous
    CHECK(categorize_token("dog") == LexicalCategory::Unknown);
    CHECK(categorize_token("C4H*Cl") == LexicalCategory::Unknown);
}

TEST_CASE("categorize_token is total and deterministic") {
    std::mt19937_64 rng(3);
    const std::string alphabet = "abcdefghijklmnopqrstuvwxyzé0123456789-*";
    for (int trial = 0; trial < 200; ++trial) {
        std::string word;
        const auto len = 1 + rng() % 12;
        for (std::uint64_t i = 0; i < len; ++i) {
            word.push_back(alphabet[rng() % alphabet.size()]);
        }
        const auto first = categorize_token(word);
        CHECK(categorize_token(word) == first);
    }
}

TEST_CASE("custom stopword lists load from streams") {
    std::istringstream in("# comment line\nfoo\nBAR  # trailing comment\n\n  baz\n");
    const auto set = load_stopwords(in, "custom");
    CHECK(set->size() == 3);
    CHECK(set->contains("foo"));
    CHECK(set->contains("bar"));
    CHECK(set->contains("BAZ"));
    CHECK_FALSE(set->contains("comment"));

    PipelineConfig config;
    config.stopwords = set;
    const auto words = surfaces(filter_tokens(tokenize("foo keeps bar baz"), config));
    CHECK(words == std::vector<std::string>{"keeps"});
}

TEST_CASE("default stopword list is the versioned 180-word set") {
    const auto defaults = default_stopwords();
    CHECK(defaults->size() == 180);
    CHECK(defaults->contains("another"));
    CHECK(defaults->contains("very"));
    CHECK(defaults->contains("the"));
    CHECK(defaults->contains("of"));
    CHECK_FALSE(defaults->contains("way")); // content word, deliberately absent
    CHECK_FALSE(defaults->contains("department"));
}

TEST_CASE("data/stopwords_en.txt matches the built-in list") {
    const auto from_file = load_stopwords_file(std::string(KEX_REPO_DATA_DIR) + "/stopwords_en.txt");
    CHECK(from_file->words() == default_stopwords()->words());
}
