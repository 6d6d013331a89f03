#ifndef KEX_STOPWORDS_HPP
#define KEX_STOPWORDS_HPP

#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace kex {

// A named set of lowercase stopwords. Lookups are case-insensitive
// (the query is folded to ASCII lowercase before the set probe).
class StopwordSet {
public:
    StopwordSet() = default;
    StopwordSet(std::string name, std::vector<std::string> words);

    bool contains(std::string_view word) const;

    const std::string& name() const { return name_; }
    std::size_t size() const { return words_.size(); }
    const std::unordered_set<std::string>& words() const { return words_; }

private:
    std::string name_;
    std::unordered_set<std::string> words_;
};

// The built-in English list (180 words). Shared, immutable, built once.
std::shared_ptr<const StopwordSet> default_stopwords();

// Load a custom list: one lowercase word per line, blank lines skipped,
// "#" starts a comment that runs to end of line.
std::shared_ptr<const StopwordSet> load_stopwords(std::istream& in, std::string name);
std::shared_ptr<const StopwordSet> load_stopwords_file(const std::string& path);

} // namespace kex

#endif // KEX_STOPWORDS_HPP
