#ifndef KEX_STRUTIL_HPP
#define KEX_STRUTIL_HPP

#include <string>
#include <string_view>
#include <vector>

namespace kex {

// ASCII-only case folding; bytes >= 0x80 pass through untouched.
std::string to_lower(std::string_view s);

// View of s without surrounding ASCII whitespace.
std::string_view trim(std::string_view s);

// Splits on a single-character separator; keeps empty segments.
std::vector<std::string_view> split(std::string_view s, char sep);

} // namespace kex

#endif // KEX_STRUTIL_HPP
