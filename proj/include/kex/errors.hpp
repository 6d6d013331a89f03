#ifndef KEX_ERRORS_HPP
#define KEX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kex {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input data: bad CSV/TSV/JSON content, schema violations,
// row-level validation failures. Messages carry the source name and,
// where applicable, the 1-based row number.
class ParseError : public Error {
public:
    using Error::Error;
};

// Out-of-range or inconsistent parameters (ratios, window sizes, k, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace kex

#endif // KEX_ERRORS_HPP
