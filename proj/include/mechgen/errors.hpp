#pragma once

#include <stdexcept>
#include <string>

namespace mechgen {

/// Malformed text input (ragged lines, wrong line count, bad config syntax).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A character outside the tile alphabet.
class AlphabetError : public FormatError {
public:
    AlphabetError(char symbol, int row, int col);

    char symbol() const { return symbol_; }
    int row() const { return row_; }
    int col() const { return col_; }

private:
    char symbol_;
    int row_;
    int col_;
};

/// Invalid experiment or agent configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mechgen
