#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "report.hpp"

namespace evsym {

template <typename T>
struct Located {
    T value;
    int line = 0;
    int column = 1;  // of the value text
};

struct CorpusEntry {
    std::string name;
    Located<std::string> equation;
    std::set<std::string> constants;
    std::optional<bool> constant_separant;
    std::optional<bool> kdv_like;
    /// expression, optional expected time class text
    std::vector<Located<std::pair<std::string, std::optional<std::string>>>> symmetries;
    std::vector<Located<std::string>> nonsymmetries;
    /// G0 => expected G1
    std::vector<Located<std::pair<std::string, std::string>>> masters;
    /// Q0 => expected lambda, or "none"
    std::vector<Located<std::pair<std::string, std::string>>> scalings;
    std::optional<Located<std::string>> hypothesis;  // ';'-separated basis
    std::string hypothesis_mode = "n-1";
    std::optional<std::string> hypothesis_expect;  // polynomial | quasipolynomial | none
    std::optional<Located<std::string>> find;      // ansatz options
    std::vector<Located<std::string>> find_expect;
    int line = 0;
};

/// Line-oriented format: '[entry]' starts a section, 'key = value' lines fill it,
/// '#' starts a comment. Throws ParseError with the file position.
std::vector<CorpusEntry> parse_corpus(const std::string& text);
std::vector<CorpusEntry> load_corpus(const std::string& path);

/// Evaluates one entry; expectation mismatches are recorded, not thrown.
Json run_entry(const CorpusEntry& entry);
/// Evaluates entries concurrently; entries in the report are sorted by name.
Json run_corpus(const std::vector<CorpusEntry>& entries);

}  // namespace evsym
