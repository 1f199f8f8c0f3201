#pragma once

#include <stdexcept>
#include <string>

namespace hyperham {

// Witness fails its own structural invariants (block sizes, duplicate vertices,
// reassembly mismatch). Distinct from plain bad arguments so callers can tell
// corrupted state from caller error.
class CorruptWitnessError : public std::runtime_error {
public:
    explicit CorruptWitnessError(const std::string& what) : std::runtime_error(what) {}
};

// Cyclic witness cannot even be interpreted (length not divisible by k-l,
// fewer than three windows, wrong vertex count).
class MalformedWitnessError : public std::runtime_error {
public:
    explicit MalformedWitnessError(const std::string& what) : std::runtime_error(what) {}
};

// Input text that does not parse as a hypergraph file.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace hyperham
