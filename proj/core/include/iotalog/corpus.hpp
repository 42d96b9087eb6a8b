#ifndef IOTALOG_CORPUS_HPP
#define IOTALOG_CORPUS_HPP

// Batch checking: single proof scripts and the proof corpus.
//
// The corpus manifest is a flat text file, one entry per line:
//
//   id | system | expect | path | anchor
//
// where expect is ACCEPT or REJECT(Kind), path is relative to the
// manifest's directory, and anchor is free descriptive text. Lines that
// are empty or start with '#' are skipped.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "iotalog/kernel.hpp"
#include "iotalog/proof_io.hpp"

namespace iotalog {

struct Expectation {
    bool accept = true;
    std::optional<CheckErrorKind> reject_kind;  // set when !accept

    std::string render() const;
};

struct CorpusEntry {
    std::string id;
    std::string system;
    Expectation expect;
    std::filesystem::path path;  // resolved against the manifest directory
    std::string anchor;
};

// Exit status 0: accepted (judgment set); 1: rejected (error set);
// 2: parse or usage failure (message set).
struct CheckRun {
    int exit_code = 2;
    std::optional<Judgment> judgment;
    std::optional<CheckError> error;
    std::string message;  // rendered report line(s)
};

CheckRun run_check_text(const std::string& text, const SystemSpec& system);
CheckRun run_check_file(const std::filesystem::path& file, const SystemSpec& system);

std::vector<CorpusEntry> load_manifest(const std::filesystem::path& manifest);

struct CorpusEntryResult {
    CorpusEntry entry;
    bool passed = false;
    std::string detail;  // judgment or mismatch description
};

struct CorpusReport {
    std::vector<CorpusEntryResult> results;
    std::size_t passed = 0;
    std::size_t failed = 0;

    int exit_code() const { return failed == 0 ? 0 : 1; }
    std::string render() const;
};

CorpusReport run_corpus(const std::vector<CorpusEntry>& entries, const std::string& filter = "");

}  // namespace iotalog

#endif  // IOTALOG_CORPUS_HPP
