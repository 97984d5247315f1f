#pragma once

// Corpus cases: `<topic>/<case>.cpi` holds one term and `<case>.expect.json`
// the command to run on it and the expected outcome:
//
//   {"command": "parse" | "step" | "bisim" | "nonforward" | "encode",
//    "mode": "cpi" | "pi",
//    "args": {...},          optional; depth, other, witness, with_handlers,
//                            verify, tau, allow_reserved
//    "exit_code": n,
//    "expect": {...}}        matched against the JSON output by json_contains
//
// `other` and `witness` name sibling .cpi files.

#include <filesystem>
#include <string>
#include <vector>

#include "cpi/commands.hpp"

namespace cpi {

struct CorpusCase {
  /// '<topic>/<case>'.
  std::string name;
  std::filesystem::path file;
  ParseMode mode = ParseMode::CpiStrict;
  Json expectation;
};

/// Every case under `root`, sorted by name.
std::vector<CorpusCase> load_corpus(const std::filesystem::path& root);

CorpusCase load_case(const std::filesystem::path& cpi_file, const std::filesystem::path& root);

CommandResult run_case(const CorpusCase& c);

/// Objects match when every expected key matches; arrays when every
/// expected element matches some actual element; scalars when equal.
bool json_contains(const Json& actual, const Json& expected);

struct ReplayOutcome {
  bool ok = false;
  std::string detail;
  CommandResult result;
};

ReplayOutcome replay(const CorpusCase& c);

std::string read_file(const std::filesystem::path& path);

} // namespace cpi
