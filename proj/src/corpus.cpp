#include "cpi/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cpi/errors.hpp"

namespace cpi {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

CorpusCase load_case(const fs::path& cpi_file, const fs::path& root) {
  fs::path expect = cpi_file;
  expect.replace_extension(".expect.json");
  CorpusCase c;
  c.file = cpi_file;
  fs::path rel = fs::relative(cpi_file, root);
  rel.replace_extension();
  c.name = rel.generic_string();
  c.expectation = Json::parse(read_file(expect));
  c.mode = c.expectation.value("mode", "cpi") == "pi" ? ParseMode::PiFull : ParseMode::CpiStrict;
  return c;
}

std::vector<CorpusCase> load_corpus(const fs::path& root) {
  std::vector<CorpusCase> cases;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".cpi") continue;
    fs::path expect = entry.path();
    expect.replace_extension(".expect.json");
    if (fs::exists(expect)) cases.push_back(load_case(entry.path(), root));
  }
  std::sort(cases.begin(), cases.end(),
            [](const CorpusCase& a, const CorpusCase& b) { return a.name < b.name; });
  return cases;
}

CommandResult run_case(const CorpusCase& c) {
  const Json args = c.expectation.value("args", Json::object());
  const std::string command = c.expectation.at("command").get<std::string>();
  CommonOptions opts;
  opts.mode = c.mode;
  opts.allow_reserved = args.value("allow_reserved", false);
  opts.seed = args.value("seed", std::uint64_t{0});
  const std::string text = read_file(c.file);
  auto sibling = [&](const char* key) { return read_file(c.file.parent_path() / args.at(key).get<std::string>()); };

  if (command == "parse") return cmd_parse(text, opts);
  if (command == "step") {
    std::optional<std::size_t> depth;
    if (args.contains("depth")) depth = args.at("depth").get<std::size_t>();
    return cmd_step(text, opts, depth);
  }
  if (command == "bisim") {
    return cmd_bisim(text, sibling("other"), opts, args.value("depth", Defaults::bisim_depth));
  }
  if (command == "nonforward") {
    std::optional<std::string> witness;
    if (args.contains("witness")) witness = sibling("witness");
    return cmd_nonforward(text, opts, args.value("depth", Defaults::nonforward_depth), witness);
  }
  if (command == "encode") {
    EncodeOptions enc;
    enc.with_handlers = args.value("with_handlers", false);
    enc.verify = args.value("verify", false);
    enc.tau_budget = args.value("tau", Defaults::tau_budget);
    enc.depth = args.value("depth", Defaults::bisim_depth);
    return cmd_encode(text, opts, enc);
  }
  throw Error("unknown corpus command " + command);
}

bool json_contains(const Json& actual, const Json& expected) {
  if (expected.is_object()) {
    if (!actual.is_object()) return false;
    for (const auto& [key, value] : expected.items()) {
      if (!actual.contains(key) || !json_contains(actual.at(key), value)) return false;
    }
    return true;
  }
  if (expected.is_array()) {
    if (!actual.is_array()) return false;
    for (const auto& e : expected) {
      const bool found = std::any_of(actual.begin(), actual.end(),
                                     [&](const Json& a) { return json_contains(a, e); });
      if (!found) return false;
    }
    return true;
  }
  return actual == expected;
}

ReplayOutcome replay(const CorpusCase& c) {
  ReplayOutcome out;
  out.result = run_case(c);
  const int want_code = c.expectation.value("exit_code", 0);
  if (out.result.exit_code != want_code) {
    out.detail = "exit code " + std::to_string(out.result.exit_code) + ", expected " +
                 std::to_string(want_code);
    return out;
  }
  if (c.expectation.contains("expect") && !json_contains(out.result.json, c.expectation.at("expect"))) {
    out.detail = "output does not contain the expectation: " + out.result.json.dump();
    return out;
  }
  out.ok = true;
  return out;
}

} // namespace cpi
