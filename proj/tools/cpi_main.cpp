#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "cpi/commands.hpp"
#include "cpi/corpus.hpp"
#include "cpi/errors.hpp"

namespace {

int emit(const cpi::CommandResult& r, bool json) {
  if (json) {
    std::cout << r.json.dump(2) << "\n";
  } else if (r.exit_code == cpi::exit_status::input_error || r.exit_code == cpi::exit_status::violation) {
    std::cerr << r.text;
  } else {
    std::cout << r.text;
  }
  return r.exit_code;
}

int replay_corpus(const std::string& root, bool json) {
  cpi::Json results = cpi::Json::array();
  int failures = 0;
  for (const auto& c : cpi::load_corpus(root)) {
    const cpi::ReplayOutcome o = cpi::replay(c);
    if (!o.ok) ++failures;
    results.push_back({{"case", c.name}, {"ok", o.ok}, {"detail", o.detail}});
    if (!json) std::cout << (o.ok ? "ok    " : "FAIL  ") << c.name << (o.ok ? "" : "  " + o.detail) << "\n";
  }
  if (json) std::cout << cpi::Json{{"cases", results}, {"failures", failures}}.dump(2) << "\n";
  return failures == 0 ? cpi::exit_status::ok : cpi::exit_status::negative;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for the confidential pi-calculus"};
  app.require_subcommand(1);

  bool json = false;
  std::uint64_t seed = 0;
  std::string mode = "cpi";
  bool allow_reserved = false;
  app.add_flag("--json", json, "Print JSON instead of text");
  app.add_option("--seed", seed, "Seed for random instances");
  app.add_option("--mode", mode, "Term language")->check(CLI::IsMember({"cpi", "pi"}));
  app.add_flag("--allow-reserved", allow_reserved, "Accept '#' names, as printed by encode");

  std::string file, other, witness_file, corpus_root;
  std::optional<std::size_t> step_depth;
  std::size_t bisim_depth = cpi::Defaults::bisim_depth;
  std::size_t nf_depth = cpi::Defaults::nonforward_depth;
  std::size_t instances = cpi::Defaults::law_instances;
  bool laws = false;
  cpi::EncodeOptions enc;

  auto* parse_cmd = app.add_subcommand("parse", "Parse, validate and print a term");
  parse_cmd->add_option("file", file, "Term file")->required();

  auto* step_cmd = app.add_subcommand("step", "List transitions, or tau-reachable states with --depth");
  step_cmd->add_option("file", file, "Term file")->required();
  step_cmd->add_option("--depth", step_depth, "Tau budget for the reachability summary");

  auto* bisim_cmd = app.add_subcommand("bisim", "Bounded strong bisimilarity, or the law suite");
  bisim_cmd->add_option("file", file, "Left term file");
  bisim_cmd->add_option("other", other, "Right term file");
  bisim_cmd->add_option("--depth", bisim_depth, "Game rounds")->capture_default_str();
  bisim_cmd->add_flag("--laws", laws, "Run the standard law suite instead");
  bisim_cmd->add_option("--instances", instances, "Instances per law")->capture_default_str();

  auto* nf_cmd = app.add_subcommand("nonforward", "Non-forwarding check or witness evidence");
  nf_cmd->add_option("file", file, "Term file")->required();
  nf_cmd->add_option("--depth", nf_depth, "Trace length, or game rounds with --witness")->capture_default_str();
  nf_cmd->add_option("--witness", witness_file, "C_pi term claimed bisimilar to the input");

  auto* enc_cmd = app.add_subcommand("encode", "Encode a monadic pi term into C_pi");
  enc_cmd->add_option("file", file, "Term file")->required();
  enc_cmd->add_flag("--with-handlers", enc.with_handlers, "Compose with the handlers of the free names");
  enc_cmd->add_flag("--verify", enc.verify, "Check completeness for every source reduction");
  enc_cmd->add_option("--tau", enc.tau_budget, "Tau budget of the witness search")->capture_default_str();
  enc_cmd->add_option("--depth", enc.depth, "Game rounds of the witness check")->capture_default_str();

  auto* replay_cmd = app.add_subcommand("replay", "Replay every case of a corpus directory");
  replay_cmd->add_option("root", corpus_root, "Corpus directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cpi::exit_status::usage;
  }

  cpi::CommonOptions opts;
  opts.mode = mode == "pi" ? cpi::ParseMode::PiFull : cpi::ParseMode::CpiStrict;
  opts.allow_reserved = allow_reserved;
  opts.seed = seed;

  try {
    if (*replay_cmd) return replay_corpus(corpus_root, json);
    if (*bisim_cmd && laws) return emit(cpi::cmd_laws(opts, instances, bisim_depth), json);
    if (*bisim_cmd && (file.empty() || other.empty())) {
      std::cerr << "bisim needs two term files, or --laws\n";
      return cpi::exit_status::usage;
    }
    const std::string text = cpi::read_file(file);
    if (*parse_cmd) return emit(cpi::cmd_parse(text, opts), json);
    if (*step_cmd) return emit(cpi::cmd_step(text, opts, step_depth), json);
    if (*bisim_cmd) return emit(cpi::cmd_bisim(text, cpi::read_file(other), opts, bisim_depth), json);
    if (*nf_cmd) {
      std::optional<std::string> witness;
      if (!witness_file.empty()) witness = cpi::read_file(witness_file);
      return emit(cpi::cmd_nonforward(text, opts, nf_depth, witness), json);
    }
    return emit(cpi::cmd_encode(text, opts, enc), json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cpi::exit_status::input_error;
  }
}
