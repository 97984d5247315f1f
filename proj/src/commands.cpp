#include "cpi/commands.hpp"

#include <functional>
#include <sstream>

#include "cpi/errors.hpp"
#include "cpi/names.hpp"

namespace cpi {

namespace {

Process read_term(const std::string& text, const CommonOptions& opts) {
  return parse(text, opts.mode, ParseOptions{opts.allow_reserved});
}

CommandResult error_result(int code, const std::string& kind, const std::string& message,
                           Json extra = Json::object()) {
  CommandResult r;
  r.exit_code = code;
  r.json = {{"error", kind}, {"message", message}};
  r.json.update(extra);
  r.text = "error: " + message + "\n";
  return r;
}

// Maps library errors to exit statuses. `text` is the input whose
// validation report accompanies a CpiViolation.
CommandResult guarded(const std::string& text, const CommonOptions& opts,
                      const std::function<CommandResult()>& body) {
  try {
    return body();
  } catch (const SyntaxError& e) {
    return error_result(exit_status::input_error, "syntax", e.what(),
                        {{"line", e.line}, {"col", e.col}, {"expected", e.expected}});
  } catch (const CpiViolation& e) {
    CommandResult r = error_result(exit_status::violation, "cpi_violation", e.what());
    const ValidationReport report =
        validate_cpi(parse_raw(text, ParseOptions{opts.allow_reserved}));
    r.json["report"] = to_json(report);
    for (const auto& v : report.violations) r.text += "  at " + v.path + ": " + v.message + "\n";
    return r;
  } catch (const SortError& e) {
    return error_result(exit_status::violation, "sort", e.what());
  } catch (const WitnessNotCpi& e) {
    return error_result(exit_status::violation, "witness_not_cpi", e.what());
  } catch (const SourceModeError& e) {
    return error_result(exit_status::input_error, "source_mode", e.what());
  } catch (const Error& e) {
    return error_result(exit_status::input_error, "input", e.what());
  }
}

std::string verdict_text(const Verdict& v) {
  std::ostringstream out;
  if (v.bisimilar()) {
    out << "bisimilar up to depth " << v.depth << "\n";
  } else {
    out << "not bisimilar (depth " << v.depth << ")\ncounterexample:\n";
    for (const auto& s : v.counterexample) {
      out << "  " << (s.side == Side::Left ? "left  " : "right ") << render(s.action) << "\n";
    }
  }
  return out.str();
}

} // namespace

CommandResult cmd_parse(const std::string& text, const CommonOptions& opts) {
  return guarded(text, opts, [&] {
    const Process p = read_term(text, opts);
    CommandResult r;
    r.json = {{"term", render(p)}, {"size", term_size(p)}, {"cpi", to_json(validate_cpi(p))}};
    r.text = render(p) + "\n";
    return r;
  });
}

CommandResult cmd_step(const std::string& text, const CommonOptions& opts,
                       std::optional<std::size_t> depth) {
  return guarded(text, opts, [&] {
    const Process p = read_term(text, opts);
    CommandResult r;
    std::ostringstream out;
    if (depth) {
      const TauReachable reach = tau_reachable(p, *depth);
      r.json = to_json(reach);
      r.json["count"] = reach.states.size();
      for (std::size_t i = 0; i < reach.states.size(); ++i) {
        out << reach.distance[i] << "  " << render(reach.states[i]) << "\n";
      }
      out << reach.states.size() << " states" << (reach.budget_exceeded ? ", budget exceeded" : "")
          << "\n";
    } else {
      Json list = Json::array();
      for (const auto& t : successors(p, free_names(p))) {
        list.push_back(to_json(t));
        out << render(t.action) << "  ->  " << render(t.target) << "\n";
      }
      const std::size_t count = list.size();
      r.json = {{"term", render(p)}, {"count", count}, {"transitions", std::move(list)}};
    }
    r.text = out.str();
    return r;
  });
}

CommandResult cmd_bisim(const std::string& left, const std::string& right,
                        const CommonOptions& opts, std::size_t depth) {
  CommandResult first = guarded(left, opts, [&] {
    read_term(left, opts);
    return CommandResult{};
  });
  if (first.exit_code != exit_status::ok) return first;
  return guarded(right, opts, [&] {
    const Process p = read_term(left, opts);
    const Process q = read_term(right, opts);
    const Verdict v = check(p, q, depth);
    CommandResult out;
    out.exit_code = v.bisimilar() ? exit_status::ok : exit_status::negative;
    out.json = to_json(v);
    out.text = verdict_text(v);
    return out;
  });
}

CommandResult cmd_laws(const CommonOptions& opts, std::size_t instances, std::size_t depth) {
  const LawReport report = law_suite(opts.seed, instances, depth, true);
  CommandResult r;
  r.json = to_json(report);
  std::ostringstream out;
  for (const auto& o : report.laws) {
    out << (o.failures == 0 ? "pass  " : "FAIL  ") << o.law << "  (" << o.instances - o.failures
        << "/" << o.instances << ")\n";
  }
  const bool refuted = report.mutant && report.mutant->failures > 0;
  if (report.mutant) {
    out << (refuted ? "refuted  " : "NOT REFUTED  ") << report.mutant->law << "  ("
        << report.mutant->failures << "/" << report.mutant->instances << " refutations)\n";
  }
  r.exit_code = report.all_passed() && refuted ? exit_status::ok : exit_status::negative;
  r.text = out.str();
  return r;
}

CommandResult cmd_nonforward(const std::string& text, const CommonOptions& opts,
                             std::size_t depth, const std::optional<std::string>& witness) {
  CommandResult first = guarded(text, opts, [&] {
    read_term(text, opts);
    return CommandResult{};
  });
  if (first.exit_code != exit_status::ok) return first;
  if (witness) {
    CommonOptions pi_opts = opts;
    pi_opts.mode = ParseMode::PiFull;
    return guarded(*witness, pi_opts, [&] {
      const Process p = read_term(text, opts);
      const Process q = read_term(*witness, pi_opts);
      const Evidence e = witness_check(p, q, depth);
      CommandResult r;
      r.exit_code = e.positive() ? exit_status::ok : exit_status::negative;
      r.json = to_json(e);
      r.text = std::string(e.positive() ? "positive" : "negative") +
               " evidence (bounded, not a proof)\n" + verdict_text(e.verdict);
      return r;
    });
  }
  return guarded(text, opts, [&] {
    const Process p = read_term(text, opts);
    const NFVerdict v = check_nonforwarding(p, depth);
    const StaticGuarantee g = static_guarantee(p);
    CommandResult r;
    r.exit_code = v.satisfied() ? exit_status::ok : exit_status::negative;
    r.json = to_json(v);
    r.json["static_guarantee"] = g.guaranteed();
    std::ostringstream out;
    if (v.satisfied()) {
      out << "non-forwarding up to depth " << depth << "\n";
    } else {
      const NFViolation& w = *v.violation;
      out << "violated: " << w.channel.ident << " received at step " << w.receive_index
          << " and sent at step " << w.send_index << "\n";
      for (std::size_t i = 0; i < w.trace.size(); ++i) out << "  " << i << "  " << render(w.trace[i]) << "\n";
    }
    out << (g.guaranteed() ? "static guarantee: C_pi term\n" : "static guarantee: not applicable\n");
    r.text = out.str();
    return r;
  });
}

CommandResult cmd_encode(const std::string& text, const CommonOptions& opts,
                         const EncodeOptions& enc) {
  return guarded(text, opts, [&] {
    read_term(text, opts);
    // Encode the term as written so the output keeps the source names.
    const Process source = parse_raw(text, ParseOptions{opts.allow_reserved});
    CommandResult r;
    std::ostringstream out;
    const Process encoded = enc.with_handlers ? encode_with_handlers(source) : encode(source);
    r.json = {{"source", render(source)}, {"encoded", render(encoded)},
              {"cpi", to_json(validate_cpi(encoded))}};
    out << render(encoded) << "\n";
    if (enc.verify) {
      Json reports = Json::array();
      bool all = true;
      for (const auto& report : check_completeness(source, enc.tau_budget, enc.depth)) {
        reports.push_back(to_json(report));
        all = all && report.success();
        out << render(report.target) << ": ";
        if (report.success()) {
          out << "witness after " << *report.tau_steps << " tau steps\n";
        } else {
          out << "no witness within " << enc.tau_budget << " tau steps\n";
        }
      }
      r.json["reports"] = std::move(reports);
      if (!all) r.exit_code = exit_status::negative;
    }
    r.text = out.str();
    return r;
  });
}

} // namespace cpi
