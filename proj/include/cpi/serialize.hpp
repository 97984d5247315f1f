#pragma once

// JSON forms of the library results. Processes appear as rendered text and
// names as bare identifiers.

#include <json.hpp>

#include "cpi/bisim.hpp"
#include "cpi/encoder.hpp"
#include "cpi/lts.hpp"
#include "cpi/nonforward.hpp"
#include "cpi/validate.hpp"

namespace cpi {

using Json = nlohmann::ordered_json;

/// {kind: out|in|bound_out|tau, subject, objects, bound}; subject is null
/// for tau.
Json to_json(const Action& a);
Json to_json(const Transition& t);
Json to_json(const ValidationReport& r);
/// {result, depth, counterexample: [{action, side}]}
Json to_json(const Verdict& v);
Json to_json(const LawReport& r);
/// {result, depth, violation: {trace, receive_index, send_index, channel}}
Json to_json(const NFVerdict& v);
Json to_json(const Evidence& e);
/// {source, target, tau_steps, witness, verdict}; the last three are null
/// when no witness was found.
Json to_json(const EncodingReport& r);
Json to_json(const TauReachable& r);

/// Inverse of to_json(Action) for channel-only labels.
Action action_from_json(const Json& j);

} // namespace cpi
