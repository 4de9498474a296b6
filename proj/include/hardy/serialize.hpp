#pragma once

#include <string>

#include <json.hpp>

#include "hardy/limiting.hpp"
#include "hardy/profile.hpp"
#include "hardy/reduction.hpp"
#include "hardy/sharpness.hpp"
#include "hardy/weaknorm.hpp"

namespace hardy {

/// Shortest decimal string that parses back to the same double. Non-finite
/// values come out as inf / -inf / nan. All CSV and table output goes
/// through this, which is what makes repeated runs byte-identical.
std::string format_double(double v);

/// Flat JSON array of power-log pieces {"c","a","k","lo","hi"}, one per
/// stored term; "hi" is the string "inf" on an unbounded piece. The parser
/// accepts overlapping pieces (they sum), "a" and "k" default to zero, and
/// malformed input raises DomainError. Decimal round-trips are value-exact.
nlohmann::json profile_to_json(const RadialProfile& f);
RadialProfile profile_from_json(const nlohmann::json& j);
RadialProfile profile_from_string(const std::string& text);

nlohmann::json params_to_json(const SpaceParams& sp);
nlohmann::json reduced_to_json(const ReducedParams& rp);

/// {value, witness_lambda, attained, flag, probes: [{lambda, score}...]};
/// witness_lambda is null when the supremum has no positive witness level.
nlohmann::json weak_norm_to_json(const WeakNormResult& w);

/// CSV columns: n,p,q,alpha,beta,gamma,kind,formula,ratio,gap,
/// witness_lambda,family_param. The JSON object carries the same fields
/// plus the test function description and its serialized profile.
nlohmann::json report_to_json(const SharpnessReport& rep);
std::string report_csv_header();
std::string report_csv_row(const SharpnessReport& rep);

/// Trace CSV has columns (lambda, score).
std::string trace_csv(const LimitTrace& trace);

/// |limit - target| measured against the target when it is positive and
/// against the largest score in the trace otherwise, so a zero-target
/// decay run is judged relative to the size it decayed from.
double trace_relative_error(const LimitTrace& trace);

/// {limit, target, rel_err}.
nlohmann::json trace_summary_json(const LimitTrace& trace);

} // namespace hardy
