#include "hardy/serialize.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/operators.hpp"

namespace hardy {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

/// JSON numbers cannot hold non-finite values, so those become strings.
nlohmann::json json_number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

double number_from_json(const nlohmann::json& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw DomainError(std::string(what) + " must be a number (or \"inf\")");
}

} // namespace

nlohmann::json profile_to_json(const RadialProfile& f) {
    nlohmann::json pieces = nlohmann::json::array();
    for (const auto& seg : f.segments())
        for (const auto& t : seg.terms) {
            nlohmann::json piece;
            piece["c"] = t.c;
            piece["a"] = t.a;
            piece["k"] = t.k;
            piece["lo"] = seg.lo;
            piece["hi"] = std::isinf(seg.hi) ? nlohmann::json("inf") : nlohmann::json(seg.hi);
            pieces.push_back(std::move(piece));
        }
    return pieces;
}

RadialProfile profile_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw DomainError("a profile is a JSON array of pieces");
    std::vector<Segment> segs;
    segs.reserve(j.size());
    for (const auto& piece : j) {
        if (!piece.is_object())
            throw DomainError("each profile piece is an object {c, a, k, lo, hi}");
        if (!piece.contains("c") || !piece.contains("lo") || !piece.contains("hi"))
            throw DomainError("a profile piece needs at least c, lo and hi");
        Segment s;
        s.lo = number_from_json(piece["lo"], "piece field lo");
        s.hi = number_from_json(piece["hi"], "piece field hi");
        Term t;
        t.c = number_from_json(piece["c"], "piece field c");
        t.a = piece.contains("a") ? number_from_json(piece["a"], "piece field a") : 0.0;
        if (piece.contains("k")) {
            if (!piece["k"].is_number_integer())
                throw DomainError("piece field k must be an integer log power");
            t.k = piece["k"].get<int>();
        }
        s.terms.push_back(t);
        segs.push_back(std::move(s));
    }
    return RadialProfile::from_segments(std::move(segs));
}

RadialProfile profile_from_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("profile JSON is malformed: ") + e.what());
    }
    return profile_from_json(j);
}

nlohmann::json params_to_json(const SpaceParams& sp) {
    nlohmann::json j;
    j["n"] = sp.n;
    j["p"] = sp.p;
    j["q"] = sp.q;
    j["alpha"] = sp.alpha;
    j["beta"] = sp.beta;
    j["gamma"] = sp.gamma;
    return j;
}

nlohmann::json reduced_to_json(const ReducedParams& rp) {
    nlohmann::json j;
    j["alpha_red"] = rp.alpha_red;
    j["beta_red"] = rp.beta_red;
    j["gamma_red"] = rp.gamma_red;
    j["branch"] = rp.branch == ReductionBranch::Forward ? "forward" : "adjoint";
    return j;
}

nlohmann::json weak_norm_to_json(const WeakNormResult& w) {
    nlohmann::json j;
    j["value"] = json_number(w.value);
    j["witness_lambda"] = w.witness ? json_number(*w.witness) : nlohmann::json(nullptr);
    j["attained"] = w.flag == WeakNormFlag::SupAttained;
    j["flag"] = weak_norm_flag_name(w.flag);
    nlohmann::json probes = nlohmann::json::array();
    for (const auto& [lambda, score] : w.probes) {
        nlohmann::json probe;
        probe["lambda"] = json_number(lambda);
        probe["score"] = json_number(score);
        probes.push_back(std::move(probe));
    }
    j["probes"] = std::move(probes);
    return j;
}

nlohmann::json report_to_json(const SharpnessReport& rep) {
    nlohmann::json j = params_to_json(rep.params);
    j["kind"] = operator_kind_name(rep.kind);
    j["formula"] = json_number(rep.formula_constant);
    j["ratio"] = json_number(rep.ratio);
    j["gap"] = json_number(rep.gap);
    j["witness_lambda"] = json_number(rep.witness_lambda);
    j["family_param"] = json_number(rep.family_param);
    j["test_function"] = rep.test_function;
    j["profile"] = profile_to_json(rep.profile);
    return j;
}

std::string report_csv_header() {
    return "n,p,q,alpha,beta,gamma,kind,formula,ratio,gap,witness_lambda,family_param";
}

std::string report_csv_row(const SharpnessReport& rep) {
    const SpaceParams& sp = rep.params;
    std::string row = std::to_string(sp.n);
    row += ',';
    row += format_double(sp.p);
    row += ',';
    row += format_double(sp.q);
    row += ',';
    row += format_double(sp.alpha);
    row += ',';
    row += format_double(sp.beta);
    row += ',';
    row += format_double(sp.gamma);
    row += ',';
    row += operator_kind_name(rep.kind);
    row += ',';
    row += format_double(rep.formula_constant);
    row += ',';
    row += format_double(rep.ratio);
    row += ',';
    row += format_double(rep.gap);
    row += ',';
    row += format_double(rep.witness_lambda);
    row += ',';
    row += format_double(rep.family_param);
    return row;
}

std::string trace_csv(const LimitTrace& trace) {
    std::string out = "lambda,score\n";
    for (std::size_t i = 0; i < trace.lambdas.size(); ++i) {
        out += format_double(trace.lambdas[i]);
        out += ',';
        out += format_double(trace.scores[i]);
        out += '\n';
    }
    return out;
}

double trace_relative_error(const LimitTrace& trace) {
    const double dev = std::abs(trace.extrapolated_limit - trace.target);
    double scale = trace.target;
    if (!(scale > 0.0))
        for (double s : trace.scores) scale = std::max(scale, s);
    if (scale > 0.0) return dev / scale;
    return dev > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

nlohmann::json trace_summary_json(const LimitTrace& trace) {
    nlohmann::json j;
    j["limit"] = json_number(trace.extrapolated_limit);
    j["target"] = json_number(trace.target);
    j["rel_err"] = json_number(trace_relative_error(trace));
    return j;
}

} // namespace hardy
