// Command-line front-end for the weighted weak-type verification library.
//
// Subcommands:
//   constant   closed-form sharp constants for a parameter tuple
//   verify     family sweep plus a random-profile bound check
//   limit      small-level trace of the weak score and its extrapolated limit
//   oracle     sampled spherical-average identity check on a full field
//   sweep      grid of one-point sharpness reports, rejections included
//
// Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
// Identical arguments and seed produce byte-identical output.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "hardy/field.hpp"
#include "hardy/limiting.hpp"
#include "hardy/operators.hpp"
#include "hardy/oracle.hpp"
#include "hardy/params.hpp"
#include "hardy/profile.hpp"
#include "hardy/rng.hpp"
#include "hardy/serialize.hpp"
#include "hardy/sharpness.hpp"
#include "hardy/weaknorm.hpp"

namespace {

using hardy::format_double;

// ---------------------------------------------------------------------------
// small plumbing

struct CommonOpts {
    std::string format = "table";
    std::string out_path;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* sub, CommonOpts* c) {
    sub->add_option("--format", c->format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", c->out_path, "Write the output body to this file instead of stdout");
    sub->add_option("--seed", c->seed, "Sampling seed; equal seeds give byte-identical output")
        ->capture_default_str();
}

int emit(const CommonOpts& c, const std::string& body) {
    if (c.out_path.empty()) {
        std::cout << body;
        return 0;
    }
    std::ofstream out(c.out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output file: " << c.out_path << "\n";
        return 2;
    }
    out << body;
    return out.good() ? 0 : 2;
}

std::vector<double> parse_number_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            throw hardy::DomainError(std::string(what) + ": could not parse '" + token + "'");
        }
        if (used != token.size())
            throw hardy::DomainError(std::string(what) + ": could not parse '" + token + "'");
        out.push_back(v);
    }
    if (out.empty()) throw hardy::DomainError(std::string(what) + ": empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    for (double v : parse_number_list(text, what)) {
        if (v != std::floor(v))
            throw hardy::DomainError(std::string(what) + ": expected integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

// ---------------------------------------------------------------------------
// parameter tuple options shared by the single-tuple subcommands

struct TupleOpts {
    int n = 1;
    double p = 1.0;
    double beta = 0.0;
    double q = 0.0;
    double alpha = 0.0;
    double gamma = 0.0;
    CLI::Option* q_opt = nullptr;
    CLI::Option* alpha_opt = nullptr;
    CLI::Option* gamma_opt = nullptr;

    hardy::RawParams raw() const {
        hardy::RawParams r;
        r.n = n;
        r.p = p;
        r.beta = beta;
        if (q_opt->count() > 0) r.q = q;
        if (alpha_opt->count() > 0) r.alpha = alpha;
        if (gamma_opt->count() > 0) r.gamma = gamma;
        return r;
    }

    /// Name of the balance-relation member that was left for the validator
    /// to solve; "none" when the full tuple was given.
    std::string solved_member() const {
        if (q_opt->count() == 0) return "q";
        if (alpha_opt->count() == 0) return "alpha";
        if (gamma_opt->count() == 0) return "gamma";
        return "none";
    }
};

void add_tuple(CLI::App* sub, TupleOpts* t, bool weights) {
    sub->add_option("--n", t->n, "Dimension")->required();
    sub->add_option("--p", t->p, "Input Lebesgue exponent")->required();
    sub->add_option("--beta", t->beta, "Operator power")->required();
    if (weights) {
        t->q_opt = sub->add_option("--q", t->q, "Output exponent (solved when omitted)");
        t->alpha_opt = sub->add_option("--alpha", t->alpha, "Input power weight");
        t->gamma_opt = sub->add_option("--gamma", t->gamma, "Output power weight");
    }
}

int reject(const hardy::Validation& v) {
    std::cerr << v.error_kind << ": " << v.message << "\n";
    return 2;
}

// ---------------------------------------------------------------------------
// constant

struct ConstantCmd {
    CommonOpts common;
    TupleOpts tuple;
};

int run_constant(const ConstantCmd& cmd) {
    const hardy::RawParams raw = cmd.tuple.raw();
    const hardy::Validation vf = hardy::try_validate_forward(raw);
    const hardy::Validation va = hardy::try_validate_adjoint(raw);
    if (!vf.ok() && !va.ok()) {
        std::cerr << "forward: " << vf.error_kind << ": " << vf.message << "\n";
        std::cerr << "adjoint: " << va.error_kind << ": " << va.message << "\n";
        return 2;
    }
    const hardy::SpaceParams sp = vf.ok() ? *vf.params : *va.params;
    const std::string solved = cmd.tuple.solved_member();
    const double cf = vf.ok() ? hardy::c_sharp(sp) : 0.0;
    const double ca = va.ok() ? hardy::c_sharp_adjoint(*va.params) : 0.0;

    std::string body;
    if (cmd.common.format == "json") {
        nlohmann::json j;
        j["params"] = hardy::params_to_json(sp);
        j["solved"] = solved;
        j["c_sharp"] = vf.ok() ? nlohmann::json(cf) : nlohmann::json(nullptr);
        j["c_sharp_adjoint"] = va.ok() ? nlohmann::json(ca) : nlohmann::json(nullptr);
        if (!vf.ok()) j["forward_rejection"] = {{"kind", vf.error_kind}, {"message", vf.message}};
        if (!va.ok()) j["adjoint_rejection"] = {{"kind", va.error_kind}, {"message", va.message}};
        body = j.dump(2) + "\n";
    } else if (cmd.common.format == "csv") {
        body = "n,p,q,alpha,beta,gamma,solved,c_sharp,c_sharp_adjoint\n";
        body += std::to_string(sp.n) + ',' + format_double(sp.p) + ',' + format_double(sp.q) +
                ',' + format_double(sp.alpha) + ',' + format_double(sp.beta) + ',' +
                format_double(sp.gamma) + ',' + solved + ',' +
                (vf.ok() ? format_double(cf) : std::string()) + ',' +
                (va.ok() ? format_double(ca) : std::string()) + '\n';
    } else {
        auto line = [&](const std::string& k, const std::string& v) {
            body += pad(k, 18) + v + '\n';
        };
        line("n", std::to_string(sp.n));
        line("p", format_double(sp.p));
        line("q", format_double(sp.q) + (solved == "q" ? "  (solved)" : ""));
        line("alpha", format_double(sp.alpha) + (solved == "alpha" ? "  (solved)" : ""));
        line("beta", format_double(sp.beta));
        line("gamma", format_double(sp.gamma) + (solved == "gamma" ? "  (solved)" : ""));
        line("c_sharp", vf.ok() ? format_double(cf)
                                : "n/a (" + vf.error_kind + ": " + vf.message + ")");
        line("c_sharp_adjoint", va.ok() ? format_double(ca)
                                        : "n/a (" + va.error_kind + ": " + va.message + ")");
    }
    return emit(cmd.common, body);
}

// ---------------------------------------------------------------------------
// verify

struct VerifyCmd {
    CommonOpts common;
    TupleOpts tuple;
    std::string kind = "forward";
    std::string schedule_text;
    int profiles = 100;
};

int run_verify(const VerifyCmd& cmd) {
    const hardy::RawParams raw = cmd.tuple.raw();
    const bool adjoint = cmd.kind == "adjoint";
    const hardy::Validation v =
        adjoint ? hardy::try_validate_adjoint(raw) : hardy::try_validate_forward(raw);
    if (!v.ok()) return reject(v);
    const hardy::SpaceParams sp = *v.params;
    const hardy::OperatorKind op =
        adjoint ? hardy::OperatorKind::Adjoint : hardy::OperatorKind::Forward;

    std::vector<double> schedule;
    if (!cmd.schedule_text.empty()) {
        schedule = parse_number_list(cmd.schedule_text, "--schedule");
    } else if (!adjoint) {
        const double end = hardy::forward_family_end(sp);
        for (int j = 2; j <= 7; ++j) schedule.push_back(end * std::pow(2.0, -j));
    } else {
        for (int j = 1; j <= 6; ++j) schedule.push_back(std::pow(2.0, -j));
    }
    // Gaps shrink along the family parameter, so evaluate largest first.
    std::sort(schedule.begin(), schedule.end(), std::greater<double>());

    const std::vector<hardy::SharpnessReport> reports =
        hardy::sharpness_sweep(sp, op, schedule);

    std::string failure;
    nlohmann::json offending;
    const double formula = reports.front().formula_constant;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (!(reports[i].ratio <= formula * (1.0 + 1e-8))) {
            failure = "family ratio exceeds the sharp constant";
            offending = hardy::report_to_json(reports[i]);
        }
        if (i > 0 && !(reports[i].gap <= reports[i - 1].gap + 1e-12 * formula)) {
            failure = "family gaps fail to shrink along the schedule";
            offending = hardy::report_to_json(reports[i]);
        }
    }
    if (adjoint && sp.p > 1.0 && !(std::abs(reports.front().gap) <= 1e-9 * formula)) {
        failure = "the exact test function misses the sharp constant";
        offending = hardy::report_to_json(reports.front());
    }

    // Random admissible profiles must stay below the constant.
    hardy::Rng rng(cmd.common.seed);
    int checked = 0;
    double worst = 0.0;
    for (int j = 0; j < cmd.profiles && failure.empty(); ++j) {
        const hardy::RadialProfile f = hardy::random_admissible_profile(rng);
        const hardy::SharpnessReport rep = hardy::ratio(f, sp, op);
        ++checked;
        worst = std::max(worst, rep.ratio / rep.formula_constant);
        if (!(rep.ratio <= rep.formula_constant * (1.0 + 1e-8))) {
            failure = "random profile exceeds the sharp constant";
            offending = hardy::report_to_json(rep);
        }
    }
    const bool pass = failure.empty();

    std::string body;
    if (cmd.common.format == "json") {
        nlohmann::json j;
        j["params"] = hardy::params_to_json(sp);
        j["kind"] = cmd.kind;
        j["formula"] = formula;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& rep : reports) rows.push_back(hardy::report_to_json(rep));
        j["reports"] = std::move(rows);
        j["random_profiles"] = {{"count", checked}, {"worst_ratio_over_bound", worst}};
        j["pass"] = pass;
        if (!pass) j["failure"] = failure;
        body = j.dump(2) + "\n";
    } else if (cmd.common.format == "csv") {
        body = hardy::report_csv_header() + "\n";
        for (const auto& rep : reports) body += hardy::report_csv_row(rep) + "\n";
    } else {
        body = "kind " + cmd.kind + ", sharp constant " + format_double(formula) + "\n";
        body += pad("family_param", 23) + pad("ratio", 23) + pad("gap", 23) +
                "witness_lambda\n";
        for (const auto& rep : reports)
            body += pad(format_double(rep.family_param), 23) + pad(format_double(rep.ratio), 23) +
                    pad(format_double(rep.gap), 23) + format_double(rep.witness_lambda) + "\n";
        body += "random profiles: " + std::to_string(checked) + " checked, worst ratio/bound " +
                format_double(worst) + "\n";
        body += std::string("verdict: ") + (pass ? "pass" : "fail") + "\n";
    }
    const int rc = emit(cmd.common, body);
    if (rc != 0) return rc;
    if (!pass) {
        std::cerr << "verification failure: " << failure << "\n";
        std::cerr << "offending report: " << offending.dump() << "\n";
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// limit

struct LimitCmd {
    CommonOpts common;
    TupleOpts tuple;
    std::string builtin;
    std::string profile_text;
    double lambda_max = 1.0;
    double lambda_min = 1e-8;
    int per_decade = 2;
    double tol = 0.02;
};

hardy::RadialProfile builtin_profile(const std::string& name) {
    if (name == "step") return hardy::RadialProfile::indicator(0.0, 1.0);
    if (name == "twostep")
        return hardy::RadialProfile::from_segments(
            {{0.2, 1.0, {{1.5, 0.0, 0}}}, {1.0, 2.5, {{0.4, -1.0, 0}}}});
    if (name == "powerbump") return hardy::RadialProfile::power(1.0, -0.5, 0.0, 1.0);
    throw hardy::DomainError("unknown builtin profile: " + name);
}

int run_limit(const LimitCmd& cmd) {
    hardy::RawParams raw;
    raw.n = cmd.tuple.n;
    raw.p = cmd.tuple.p;
    raw.beta = cmd.tuple.beta;
    raw.alpha = 0.0;
    raw.gamma = 0.0;
    const hardy::Validation v = hardy::try_validate_forward(raw);
    if (!v.ok()) return reject(v);
    const hardy::SpaceParams sp = *v.params;

    if (cmd.builtin.empty() == cmd.profile_text.empty()) {
        std::cerr << "give exactly one of --builtin or --profile\n";
        return 2;
    }
    const hardy::RadialProfile f = cmd.builtin.empty()
                                       ? hardy::profile_from_string(cmd.profile_text)
                                       : builtin_profile(cmd.builtin);

    if (!(cmd.lambda_min > 0.0) || !(cmd.lambda_max > cmd.lambda_min) || cmd.per_decade < 1) {
        std::cerr << "need lambda_max > lambda_min > 0 and at least one point per decade\n";
        return 2;
    }
    std::vector<double> schedule;
    for (int j = 0;; ++j) {
        const double lam =
            cmd.lambda_max * std::pow(10.0, -static_cast<double>(j) / cmd.per_decade);
        if (lam < cmd.lambda_min * (1.0 - 1e-12)) break;
        schedule.push_back(lam);
    }

    const hardy::LimitTrace trace = hardy::limiting_weak(f, sp, schedule);
    const double rel = hardy::trace_relative_error(trace);
    const bool pass = rel <= cmd.tol;

    std::string body;
    if (cmd.common.format == "json") {
        nlohmann::json j;
        j["params"] = hardy::params_to_json(sp);
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < trace.lambdas.size(); ++i)
            rows.push_back({{"lambda", trace.lambdas[i]}, {"score", trace.scores[i]}});
        j["trace"] = std::move(rows);
        j["summary"] = hardy::trace_summary_json(trace);
        j["tolerance"] = cmd.tol;
        j["pass"] = pass;
        body = j.dump(2) + "\n";
    } else if (cmd.common.format == "csv") {
        body = hardy::trace_csv(trace);
    } else {
        body = hardy::trace_csv(trace);
        body += "limit " + format_double(trace.extrapolated_limit) + ", target " +
                format_double(trace.target) + ", rel_err " + format_double(rel) +
                ", tolerance " + format_double(cmd.tol) + "\n";
        body += std::string("verdict: ") + (pass ? "pass" : "fail") + "\n";
    }
    const int rc = emit(cmd.common, body);
    if (rc != 0) return rc;
    if (cmd.common.format == "csv")
        std::cerr << "limit " << format_double(trace.extrapolated_limit) << ", target "
                  << format_double(trace.target) << ", rel_err " << format_double(rel) << "\n";
    if (!pass) {
        std::cerr << "limit misses its target beyond the tolerance\n";
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// oracle

struct OracleCmd {
    CommonOpts common;
    TupleOpts tuple;
    std::string field = "gaussian";
    std::string radii_text = "0.5,1,2,4";
    long samples = 1000000;
};

int run_oracle(const OracleCmd& cmd) {
    const hardy::Validation v = hardy::try_validate_forward(cmd.tuple.raw());
    if (!v.ok()) return reject(v);
    const hardy::SpaceParams sp = *v.params;

    const std::vector<double> radii = parse_number_list(cmd.radii_text, "--radii");
    const double top = *std::max_element(radii.begin(), radii.end());

    hardy::ScalarField F;
    if (cmd.field == "gaussian") {
        F = hardy::field_offset_gaussian(sp.n);
    } else if (cmd.field == "coordinate") {
        F = hardy::field_abs_first_coordinate(top);
    } else if (cmd.field == "ball") {
        F = hardy::field_ball(1.0);
    } else {
        std::cerr << "unknown field: " << cmd.field << " (gaussian, coordinate, ball)\n";
        return 2;
    }

    const hardy::SymmetrizationReport rep =
        hardy::symmetrization_check(F, sp, radii, cmd.samples, cmd.common.seed);

    std::string body;
    if (cmd.common.format == "json") {
        nlohmann::json j;
        j["params"] = hardy::params_to_json(sp);
        j["field"] = cmd.field;
        j["samples"] = cmd.samples;
        j["seed"] = cmd.common.seed;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& e : rep.entries)
            rows.push_back({{"radius", e.radius},
                            {"mc_value", e.mc_value},
                            {"mc_sigma", e.mc_sigma},
                            {"radial_value", e.radial_value},
                            {"radial_sigma", e.radial_sigma},
                            {"retries", e.retries},
                            {"pass", e.pass}});
        j["entries"] = std::move(rows);
        j["all_pass"] = rep.all_pass;
        body = j.dump(2) + "\n";
    } else if (cmd.common.format == "csv") {
        body = "radius,mc_value,mc_sigma,radial_value,radial_sigma,retries,pass\n";
        for (const auto& e : rep.entries)
            body += format_double(e.radius) + ',' + format_double(e.mc_value) + ',' +
                    format_double(e.mc_sigma) + ',' + format_double(e.radial_value) + ',' +
                    format_double(e.radial_sigma) + ',' + std::to_string(e.retries) + ',' +
                    (e.pass ? "1" : "0") + '\n';
    } else {
        body = "field " + cmd.field + ", samples " + std::to_string(cmd.samples) + ", seed " +
               std::to_string(cmd.common.seed) + "\n";
        body += pad("radius", 10) + pad("sampled", 23) + pad("closed-form", 23) +
                pad("sigma", 23) + pad("retries", 9) + "verdict\n";
        for (const auto& e : rep.entries) {
            const double sigma =
                std::sqrt(e.mc_sigma * e.mc_sigma + e.radial_sigma * e.radial_sigma);
            body += pad(format_double(e.radius), 10) + pad(format_double(e.mc_value), 23) +
                    pad(format_double(e.radial_value), 23) + pad(format_double(sigma), 23) +
                    pad(std::to_string(e.retries), 9) + (e.pass ? "pass" : "fail") + "\n";
        }
        body += std::string("verdict: ") + (rep.all_pass ? "pass" : "fail") + "\n";
    }
    const int rc = emit(cmd.common, body);
    if (rc != 0) return rc;
    if (!rep.all_pass) {
        std::cerr << "spherical-average identity check failed\n";
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepCmd {
    CommonOpts common;
    std::string kind = "forward";
    std::string n_text = "1,2,3";
    std::string p_text = "1,1.5,2";
    std::string beta_text = "0,0.25";
    std::string alpha_text = "0";
    std::string gamma_text = "0";
    double delta = 1e-4;
    double eps = 0.25;
};

struct SweepRow {
    hardy::RawParams raw;
    hardy::SharpnessReport report;
    bool ok = false;
    std::string status = "ok";
    std::string message;
};

int run_sweep(const SweepCmd& cmd) {
    const bool adjoint = cmd.kind == "adjoint";
    const hardy::OperatorKind op =
        adjoint ? hardy::OperatorKind::Adjoint : hardy::OperatorKind::Forward;
    const std::vector<int> ns = parse_int_list(cmd.n_text, "--n-list");
    const std::vector<double> ps = parse_number_list(cmd.p_text, "--p-list");
    const std::vector<double> betas = parse_number_list(cmd.beta_text, "--beta-list");
    const std::vector<double> alphas = parse_number_list(cmd.alpha_text, "--alpha-list");
    const std::vector<double> gammas = parse_number_list(cmd.gamma_text, "--gamma-list");

    std::vector<SweepRow> rows;
    for (int n : ns)
        for (double p : ps)
            for (double beta : betas)
                for (double alpha : alphas)
                    for (double gamma : gammas) {
                        SweepRow row;
                        row.raw.n = n;
                        row.raw.p = p;
                        row.raw.beta = beta;
                        row.raw.alpha = alpha;
                        row.raw.gamma = gamma;
                        rows.push_back(std::move(row));
                    }
    if (rows.empty()) {
        std::cerr << "empty grid\n";
        return 2;
    }

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(rows.size()); ++i) {
        SweepRow& row = rows[static_cast<std::size_t>(i)];
        const hardy::Validation v = adjoint ? hardy::try_validate_adjoint(row.raw)
                                            : hardy::try_validate_forward(row.raw);
        if (!v.ok()) {
            row.status = v.error_kind;
            row.message = v.message;
            continue;
        }
        try {
            const double knob = adjoint ? cmd.eps : cmd.delta;
            row.report = hardy::sharpness_sweep(*v.params, op, {knob}).front();
            row.ok = true;
        } catch (const hardy::Error& e) {
            row.status = e.kind();
            row.message = e.what();
        }
    }

    std::string body;
    if (cmd.common.format == "json") {
        nlohmann::json j;
        j["kind"] = cmd.kind;
        nlohmann::json out = nlohmann::json::array();
        for (const auto& row : rows) {
            if (row.ok) {
                nlohmann::json r = hardy::report_to_json(row.report);
                r["status"] = "ok";
                out.push_back(std::move(r));
            } else {
                out.push_back({{"n", row.raw.n},
                               {"p", row.raw.p},
                               {"beta", row.raw.beta},
                               {"alpha", row.raw.alpha ? nlohmann::json(*row.raw.alpha)
                                                       : nlohmann::json(nullptr)},
                               {"gamma", row.raw.gamma ? nlohmann::json(*row.raw.gamma)
                                                       : nlohmann::json(nullptr)},
                               {"status", row.status},
                               {"message", row.message}});
            }
        }
        j["rows"] = std::move(out);
        body = j.dump(2) + "\n";
    } else {
        const bool csv = cmd.common.format == "csv";
        body = hardy::report_csv_header() + ",status\n";
        for (const auto& row : rows) {
            if (row.ok) {
                body += hardy::report_csv_row(row.report) + ",ok\n";
            } else {
                body += std::to_string(row.raw.n) + ',' + format_double(row.raw.p) + ",," +
                        format_double(*row.raw.alpha) + ',' + format_double(row.raw.beta) + ',' +
                        format_double(*row.raw.gamma) + ',' + cmd.kind + ",,,,,," + row.status +
                        '\n';
            }
        }
        if (!csv) {
            int ok = 0;
            for (const auto& row : rows)
                if (row.ok) ++ok;
            body += std::to_string(ok) + " of " + std::to_string(rows.size()) +
                    " grid points admissible\n";
        }
    }
    return emit(cmd.common, body);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification tool for weighted weak-type bounds of radial averaging operators"};
    app.require_subcommand(1);

    ConstantCmd constant;
    CLI::App* c_sub = app.add_subcommand("constant", "Closed-form sharp constants for a tuple");
    add_tuple(c_sub, &constant.tuple, true);
    add_common(c_sub, &constant.common);

    VerifyCmd verify;
    CLI::App* v_sub =
        app.add_subcommand("verify", "Family sweep plus a random-profile bound check");
    add_tuple(v_sub, &verify.tuple, true);
    v_sub->add_option("--kind", verify.kind, "Operator branch")
        ->check(CLI::IsMember({"forward", "adjoint"}))
        ->capture_default_str();
    v_sub->add_option("--schedule", verify.schedule_text,
                      "Comma-separated family parameters (default: geometric)");
    v_sub->add_option("--profiles", verify.profiles, "Number of random profiles")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_common(v_sub, &verify.common);

    LimitCmd limit;
    CLI::App* l_sub =
        app.add_subcommand("limit", "Small-level weak-score trace and extrapolated limit");
    add_tuple(l_sub, &limit.tuple, false);
    l_sub->add_option("--builtin", limit.builtin, "Builtin profile: step, twostep, powerbump");
    l_sub->add_option("--profile", limit.profile_text, "Inline profile JSON");
    l_sub->add_option("--lambda-max", limit.lambda_max, "Largest level")->capture_default_str();
    l_sub->add_option("--lambda-min", limit.lambda_min, "Smallest level")->capture_default_str();
    l_sub->add_option("--per-decade", limit.per_decade, "Levels per decade")
        ->capture_default_str();
    l_sub->add_option("--tol", limit.tol, "Relative tolerance on the limit")
        ->capture_default_str();
    add_common(l_sub, &limit.common);

    OracleCmd oracle;
    CLI::App* o_sub =
        app.add_subcommand("oracle", "Sampled spherical-average identity check on a field");
    add_tuple(o_sub, &oracle.tuple, true);
    o_sub->add_option("--field", oracle.field, "Field: gaussian, coordinate, ball")
        ->capture_default_str();
    o_sub->add_option("--radii", oracle.radii_text, "Comma-separated check radii")
        ->capture_default_str();
    o_sub->add_option("--samples", oracle.samples, "Samples per estimate")
        ->capture_default_str();
    add_common(o_sub, &oracle.common);

    SweepCmd sweep;
    CLI::App* s_sub =
        app.add_subcommand("sweep", "Grid of one-point sharpness reports, rejections included");
    s_sub->add_option("--kind", sweep.kind, "Operator branch")
        ->check(CLI::IsMember({"forward", "adjoint"}))
        ->capture_default_str();
    s_sub->add_option("--n-list", sweep.n_text, "Dimensions")->capture_default_str();
    s_sub->add_option("--p-list", sweep.p_text, "Input exponents")->capture_default_str();
    s_sub->add_option("--beta-list", sweep.beta_text, "Operator powers")->capture_default_str();
    s_sub->add_option("--alpha-list", sweep.alpha_text, "Input weights")->capture_default_str();
    s_sub->add_option("--gamma-list", sweep.gamma_text, "Output weights")->capture_default_str();
    s_sub->add_option("--delta", sweep.delta, "Forward family parameter")->capture_default_str();
    s_sub->add_option("--eps", sweep.eps, "Adjoint shell width at p = 1")->capture_default_str();
    add_common(s_sub, &sweep.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_sub->parsed()) return run_constant(constant);
        if (v_sub->parsed()) return run_verify(verify);
        if (l_sub->parsed()) return run_limit(limit);
        if (o_sub->parsed()) return run_oracle(oracle);
        if (s_sub->parsed()) return run_sweep(sweep);
    } catch (const hardy::Error& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
