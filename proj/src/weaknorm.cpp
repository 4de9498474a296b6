#include "hardy/weaknorm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>

#include "hardy/errors.hpp"

namespace hardy {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// |ln r| beyond which e^r under/overflows a double; superlevel boundaries are
// clipped here, which perturbs weighted lengths by less than one representable
// step.
constexpr double kLogClamp = 800.0;

// ---------------------------------------------------------------------------
// exponential polynomials in u = ln r
//
// A segment value minus a level is sum_a e^{a u} P_a(u) with polynomial P_a.
// Root isolation runs on this form: normalize so the smallest exponent is
// zero, split the interval at the roots of the derivative (found recursively;
// the normalized derivative always loses one unit of polynomial degree, so
// the recursion terminates), then bisect each monotone piece.

struct ExpGroup {
    double a = 0.0;
    std::vector<double> coef;   // coef[k] multiplies u^k
};
using ExpPoly = std::vector<ExpGroup>;

void add_term(std::map<double, std::vector<double>>& groups, double a, int k, double c) {
    if (c == 0.0) return;
    auto& v = groups[a];
    if (static_cast<int>(v.size()) <= k) v.resize(static_cast<size_t>(k) + 1, 0.0);
    v[static_cast<size_t>(k)] += c;
}

ExpPoly assemble(std::map<double, std::vector<double>>&& groups) {
    ExpPoly poly;
    for (auto& [a, coef] : groups) {
        while (!coef.empty() && coef.back() == 0.0) coef.pop_back();
        if (!coef.empty()) poly.push_back({a, std::move(coef)});
    }
    return poly;
}

ExpPoly level_poly(const std::vector<Term>& terms, double side, double level) {
    std::map<double, std::vector<double>> groups;
    for (const auto& t : terms) add_term(groups, t.a, t.k, side * t.c);
    add_term(groups, 0.0, 0, -level);
    return assemble(std::move(groups));
}

double eval_poly(const ExpPoly& poly, double u) {
    double s = 0.0;
    for (const auto& g : poly) {
        double pk = 0.0;
        for (int k = static_cast<int>(g.coef.size()) - 1; k >= 0; --k)
            pk = pk * u + g.coef[static_cast<size_t>(k)];
        s += pk * std::exp(g.a * u);
    }
    return s;
}

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

// Sign the expression settles on toward +inf (largest exponent wins) or
// toward -inf (smallest exponent wins; odd log powers flip the sign).
int asymptotic_sign(const ExpPoly& poly, bool to_plus) {
    if (poly.empty()) return 0;
    const ExpGroup* dom = &poly.front();
    for (const auto& g : poly)
        if (to_plus ? (g.a > dom->a) : (g.a < dom->a)) dom = &g;
    int k = static_cast<int>(dom->coef.size()) - 1;
    while (k > 0 && dom->coef[static_cast<size_t>(k)] == 0.0) --k;
    int s = sign_of(dom->coef[static_cast<size_t>(k)]);
    if (!to_plus && k % 2 == 1) s = -s;
    return s;
}

ExpPoly poly_derivative(const ExpPoly& poly) {
    std::map<double, std::vector<double>> groups;
    for (const auto& g : poly)
        for (int k = 0; k < static_cast<int>(g.coef.size()); ++k) {
            const double c = g.coef[static_cast<size_t>(k)];
            add_term(groups, g.a, k, g.a * c);
            if (k >= 1) add_term(groups, g.a, k - 1, k * c);
        }
    return assemble(std::move(groups));
}

int endpoint_sign(const ExpPoly& poly, double u) {
    if (u == -kInf) return asymptotic_sign(poly, false);
    if (u == kInf) return asymptotic_sign(poly, true);
    return sign_of(eval_poly(poly, u));
}

double bisect_root(const ExpPoly& poly, double x, double y, int sx) {
    for (int it = 0; it < 220; ++it) {
        const double m = 0.5 * (x + y);
        if (!(m > x) || !(m < y)) break;
        const int sm = sign_of(eval_poly(poly, m));
        if (sm == 0) return m;
        if (sm == sx) x = m;
        else y = m;
    }
    return 0.5 * (x + y);
}

// One sign change on a monotone piece (x, y); either end may be infinite.
double locate_root(const ExpPoly& poly, double x, double y, int sx, int sy) {
    if (x == -kInf) {
        const double anchor = (y == kInf) ? 1.0 : y;
        double step = 1.0;
        for (;;) {
            const double t = anchor - step;
            if (t <= -kLogClamp) return -kLogClamp;
            const int s = sign_of(eval_poly(poly, t));
            if (s == sx) { x = t; break; }
            if (s == 0) return t;
            step *= 2.0;
        }
    }
    if (y == kInf) {
        double step = 1.0;
        for (;;) {
            const double t = x + step;
            if (t >= kLogClamp) return kLogClamp;
            const int s = sign_of(eval_poly(poly, t));
            if (s == sy) { y = t; break; }
            if (s == 0) return t;
            step *= 2.0;
        }
    }
    return bisect_root(poly, x, y, sx);
}

void find_roots(const ExpPoly& poly0, double u_lo, double u_hi, std::vector<double>& out) {
    if (poly0.empty()) return;
    ExpPoly poly = poly0;
    double amin = poly.front().a;
    for (const auto& g : poly) amin = std::min(amin, g.a);
    if (amin != 0.0)
        for (auto& g : poly) g.a -= amin;   // scale by e^{-amin u} > 0; roots unchanged

    std::vector<double> droots;
    find_roots(poly_derivative(poly), u_lo, u_hi, droots);
    std::sort(droots.begin(), droots.end());

    std::vector<double> division;
    division.reserve(droots.size() + 2);
    division.push_back(u_lo);
    for (double r : droots)
        if (r > u_lo && r < u_hi) division.push_back(r);
    division.push_back(u_hi);

    std::vector<int> signs(division.size());
    for (size_t i = 0; i < division.size(); ++i) signs[i] = endpoint_sign(poly, division[i]);

    for (size_t i = 1; i + 1 < division.size(); ++i)
        if (signs[i] == 0) out.push_back(division[i]);
    for (size_t i = 0; i + 1 < division.size(); ++i)
        if (signs[i] * signs[i + 1] < 0)
            out.push_back(locate_root(poly, division[i], division[i + 1], signs[i], signs[i + 1]));
}

// ---------------------------------------------------------------------------
// superlevel geometry

struct LengthAcc {
    double value = 0.0;
    bool finite = true;
};

void add_piece(LengthAcc& acc, double x, double y, double w1) {
    if (y == kInf) {
        acc.finite = false;
        acc.value = kInf;
        return;
    }
    double part;
    if (x == -kInf) part = std::exp(w1 * y) / w1;
    else part = std::exp(w1 * x) * std::expm1(w1 * (y - x)) / w1;
    acc.value += part;
    if (std::isinf(acc.value)) acc.finite = false;
}

void accumulate_side(const std::vector<Term>& terms, double side, double level, double u_lo,
                     double u_hi, double w1, bool strict, LengthAcc& acc) {
    const ExpPoly poly = level_poly(terms, side, level);
    if (poly.empty()) {
        // the segment sits exactly at the level
        if (!strict) add_piece(acc, u_lo, u_hi, w1);
        return;
    }
    std::vector<double> roots;
    find_roots(poly, u_lo, u_hi, roots);
    std::sort(roots.begin(), roots.end());

    std::vector<double> division;
    division.reserve(roots.size() + 2);
    division.push_back(u_lo);
    for (double r : roots)
        if (r > u_lo && r < u_hi) division.push_back(r);
    division.push_back(u_hi);

    for (size_t i = 0; i + 1 < division.size(); ++i) {
        const double x = division[i], y = division[i + 1];
        int s;
        if (y == kInf && x == -kInf) s = asymptotic_sign(poly, true);
        else if (x == -kInf) s = asymptotic_sign(poly, false);
        else if (y == kInf) s = asymptotic_sign(poly, true);
        else s = sign_of(eval_poly(poly, 0.5 * (x + y)));
        if (s > 0) add_piece(acc, x, y, w1);
        if (!acc.finite) return;
    }
}

} // namespace

double superlevel_weighted_length(const RadialProfile& g, double level, double wexp,
                                  bool strict) {
    if (!(level > 0.0)) throw RangeError("superlevel threshold must be positive");
    const double w1 = wexp + 1.0;
    if (!(w1 > 0.0)) throw RangeError("superlevel weight exponent must exceed -1");
    LengthAcc acc;
    for (const auto& seg : g.segments()) {
        const double u_lo = seg.lo > 0.0 ? std::log(seg.lo) : -kInf;
        const double u_hi = seg.hi == kInfRadius ? kInf : std::log(seg.hi);
        bool need_pos = false, need_neg = false;
        for (const auto& t : seg.terms) {
            if (t.c > 0.0 || t.k != 0) need_pos = true;
            if (t.c < 0.0 || t.k != 0) need_neg = true;
        }
        if (need_pos) accumulate_side(seg.terms, 1.0, level, u_lo, u_hi, w1, strict, acc);
        if (!acc.finite) return kInf;
        if (need_neg) accumulate_side(seg.terms, -1.0, level, u_lo, u_hi, w1, strict, acc);
        if (!acc.finite) return kInf;
    }
    return acc.value;
}

double superlevel_measure(const RadialProfile& g, double level, double gamma, int n,
                          bool strict) {
    if (!(gamma > -static_cast<double>(n)))
        throw RangeError("weight exponent must exceed -n");
    const double len = superlevel_weighted_length(g, level, n + gamma - 1.0, strict);
    if (std::isinf(len))
        throw DivergenceError("superlevel set has infinite weighted measure");
    return sphere_area(n) * len;
}

double superlevel_measure(const RadialProfile& g, double level, const SpaceParams& sp,
                          bool strict) {
    return superlevel_measure(g, level, sp.gamma, sp.n, strict);
}

double level_score(const RadialProfile& g, double level, const SpaceParams& sp, bool strict) {
    return level * std::pow(superlevel_measure(g, level, sp, strict), 1.0 / sp.q);
}

const char* weak_norm_flag_name(WeakNormFlag flag) {
    switch (flag) {
        case WeakNormFlag::SupAttained: return "SUP_ATTAINED";
        case WeakNormFlag::SupLimitZero: return "SUP_LIMIT_ZERO";
        case WeakNormFlag::SupLimitInf: return "SUP_LIMIT_INF";
        case WeakNormFlag::ConstantInLambda: return "CONSTANT_IN_LAMBDA";
    }
    return "UNKNOWN";
}

namespace {

void push_level(std::vector<double>& levels, double v) {
    if (std::isfinite(v) && v > 0.0) levels.push_back(v);
}

double golden_max(const std::function<double(double)>& f, double a, double b, double& xbest) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 300 && (b - a) > 1e-12; ++it) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        }
    }
    if (fc >= fd) {
        xbest = c;
        return fc;
    }
    xbest = d;
    return fd;
}

} // namespace

WeakNormResult weak_norm(const RadialProfile& g, const SpaceParams& sp) {
    WeakNormResult res;
    if (g.is_zero()) {
        res.flag = WeakNormFlag::SupLimitZero;
        return res;
    }
    const double q = sp.q;
    const double ng = sp.n + sp.gamma;
    if (!(q >= 1.0) || !(ng > 0.0))
        throw RangeError("weak norm needs q >= 1 and gamma > -n");
    const double area = sphere_area(sp.n);
    const double crit_tol = 1e-9;

    // Asymptotics of the score at the two ends of the level axis. A tail
    // |g| ~ c r^a (a < 0) gives score ~ level^(1 + (n+gamma)/(q a)) as the
    // level drops; negative exponent means divergence, zero exponent a finite
    // limiting score (log factors tip the critical case over to divergence).
    double limit_zero = -1.0, limit_inf = -1.0;
    const auto binf = behavior_at_infinity(g);
    switch (binf.kind) {
        case EndBehavior::Kind::PlusInfinity:
        case EndBehavior::Kind::MinusInfinity:
            throw DivergenceError("profile grows at infinity; weak norm is infinite");
        case EndBehavior::Kind::FiniteLimit:
            throw DivergenceError(
                "profile has a nonzero limit at infinity; weak norm is infinite");
        case EndBehavior::Kind::Zero:
            if (binf.has_terms) {
                const double c = std::fabs(binf.dominant.c);
                const double a = binf.dominant.a;
                const double e0 = 1.0 + ng / (q * a);
                if (e0 < -crit_tol)
                    throw DivergenceError(
                        "tail decays too slowly; score is unbounded at small levels");
                if (std::fabs(e0) <= crit_tol) {
                    if (binf.dominant.k != 0)
                        throw DivergenceError(
                            "critically decaying tail with a log factor; weak norm is infinite");
                    limit_zero = c * std::pow(area / ng, 1.0 / q);
                }
            }
            break;
    }

    std::vector<double> levels;
    const auto bzero = behavior_at_zero(g);
    if (bzero.kind == EndBehavior::Kind::PlusInfinity ||
        bzero.kind == EndBehavior::Kind::MinusInfinity) {
        const double a = bzero.dominant.a;
        if (a < 0.0) {
            const double c = std::fabs(bzero.dominant.c);
            const double e1 = 1.0 + ng / (q * a);
            if (e1 > crit_tol)
                throw DivergenceError(
                    "origin blowup is too strong; score is unbounded at large levels");
            if (std::fabs(e1) <= crit_tol) {
                if (bzero.dominant.k != 0)
                    throw DivergenceError(
                        "critical origin blowup with a log factor; weak norm is infinite");
                limit_inf = c * std::pow(area / ng, 1.0 / q);
            }
        }
    } else if (bzero.kind == EndBehavior::Kind::FiniteLimit) {
        push_level(levels, std::fabs(bzero.limit));
    }

    // Candidate levels: the score changes character exactly where the
    // superlevel topology changes, i.e. at segment endpoint values and at
    // stationary values of the profile.
    for (const auto& seg : g.segments()) {
        const double u_lo = seg.lo > 0.0 ? std::log(seg.lo) : -kInf;
        const double u_hi = seg.hi == kInfRadius ? kInf : std::log(seg.hi);
        const ExpPoly p0 = level_poly(seg.terms, 1.0, 0.0);
        if (seg.lo > 0.0) push_level(levels, std::fabs(eval_poly(p0, u_lo)));
        if (seg.hi != kInfRadius) push_level(levels, std::fabs(eval_poly(p0, u_hi)));
        std::vector<double> statio;
        find_roots(poly_derivative(p0), u_lo, u_hi, statio);
        for (double u : statio) push_level(levels, std::fabs(eval_poly(p0, u)));
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end(),
                             [](double a, double b) { return b <= a * (1.0 + 1e-12); }),
                 levels.end());

    const double wexp = ng - 1.0;
    auto score = [&](double lv, bool strict) {
        const double len = superlevel_weighted_length(g, lv, wexp, strict);
        if (std::isinf(len)) return -1.0;   // overflow guard; unusable sample
        return lv * std::pow(area * len, 1.0 / q);
    };
    auto score_strict = [&](double lv) { return score(lv, true); };

    // geometric probe grid bracketing the candidate levels
    std::vector<double> grid;
    const int per_decade = 48;
    auto append_geo = [&grid](double lo, double hi, int m) {
        const double llo = std::log(lo), lhi = std::log(hi);
        for (int i = 0; i <= m; ++i)
            grid.push_back(std::exp(llo + (lhi - llo) * i / m));
    };
    if (levels.empty()) {
        double center = 0.0;
        for (const auto& seg : g.segments()) {
            double rm;
            if (seg.lo > 0.0 && seg.hi != kInfRadius) rm = std::sqrt(seg.lo * seg.hi);
            else if (seg.lo > 0.0) rm = 2.0 * seg.lo;
            else if (seg.hi != kInfRadius) rm = 0.5 * seg.hi;
            else rm = 1.0;
            center = std::max(center, std::fabs(g(rm)));
        }
        if (!(center > 0.0)) return res;
        append_geo(center * 1e-3, center * 1e3, 6 * per_decade);
    } else {
        std::vector<double> knots;
        knots.push_back(levels.front() * 1e-3);
        knots.insert(knots.end(), levels.begin(), levels.end());
        knots.push_back(levels.back() * 1e3);
        for (size_t i = 0; i + 1 < knots.size(); ++i) {
            const double x = knots[i], y = knots[i + 1];
            const int m = std::max(12, static_cast<int>(std::ceil(std::log10(y / x) * per_decade)));
            append_geo(x, y, m);
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    const double orig_lo = grid.front(), orig_hi = grid.back();

    std::vector<double> sc(grid.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(grid.size()); ++i)
        sc[static_cast<size_t>(i)] = score_strict(grid[static_cast<size_t>(i)]);

    // extend the grid while the best sample sits on an edge
    for (int ext = 0; ext < 4; ++ext) {
        const size_t imax =
            static_cast<size_t>(std::max_element(sc.begin(), sc.end()) - sc.begin());
        std::vector<double> fresh;
        bool low = false;
        if (imax == 0 && sc[imax] > 0.0) {
            low = true;
            const double edge = grid.front();
            const double llo = std::log(edge * 1e-3), lhi = std::log(edge);
            const int m = 3 * per_decade;
            for (int i = 0; i < m; ++i) fresh.push_back(std::exp(llo + (lhi - llo) * i / m));
        } else if (imax + 1 == sc.size() && sc[imax] > 0.0) {
            const double edge = grid.back();
            const double llo = std::log(edge), lhi = std::log(edge * 1e3);
            const int m = 3 * per_decade;
            for (int i = 1; i <= m; ++i) fresh.push_back(std::exp(llo + (lhi - llo) * i / m));
        } else {
            break;
        }
        std::vector<double> fsc(fresh.size());
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(fresh.size()); ++i)
            fsc[static_cast<size_t>(i)] = score_strict(fresh[static_cast<size_t>(i)]);
        if (low) {
            grid.insert(grid.begin(), fresh.begin(), fresh.end());
            sc.insert(sc.begin(), fsc.begin(), fsc.end());
        } else {
            grid.insert(grid.end(), fresh.begin(), fresh.end());
            sc.insert(sc.end(), fsc.begin(), fsc.end());
        }
    }

    double best_attained = 0.0, best_witness = 0.0;
    auto consider = [&](double v, double w) {
        if (v > best_attained) {
            best_attained = v;
            best_witness = w;
        }
    };
    for (double lv : levels) {
        consider(score(lv, true), lv);
        consider(score(lv, false), lv);
    }
    for (size_t i = 0; i < grid.size(); ++i) {
        consider(sc[i], grid[i]);
        const bool local_max = (i == 0 || sc[i] >= sc[i - 1]) &&
                               (i + 1 == sc.size() || sc[i] >= sc[i + 1]);
        if (local_max && sc[i] > 0.0 && i > 0 && i + 1 < sc.size()) {
            double xb = 0.0;
            const double v = golden_max(
                [&](double x) { return score_strict(std::exp(x)); },
                std::log(grid[i - 1]), std::log(grid[i + 1]), xb);
            consider(v, std::exp(xb));
        }
    }

    const double best_all =
        std::max({best_attained, limit_zero, limit_inf});

    // decimated samples for reporting
    const size_t stride = std::max<size_t>(1, grid.size() / 64);
    for (size_t i = 0; i < grid.size(); i += stride)
        res.probes.emplace_back(grid[i], sc[i]);

    // a critical pure power scores identically at every level
    if (levels.empty() && !grid.empty()) {
        const double smax = *std::max_element(sc.begin(), sc.end());
        const double smin = *std::min_element(sc.begin(), sc.end());
        const bool limits_close =
            (limit_zero < 0.0 || std::fabs(limit_zero - smax) <= 1e-12 * smax) &&
            (limit_inf < 0.0 || std::fabs(limit_inf - smax) <= 1e-12 * smax);
        if (smax > 0.0 && smax - smin <= 1e-12 * smax && limits_close &&
            std::log10(grid.back() / grid.front()) >= 3.0) {
            res.value = best_all;
            res.flag = WeakNormFlag::ConstantInLambda;
            return res;
        }
    }

    // A limiting score wins when nothing at a finite level beats it beyond
    // rounding noise, or when the best sample sits in the extension region
    // (the maximizing level ran off toward an end of the axis).
    const bool edge_low = best_witness < orig_lo * 0.999;
    const bool edge_high = best_witness > orig_hi * 1.001;
    const auto wins = [&](double limit, bool edge) {
        if (!(limit > 0.0)) return false;
        if (best_attained <= limit * (1.0 + 1e-13)) return true;
        return edge && best_attained <= limit * (1.0 + 1e-9);
    };
    if (wins(limit_zero, edge_low)) {
        res.value = std::max(limit_zero, best_attained);
        res.flag = WeakNormFlag::SupLimitZero;
        return res;
    }
    if (wins(limit_inf, edge_high)) {
        res.value = std::max(limit_inf, best_attained);
        res.flag = WeakNormFlag::SupLimitInf;
        return res;
    }
    res.value = best_all;
    res.flag = WeakNormFlag::SupAttained;
    if (best_attained > 0.0) res.witness = best_witness;
    return res;
}

double strong_norm(const RadialProfile& g, double q, double gamma, int n) {
    return lp_weighted_norm(g, q, gamma, n);
}

double strong_norm(const RadialProfile& g, const SpaceParams& sp) {
    return lp_weighted_norm(g, sp.q, sp.gamma, sp.n);
}

double input_norm(const RadialProfile& f, const SpaceParams& sp) {
    return lp_weighted_norm(f, sp.p, sp.alpha, sp.n);
}

} // namespace hardy
