#include "hardy/profile.hpp"

#include <algorithm>
#include <cmath>

namespace hardy {

namespace {

constexpr double kCollisionTol = 1e-12;   // |exponent + 1| below this is the log case
constexpr double kIntegerTol = 1e-12;     // p this close to an integer is treated as one
constexpr double kInf = std::numeric_limits<double>::infinity();

double powint(double x, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= x;
    return v;
}

bool valid_interval(double lo, double hi) {
    return std::isfinite(lo) && lo >= 0.0 && hi > lo && !std::isnan(hi);
}

void check_term(const Term& t) {
    if (!std::isfinite(t.c) || !std::isfinite(t.a))
        throw DomainError("term coefficient and exponent must be finite");
    if (t.k < 0) throw DomainError("negative log power");
    if (t.k > 1) throw UnsupportedExponentError("stored profiles support log powers 0 and 1 only");
}

} // namespace

double term_value(const Term& t, double r) {
    double v = t.c * std::pow(r, t.a);
    if (t.k > 0) v *= powint(std::log(r), t.k);
    return v;
}

double segment_value(const Segment& s, double r) {
    double v = 0.0;
    for (const auto& t : s.terms) v += term_value(t, r);
    return v;
}

std::vector<Term> derivative_terms(const std::vector<Term>& ts) {
    std::vector<Term> out;
    for (const auto& t : ts) {
        if (t.a != 0.0) out.push_back({t.c * t.a, t.a - 1.0, t.k});
        if (t.k > 0) out.push_back({t.c * t.k, t.a - 1.0, t.k - 1});
    }
    return out;
}

// ---------------------------------------------------------------------------
// RadialProfile basics

RadialProfile RadialProfile::indicator(double lo, double hi) {
    return power_log(1.0, 0.0, 0, lo, hi);
}

RadialProfile RadialProfile::power(double c, double a, double lo, double hi) {
    return power_log(c, a, 0, lo, hi);
}

RadialProfile RadialProfile::power_log(double c, double a, int k, double lo, double hi) {
    if (!valid_interval(lo, hi)) throw DomainError("invalid radial interval");
    Term t{c, a, k};
    check_term(t);
    RadialProfile f;
    f.segs_.push_back({lo, hi, {t}});
    f.canonicalize();
    return f;
}

RadialProfile RadialProfile::from_segments(std::vector<Segment> segs) {
    for (const auto& s : segs) {
        if (!valid_interval(s.lo, s.hi)) throw DomainError("invalid radial interval");
        for (const auto& t : s.terms) check_term(t);
    }
    RadialProfile f;
    f.segs_ = std::move(segs);
    f.canonicalize();
    return f;
}

void RadialProfile::canonicalize() {
    struct Triple { double lo, hi; Term t; };
    std::vector<Triple> triples;
    std::vector<double> cuts;
    for (const auto& s : segs_) {
        if (!(s.hi > s.lo)) continue;
        cuts.push_back(s.lo);
        cuts.push_back(s.hi);
        for (const auto& t : s.terms)
            if (t.c != 0.0) triples.push_back({s.lo, s.hi, t});
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Segment> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double L = cuts[i], H = cuts[i + 1];
        std::vector<Term> cell;
        for (const auto& tr : triples)
            if (tr.lo <= L && tr.hi >= H) cell.push_back(tr.t);
        if (cell.empty()) continue;
        std::sort(cell.begin(), cell.end(), [](const Term& x, const Term& y) {
            return x.a != y.a ? x.a < y.a : x.k < y.k;
        });
        std::vector<Term> merged;
        for (const auto& t : cell) {
            if (!merged.empty() && merged.back().a == t.a && merged.back().k == t.k)
                merged.back().c += t.c;
            else
                merged.push_back(t);
        }
        std::erase_if(merged, [](const Term& t) { return t.c == 0.0; });
        if (merged.empty()) continue;
        if (!out.empty() && out.back().hi == L) {
            const auto& prev = out.back().terms;
            bool same = prev.size() == merged.size();
            for (std::size_t j = 0; same && j < prev.size(); ++j)
                same = prev[j].c == merged[j].c && prev[j].a == merged[j].a && prev[j].k == merged[j].k;
            if (same) {
                out.back().hi = H;
                continue;
            }
        }
        out.push_back({L, H, std::move(merged)});
    }
    segs_ = std::move(out);
}

double RadialProfile::operator()(double r) const {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("radius must be positive and finite");
    // binary search for the segment containing r
    std::size_t lo = 0, hi = segs_.size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (segs_[mid].hi <= r)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == segs_.size() || r < segs_[lo].lo) return 0.0;
    return segment_value(segs_[lo], r);
}

int RadialProfile::max_logpow() const {
    int k = 0;
    for (const auto& s : segs_)
        for (const auto& t : s.terms) k = std::max(k, t.k);
    return k;
}

std::pair<double, double> RadialProfile::support() const {
    if (segs_.empty()) return {0.0, 0.0};
    return {segs_.front().lo, segs_.back().hi};
}

RadialProfile& RadialProfile::scale(double s) {
    if (!std::isfinite(s)) throw DomainError("scale factor must be finite");
    for (auto& seg : segs_)
        for (auto& t : seg.terms) t.c *= s;
    canonicalize();
    return *this;
}

RadialProfile& RadialProfile::shift_exponent(double da) {
    if (!std::isfinite(da)) throw DomainError("exponent shift must be finite");
    for (auto& seg : segs_)
        for (auto& t : seg.terms) t.a += da;
    return *this;
}

RadialProfile RadialProfile::plus(const RadialProfile& other) const {
    RadialProfile out;
    out.segs_ = segs_;
    out.segs_.insert(out.segs_.end(), other.segs_.begin(), other.segs_.end());
    out.canonicalize();
    return out;
}

RadialProfile RadialProfile::truncated(double lo, double hi) const {
    if (!(hi > lo) || lo < 0.0) throw DomainError("invalid truncation window");
    RadialProfile out;
    for (const auto& s : segs_) {
        const double L = std::max(s.lo, lo), H = std::min(s.hi, hi);
        if (H > L) out.segs_.push_back({L, H, s.terms});
    }
    out.canonicalize();
    return out;
}

RadialProfile profile_rescale(const RadialProfile& f, double s, double t) {
    if (!(t > 0.0) || !std::isfinite(t) || !std::isfinite(s))
        throw DomainError("rescale needs finite s and positive finite t");
    const double lnt = std::log(t);
    RadialProfile out;
    for (const auto& seg : f.segs_) {
        Segment ns;
        ns.lo = seg.lo * t;
        ns.hi = seg.hi == kInf ? kInf : seg.hi * t;
        for (const auto& tm : seg.terms) {
            const double c = s * tm.c * std::pow(t, -tm.a);
            if (tm.k == 0) {
                ns.terms.push_back({c, tm.a, 0});
            } else {
                ns.terms.push_back({c, tm.a, 1});
                ns.terms.push_back({-c * lnt, tm.a, 0});
            }
        }
        out.segs_.push_back(std::move(ns));
    }
    out.canonicalize();
    return out;
}

// ---------------------------------------------------------------------------
// closed-form integration

IntegralValue integral_power_log(double m, int K, double lo, double hi) {
    if (!(hi > lo) || lo < 0.0) throw DomainError("invalid integration interval");
    const double M = m + 1.0;
    if (std::abs(M) <= kCollisionTol) {
        if (lo == 0.0 || hi == kInf) return {false, kInf};
        const double a = powint(std::log(lo), K + 1), b = powint(std::log(hi), K + 1);
        return {true, (b - a) / (K + 1)};
    }
    // antiderivative sum_{i=0..K} (-1)^i K!/(K-i)! (ln r)^{K-i} r^M / M^{i+1}
    auto antider = [&](double r) {
        const double rm = std::pow(r, M);
        double fact = 1.0, sign = 1.0, acc = 0.0, mp = M;
        for (int i = 0; i <= K; ++i) {
            acc += sign * fact * powint(std::log(r), K - i) * rm / mp;
            fact *= K - i;
            sign = -sign;
            mp *= M;
        }
        return acc;
    };
    double at_lo, at_hi;
    if (lo == 0.0) {
        if (M < 0.0) return {false, kInf};
        at_lo = 0.0;
    } else {
        at_lo = antider(lo);
    }
    if (hi == kInf) {
        if (M > 0.0) return {false, kInf};
        at_hi = 0.0;
    } else {
        at_hi = antider(hi);
    }
    return {true, at_hi - at_lo};
}

IntegralValue integrate_weighted(const RadialProfile& f, double e) {
    double total = 0.0;
    for (const auto& s : f.segments()) {
        for (const auto& t : s.terms) {
            const auto part = integral_power_log(t.a + e, t.k, s.lo, s.hi);
            if (!part.finite) return {false, kInf};
            total += t.c * part.value;
        }
    }
    return {true, total};
}

namespace {

// Cell partition of (0, inf) induced by one or two profiles, gaps included.
std::vector<double> partition_points(std::initializer_list<const RadialProfile*> fs) {
    std::vector<double> cuts{0.0, kInf};
    for (const auto* f : fs)
        for (const auto& s : f->segments()) {
            cuts.push_back(s.lo);
            if (s.hi != kInf) cuts.push_back(s.hi);
        }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

const std::vector<Term>* cell_terms(const RadialProfile& f, double L, double H) {
    static const std::vector<Term> empty;
    for (const auto& s : f.segments())
        if (s.lo <= L && s.hi >= H) return &s.terms;
    return &empty;
}

} // namespace

double integrate_product(const RadialProfile& f, const RadialProfile& g, double e) {
    const auto cuts = partition_points({&f, &g});
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double L = cuts[i], H = cuts[i + 1];
        const auto* tf = cell_terms(f, L, H);
        const auto* tg = cell_terms(g, L, H);
        if (tf->empty() || tg->empty()) continue;
        for (const auto& t1 : *tf)
            for (const auto& t2 : *tg) {
                const auto part = integral_power_log(t1.a + t2.a + e, t1.k + t2.k, L, H);
                if (!part.finite)
                    throw DivergenceError("product integral diverges");
                total += t1.c * t2.c * part.value;
            }
    }
    return total;
}

// ---------------------------------------------------------------------------
// weighted p-norms

namespace {

std::vector<Term> terms_multiply(const std::vector<Term>& x, const std::vector<Term>& y) {
    std::vector<Term> out;
    for (const auto& t1 : x)
        for (const auto& t2 : y) out.push_back({t1.c * t2.c, t1.a + t2.a, t1.k + t2.k});
    std::sort(out.begin(), out.end(), [](const Term& u, const Term& v) {
        return u.a != v.a ? u.a < v.a : u.k < v.k;
    });
    std::vector<Term> merged;
    for (const auto& t : out) {
        if (!merged.empty() && merged.back().a == t.a && merged.back().k == t.k)
            merged.back().c += t.c;
        else
            merged.push_back(t);
    }
    std::erase_if(merged, [](const Term& t) { return t.c == 0.0; });
    return merged;
}

std::vector<Term> terms_pow(const std::vector<Term>& ts, int P) {
    std::vector<Term> acc{{1.0, 0.0, 0}};
    for (int i = 0; i < P; ++i) acc = terms_multiply(acc, ts);
    return acc;
}

// Representative interior points of a cell for sign sampling.
std::vector<double> cell_samples(double L, double H) {
    std::vector<double> pts;
    if (L > 0.0 && H < kInf) {
        const double r = std::pow(H / L, 0.2);
        double x = L;
        for (int i = 0; i < 4; ++i) {
            x *= r;
            pts.push_back(x);
        }
        pts.push_back(std::sqrt(L * H));
    } else if (L == 0.0 && H < kInf) {
        for (double f : {1.0 / 32, 1.0 / 8, 0.25, 0.5, 0.9}) pts.push_back(H * f);
    } else if (L > 0.0) {
        for (double f : {1.5, 3.0, 8.0, 32.0, 128.0}) pts.push_back(L * f);
    } else {
        pts = {0.25, 0.5, 1.0, 2.0, 4.0};
    }
    return pts;
}

int cell_sign(const Segment& s) {
    int sign = 0;
    double scale = 0.0;
    std::vector<double> vals;
    for (double r : cell_samples(s.lo, s.hi)) {
        const double v = segment_value(s, r);
        vals.push_back(v);
        scale = std::max(scale, std::abs(v));
    }
    for (double v : vals) {
        if (std::abs(v) <= 1e-13 * scale) continue;
        const int sv = v > 0.0 ? 1 : -1;
        if (sign == 0)
            sign = sv;
        else if (sign != sv)
            throw DomainError("p-norm of a segment that changes sign is not supported");
    }
    return sign == 0 ? 1 : sign;
}

} // namespace

double lp_weighted_norm(const RadialProfile& f, double p, double alpha, int n) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw RangeError("p must lie in [1, inf)");
    if (n < 1) throw DimensionError("dimension must be positive");
    if (!std::isfinite(alpha)) throw RangeError("alpha must be finite");

    const double w = alpha + n - 1.0;
    double total = 0.0;
    bool finite = true;
    const double P_real = std::round(p);
    const bool integer_p = std::abs(p - P_real) <= kIntegerTol && P_real >= 1.0;

    for (const auto& s : f.segments()) {
        if (s.terms.size() == 1 && s.terms[0].k == 0) {
            const auto& t = s.terms[0];
            const auto part = integral_power_log(p * t.a + w, 0, s.lo, s.hi);
            if (!part.finite) { finite = false; break; }
            total += std::pow(std::abs(t.c), p) * part.value;
            continue;
        }
        if (!integer_p)
            throw UnsupportedExponentError(
                "non-integer p over a multi-term or logarithmic segment is not elementary");
        const int P = static_cast<int>(P_real);
        const int sgn = cell_sign(s);
        const auto expanded = terms_pow(s.terms, P);
        double cell = 0.0;
        for (const auto& t : expanded) {
            const auto part = integral_power_log(t.a + w, t.k, s.lo, s.hi);
            if (!part.finite) { finite = false; break; }
            cell += t.c * part.value;
        }
        if (!finite) break;
        total += (P % 2 == 1 ? sgn : 1) * cell;
    }
    if (!finite) return kInf;
    return std::pow(sphere_area(n) * total, 1.0 / p);
}

double lp_weighted_norm(const RadialProfile& f, const SpaceParams& sp) {
    return lp_weighted_norm(f, sp.p, sp.alpha, sp.n);
}

// ---------------------------------------------------------------------------
// cumulative and tail transforms

namespace {

struct CoverCell {
    double lo, hi;
    const std::vector<Term>* terms;   // nullptr for gap cells
};

std::vector<CoverCell> cover_cells(const RadialProfile& f) {
    std::vector<CoverCell> cells;
    const auto& segs = f.segments();
    double cursor = 0.0;
    for (const auto& s : segs) {
        if (s.lo > cursor) cells.push_back({cursor, s.lo, nullptr});
        cells.push_back({s.lo, s.hi, &s.terms});
        cursor = s.hi;
    }
    if (cursor != kInf) cells.push_back({cursor, kInf, nullptr});
    return cells;
}

} // namespace

RadialProfile cumulative_profile(const RadialProfile& f, int n) {
    if (n < 1) throw DimensionError("dimension must be positive");
    if (f.is_zero()) return RadialProfile::zero();

    std::vector<Segment> out;
    double running = 0.0;   // cumulative value at the current cell's left edge
    for (const auto& cell : cover_cells(f)) {
        Segment os{cell.lo, cell.hi, {}};
        double con = running;
        if (cell.terms) {
            for (const auto& t : *cell.terms) {
                const double M = t.a + n;   // integrand exponent + 1
                if (std::abs(M) <= kCollisionTol) {
                    if (t.k == 1)
                        throw UnsupportedExponentError(
                            "cumulative transform would need a squared logarithm");
                    if (cell.lo == 0.0)
                        throw DivergenceError("cumulative integral diverges at the origin");
                    os.terms.push_back({t.c, 0.0, 1});
                    con -= t.c * std::log(cell.lo);
                    continue;
                }
                if (cell.lo == 0.0 && M < 0.0)
                    throw DivergenceError("cumulative integral diverges at the origin");
                if (t.k == 0) {
                    os.terms.push_back({t.c / M, M, 0});
                    if (cell.lo > 0.0) con -= t.c * std::pow(cell.lo, M) / M;
                } else {
                    os.terms.push_back({t.c / M, M, 1});
                    os.terms.push_back({-t.c / (M * M), M, 0});
                    if (cell.lo > 0.0) {
                        const double lm = std::pow(cell.lo, M);
                        con -= t.c * lm * (std::log(cell.lo) / M - 1.0 / (M * M));
                    }
                }
            }
        }
        if (con != 0.0) os.terms.push_back({con, 0.0, 0});
        if (!os.terms.empty()) out.push_back(os);
        if (cell.hi != kInf) {
            if (cell.terms) {
                for (const auto& t : *cell.terms) {
                    const auto part = integral_power_log(t.a + n - 1.0, t.k, cell.lo, cell.hi);
                    if (!part.finite)
                        throw DivergenceError("cumulative integral diverges at the origin");
                    running += t.c * part.value;
                }
            }
        }
    }
    return RadialProfile::from_segments(std::move(out));
}

RadialProfile tail_profile(const RadialProfile& f, double beta) {
    if (!std::isfinite(beta)) throw RangeError("beta must be finite");
    if (f.is_zero()) return RadialProfile::zero();

    auto cells = cover_cells(f);
    // Drop the trailing gap: the tail integral vanishes beyond the support.
    if (!cells.empty() && cells.back().terms == nullptr) cells.pop_back();

    std::vector<Segment> out;
    double running = 0.0;   // tail value at the current cell's right edge
    for (auto it = cells.rbegin(); it != cells.rend(); ++it) {
        const auto& cell = *it;
        Segment os{cell.lo, cell.hi, {}};
        double con = running;
        if (cell.terms) {
            for (const auto& t : *cell.terms) {
                const double M = t.a + beta;
                if (cell.hi == kInf && M >= -kCollisionTol)
                    throw DivergenceError("tail integral diverges at infinity");
                if (std::abs(M) <= kCollisionTol) {
                    if (t.k == 1)
                        throw UnsupportedExponentError(
                            "tail transform would need a squared logarithm");
                    os.terms.push_back({-t.c, 0.0, 1});
                    con += t.c * std::log(cell.hi);
                    continue;
                }
                if (t.k == 0) {
                    os.terms.push_back({-t.c / M, M, 0});
                    if (cell.hi != kInf) con += t.c * std::pow(cell.hi, M) / M;
                } else {
                    os.terms.push_back({-t.c / M, M, 1});
                    os.terms.push_back({t.c / (M * M), M, 0});
                    if (cell.hi != kInf) {
                        const double hm = std::pow(cell.hi, M);
                        con += t.c * hm * (std::log(cell.hi) / M - 1.0 / (M * M));
                    }
                }
            }
        }
        if (con != 0.0) os.terms.push_back({con, 0.0, 0});
        if (!os.terms.empty()) out.push_back(os);
        if (cell.lo > 0.0) {
            if (cell.terms) {
                for (const auto& t : *cell.terms) {
                    const auto part = integral_power_log(t.a + beta - 1.0, t.k, cell.lo, cell.hi);
                    if (!part.finite)
                        throw DivergenceError("tail integral diverges");
                    running += t.c * part.value;
                }
            }
        }
    }
    std::reverse(out.begin(), out.end());
    return RadialProfile::from_segments(std::move(out));
}

// ---------------------------------------------------------------------------
// endpoint behavior

namespace {

EndBehavior classify(const Term& dom, bool at_zero) {
    EndBehavior b;
    b.has_terms = true;
    b.dominant = dom;
    // effective sign of the dominant term near the endpoint
    int sgn = dom.c > 0.0 ? 1 : -1;
    if (at_zero && dom.k == 1) sgn = -sgn;   // ln r < 0 near the origin
    const bool grows = at_zero ? (dom.a < 0.0 || (dom.a == 0.0 && dom.k == 1))
                               : (dom.a > 0.0 || (dom.a == 0.0 && dom.k == 1));
    if (grows) {
        b.kind = sgn > 0 ? EndBehavior::Kind::PlusInfinity : EndBehavior::Kind::MinusInfinity;
    } else if (dom.a == 0.0 && dom.k == 0) {
        b.kind = EndBehavior::Kind::FiniteLimit;
        b.limit = dom.c;
    } else {
        b.kind = EndBehavior::Kind::Zero;
    }
    return b;
}

} // namespace

EndBehavior behavior_at_zero(const RadialProfile& g) {
    const auto& segs = g.segments();
    if (segs.empty() || segs.front().lo > 0.0) return EndBehavior{};
    const auto& ts = segs.front().terms;
    // dominant near 0: smallest exponent; at equal exponent the log factor wins
    const Term* dom = &ts.front();
    for (const auto& t : ts)
        if (t.a < dom->a || (t.a == dom->a && t.k > dom->k)) dom = &t;
    return classify(*dom, true);
}

EndBehavior behavior_at_infinity(const RadialProfile& g) {
    const auto& segs = g.segments();
    if (segs.empty() || segs.back().hi != kInf) return EndBehavior{};
    const auto& ts = segs.back().terms;
    const Term* dom = &ts.front();
    for (const auto& t : ts)
        if (t.a > dom->a || (t.a == dom->a && t.k > dom->k)) dom = &t;
    return classify(*dom, false);
}

} // namespace hardy
