#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <istream>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "zetafrac/consts.hpp"
#include "zetafrac/dd.hpp"
#include "zetafrac/errors.hpp"
#include "zetafrac/expr.hpp"
#include "zetafrac/hp.hpp"

namespace zetafrac {

// Mass of the mollifier below over its support [-1/2, 1/2].
inline constexpr double bump_mass = 0.60345016121893809;

// Smooth compactly supported peak: 1 at 0, identically 0 outside (-1/2, 1/2),
// monotone on each half of the support.
inline double base_bump(double x) {
    double s = 1.0 - 4.0 * x * x;
    if (s <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / s);
}

struct BumpSpec {
    double center = 0.0;
    double height = 0.0;  // peak value, attained exactly at center
    double width = 0.0;   // support is [center - width/2, center + width/2]
};

inline double bump_value(const BumpSpec& b, double x) {
    return b.height * base_bump((x - b.center) / b.width);
}

// v * delta * bump_mass; bumps scale linearly in both height and width.
inline double bump_integral(const BumpSpec& b) {
    return b.height * b.width * bump_mass;
}

enum class SequenceKind { golden, vandercorput, file };

namespace detail {

inline DD golden_step() {
    static const DD v = [] {
        hp x = (sqrt(hp(5)) - 1) / 2;
        double hi = hp_to_double(x);
        double lo = hp_to_double(x - hp(hi));
        return DD{hi, lo};
    }();
    return v;
}

// Base-2 radical inverse; exact in double for n < 2^52, all values distinct.
inline double radical_inverse(long long n) {
    double x = 0.0, b = 0.5;
    while (n > 0) {
        if (n & 1) x += b;
        b *= 0.5;
        n >>= 1;
    }
    return x;
}

}

// Point source for the construction, indexed from 1.  The golden and
// van der Corput generators are unbounded; a file-backed sequence ends.
struct Sequence {
    SequenceKind kind = SequenceKind::golden;
    std::vector<double> points;

    long long limit() const {
        return kind == SequenceKind::file
                   ? static_cast<long long>(points.size())
                   : std::numeric_limits<long long>::max();
    }

    double at(long long n) const {
        if (n < 1) fail_usage("sequence index must be >= 1");
        switch (kind) {
            case SequenceKind::golden:
                return frac_unit(mul(detail::golden_step(), static_cast<double>(n)));
            case SequenceKind::vandercorput:
                return detail::radical_inverse(n);
            case SequenceKind::file:
                if (n > limit()) fail_usage("sequence index past end of file-backed sequence");
                return points[static_cast<std::size_t>(n - 1)];
        }
        fail_usage("corrupt sequence kind");
    }
};

inline Sequence golden_sequence() { return {SequenceKind::golden, {}}; }
inline Sequence vandercorput_sequence() { return {SequenceKind::vandercorput, {}}; }

inline Sequence file_sequence(std::vector<double> pts) {
    if (pts.empty()) fail_data("point sequence is empty");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double v = pts[i];
        if (!(v >= 0.0) || !(v < 1.0) || !std::isfinite(v))
            fail_data("sequence point " + std::to_string(i + 1) + " = "
                      + std::to_string(v) + " is outside [0, 1)");
    }
    return {SequenceKind::file, std::move(pts)};
}

inline Sequence ingest_sequence(std::istream& in) {
    std::vector<double> pts;
    double v;
    while (in >> v) pts.push_back(v);
    if (!in.eof()) fail_data("malformed sequence file: non-numeric content");
    return file_sequence(std::move(pts));
}

enum class BudgetMode { paper, tightened };

// Per-level error allowance: 7^{-k}, or 1/(32*6^k) which is small enough
// that the gap certificate closes at every finite level rather than only
// for large k.
inline double level_budget(BudgetMode mode, int k) {
    if (k < 1) fail_usage("level index must be >= 1");
    double d = mode == BudgetMode::tightened ? 32.0 : 1.0;
    double b = mode == BudgetMode::tightened ? 6.0 : 7.0;
    for (int i = 0; i < k; ++i) d *= b;
    return 1.0 / d;
}

// Sum of budgets of all levels beyond k (geometric tail, exact ratio).
inline double budget_tail(BudgetMode mode, int k) {
    return level_budget(mode, k) / (mode == BudgetMode::paper ? 6.0 : 5.0);
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

struct LevelRecord {
    int k = 0;
    Interval band;    // (t - 2^{1-k}, t - 2^{-k}], the territory of this level
    Interval window;  // [t - 7*2^{-(k+2)}, t - 5*2^{-(k+2)}], closed, holds all centers
    double v_k = 0.0;       // 3^{-k}, common bump height
    long long n_k = 0;      // scan length that certified this level
    double delta_k = 0.0;   // common bump width
    std::vector<BumpSpec> bumps;  // sorted by center, pairwise disjoint supports
    double integral_band = 0.0;   // v_k * delta_k * bump_mass * #bumps, exact by linearity
};

// Level-by-level bump tower anchored just below t on the circle, together
// with the scan machinery that certifies each level against a decay
// function.  Levels depend on all earlier ones and must be built in order.
struct AdversarialConstruction {
    double t = 0.0;
    Sequence seq;
    std::function<double(long long)> decay;
    BudgetMode mode = BudgetMode::tightened;
    long long n_max = 100000000;
    std::vector<LevelRecord> levels;
};

inline std::function<double(long long)> decay_from_expr(const std::string& src) {
    auto e = std::make_shared<Expr>(src, "n");
    return [e](long long n) { return e->eval(static_cast<double>(n)); };
}

inline AdversarialConstruction make_construction(double t, Sequence seq,
                                                 std::function<double(long long)> decay,
                                                 BudgetMode mode = BudgetMode::tightened,
                                                 long long n_max = 100000000) {
    if (!(t >= 0.0) || !(t < 1.0)) fail_usage("anchor point t must lie in [0, 1)");
    if (!decay) fail_usage("decay function must be provided");
    if (n_max < 1 || n_max > (1LL << 52)) fail_usage("scan cap out of range");
    AdversarialConstruction c;
    c.t = t;
    c.seq = std::move(seq);
    c.decay = std::move(decay);
    c.mode = mode;
    c.n_max = n_max;
    return c;
}

namespace detail {

// Map a torus point in [0, 1) into the frame (t - 1, t] the tower lives in.
inline double to_frame(double t, double a) { return a > t ? a - 1.0 : a; }

// d = t - y in (0, 1) lies in band k iff 2^{-k} <= d < 2^{1-k}.
inline int band_index(double d) {
    int e;
    std::frexp(d, &e);
    return 1 - e;
}

// At most one bump of a level covers y (supports are disjoint), and it can
// only be the nearest center on either side.
inline double eval_level(const LevelRecord& lv, double y) {
    auto it = std::lower_bound(
        lv.bumps.begin(), lv.bumps.end(), y,
        [](const BumpSpec& b, double v) { return b.center < v; });
    if (it != lv.bumps.end()) {
        double v = bump_value(*it, y);
        if (v != 0.0) return v;
    }
    if (it != lv.bumps.begin()) return bump_value(*(it - 1), y);
    return 0.0;
}

// y already in the frame (t - 1, t].
inline double eval_frame(const AdversarialConstruction& c, double y) {
    double d = c.t - y;
    if (d <= 0.0 || d >= 1.0) return 0.0;
    int k = band_index(d);
    if (k < 1 || k > static_cast<int>(c.levels.size())) return 0.0;
    return eval_level(c.levels[static_cast<std::size_t>(k - 1)], y);
}

inline double eval_decay(const AdversarialConstruction& c, long long n) {
    double v = c.decay(n);
    if (!std::isfinite(v) || v <= 0.0)
        fail_data("decay function must be positive and finite, got f("
                  + std::to_string(n) + ") = " + std::to_string(v));
    return v;
}

// Running normalized exponential sums at the first few integer frequencies;
// any of them staying away from 0 disproves equidistribution.
struct EquidistWatch {
    static constexpr int jmax = 8;
    std::complex<double> z[jmax] = {};
    long long n = 0;

    void add(double a) {
        std::complex<double> base = std::polar(1.0, two_pi_d * a);
        std::complex<double> w = base;
        for (int j = 0; j < jmax; ++j) {
            z[j] += w;
            w *= base;
        }
        ++n;
    }

    // worst normalized magnitude and the frequency attaining it
    std::pair<double, int> worst() const {
        double best = 0.0;
        int arg = 1;
        for (int j = 0; j < jmax; ++j) {
            double m = std::abs(z[j]) / static_cast<double>(n);
            if (m > best) { best = m; arg = j + 1; }
        }
        return {best, arg};
    }
};

}

inline const LevelRecord& build_level(AdversarialConstruction& c, int k) {
    if (k < 1 || k > 60) fail_usage("level index must be in [1, 60]");
    if (k != static_cast<int>(c.levels.size()) + 1)
        fail_usage("levels must be built in order; next is level "
                   + std::to_string(c.levels.size() + 1));

    double eps = level_budget(c.mode, k);
    double pow3 = 1.0;
    for (int i = 0; i < k; ++i) pow3 *= 3.0;
    double vk = 1.0 / pow3;

    Interval band{c.t - std::ldexp(1.0, 1 - k), c.t - std::ldexp(1.0, -k)};
    Interval window{c.t - std::ldexp(7.0, -(k + 2)), c.t - std::ldexp(5.0, -(k + 2))};
    double e_hi = band.lo;

    long long n_cap = std::min(c.n_max, c.seq.limit());
    if (n_cap < 1) fail_data("sequence has no points");

    // The decay function is declared decreasing, so if it has not dropped
    // below the budget by the end of the scannable range it never will.
    if (!(detail::eval_decay(c, n_cap) < eps))
        fail_numeric("level " + std::to_string(k) + " infeasible at budget: f("
                     + std::to_string(n_cap) + ") = "
                     + std::to_string(detail::eval_decay(c, n_cap))
                     + " >= " + std::to_string(eps));

    double int_below = 0.0;
    for (const LevelRecord& lv : c.levels) int_below += lv.integral_band;

    Kahan sum_below;
    long long cnt_window = 0;
    std::vector<double> centers;
    detail::EquidistWatch watch;
    double thr = std::ldexp(1.0, -(k + 2));
    long long n_k = -1;
    double f_last = 0.0, dev_last = 0.0;

    for (long long n = 1; n <= n_cap; ++n) {
        double a = c.seq.at(n);
        watch.add(a);
        double y = detail::to_frame(c.t, a);
        if (y >= window.lo && y <= window.hi) {
            ++cnt_window;
            centers.push_back(y);
        } else if (k > 1 && y <= e_hi) {
            sum_below.add(detail::eval_frame(c, y));
        }
        f_last = detail::eval_decay(c, n);
        dev_last = k > 1
            ? std::fabs(sum_below.value() / static_cast<double>(n) - int_below)
            : 0.0;
        bool ok_decay = f_last < eps;
        bool ok_mean = dev_last <= eps;
        bool ok_count = static_cast<double>(cnt_window) > static_cast<double>(n) * thr;
        if (ok_decay && ok_mean && ok_count) { n_k = n; break; }
        if (n >= 4096 && (n & (n - 1)) == 0) {
            auto [mag, j] = watch.worst();
            if (mag > 0.25)
                fail_data("sequence is not equidistributed: normalized exponential "
                          "sum at frequency " + std::to_string(j) + " is "
                          + std::to_string(mag) + " after " + std::to_string(n)
                          + " points");
        }
    }

    if (n_k < 0) {
        auto [mag, j] = watch.worst();
        if (watch.n >= 64 && mag > 0.1)
            fail_data("sequence is not equidistributed: normalized exponential "
                      "sum at frequency " + std::to_string(j) + " is "
                      + std::to_string(mag) + " after " + std::to_string(watch.n)
                      + " points");
        fail_numeric("level " + std::to_string(k) + " infeasible at budget after "
                     + std::to_string(n_cap) + " points: f = " + std::to_string(f_last)
                     + ", mean deviation = " + std::to_string(dev_last)
                     + ", window count = " + std::to_string(cnt_window)
                     + " (needed > " + std::to_string(static_cast<double>(n_cap) * thr)
                     + "), budget = " + std::to_string(eps));
    }

    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
    double b = static_cast<double>(centers.size());

    double cap = std::ldexp(1.0, -(k + 3));
    if (centers.size() > 1) {
        double gap_min = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < centers.size(); ++i)
            gap_min = std::min(gap_min, centers[i + 1] - centers[i]);
        cap = std::min(cap, 0.5 * gap_min);
    }
    cap = std::min(cap, eps / (vk * bump_mass * b));
    double delta = 0.5 * cap;
    double integral = vk * delta * bump_mass * b;
    if (!(delta > 0.0) || !(delta < std::ldexp(1.0, -(k + 2))) || !(integral < eps))
        fail_numeric("level " + std::to_string(k)
                     + ": bump width selection violated its budget");

    LevelRecord lv;
    lv.k = k;
    lv.band = band;
    lv.window = window;
    lv.v_k = vk;
    lv.n_k = n_k;
    lv.delta_k = delta;
    lv.bumps.reserve(centers.size());
    for (double u : centers) lv.bumps.push_back({u, vk, delta});
    lv.integral_band = integral;
    c.levels.push_back(std::move(lv));
    return c.levels.back();
}

inline void build_levels(AdversarialConstruction& c, int k_top) {
    if (k_top < 1) fail_usage("level count must be >= 1");
    while (static_cast<int>(c.levels.size()) < k_top)
        build_level(c, static_cast<int>(c.levels.size()) + 1);
}

inline double eval_h(const AdversarialConstruction& c, double x) {
    double y = x - std::floor(x);
    if (y >= 1.0) y = 0.0;
    return detail::eval_frame(c, detail::to_frame(c.t, y));
}

// Exact by linearity of the bump integrals; h vanishes outside the bands.
inline double integral_h(const AdversarialConstruction& c) {
    Kahan s;
    for (const LevelRecord& lv : c.levels) s.add(lv.integral_band);
    return s.value();
}

struct GapTerms {
    double sum_below = 0.0;  // empirical average of h over points left of the band
    double sum_band = 0.0;   // ... over points in the band
    double sum_above = 0.0;  // ... over points between band and t
    double int_below = 0.0;
    double int_band = 0.0;
    double int_above = 0.0;
    double tail_bound = 0.0;  // unbuilt levels change int_above by at most this
};

struct GapReport {
    int k = 0;
    long long n_k = 0;
    double lhs = 0.0;   // empirical average minus integral of built h
    double f_nk = 0.0;
    bool holds = false;       // lhs >= f_nk, computed directly
    bool guaranteed = false;  // analytic certificate applies at this level
    double guarantee_threshold = 0.0;
    GapTerms terms;
};

inline GapReport verify_gap(const AdversarialConstruction& c, int k) {
    if (k < 1 || k > static_cast<int>(c.levels.size()))
        fail_usage("verify_gap: level " + std::to_string(k) + " is not built");
    const LevelRecord& lv = c.levels[static_cast<std::size_t>(k - 1)];
    long long n = lv.n_k;

    Kahan below, band, above;
    for (long long j = 1; j <= n; ++j) {
        double y = detail::to_frame(c.t, c.seq.at(j));
        double h = detail::eval_frame(c, y);
        if (y <= lv.band.lo) below.add(h);
        else if (y <= lv.band.hi) band.add(h);
        else above.add(h);
    }

    GapReport r;
    r.k = k;
    r.n_k = n;
    double dn = static_cast<double>(n);
    r.terms.sum_below = below.value() / dn;
    r.terms.sum_band = band.value() / dn;
    r.terms.sum_above = above.value() / dn;
    for (int m = 0; m < k - 1; ++m) r.terms.int_below += c.levels[m].integral_band;
    r.terms.int_band = lv.integral_band;
    for (std::size_t m = static_cast<std::size_t>(k); m < c.levels.size(); ++m)
        r.terms.int_above += c.levels[m].integral_band;
    r.terms.tail_bound = budget_tail(c.mode, static_cast<int>(c.levels.size()));

    r.lhs = (r.terms.sum_below + r.terms.sum_band + r.terms.sum_above)
            - (r.terms.int_below + r.terms.int_band + r.terms.int_above);
    r.f_nk = detail::eval_decay(c, n);
    r.holds = r.lhs >= r.f_nk;

    double pow6 = 1.0;
    for (int i = 0; i < k; ++i) pow6 *= 6.0;
    if (c.mode == BudgetMode::tightened) {
        // band sum >= 1/(4*6^k) while the three budget losses and the level
        // tail cost at most 3*eps_k + eps_k/5, leaving at least 1/(8*6^k)
        r.guarantee_threshold = 1.0 / (8.0 * pow6);
        r.guaranteed = r.lhs >= r.guarantee_threshold
                       && r.guarantee_threshold >= r.f_nk;
    } else {
        double pow7 = 1.0;
        for (int i = 0; i < k; ++i) pow7 *= 7.0;
        r.guarantee_threshold = 1.0 / (4.0 * pow6) - 4.0 / pow7;
        r.guaranteed = r.guarantee_threshold >= level_budget(c.mode, k);
    }
    return r;
}

}
