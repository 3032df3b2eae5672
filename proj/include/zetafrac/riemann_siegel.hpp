#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <thread>
#include <vector>

#include "zetafrac/consts.hpp"
#include "zetafrac/dd.hpp"
#include "zetafrac/errors.hpp"
#include "zetafrac/format.hpp"
#include "zetafrac/zero_list.hpp"

namespace zetafrac {

// Below low_t_cutoff, Z comes from an Euler-Maclaurin evaluation of
// zeta(1/2+it); above it, from the truncated main-sum asymptotic.  The
// asymptotic's first-order remainder is ~2e-3 near t=250 and only drops
// under 1e-4 past t~1e4, so the crossover sits at 1e4 and the sub-1e-8
// ordinate targets below that height are carried by Euler-Maclaurin.
struct EngineConfig {
    double target_accuracy = 1e-8;   // absolute, per ordinate
    double max_height = 1e5;         // validated envelope of the asymptotic
    int correction_order = 1;        // 0: main sum only, 1: add the C0 term
    double low_t_cutoff = 1e4;
    int threads = 0;                 // 0 = hardware concurrency
};

inline void validate_config(const EngineConfig& cfg) {
    if (!(cfg.target_accuracy >= 1e-12 && cfg.target_accuracy <= 1e-4))
        fail_usage("target_accuracy must lie in [1e-12, 1e-4]");
    if (!(cfg.max_height > 0 && cfg.max_height <= 1e5))
        fail_usage("max_height must lie in (0, 1e5]");
    if (cfg.correction_order != 0 && cfg.correction_order != 1)
        fail_usage("correction_order must be 0 or 1");
    if (!(cfg.low_t_cutoff >= 8.0))
        fail_usage("low_t_cutoff must be >= 8");
    if (cfg.threads < 0)
        fail_usage("threads must be >= 0");
}

// Phase theta(t) = (t/2)log(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760 t^3).
// Next omitted term is 31/(80640 t^5): under 1e-10 for t >= 25, and still
// under 5e-9 at t = 9.7 where the lowest Gram point lives.
inline double rs_theta(double t) {
    if (!(t >= 8.0)) fail_usage("rs_theta requires t >= 8");
    double u = t / two_pi_d;
    return 0.5 * t * std::log(u) - 0.5 * t - pi_d / 8.0
         + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t);
}

inline double rs_theta_deriv(double t) {
    return 0.5 * std::log(t / two_pi_d)
         - 1.0 / (48.0 * t * t) - 21.0 / (5760.0 * t * t * t * t);
}

namespace detail {

inline constexpr std::array<double, 24> bernoulli_over_fact = {
    8.33333333333333287e-02, -1.38888888888888894e-03,
    3.30687830687830710e-05, -8.26719576719576754e-07,
    2.08767569878681002e-08, -5.28419013868749322e-10,
    1.33825365306846789e-11, -3.38968029632258272e-13,
    8.58606205627784517e-15, -2.17486869855806192e-16,
    5.50900282836022953e-18, -1.39544646858125223e-19,
    3.53470703962946728e-21, -8.95351742703754628e-23,
    2.26795245233768293e-24, -5.74479066887220246e-26,
    1.45517247561486496e-27, -3.68599494066531029e-29,
    9.33673425709504507e-31, -2.36502241570062995e-32,
    5.99067176248213414e-34, -1.51745488446829032e-35,
    3.84375812545418860e-37, -9.73635307264669126e-39,
};

// zeta(1/2 + it) by Euler-Maclaurin with N ~ t/4 terms: the correction
// series then shrinks by ~0.4 per term, so 24 terms leave ~1e-11.
inline std::complex<double> zeta_half_em(double t) {
    using C = std::complex<double>;
    const C s(0.5, t);
    const int N = std::max(32, static_cast<int>(std::ceil(t / 4.0)));
    Kahan re, im;
    for (int n = 1; n < N; ++n) {
        double ln = std::log(static_cast<double>(n));
        double w = 1.0 / std::sqrt(static_cast<double>(n));
        re.add(w * std::cos(t * ln));
        im.add(-w * std::sin(t * ln));
    }
    C sum(re.value(), im.value());
    double lnN = std::log(static_cast<double>(N));
    C n_pow_1ms = std::sqrt(static_cast<double>(N))
                * C(std::cos(t * lnN), -std::sin(t * lnN));
    sum += n_pow_1ms / (s - 1.0);
    C n_pow_ms = n_pow_1ms / static_cast<double>(N);
    sum += 0.5 * n_pow_ms;
    C poch = s;
    C npow = n_pow_1ms / static_cast<double>(N * N);
    const double inv_n2 = 1.0 / (static_cast<double>(N) * N);
    for (std::size_t k = 0; k < bernoulli_over_fact.size(); ++k) {
        C term = bernoulli_over_fact[k] * poch * npow;
        sum += term;
        if (std::abs(term.real()) + std::abs(term.imag()) < 1e-16) break;
        double j = 2.0 * static_cast<double>(k) + 1.0;
        poch *= (s + j) * (s + j + 1.0);
        npow *= inv_n2;
    }
    return sum;
}

// C0(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p).  Both factors vanish
// at p = 1/4 and p = 3/4; near those points the quotient is evaluated in
// factored form sin(2 pi e w)/sin(2 pi e), e = p - p0, w = p + p0 - 1,
// which is finite and exact in the limit (value 1/2 at both points).
inline double c0_correction(double p) {
    for (double p0 : {0.25, 0.75}) {
        double e = p - p0;
        if (std::fabs(e) < 1e-3) {
            double w = p + p0 - 1.0;
            double sign = (p0 == 0.25) ? -1.0 : 1.0;
            if (e == 0.0) return sign * w;
            return sign * std::sin(two_pi_d * e * w) / std::sin(two_pi_d * e);
        }
    }
    double u = p * p - p - 0.0625;
    return std::cos(two_pi_d * u) / std::cos(two_pi_d * p);
}

struct LnSqrtTable {
    std::array<double, 160> ln{}, inv_sqrt{};
    LnSqrtTable() {
        for (std::size_t n = 1; n < ln.size(); ++n) {
            ln[n] = std::log(static_cast<double>(n));
            inv_sqrt[n] = 1.0 / std::sqrt(static_cast<double>(n));
        }
    }
};

inline const LnSqrtTable& ln_sqrt_table() {
    static const LnSqrtTable t;
    return t;
}

struct ZParts {
    double value = 0.0;
    double im_residue = 0.0;   // 0 in the asymptotic branch by construction
};

inline ZParts z_parts(double t, const EngineConfig& cfg) {
    if (!(t >= 8.0)) fail_usage("z requires t >= 8");
    if (!(t <= 1e5 + 1.0)) fail_usage("z validated only up to 1e5");
    ZParts out;
    if (t < cfg.low_t_cutoff) {
        std::complex<double> zeta = zeta_half_em(t);
        double th = rs_theta(t);
        std::complex<double> rot(std::cos(th), std::sin(th));
        std::complex<double> zv = rot * zeta;
        out.value = zv.real();
        out.im_residue = zv.imag();
        return out;
    }
    double tau = t / two_pi_d;
    double a = std::sqrt(tau);
    int m = static_cast<int>(a);
    double p = a - m;
    double th = rs_theta(t);
    const auto& tab = ln_sqrt_table();
    Kahan sum;
    for (int n = 1; n <= m; ++n)
        sum.add(tab.inv_sqrt[n] * std::cos(th - t * tab.ln[n]));
    out.value = 2.0 * sum.value();
    if (cfg.correction_order == 1) {
        double corr = std::pow(tau, -0.25) * c0_correction(p);
        out.value += ((m + 1) % 2 == 0 ? 1.0 : -1.0) * corr;
    }
    return out;
}

}

// Hardy Z: real, zero exactly at the critical-line zeros, sign tracked.
inline double z(double t, const EngineConfig& cfg = {}) {
    return detail::z_parts(t, cfg).value;
}

// Imaginary residue of the evaluation pipeline; identically 0 in the
// asymptotic branch, a numerical-error gauge in the Euler-Maclaurin one.
inline double z_im_residue(double t, const EngineConfig& cfg = {}) {
    return detail::z_parts(t, cfg).im_residue;
}

struct GramIndex {
    long long n = 0;
    double g = 0.0;
};

// Solve theta(g_n) = n pi.  Seeded by the log bootstrap, polished by
// safeguarded Newton; the index -1 point (g ~ 9.667) gets a fixed seed
// because the bootstrap's log(n+2) vanishes there.
inline GramIndex gram_point(long long n) {
    if (n < -1) fail_usage("gram_point requires n >= -1");
    double t;
    if (n == -1) {
        t = 9.7;
    } else {
        t = two_pi_d * static_cast<double>(n)
              / std::log(static_cast<double>(n) + 2.0) + 20.0;
        for (int i = 0; i < 6; ++i) {
            double lg = std::log(t / two_pi_d);
            if (lg < 0.5) break;
            t = two_pi_d * (static_cast<double>(n) + 0.875) / lg;
        }
    }
    const double target = static_cast<double>(n) * pi_d;
    const double floor_t = 8.2;
    if (t < 8.5) t = 8.5;
    for (int i = 0; i < 50; ++i) {
        double f = rs_theta(t) - target;
        if (std::fabs(f) < 1e-12 * pi_d) break;
        double step = f / rs_theta_deriv(t);
        double next = t - step;
        if (next < floor_t) next = 0.5 * (t + floor_t);
        if (std::fabs(next - t) < 1e-13 * t) { t = next; break; }
        t = next;
    }
    if (std::fabs(rs_theta(t) - target) > 1e-10 * pi_d)
        fail_numeric("gram_point(" + std::to_string(n)
                     + ") did not converge after 50 iterations");
    return {n, t};
}

namespace detail {

struct Bracket {
    double lo, hi, z_lo;
};

inline double bisect(const Bracket& br, const EngineConfig& cfg) {
    double lo = br.lo, hi = br.hi, zl = br.z_lo;
    while (hi - lo > cfg.target_accuracy) {
        double mid = 0.5 * (lo + hi);
        double zm = z(mid, cfg);
        if ((zl < 0.0) == (zm < 0.0)) {
            lo = mid;
            zl = zm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}

// Sign-change bracketing over Gram blocks.  A block spans consecutive
// "good" Gram points ((-1)^n Z(g_n) > 0) and owes one zero per Gram
// interval; short blocks are refined by up to 64 subdivisions per
// interval, then widened into the next block.  The final count is checked
// against the smooth term, so a missed zero is loud, never silent.
inline ZeroList find_zeros(const EngineConfig& cfg, long long how_many) {
    validate_config(cfg);
    if (how_many < 1) fail_usage("find_zeros requires how_many >= 1");

    auto good = [&](long long n, double zv) {
        return ((n % 2 == 0) ? zv : -zv) > 0.0;
    };

    // First good anchor at or after index -1.
    long long a = -1;
    GramIndex ga = gram_point(a);
    double za = z(ga.g, cfg);
    while (!good(a, za)) {
        ++a;
        ga = gram_point(a);
        za = z(ga.g, cfg);
        if (a > 100) fail_numeric("no good Gram anchor found near the origin");
    }

    std::vector<detail::Bracket> brackets;
    long long found = 0;
    double final_height = 0.0;

    while (found < how_many) {
        // Expand right to the next good Gram point; collect interior points.
        std::vector<double> ts{ga.g};
        std::vector<double> zs{za};
        long long b = a;
        GramIndex gb = ga;
        double zb = za;
        int widen = 0;
        for (;;) {
            do {
                ++b;
                gb = gram_point(b);
                if (gb.g > cfg.max_height)
                    fail_usage("max_height " + format_double(cfg.max_height)
                               + " reached before zero "
                               + std::to_string(how_many));
                zb = z(gb.g, cfg);
                ts.push_back(gb.g);
                zs.push_back(zb);
            } while (!good(b, zb));

            long long expected = b - a;
            // Count sign changes, refining up to 2^6 pieces per interval.
            auto changes = [&] {
                long long c = 0;
                for (std::size_t i = 1; i < zs.size(); ++i)
                    if ((zs[i - 1] < 0.0) != (zs[i] < 0.0)) ++c;
                return c;
            };
            for (int depth = 0; depth < 6 && changes() < expected; ++depth) {
                std::vector<double> nts, nzs;
                nts.reserve(ts.size() * 2);
                nzs.reserve(ts.size() * 2);
                for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
                    double mid = 0.5 * (ts[i] + ts[i + 1]);
                    nts.push_back(ts[i]);
                    nzs.push_back(zs[i]);
                    nts.push_back(mid);
                    nzs.push_back(z(mid, cfg));
                }
                nts.push_back(ts.back());
                nzs.push_back(zs.back());
                ts.swap(nts);
                zs.swap(nzs);
            }
            if (changes() >= expected) break;
            if (++widen > 8)
                fail_numeric("missed zero: block at Gram index "
                             + std::to_string(a) + " still short after "
                             "64 subdivisions and 8 widenings");
        }

        for (std::size_t i = 1; i < ts.size(); ++i) {
            if ((zs[i - 1] < 0.0) != (zs[i] < 0.0)) {
                brackets.push_back({ts[i - 1], ts[i], zs[i - 1]});
                ++found;
            }
        }
        final_height = gb.g;
        a = b;
        ga = gb;
        za = zb;
    }

    // Count consistency at the last fully processed block end: every zero
    // below final_height is bracketed, so the bracket count is N there.
    double expect = rvm_main_term(final_height);
    if (std::fabs(static_cast<double>(brackets.size()) - expect)
            > 2.0 * std::log(final_height))
        fail_numeric("zero count " + std::to_string(brackets.size())
                     + " at height " + format_double(final_height)
                     + " deviates from the smooth term "
                     + format_double(expect) + " by more than 2 log T");

    // Refine brackets to ordinates; static chunk partition so any thread
    // layout yields the same list in the same order.
    std::vector<double> ords(brackets.size());
    unsigned hw = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                  : std::max(1u, std::thread::hardware_concurrency());
    if (hw <= 1 || brackets.size() < 64) {
        for (std::size_t i = 0; i < brackets.size(); ++i)
            ords[i] = detail::bisect(brackets[i], cfg);
    } else {
        const std::size_t chunk = 256;
        std::vector<std::thread> pool;
        std::size_t n_chunks = (brackets.size() + chunk - 1) / chunk;
        for (unsigned w = 0; w < hw; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t c = w; c < n_chunks; c += hw) {
                    std::size_t lo = c * chunk;
                    std::size_t hi = std::min(lo + chunk, brackets.size());
                    for (std::size_t i = lo; i < hi; ++i)
                        ords[i] = detail::bisect(brackets[i], cfg);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    ords.resize(static_cast<std::size_t>(how_many));

    ZeroList zl;
    zl.ordinates = std::move(ords);
    zl.accuracy = cfg.target_accuracy;
    zl.source = {ZeroSource::Kind::computed,
                 "rs-engine,target=" + format_double(cfg.target_accuracy)
                 + ",order=" + std::to_string(cfg.correction_order)};
    double tol = 2.0 * zl.accuracy;
    for (std::size_t i = 1; i < zl.ordinates.size(); ++i)
        if (zl.ordinates[i] - zl.ordinates[i - 1] <= tol)
            zl.duplicate_flags.push_back(i);
    return zl;
}

}
