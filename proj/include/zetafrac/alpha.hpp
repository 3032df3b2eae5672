#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "zetafrac/errors.hpp"
#include "zetafrac/expr.hpp"
#include "zetafrac/hp.hpp"
#include "zetafrac/primes.hpp"

namespace zetafrac {

// Scaling constant alpha > 0, kept in 50-digit precision so that the
// resonant / generic split below can use a 1e-20 tolerance meaningfully.
struct AlphaSpec {
    hp value;
    std::string expr;
};

inline AlphaSpec parse_alpha(const std::string& expr) {
    Expr e(expr);
    hp v = e.eval_hp();
    if (v <= 0)
        fail_usage("alpha must be positive, got " + v.str(20) + " from \"" + expr + "\"");
    return AlphaSpec{v, expr};
}

enum class AlphaVerdict { resonant, generic };

struct AlphaBounds {
    int p_max = 1000;
    int a_max = 100;
    int q_max = 100;
    double tol = 1e-20;
};

// Resonant means alpha = a*log(p)/(2*pi*q) within tol; residual is the
// distance to the best candidate either way, gcd(a, q) = 1 when resonant.
struct AlphaClass {
    AlphaVerdict verdict = AlphaVerdict::generic;
    int p = 0;
    int a = 0;
    int q = 0;
    double residual = 0.0;
    AlphaBounds bounds;
};

namespace detail {

// Best bounded rational approximations a/q of beta > 0: all continued
// fraction convergents with q <= q_max plus, per step, the largest
// semiconvergent still within q_max.  Best-with-bounded-denominator is
// always among these.
inline std::vector<std::pair<long long, long long>>
bounded_rationals(const hp& beta, long long a_max, long long q_max) {
    std::vector<std::pair<long long, long long>> out;
    long long h2 = 1, k2 = 0;
    long long h1 = 0, k1 = 1;
    hp x = beta;
    for (int step = 0; step < 64; ++step) {
        hp fl = floor(x);
        if (fl > hp(4 * a_max * q_max + 1)) break;
        long long a = static_cast<long long>(fl);
        long long h = a * h2 + h1;
        long long k = a * k2 + k1;
        if (k > q_max) {
            long long m = (q_max - k1) / k2;
            if (m >= 1) {
                long long hs = m * h2 + h1, ks = m * k2 + k1;
                if (hs >= 1) out.emplace_back(hs, ks);
            }
            break;
        }
        if (h >= 1) out.emplace_back(h, k);
        h1 = h2; k1 = k2;
        h2 = h; k2 = k;
        hp frac = x - fl;
        if (frac < hp("1e-45")) break;
        x = 1 / frac;
    }
    std::vector<std::pair<long long, long long>> kept;
    for (auto [h, k] : out) {
        long long g = std::gcd(h, k);
        h /= g; k /= g;
        if (h <= a_max && k <= q_max)
            kept.emplace_back(h, k);
    }
    return kept;
}

inline const std::vector<std::pair<int, hp>>& prime_logs_1000() {
    static const std::vector<std::pair<int, hp>> table = [] {
        std::vector<std::pair<int, hp>> t;
        for (int p : primes_upto(1000)) t.emplace_back(p, log(hp(p)));
        return t;
    }();
    return table;
}

}

inline AlphaClass classify_alpha(const AlphaSpec& alpha,
                                 int p_max = 1000, int a_max = 100,
                                 int q_max = 100, double tol = 1e-20) {
    if (p_max < 1 || a_max < 1 || q_max < 1 || !(tol > 0))
        fail_usage("classification bounds must be >= 1 and tol > 0");
    AlphaClass best;
    best.bounds = {p_max, a_max, q_max, tol};
    hp best_res = -1;
    hp two_pi = 2 * hp_pi();
    auto consider = [&](int p, const hp& logp) {
        hp beta = two_pi * alpha.value / logp;
        auto cands = detail::bounded_rationals(beta, a_max, q_max);
        if (cands.empty()) {
            // beta outside the reachable a/q range; clamp to the edge.
            hp r = floor(beta + hp(0.5));
            long long a = r > hp(a_max) ? a_max
                        : (r < 1 ? 1 : static_cast<long long>(r));
            cands.emplace_back(a, 1);
        }
        for (auto [a, q] : cands) {
            hp res = abs(alpha.value - hp(a) * logp / (two_pi * hp(q)));
            bool better;
            if (best_res < 0) better = true;
            else if (res < best_res) better = true;
            else if (res == best_res && p < best.p) better = true;
            else if (res == best_res && p == best.p && q < best.q) better = true;
            else better = false;
            if (better) {
                best_res = res;
                best.p = p;
                best.a = static_cast<int>(a);
                best.q = static_cast<int>(q);
            }
        }
    };
    for (const auto& [p, logp] : detail::prime_logs_1000()) {
        if (p > p_max) break;
        consider(p, logp);
    }
    if (p_max > 1000) {
        for (int p = 1009; p <= p_max; ++p) {
            if (is_prime(static_cast<std::uint64_t>(p))) consider(p, log(hp(p)));
        }
    }
    if (best_res < 0) {
        best.verdict = AlphaVerdict::generic;
        best.residual = std::numeric_limits<double>::infinity();
        best.p = best.a = best.q = 0;
        return best;
    }
    best.residual = hp_to_double(best_res);
    if (best_res <= hp(tol)) {
        best.verdict = AlphaVerdict::resonant;
    } else {
        best.verdict = AlphaVerdict::generic;
    }
    return best;
}

// e^{2 pi j alpha} in 50-digit precision.
inline hp x_j(const AlphaSpec& alpha, int j) {
    if (j < 1) fail_usage("x_j requires j >= 1");
    return exp(2 * hp_pi() * hp(j) * alpha.value);
}

// Double mirror of x_j; the exponent guard keeps it finite.
inline double x_j_double(const AlphaSpec& alpha, int j) {
    hp e = 2 * hp_pi() * hp(j) * alpha.value;
    if (e > 700)
        fail_numeric("x_j overflows double for j = " + std::to_string(j));
    return hp_to_double(x_j(alpha, j));
}

struct PrimePowerNeighbor {
    double x = 0.0;
    std::int64_t n_x = 0;
    double lambda = 0.0;   // log of the base prime of n_x
    double distance = 0.0;
    double lambda_at_x = 0.0;
};

// Nearest prime power to x (ties toward the smaller), with the von
// Mangoldt value at x itself under an integer-snapping tolerance.
inline PrimePowerNeighbor von_mangoldt(double x, double int_tol = 1e-9) {
    if (!(x > 1.0)) fail_usage("von_mangoldt requires x > 1");
    PrimePowerNeighbor r;
    r.x = x;
    auto center = static_cast<std::int64_t>(std::llround(x));
    std::int64_t best = -1;
    double best_dist = 0.0;
    for (std::int64_t radius = 0;; ++radius) {
        if (best >= 0 && static_cast<double>(radius) - 1.0 > best_dist + 1.0) break;
        for (std::int64_t cand : {center - radius, center + radius}) {
            if (cand < 2) continue;
            if (prime_power_base(static_cast<std::uint64_t>(cand)) == 0) continue;
            double d = std::fabs(x - static_cast<double>(cand));
            if (best < 0 || d < best_dist || (d == best_dist && cand < best)) {
                best = cand;
                best_dist = d;
            }
            if (radius == 0) break;
        }
    }
    r.n_x = best;
    r.distance = best_dist;
    r.lambda = std::log(static_cast<double>(
        prime_power_base(static_cast<std::uint64_t>(best))));
    double rounded = std::nearbyint(x);
    if (std::fabs(x - rounded) <= int_tol && rounded >= 2.0) {
        auto n = static_cast<std::uint64_t>(rounded);
        std::uint64_t base = prime_power_base(n);
        if (base != 0) r.lambda_at_x = std::log(static_cast<double>(base));
    }
    return r;
}

}
