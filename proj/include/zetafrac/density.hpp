#pragma once

#include <cmath>
#include <complex>
#include <numeric>
#include <string>

#include "zetafrac/alpha.hpp"
#include "zetafrac/consts.hpp"
#include "zetafrac/dd.hpp"
#include "zetafrac/errors.hpp"
#include "zetafrac/hp.hpp"
#include "zetafrac/primes.hpp"

namespace zetafrac {

enum class DensityKind { trivial, resonant };

// Limiting density of the ordinate fractional parts.  Generic alpha gets
// the identically-zero (trivial) model; alpha = a*log(p)/(2*pi*q) gets the
// resonant model, which is all the structure there is.  r = p^{-a/2} and
// log p are cached, r in (0,1) always.
struct DensityModel {
    DensityKind kind = DensityKind::trivial;
    int p = 0;
    int a = 0;
    int q = 0;
    hp log_p_hp;
    double log_p = 0.0;
    double r = 0.0;
};

inline DensityModel trivial_density() { return DensityModel{}; }

inline DensityModel resonant_density(int p, int a, int q) {
    if (!is_prime(p))
        fail_usage("resonant density requires prime p, got " + std::to_string(p));
    if (a < 1 || q < 1)
        fail_usage("resonant density requires a >= 1 and q >= 1");
    if (std::gcd(a, q) != 1)
        fail_usage("resonant density requires gcd(a, q) = 1, got a = " +
                   std::to_string(a) + ", q = " + std::to_string(q));
    DensityModel m;
    m.kind = DensityKind::resonant;
    m.p = p;
    m.a = a;
    m.q = q;
    m.log_p_hp = log(hp(p));
    m.log_p = hp_to_double(m.log_p_hp);
    hp r = exp(-(hp(a) / 2) * m.log_p_hp);
    m.r = hp_to_double(r);
    if (!(m.r > 0.0 && m.r < 1.0)) fail_numeric("density parameter r left (0,1)");
    return m;
}

inline DensityModel density_from_class(const AlphaClass& c) {
    if (c.verdict == AlphaVerdict::resonant) return resonant_density(c.p, c.a, c.q);
    return trivial_density();
}

// Closed form (Poisson-kernel shape): with c = cos(2*pi*q*t),
//   g(t) = -log(p) * r * (c - r) / (pi * (1 - 2*r*c + r^2)).
// Denominator >= (1-r)^2 > 0, so no singularities.  1/q-periodic, mean
// zero, even within each period.
inline double g(const DensityModel& m, double t) {
    if (m.kind == DensityKind::trivial) return 0.0;
    double c = std::cos(2.0 * pi_d * m.q * t);
    double v = 1.0 - 2.0 * m.r * c + m.r * m.r;
    return -m.log_p * m.r * (c - m.r) / (pi_d * v);
}

// Partial sums of the cosine series; the independent route for g.
inline double g_series(const DensityModel& m, double t, int terms) {
    if (terms < 1) fail_usage("g_series requires at least one term");
    if (m.kind == DensityKind::trivial) return 0.0;
    double theta = 2.0 * pi_d * m.q * t;
    double rk = 1.0;
    Kahan sum;
    for (int k = 1; k <= terms; ++k) {
        rk *= m.r;
        sum.add(rk * std::cos(k * theta));
    }
    return -(m.log_p / pi_d) * sum.value();
}

// d/dt of the closed form: 2*q*log(p)*r*(1-r^2)*sin(2*pi*q*t) / v^2.
inline double g_prime(const DensityModel& m, double t) {
    if (m.kind == DensityKind::trivial) return 0.0;
    double theta = 2.0 * pi_d * m.q * t;
    double c = std::cos(theta);
    double s = std::sin(theta);
    double v = 1.0 - 2.0 * m.r * c + m.r * m.r;
    return 2.0 * m.q * m.log_p * m.r * (1.0 - m.r * m.r) * s / (v * v);
}

// Global minimum -log(p)/(pi*(p^{a/2}-1)), attained at t = k/q.  Evaluated
// in high precision and narrowed so comparisons against it are clean.
inline double g_min(const DensityModel& m) {
    if (m.kind != DensityKind::resonant)
        fail_usage("g_min is defined only for resonant densities");
    hp denom = exp((hp(m.a) / 2) * m.log_p_hp) - 1;
    return hp_to_double(-m.log_p_hp / (hp_pi() * denom));
}

// Antiderivative with G(0) = 0:
//   G(y) = -(log p / (2*pi^2*q)) * arg(1 - r*exp(-2*pi*i*q*y)).
// Re(1 - r e^{-i theta}) >= 1 - r > 0, so the principal-branch argument
// stays inside (-pi/2, pi/2); that is what keeps G single-valued.
inline double cumulative_G(const DensityModel& m, double y) {
    if (m.kind == DensityKind::trivial) return 0.0;
    double theta = 2.0 * pi_d * m.q * y;
    double re = 1.0 - m.r * std::cos(theta);
    double im = m.r * std::sin(theta);
    double ang = std::atan2(im, re);
    if (!(re > 0.0) || !(std::abs(ang) < 0.5 * pi_d))
        fail_numeric("cumulative_G left the principal branch");
    return -m.log_p / (2.0 * pi_d * pi_d * m.q) * ang;
}

// Fourier coefficient of g at integer frequency f: supported exactly on
// the nonzero multiples of q, where ghat(q*k) = -log(p) * r^{|k|} / (2*pi).
// Real-valued (g is even); returned as complex for uniformity.
inline std::complex<double> fourier_coeff(const DensityModel& m, long long f) {
    if (m.kind == DensityKind::trivial || f == 0) return {0.0, 0.0};
    if (f % m.q != 0) return {0.0, 0.0};
    long long k = f / m.q;
    if (k < 0) k = -k;
    double mag = hp_to_double(m.log_p_hp * exp(-(hp(m.a) * k / 2) * m.log_p_hp) /
                              (2 * hp_pi()));
    return {-mag, 0.0};
}

struct BConstant {
    double integral_g_sq = 0.0;
    double max_abs_g_prime = 0.0;
    double B = 0.0;
};

namespace detail {

// Maximize fn over [lo, hi] by golden-section search; fn must be unimodal
// on the bracket, which holds for |g'| between adjacent sample points.
template <class F>
inline double golden_max(F&& fn, double lo, double hi) {
    const double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = fn(c), fd = fn(d);
    for (int it = 0; it < 90 && (b - a) > 1e-15 * (1.0 + std::abs(a)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = fn(d);
        }
    }
    return std::max(fc, fd);
}

}  // namespace detail

// max over t of |g'(t)|: dense scan (4096 samples per period times q
// periods) then golden-section refinement around the best sample.  |g'|
// has one smooth interior peak per half-period, so the bracket one sample
// wide on each side is unimodal.
inline double max_abs_g_prime(const DensityModel& m) {
    if (m.kind != DensityKind::resonant)
        fail_usage("max_abs_g_prime is defined only for resonant densities");
    const long long n = 4096LL * m.q;
    double best = 0.0;
    long long best_i = 0;
    for (long long i = 0; i < n; ++i) {
        double val = std::abs(g_prime(m, static_cast<double>(i) / n));
        if (val > best) {
            best = val;
            best_i = i;
        }
    }
    double h = 1.0 / static_cast<double>(n);
    double lo = (best_i - 1) * h;
    double hi = (best_i + 1) * h;
    return detail::golden_max([&](double t) { return std::abs(g_prime(m, t)); }, lo, hi);
}

// B = (integral of g^2) / max|g'|; the integral comes from Parseval in
// closed form, log^2(p) / (2*pi^2*(p^a - 1)).
inline BConstant b_constant(const DensityModel& m) {
    if (m.kind != DensityKind::resonant)
        fail_usage("b_constant is defined only for resonant densities");
    BConstant out;
    hp pa = exp(hp(m.a) * m.log_p_hp);
    out.integral_g_sq =
        hp_to_double(m.log_p_hp * m.log_p_hp / (2 * hp_pi() * hp_pi() * (pa - 1)));
    out.max_abs_g_prime = max_abs_g_prime(m);
    out.B = out.integral_g_sq / out.max_abs_g_prime;
    return out;
}

// Leading constant of the conjectured discrepancy decay:
//   (log p / (pi * q)) * arcsin(p^{-a/2}),
// equal to 2*pi*sup_y|G(y)| because sup|arg(1 - r e^{-i theta})| = arcsin r.
inline double discrepancy_constant(const DensityModel& m) {
    if (m.kind == DensityKind::trivial) return 0.0;
    hp r = exp(-(hp(m.a) / 2) * m.log_p_hp);
    return hp_to_double(m.log_p_hp / (hp_pi() * m.q) * asin(r));
}

struct PredictedDiscrepancy {
    double value = 0.0;     // constant / log T
    double constant = 0.0;  // 0 for the trivial model
    bool vanishing = false; // trivial model: decay is faster than 1/log T
};

inline PredictedDiscrepancy predicted_discrepancy(const DensityModel& m, double T) {
    if (!(T >= 2.718281828459045))
        fail_usage("predicted_discrepancy requires T >= e");
    PredictedDiscrepancy out;
    if (m.kind == DensityKind::trivial) {
        out.vanishing = true;
        return out;
    }
    out.constant = discrepancy_constant(m);
    out.value = out.constant / std::log(T);
    return out;
}

}  // namespace zetafrac
