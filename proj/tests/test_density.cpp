#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "zetafrac/density.hpp"
#include "zetafrac/quadrature.hpp"

using namespace zetafrac;

namespace {

// Independent reference values, frozen from a 30-digit evaluation of the
// closed forms (and, for the derivative maxima, from the stationary-point
// condition 2r c^2 + (1+r^2) c - 4r = 0 solved exactly).
constexpr double REF_G_211_AT_0 = -0.5326614582308588;
constexpr double REF_G_211_AT_HALF = 0.09139025792555561;
constexpr double REF_GSER_211_K1 = -0.15601292903910360;
constexpr double REF_GMIN_311 = -0.47769792608712782;
constexpr double REF_GMIN_221 = -0.22063560015265159;
constexpr double REF_BIGG_211_QUARTER = -0.0216127216157543;
constexpr double REF_FHAT_211_1 = -0.07800646451955180;
constexpr double REF_FHAT_535_5 = -0.02291075244052254;
constexpr double REF_IGS_211 = 0.024340034027360376;
constexpr double REF_IGS_321 = 0.0076430935815887721;
constexpr double REF_CONST_211 = 0.17328679513998633;
constexpr double REF_MAXGP_211 = 7.4956673188815272;
constexpr double REF_MAXGP_311 = 4.7266036084718541;
constexpr double REF_MAXGP_535 = 1.4969194972977208;
constexpr double REF_MAXGP_221 = 1.8709945451400181;
constexpr double REF_MAXGP_1334 = 0.43877386075798183;
constexpr double REF_B_211 = 0.0032472137558784154;

// Every resonant model with p <= 13, a <= 3, q <= 4.
std::vector<DensityModel> model_grid() {
    std::vector<DensityModel> out;
    for (int p : {2, 3, 5, 7, 11, 13})
        for (int a = 1; a <= 3; ++a)
            for (int q = 1; q <= 4; ++q)
                if (std::gcd(a, q) == 1) out.push_back(resonant_density(p, a, q));
    return out;
}

double sup_abs_G(const DensityModel& m) {
    const long long n = 4096LL * m.q;
    double best = 0.0;
    long long best_i = 0;
    for (long long i = 0; i <= n; ++i) {
        double val = std::abs(cumulative_G(m, static_cast<double>(i) / n));
        if (val > best) {
            best = val;
            best_i = i;
        }
    }
    double h = 1.0 / static_cast<double>(n);
    return detail::golden_max(
        [&](double y) { return std::abs(cumulative_G(m, y)); },
        (best_i - 1) * h, (best_i + 1) * h);
}

}  // namespace

TEST_CASE("density model construction and validation", "[density]") {
    DensityModel m = resonant_density(2, 1, 1);
    REQUIRE(m.kind == DensityKind::resonant);
    REQUIRE(std::abs(m.r - 0.7071067811865476) < 1e-16);
    REQUIRE(std::abs(m.log_p - std::log(2.0)) < 1e-16);

    DensityModel m535 = resonant_density(5, 3, 5);
    REQUIRE(std::abs(m535.r - 0.08944271909999159) < 1e-16);

    REQUIRE_THROWS_AS(resonant_density(4, 1, 1), Error);
    REQUIRE_THROWS_AS(resonant_density(6, 1, 1), Error);
    REQUIRE_THROWS_AS(resonant_density(2, 0, 1), Error);
    REQUIRE_THROWS_AS(resonant_density(2, 1, 0), Error);
    REQUIRE_THROWS_AS(resonant_density(2, 2, 2), Error);
    REQUIRE_THROWS_AS(resonant_density(3, 2, 4), Error);

    DensityModel tv = trivial_density();
    REQUIRE(tv.kind == DensityKind::trivial);
    for (double t : {0.0, 0.1, 0.5, 0.97}) {
        REQUIRE(g(tv, t) == 0.0);
        REQUIRE(g_series(tv, t, 5) == 0.0);
        REQUIRE(cumulative_G(tv, t) == 0.0);
    }
    REQUIRE(fourier_coeff(tv, 3) == std::complex<double>(0.0, 0.0));
    REQUIRE_THROWS_AS(g_min(tv), Error);
    REQUIRE_THROWS_AS(b_constant(tv), Error);
    REQUIRE_THROWS_AS(max_abs_g_prime(tv), Error);
}

TEST_CASE("density model follows the alpha classification", "[density]") {
    AlphaClass res = classify_alpha(parse_alpha("log(2)/(2*pi)"));
    DensityModel m = density_from_class(res);
    REQUIRE(m.kind == DensityKind::resonant);
    REQUIRE(m.p == 2);
    REQUIRE(m.a == 1);
    REQUIRE(m.q == 1);

    AlphaClass res2 = classify_alpha(parse_alpha("3*log(5)/(10*pi)"));
    DensityModel m2 = density_from_class(res2);
    REQUIRE(m2.kind == DensityKind::resonant);
    REQUIRE(m2.p == 5);
    REQUIRE(m2.a == 3);
    REQUIRE(m2.q == 5);

    AlphaClass gen = classify_alpha(parse_alpha("log(6)/(2*pi)"));
    REQUIRE(density_from_class(gen).kind == DensityKind::trivial);
}

TEST_CASE("closed form hits the frozen references", "[density]") {
    DensityModel m = resonant_density(2, 1, 1);
    REQUIRE(std::abs(g(m, 0.0) - REF_G_211_AT_0) < 5e-16);
    REQUIRE(std::abs(g(m, 0.5) - REF_G_211_AT_HALF) < 5e-16);

    // The minimum sits at t = k/q for every model.
    for (const DensityModel& md : {m, resonant_density(3, 1, 1),
                                   resonant_density(5, 3, 5),
                                   resonant_density(13, 3, 4)}) {
        REQUIRE(std::abs(g(md, 0.0) - g_min(md)) < 1e-12);
        for (int k = 1; k < md.q; ++k)
            REQUIRE(std::abs(g(md, static_cast<double>(k) / md.q) - g_min(md)) < 1e-12);
    }

    REQUIRE(std::abs(g_min(resonant_density(3, 1, 1)) - REF_GMIN_311) < 5e-16);
    REQUIRE(std::abs(g_min(resonant_density(2, 2, 1)) - REF_GMIN_221) < 5e-16);
    REQUIRE(std::abs(g_min(resonant_density(2, 2, 1)) + std::log(2.0) / pi_d) < 5e-16);
}

TEST_CASE("series route agrees with the closed form under the tail bound", "[density]") {
    DensityModel m211 = resonant_density(2, 1, 1);
    REQUIRE(std::abs(g_series(m211, 0.0, 1) - REF_GSER_211_K1) < 1e-15);
    REQUIRE(std::abs(g_series(m211, 0.25, 1)) < 1e-15);
    REQUIRE(std::abs(g(m211, 0.0) - g_series(m211, 0.0, 200)) < 1e-12);
    REQUIRE_THROWS_AS(g_series(m211, 0.0, 0), Error);

    const int terms = 40;
    for (const DensityModel& m : model_grid()) {
        double bound =
            (m.log_p / pi_d) * std::pow(m.r, terms + 1) / (1.0 - m.r) + 1e-13;
        for (int i = 0; i < 400; ++i) {
            double t = i / 400.0;
            REQUIRE(std::abs(g(m, t) - g_series(m, t, terms)) <= bound);
        }
    }
}

TEST_CASE("mean zero, periodicity, evenness", "[density]") {
    for (const DensityModel& m :
         {resonant_density(2, 1, 1), resonant_density(3, 2, 3),
          resonant_density(7, 1, 2), resonant_density(5, 3, 5)}) {
        double total = integrate([&](double t) { return g(m, t); }, 0.0, 1.0, 1e-12);
        REQUIRE(std::abs(total) < 1e-10);
        double period = 1.0 / m.q;
        for (int i = 0; i < 97; ++i) {
            double t = 0.83 * i / 97.0;
            REQUIRE(std::abs(g(m, t) - g(m, t + period)) < 1e-12);
            REQUIRE(std::abs(g(m, t) - g(m, period - t)) < 1e-12);
        }
    }
}

TEST_CASE("grid minimum matches g_min and lands on k/q", "[density]") {
    for (const DensityModel& m :
         {resonant_density(2, 1, 1), resonant_density(3, 2, 3),
          resonant_density(7, 1, 2)}) {
        const int n = 100000;
        double best = 1e300;
        double arg = 0.0;
        for (int i = 0; i < n; ++i) {
            double t = static_cast<double>(i) / n;
            double val = g(m, t);
            if (val < best) {
                best = val;
                arg = t;
            }
        }
        REQUIRE(std::abs(best - g_min(m)) < 1e-8);
        double dist = 1.0;
        for (int k = 0; k <= m.q; ++k)
            dist = std::min(dist, std::abs(arg - static_cast<double>(k) / m.q));
        REQUIRE(dist < 1e-4);
    }
}

TEST_CASE("cumulative integral: endpoints, frozen value, quadrature", "[density]") {
    DensityModel m = resonant_density(2, 1, 1);
    REQUIRE(cumulative_G(m, 0.0) == 0.0);
    REQUIRE(std::abs(cumulative_G(m, 1.0)) < 1e-14);
    REQUIRE(std::abs(cumulative_G(m, 0.5)) < 1e-15);
    REQUIRE(std::abs(cumulative_G(m, 0.25) - REF_BIGG_211_QUARTER) < 1e-15);

    for (const DensityModel& md :
         {m, resonant_density(3, 2, 3), resonant_density(5, 3, 5)}) {
        for (double y : {0.1, 0.25, 0.37, 0.5, 0.77, 1.0}) {
            double quad = integrate([&](double t) { return g(md, t); }, 0.0, y, 1e-12);
            REQUIRE(std::abs(cumulative_G(md, y) - quad) < 1e-10);
        }
        for (int i = 0; i < 23; ++i) {
            double y = 0.9 * i / 23.0;
            REQUIRE(std::abs(cumulative_G(md, y) - cumulative_G(md, y + 1.0 / md.q)) <
                    1e-12);
        }
    }
}

TEST_CASE("derivatives: G' = g and the g' closed form", "[density]") {
    const double h = 1e-6;
    for (const DensityModel& m :
         {resonant_density(2, 1, 1), resonant_density(7, 2, 3)}) {
        for (int i = 0; i < 1000; ++i) {
            double y = (i + 0.5) / 1000.0;
            double fd = (cumulative_G(m, y + h) - cumulative_G(m, y - h)) / (2.0 * h);
            REQUIRE(std::abs(fd - g(m, y)) <= 1e-6 * (0.1 + std::abs(g(m, y))));
            double fdg = (g(m, y + h) - g(m, y - h)) / (2.0 * h);
            REQUIRE(std::abs(fdg - g_prime(m, y)) <=
                    1e-4 * (1.0 + std::abs(g_prime(m, y))));
        }
    }
}

TEST_CASE("fourier coefficients", "[density]") {
    DensityModel m211 = resonant_density(2, 1, 1);
    REQUIRE(fourier_coeff(m211, 0) == std::complex<double>(0.0, 0.0));
    REQUIRE(std::abs(fourier_coeff(m211, 1).real() - REF_FHAT_211_1) < 5e-16);
    REQUIRE(fourier_coeff(m211, 1).imag() == 0.0);
    REQUIRE(fourier_coeff(m211, -1) == fourier_coeff(m211, 1));

    DensityModel m535 = resonant_density(5, 3, 5);
    REQUIRE(fourier_coeff(m535, 3) == std::complex<double>(0.0, 0.0));
    REQUIRE(std::abs(fourier_coeff(m535, 5).real() - REF_FHAT_535_5) < 5e-16);
    REQUIRE(fourier_coeff(m535, -5) == fourier_coeff(m535, 5));

    // Quadrature route: integral of g(t)cos(2 pi f t) picks out the
    // coefficient, the sine integral vanishes by evenness.
    for (long long f : {1LL, 2LL, 3LL, 5LL}) {
        double re = integrate(
            [&](double t) { return g(m211, t) * std::cos(two_pi_d * f * t); }, 0.0,
            1.0, 1e-12);
        double im = integrate(
            [&](double t) { return g(m211, t) * std::sin(two_pi_d * f * t); }, 0.0,
            1.0, 1e-12);
        REQUIRE(std::abs(re - fourier_coeff(m211, f).real()) < 1e-10);
        REQUIRE(std::abs(im) < 1e-10);
    }
    for (long long f : {3LL, 5LL, 10LL}) {
        double re = integrate(
            [&](double t) { return g(m535, t) * std::cos(two_pi_d * f * t); }, 0.0,
            1.0, 1e-11);
        REQUIRE(std::abs(re - fourier_coeff(m535, f).real()) < 1e-9);
    }
}

TEST_CASE("parseval: partial sums approach the closed-form integral", "[density]") {
    for (const DensityModel& m :
         {resonant_density(2, 1, 1), resonant_density(3, 2, 1)}) {
        double igs = b_constant(m).integral_g_sq;
        double prev = 0.0;
        for (int terms = 1; terms <= 30; ++terms) {
            double partial = 0.0;
            for (int k = 1; k <= terms; ++k) {
                double c = std::abs(fourier_coeff(m, static_cast<long long>(k) * m.q));
                partial += 2.0 * c * c;
            }
            double coeff = m.log_p / (2.0 * pi_d);
            double tail = 2.0 * coeff * coeff * std::pow(m.r, 2 * (terms + 1)) /
                          (1.0 - m.r * m.r);
            REQUIRE(partial >= prev);
            REQUIRE(partial <= igs + 1e-15);
            REQUIRE(std::abs(igs - partial) <= tail + 1e-15);
            prev = partial;
        }
    }
    REQUIRE(std::abs(b_constant(resonant_density(2, 1, 1)).integral_g_sq -
                     REF_IGS_211) < 1e-15);
    REQUIRE(std::abs(b_constant(resonant_density(3, 2, 1)).integral_g_sq -
                     REF_IGS_321) < 1e-15);

    for (const DensityModel& m :
         {resonant_density(2, 1, 1), resonant_density(3, 2, 1),
          resonant_density(5, 3, 5)}) {
        double quad = integrate([&](double t) { double v = g(m, t); return v * v; },
                                0.0, 1.0, 1e-11);
        REQUIRE(std::abs(quad - b_constant(m).integral_g_sq) < 1e-9);
    }
}

TEST_CASE("derivative maximum and the functional constant B", "[density]") {
    REQUIRE(std::abs(max_abs_g_prime(resonant_density(2, 1, 1)) - REF_MAXGP_211) < 1e-10);
    REQUIRE(std::abs(max_abs_g_prime(resonant_density(3, 1, 1)) - REF_MAXGP_311) < 1e-10);
    REQUIRE(std::abs(max_abs_g_prime(resonant_density(5, 3, 5)) - REF_MAXGP_535) < 1e-10);
    REQUIRE(std::abs(max_abs_g_prime(resonant_density(2, 2, 1)) - REF_MAXGP_221) < 1e-10);
    REQUIRE(std::abs(max_abs_g_prime(resonant_density(13, 3, 4)) - REF_MAXGP_1334) < 1e-10);

    BConstant b = b_constant(resonant_density(2, 1, 1));
    REQUIRE(std::abs(b.B - REF_B_211) < 1e-12);
    REQUIRE(std::abs(b.B - b.integral_g_sq / b.max_abs_g_prime) == 0.0);

    for (const DensityModel& m : model_grid()) {
        BConstant bc = b_constant(m);
        REQUIRE(bc.integral_g_sq > 0.0);
        REQUIRE(bc.max_abs_g_prime > 0.0);
        REQUIRE(bc.B > 0.0);
    }

    // Rescaling t -> qt multiplies the derivative bound by q.
    for (auto [p, a, q] : {std::tuple{2, 1, 3}, {3, 2, 3}, {7, 3, 4}}) {
        double ref = max_abs_g_prime(resonant_density(p, a, 1));
        double scaled = max_abs_g_prime(resonant_density(p, a, q));
        REQUIRE(std::abs(scaled - q * ref) <= 1e-9 * scaled);
    }
}

TEST_CASE("discrepancy prediction and its supremum identity", "[density]") {
    DensityModel m = resonant_density(2, 1, 1);
    REQUIRE(std::abs(discrepancy_constant(m) - REF_CONST_211) < 1e-15);
    REQUIRE(std::abs(discrepancy_constant(m) - std::log(2.0) / 4.0) < 1e-16);

    PredictedDiscrepancy at_e = predicted_discrepancy(m, 2.718281828459045);
    REQUIRE(!at_e.vanishing);
    REQUIRE(std::abs(at_e.value - REF_CONST_211) < 1e-12);
    PredictedDiscrepancy far = predicted_discrepancy(m, 1e5);
    REQUIRE(std::abs(far.value - far.constant / std::log(1e5)) < 1e-16);
    REQUIRE(far.value < at_e.value);

    PredictedDiscrepancy tv = predicted_discrepancy(trivial_density(), 100.0);
    REQUIRE(tv.vanishing);
    REQUIRE(tv.value == 0.0);
    REQUIRE(tv.constant == 0.0);

    REQUIRE_THROWS_AS(predicted_discrepancy(m, 2.0), Error);
    REQUIRE_THROWS_AS(predicted_discrepancy(m, 0.0), Error);
    REQUIRE_THROWS_AS(predicted_discrepancy(m, 2.70), Error);

    // constant * log T = 2 pi sup|G|: the extreme argument of
    // 1 - r e^{-i theta} is arcsin(r).
    for (const DensityModel& md :
         {m, resonant_density(3, 1, 1), resonant_density(5, 3, 5),
          resonant_density(13, 3, 4)}) {
        double lhs = discrepancy_constant(md);
        double rhs = 2.0 * pi_d * sup_abs_G(md);
        REQUIRE(std::abs(lhs - rhs) < 1e-9);
    }
}
