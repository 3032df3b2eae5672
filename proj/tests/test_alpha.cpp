#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "zetafrac/alpha.hpp"

using namespace zetafrac;

namespace {

const hp REF_EXP_PI_2("4.8104773809653516554730356667038331263901708746645");

// Exhaustive search over the same candidate space, one best (a, q) per
// (p, q) pair; the library must never do worse.
AlphaClass brute_classify(const AlphaSpec& alpha, int p_max, int a_max,
                          int q_max, double tol) {
    AlphaClass best;
    best.bounds = {p_max, a_max, q_max, tol};
    hp best_res = -1;
    hp two_pi = 2 * hp_pi();
    for (int p : primes_upto(p_max)) {
        hp logp = log(hp(p));
        hp beta = two_pi * alpha.value / logp;
        for (int q = 1; q <= q_max; ++q) {
            long long a = std::llround(hp_to_double(beta * q));
            if (a < 1) a = 1;
            if (a > a_max) a = a_max;
            long long g = std::gcd(a, static_cast<long long>(q));
            long long ar = a / g, qr = q / g;
            if (ar > a_max) continue;
            hp res = abs(alpha.value - hp(ar) * logp / (two_pi * hp(qr)));
            bool better = best_res < 0 || res < best_res
                || (res == best_res && p < best.p)
                || (res == best_res && p == best.p && qr < best.q);
            if (better) {
                best_res = res;
                best.p = p;
                best.a = static_cast<int>(ar);
                best.q = static_cast<int>(qr);
            }
        }
    }
    best.residual = hp_to_double(best_res);
    best.verdict = (best_res >= 0 && best_res <= hp(tol))
        ? AlphaVerdict::resonant : AlphaVerdict::generic;
    return best;
}

AlphaSpec make_resonant(int p, int a, int q) {
    AlphaSpec s;
    s.value = hp(a) * log(hp(p)) / (2 * hp_pi() * hp(q));
    return s;
}

}

TEST_CASE("parse_alpha evaluates and validates", "[alpha]") {
    AlphaSpec a = parse_alpha("log(2)/(2*pi)");
    REQUIRE(abs(a.value - hp("0.11031780007632579669822821605899884549134487436483"))
            < hp("1e-45"));
    REQUIRE(a.expr == "log(2)/(2*pi)");
    REQUIRE(parse_alpha("1").value == 1);
    REQUIRE_THROWS_AS(parse_alpha("log(1)/(2*pi)"), Error);
    REQUIRE_THROWS_AS(parse_alpha("0-3"), Error);
    try {
        parse_alpha("log(1)/(2*pi)");
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::usage);
        REQUIRE(std::string(e.what()).find("positive") != std::string::npos);
    }
}

TEST_CASE("classification of the three reference constants", "[alpha]") {
    AlphaClass c = classify_alpha(parse_alpha("log(2)/(2*pi)"));
    REQUIRE(c.verdict == AlphaVerdict::resonant);
    REQUIRE(c.p == 2);
    REQUIRE(c.a == 1);
    REQUIRE(c.q == 1);
    REQUIRE(c.residual <= 1e-20);

    c = classify_alpha(parse_alpha("(3*log(5))/(10*pi)"));
    REQUIRE(c.verdict == AlphaVerdict::resonant);
    REQUIRE(c.p == 5);
    REQUIRE(c.a == 3);
    REQUIRE(c.q == 5);

    c = classify_alpha(parse_alpha("log(6)/(2*pi)"));
    REQUIRE(c.verdict == AlphaVerdict::generic);
    REQUIRE(c.residual > 1e-20);
    REQUIRE(c.residual < 1.1e-6);   // best candidate sits at p=101, 33/85
}

TEST_CASE("classification matches exhaustive search", "[alpha]") {
    std::vector<std::string> exprs = {
        "log(2)/(2*pi)", "log(6)/(2*pi)", "sqrt(2)/7", "1/4",
        "log(3)/(4*pi)", "0.1103178", "log(10)/(2*pi)", "pi/32",
        "7*log(13)/(18*pi)", "sqrt(5)-2",
    };
    for (const auto& e : exprs) {
        AlphaSpec a = parse_alpha(e);
        AlphaClass got = classify_alpha(a, 200, 100, 100, 1e-20);
        AlphaClass want = brute_classify(a, 200, 100, 100, 1e-20);
        INFO("alpha = " << e);
        REQUIRE(got.verdict == want.verdict);
        REQUIRE(got.residual <= want.residual * (1 + 1e-12) + 1e-45);
        if (got.verdict == AlphaVerdict::resonant) {
            REQUIRE(got.p == want.p);
            REQUIRE(got.a == want.a);
            REQUIRE(got.q == want.q);
        }
    }
}

TEST_CASE("resonant grid is recovered exactly", "[alpha]") {
    // Subsample of the p <= 100, a <= 20, q <= 20 grid; the full grid runs
    // under the [slow] tag below.
    std::mt19937 rng(2025);
    auto ps = primes_upto(100);
    for (int iter = 0; iter < 120; ++iter) {
        int p = ps[rng() % ps.size()];
        int a = 1 + static_cast<int>(rng() % 20);
        int q = 1 + static_cast<int>(rng() % 20);
        int g = std::gcd(a, q);
        a /= g; q /= g;
        AlphaClass c = classify_alpha(make_resonant(p, a, q));
        INFO("p=" << p << " a=" << a << " q=" << q);
        REQUIRE(c.verdict == AlphaVerdict::resonant);
        REQUIRE(c.p == p);
        REQUIRE(c.a == a);
        REQUIRE(c.q == q);
    }
}

TEST_CASE("resonant grid full sweep", "[alpha][slow]") {
    for (int p : primes_upto(100)) {
        for (int q = 1; q <= 20; ++q) {
            for (int a = 1; a <= 20; ++a) {
                if (std::gcd(a, q) != 1) continue;
                AlphaClass c = classify_alpha(make_resonant(p, a, q));
                INFO("p=" << p << " a=" << a << " q=" << q);
                REQUIRE(c.verdict == AlphaVerdict::resonant);
                REQUIRE(c.p == p);
                REQUIRE(c.a == a);
                REQUIRE(c.q == q);
            }
        }
    }
}

TEST_CASE("x_j powers", "[alpha]") {
    AlphaSpec a = parse_alpha("log(2)/(2*pi)");
    REQUIRE(abs(x_j(a, 1) - 2) < hp("1e-45"));
    REQUIRE(abs(x_j(a, 3) - 8) < hp("2e-45"));
    AlphaSpec quarter = parse_alpha("1/4");
    REQUIRE(abs(x_j(quarter, 1) - REF_EXP_PI_2) < hp("1e-45"));
    REQUIRE_THROWS_AS(x_j(a, 0), Error);

    // Resonant alpha: x_{q m} is p^{a m} to 1e-30 relative.
    for (auto [p, aa, q] : {std::array<int,3>{2,1,1}, {5,3,5}, {7,2,3}}) {
        AlphaSpec s = make_resonant(p, aa, q);
        for (int m = 1; m <= 3; ++m) {
            hp want = pow(hp(p), aa * m);
            hp got = x_j(s, q * m);
            REQUIRE(abs(got - want) < want * hp("1e-30"));
        }
    }
}

TEST_CASE("x_j double mirror overflow guard", "[alpha]") {
    AlphaSpec one = parse_alpha("1");
    REQUIRE(std::isfinite(x_j_double(one, 100)));
    REQUIRE_THROWS_AS(x_j_double(one, 112), Error);
    try {
        x_j_double(one, 112);
    } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::numeric);
    }
}

TEST_CASE("nearest prime power basics", "[alpha]") {
    auto r = von_mangoldt(8.0);
    REQUIRE(r.n_x == 8);
    REQUIRE(r.lambda == Catch::Approx(std::log(2.0)).epsilon(1e-15));
    REQUIRE(r.lambda_at_x == Catch::Approx(std::log(2.0)).epsilon(1e-15));
    REQUIRE(r.distance == 0.0);

    r = von_mangoldt(6.0);
    REQUIRE(r.n_x == 5);           // tie with 7 broken downward
    REQUIRE(r.lambda == Catch::Approx(std::log(5.0)).epsilon(1e-15));
    REQUIRE(r.lambda_at_x == 0.0);

    r = von_mangoldt(6.0 + 1e-9);
    REQUIRE(r.n_x == 7);

    r = von_mangoldt(1.5);
    REQUIRE(r.n_x == 2);
    REQUIRE(r.lambda_at_x == 0.0);
    REQUIRE(r.distance == 0.5);

    REQUIRE_THROWS_AS(von_mangoldt(1.0), Error);
    REQUIRE_THROWS_AS(von_mangoldt(0.5), Error);
}

TEST_CASE("von Mangoldt agrees with a sieve", "[alpha]") {
    const int n = 100000;
    std::vector<int> spf(n + 1, 0);
    for (int i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        for (long long j = i; j <= n; j += i)
            if (!spf[j]) spf[static_cast<std::size_t>(j)] = i;
    }
    auto sieve_lambda = [&](int m) {
        int p = spf[m], v = m;
        while (v % p == 0) v /= p;
        return v == 1 ? std::log(static_cast<double>(p)) : 0.0;
    };
    for (int m = 2; m <= n; ++m) {
        auto r = von_mangoldt(static_cast<double>(m));
        double want = sieve_lambda(m);
        if (r.lambda_at_x != want) {
            INFO("m = " << m);
            REQUIRE(r.lambda_at_x == want);
        }
        if (want > 0.0) {
            if (r.n_x != m) {
                INFO("m = " << m);
                REQUIRE(r.n_x == m);
            }
        }
    }
}

TEST_CASE("degenerate classification bounds", "[alpha]") {
    AlphaClass c = classify_alpha(parse_alpha("1"), 1, 1, 1, 1e-20);
    REQUIRE(c.verdict == AlphaVerdict::generic);
    REQUIRE(std::isinf(c.residual));
    REQUIRE_THROWS_AS(classify_alpha(parse_alpha("1"), 0, 1, 1, 1e-20), Error);
}
