#pragma once

#include <cmath>

namespace zetafrac {

// Double-double value x = hi + lo with hi = fl(x), |lo| <= ulp(hi)/2.
// Roughly 32 significant decimal digits; enough to keep mod-1 phase
// reduction of products like j*alpha*gamma below 1e-20 absolute error.
// Error-free transforms after Dekker and Shewchuk; products rely on fma.
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    DD() = default;
    constexpr DD(double h, double l) : hi(h), lo(l) {}
    constexpr explicit DD(double x) : hi(x), lo(0.0) {}
};

// a + b = s + err exactly, any magnitudes.  6 flops.
inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// a + b = s + err exactly, requires |a| >= |b|.  3 flops.
inline DD fast_two_sum(double a, double b) {
    double s = a + b;
    double err = b - (s - a);
    return {s, err};
}

// a * b = p + err exactly.  2 flops.
inline DD two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
}

inline DD add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = fast_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return fast_two_sum(s.hi, s.lo);
}

inline DD add(DD a, double b) {
    DD s = two_sum(a.hi, b);
    double e = s.lo + a.lo;
    return fast_two_sum(s.hi, e);
}

inline DD neg(DD a) { return {-a.hi, -a.lo}; }

inline DD sub(DD a, DD b) { return add(a, neg(b)); }

inline DD mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    double e = std::fma(a.hi, b.lo, p.lo);
    e = std::fma(a.lo, b.hi, e);
    return fast_two_sum(p.hi, e);
}

inline DD mul(DD a, double b) {
    DD p = two_prod(a.hi, b);
    double e = std::fma(a.lo, b, p.lo);
    return fast_two_sum(p.hi, e);
}

// hi is already the correctly rounded value of hi + lo.
inline double to_double(DD a) { return a.hi; }

// For normalized input, hi + lo cannot cross the next integer above or
// below hi, so only an exactly-integer hi needs the lo sign looked at.
inline double floor_dd(DD a) {
    double f = std::floor(a.hi);
    if (f == a.hi) return f + std::floor(a.lo);
    return f;
}

// x mod 1 as a double-double in [0, 1).
inline DD frac(DD a) {
    DD r = add(a, -floor_dd(a));
    if (r.hi < 0.0) r = add(r, 1.0);
    if (r.hi >= 1.0) r = add(r, -1.0);
    return r;
}

// x mod 1 rounded into [0, 1).  A value within one ulp below 1 can round
// to 1.0; it wraps to 0.0, a torus displacement of ~1e-16.
inline double frac_unit(DD a) {
    double v = frac(a).hi;
    if (v >= 1.0) v = 0.0;
    if (v < 0.0) v = 0.0;
    return v + 0.0;
}

// Compensated accumulator (Kahan).  Deterministic for a fixed visit order.
struct Kahan {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

}
