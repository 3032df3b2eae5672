// Computes zeros on the fly, then watches the fractional parts of
// alpha*gamma_n settle toward the resonant density for alpha = log(2)/(2*pi).
#include <cstdio>

#include "zetafrac/alpha.hpp"
#include "zetafrac/density.hpp"
#include "zetafrac/empirical.hpp"
#include "zetafrac/riemann_siegel.hpp"

using namespace zetafrac;

int main() {
    EngineConfig cfg;
    ZeroList zl = find_zeros(cfg, 2000);
    AlphaSpec alpha = parse_alpha("log(2)/(2*pi)");
    DensityModel model = density_from_class(classify_alpha(alpha));

    std::printf("%8s %10s %12s %12s\n", "N", "T", "D*", "predicted");
    for (long long n : {125LL, 250LL, 500LL, 1000LL, 2000LL}) {
        double T = zl.ordinates[static_cast<std::size_t>(n - 1)];
        EmpiricalMeasure em = fractional_parts(zl, alpha, T);
        std::printf("%8lld %10.2f %12.6f %12.6f\n", n, T, star_discrepancy(em),
                    predicted_discrepancy(model, T).value);
    }

    double T = zl.last();
    std::printf("\nnormalized Weyl sums at T = %.2f\n", T);
    for (int j = 1; j <= 3; ++j) {
        WeylSum ws = weyl_sum(zl, alpha, j, T);
        std::printf("  j=%d  re=%+.6f  predicted=%+.6f\n", j,
                    ws.normalized.real(), fourier_coeff(model, j).real());
    }
    return 0;
}
