#include "ovrank/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ovrank {

namespace {

long isqrt(long n) {
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

HPReal sqrt_rational(const Rational& q, int prec) { return sqrt(HPReal(q, prec)); }

void push_term(AsymptoticEstimate& est, long k, long r, HPComplex z) {
    const HPReal mag = abs(z);
    if (mag > est.dominant) est.dominant = mag;
    est.k_terms.push_back({k, r, std::move(z)});
}

}  // namespace

AsymptoticEstimate a_asymptotic(long a, long c, long n, const AsymptoticOptions& options) {
    if (c <= 2) throw std::invalid_argument("a_asymptotic: c must be > 2");
    if (a <= 0 || a >= c || gcd_long(a, c) != 1)
        throw std::invalid_argument("a_asymptotic: need 0 < a < c with gcd(a,c) = 1");
    if (n < 1) throw std::invalid_argument("a_asymptotic: n must be >= 1");

    const int prec = options.precision_bits;
    const long k_max = options.k_max ? *options.k_max : isqrt(n);
    const HPReal pi = HPReal::pi(prec);
    const HPReal nn(n, prec);
    const HPReal root_n = sqrt(nn);
    const HPReal scale = sqrt(HPReal(2L, prec) / nn);

    AsymptoticEstimate est{HPReal(prec), HPReal(prec), HPReal(prec), {}, prec};

    // i sqrt(2/n) B(-n,0)/sqrt(k) sinh(pi sqrt(n)/k)
    for (long k = c; k <= k_max; k += c) {
        if (k % 2 == 0) continue;
        const HPReal kk(k, prec);
        const HPReal w = scale / sqrt(kk) * sinh(pi * root_n / kk);
        HPComplex z = times_i(kloosterman_B(a, c, k, -n, Rational(0), prec, options.kernel)) * w;
        push_term(est, k, -1, std::move(z));
    }

    // 2 sqrt(2/n) D(-n,m)/sqrt(k) sinh(4 pi sqrt(delta n)/k)
    for (long k = 1; k <= k_max; k += 2) {
        if (k % c == 0) {
            if (options.conditions == SumConditions::printed)
                throw std::domain_error("a_asymptotic: the printed D-sum condition c|k leaves delta and m undefined");
            continue;
        }
        if (options.conditions == SumConditions::printed) continue;
        const auto ctx = context(a, c, k);
        if (ctx.c1 == 4) continue;
        const Region reg = region(ctx);
        if (reg == Region::middle) continue;
        const int sign = reg == Region::lower ? 1 : -1;
        const HPReal kk(k, prec);
        for (long r = 0;; ++r) {
            const Rational d = delta(ctx, r);
            if (sgn(d) <= 0) break;
            const HPReal w = 2.0 * scale / sqrt(kk) * sinh(4.0 * pi * sqrt_rational(d * n, prec) / kk);
            HPComplex z = kloosterman_D(a, c, k, -n, m_param(ctx, r), sign, prec) * w;
            push_term(est, k, r, std::move(z));
        }
    }

    HPComplex total(prec);
    for (const auto& t : est.k_terms) total += t.contribution;
    est.value = total.re;
    est.imag_residual = abs(total.im);
    return est;
}

NbarEstimate nbar_asymptotic(long a, long c, long n, const AsymptoticOptions& options) {
    if (c <= 2) throw std::invalid_argument("nbar_asymptotic: c must be > 2");
    if (n < 1) throw std::invalid_argument("nbar_asymptotic: n must be >= 1");
    const int prec = options.precision_bits;
    const long a_mod = ((a % c) + c) % c;

    HPComplex sum(prec);
    HPReal dropped(prec);
    for (long j = 1; j < c; ++j) {
        const long g = gcd_long(j, c);
        const long jr = j / g, cr = c / g;
        if (cr == 2)
            throw std::domain_error("nbar_asymptotic: j/c = 1/2 occurs for even c; no main-term formula at denominator 2");
        const auto est = a_asymptotic(jr, cr, n, options);
        sum += HPComplex::unit(ratio(-a_mod * j, c), prec) * est.value;
        dropped += est.imag_residual;
    }
    const HPReal cc(c, prec);
    return {(engel_pbar(n, prec).estimate + sum.re) / cc, (abs(sum.im) + dropped) / cc, prec};
}

namespace {

// Enough bits that the absolute rounding error of a value near e^{pi sqrt n}
// stays below 2^{-precision_bits}.
int engel_precision(long n, int precision_bits) {
    return precision_bits + static_cast<int>(std::ceil(std::numbers::pi * std::sqrt(static_cast<double>(n)) *
                                                       std::numbers::log2e));
}

}  // namespace

EngelEstimate engel_pbar_displayed(long n, int precision_bits) {
    if (n < 1) throw std::invalid_argument("engel_pbar: n must be >= 1");
    const int prec = engel_precision(n, precision_bits);
    const HPReal pi = HPReal::pi(prec);
    const HPReal nn(n, prec);
    const HPReal x = pi * sqrt(nn);
    const HPReal inv = 1.0 / x;
    const HPReal bracket = (1.0 + inv) * exp(-x) + (1.0 - inv) * exp(x);
    return {n, bracket / (8.0 * nn), r2_chain(n, prec).sharp};
}

EngelEstimate engel_pbar(long n, int precision_bits) {
    EngelEstimate est = engel_pbar_displayed(n, precision_bits);
    const int prec = est.estimate.precision();
    const HPReal pi = HPReal::pi(prec);
    const HPReal nn(n, prec);
    const HPReal root_n = sqrt(nn);
    // k = 3: (sqrt(3)/(2 pi)) S(n) d/dn[sinh(pi sqrt(n)/3)/sqrt(n)],
    // S(n) = sum_{h=1,2} omega_{h,3}^2/omega_{2h,3} e^{-2 pi i n h/3}.
    HPComplex s(prec);
    for (long h = 1; h <= 2; ++h) {
        const Rational turns = dedekind_sum(h, 3) - dedekind_sum((2 * h) % 3, 3) / 2 - ratio(n * h, 3);
        s += HPComplex::unit(turns, prec);
    }
    const HPReal y = pi * root_n / 3.0;
    const HPReal derivative = pi * cosh(y) / (6.0 * nn) - sinh(y) / (2.0 * nn * root_n);
    est.estimate += sqrt(HPReal(3L, prec)) / (2.0 * pi) * s.re * derivative;
    return est;
}

R2Chain r2_chain(long n, int precision_bits) {
    if (n < 1) throw std::invalid_argument("r2_chain: n must be >= 1");
    const int prec = precision_bits;
    const HPReal pi = HPReal::pi(prec);
    const HPReal nn(n, prec);
    const HPReal root_n = sqrt(nn);
    const HPReal n32 = nn * root_n;
    const HPReal c52 = pow(HPReal(3L, prec), 2.5);
    return {c52 * sinh(pi * root_n / 3.0) / (pi * n32), c52 * exp(pi * root_n / 3.0) / (2.0 * pi * n32),
            pi * exp(pi * root_n) / (16.0 * pi * n32)};
}

}  // namespace ovrank
