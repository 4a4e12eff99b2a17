#include "ovrank/modular.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace ovrank;

namespace {

constexpr int kOraclePrec = 300;

bool close(const HPComplex& z, const oracle::Cx& w, double tol) {
    const HPReal scale = max(HPReal(1L, kOraclePrec), max(abs(w.re), abs(w.im)));
    return abs(z.re - w.re) / scale < HPReal(tol, kOraclePrec) && abs(z.im - w.im) / scale < HPReal(tol, kOraclePrec);
}

}  // namespace

TEST_CASE("sawtooth") {
    CHECK(sawtooth(5) == 0);
    CHECK(sawtooth(ratio(1, 2)) == 0);
    CHECK(sawtooth(ratio(7, 3)) == ratio(-1, 6));
    CHECK(sawtooth(ratio(-7, 3)) == ratio(1, 6));
    CHECK(sawtooth(ratio(-4, 1)) == 0);
    for (long k = 2; k <= 40; ++k)
        for (long u = -3 * k; u <= 3 * k; ++u) CHECK(sawtooth(ratio(u, k)) == oracle::saw(ratio(u, k)));
}

TEST_CASE("dedekind examples") {
    CHECK(dedekind_sum(0, 1) == 0);
    CHECK(dedekind_sum(1, 3) == ratio(1, 18));
    CHECK(dedekind_sum(2, 5) == 0);
    CHECK(dedekind_sum(2, 3) == ratio(-1, 18));
    CHECK(dedekind_sum_direct(1, 3) == ratio(1, 18));
}

TEST_CASE("dedekind reciprocity for k <= 200") {
    long pairs = 0;
    for (long k = 2; k <= 200; ++k)
        for (long h = 1; h < k; ++h) {
            if (oracle::gcd(h, k) != 1) continue;
            const mpq_class lhs = dedekind_sum(h, k) + dedekind_sum(k, h);
            mpq_class rhs = mpq_class(-1, 4) + (ratio(h, k) + ratio(k, h) + ratio(1, h * k)) / 12;
            rhs.canonicalize();
            REQUIRE(lhs == rhs);
            ++pairs;
        }
    CHECK(pairs > 12000);
}

TEST_CASE("fast dedekind equals the direct sums for k <= 500") {
    for (long k = 1; k <= 500; ++k)
        for (long h = 0; h < k; ++h) {
            if (oracle::gcd(h, k) != 1) continue;
            REQUIRE(dedekind_sum(h, k) == dedekind_sum_direct(h, k));
        }
    for (long k = 1; k <= 60; ++k)
        for (long h = 0; h < k; ++h)
            if (oracle::gcd(h, k) == 1) REQUIRE(dedekind_sum(h, k) == oracle::dedekind(h, k));
}

TEST_CASE("omega") {
    const int prec = kDefaultPrecision;
    const HPComplex w0 = omega(0, 1);
    CHECK(w0.re == HPReal(1L, prec));
    CHECK(w0.im.sign() == 0);
    const HPReal a = HPReal::pi(prec) / 18.0;
    const HPComplex w1 = omega(1, 3), w2 = omega(2, 3);
    CHECK(abs(w1.re - cos(a)) < HPReal(1e-45, prec));
    CHECK(abs(w1.im - sin(a)) < HPReal(1e-45, prec));
    CHECK(abs(w2.im + sin(a)) < HPReal(1e-45, prec));
    const HPReal tol = pow(HPReal(2L, prec), -140.0);
    for (long k = 1; k <= 60; ++k)
        for_each_unit(k, [&](long h, long) { CHECK(abs(abs(omega(h, k)) - 1.0) < tol); });
}

TEST_CASE("modular inverse and units") {
    CHECK(mod_inverse(2, 5) == 3);
    CHECK(mod_inverse(3, 7) == 5);
    CHECK(mod_inverse(0, 1) == 0);
    for (long k = 2; k <= 100; ++k) {
        CHECK(mod_inverse(1, k) == 1);
        long n = 0;
        for_each_unit(k, [&](long h, long hi) {
            CHECK(hi == oracle::inverse(h, k));
            ++n;
        });
        CHECK(n == unit_count(k));
    }
    CHECK(unit_count(1) == 1);
    CHECK(unit_count(12) == 4);
    CHECK_THROWS(mod_inverse(2, 4));
}

TEST_CASE("context, region, delta, m") {
    auto ctx = context(1, 5, 1);
    CHECK(ctx.c1 == 5);
    CHECK(ctx.k1 == 1);
    CHECK(ctx.l == 1);
    CHECK(region(ctx) == Region::lower);
    CHECK(delta(ctx, 0) == ratio(1, 400));
    CHECK(delta(ctx, 1) == ratio(-79, 400));
    CHECK(m_param(ctx, 0) == 0);

    ctx = context(1, 3, 3);
    CHECK(ctx.c1 == 1);
    CHECK(ctx.k1 == 1);
    CHECK(ctx.l == 0);
    CHECK(region(ctx) == Region::divisible);
    CHECK_THROWS(delta(ctx, 0));

    ctx = context(3, 5, 2);
    CHECK(ctx.c1 == 5);
    CHECK(ctx.k1 == 2);
    CHECK(ctx.l == 1);
    CHECK(m_param(ctx, 0) == ratio(-3, 2));

    // middle region: 1/4 < l/c1 <= 3/4
    ctx = context(2, 5, 1);
    CHECK(region(ctx) == Region::middle);
    CHECK(delta(ctx, 0) == 0);
    CHECK(delta(ctx, 3) == 0);
    CHECK(m_param(ctx, 2) == 0);
    CHECK(region(context(4, 5, 1)) == Region::upper);
}

TEST_CASE("delta decreases and the r-range stays short") {
    for (long c = 3; c <= 40; ++c)
        for (long a = 1; a < c; ++a) {
            if (oracle::gcd(a, c) != 1) continue;
            for (long k = 1; k <= 61; k += 2) {
                if (k % c == 0) continue;
                const auto ctx = context(a, c, k);
                if (region(ctx) == Region::middle) continue;
                long active = 0;
                for (long r = 0; r < 200; ++r) {
                    if (delta(ctx, r) <= 0) break;
                    ++active;
                    CHECK(delta(ctx, r + 1) < delta(ctx, r));
                }
                CHECK(active <= (c + 8 + 15) / 16 + 1);
            }
        }
}

TEST_CASE("exact parameters do not depend on precision") {
    const auto ctx = context(2, 7, 3);
    const mpq_class d = delta(ctx, 0), m = m_param(ctx, 0);
    const HPReal lo(d, 64), hi(d, 512);
    CHECK(HPReal(lo.to_double(), 512) == HPReal(hi.to_double(), 512));
    CHECK(delta(ctx, 0) == d);
    CHECK(m_param(ctx, 0) == m);
}

TEST_CASE("B examples") {
    const HPComplex b = kloosterman_B(1, 3, 3, 0, 0, kDefaultPrecision, KernelConvention::printed);
    CHECK(abs(b) < HPReal(1e-40, kDefaultPrecision));
    // h -> k - h conjugates every phase at m = 0 and multiplies 1/sin(pi a h'/c) by
    // (-1)^{ak/c + 1}, so B(n, 0) is real or purely imaginary accordingly
    for (long c : {3L, 5L})
        for (long a = 1; a < c; ++a)
            for (long k : {c, 3 * c})
                for (long n : {-4L, 1L, 2L, 5L}) {
                    const HPComplex z = kloosterman_B(a, c, k, n, 0, kDefaultPrecision, KernelConvention::printed);
                    const bool real = (a * k / c) % 2 == 1;
                    CHECK(abs(real ? z.im : z.re) < HPReal(1e-40, kDefaultPrecision));
                }
}

TEST_CASE("printed B matches the direct oracle") {
    for (long c : {3L, 5L, 7L})
        for (long a = 1; a < c; ++a)
            for (long k = c; k <= 5 * c; k += 2 * c)
                for (long n : {-7L, 0L, 3L}) {
                    const HPComplex z = kloosterman_B(a, c, k, n, 0, kOraclePrec, KernelConvention::printed);
                    CHECK_MESSAGE(close(z, oracle::kloosterman_B_printed(a, c, k, n, 0, kOraclePrec), 1e-80),
                                  "a=" << a << " c=" << c << " k=" << k << " n=" << n);
                }
}

TEST_CASE("A matches the direct oracle") {
    const HPComplex a6 = kloosterman_A(1, 3, 6, 0, 0, kOraclePrec);
    CHECK(close(a6, oracle::kloosterman_A(1, 3, 6, 0, 0, kOraclePrec), 1e-80));
    CHECK(close(kloosterman_A(1, 3, 6, -4, 0, kOraclePrec), oracle::kloosterman_A(1, 3, 6, -4, 0, kOraclePrec), 1e-80));
    // the same pairing flips cot(pi a h'/c), so A(n, 0) is purely imaginary
    for (long n : {-3L, 1L, 3L, 8L}) CHECK(abs(kloosterman_A(1, 3, 6, n, 0, kOraclePrec).re) < HPReal(1e-80, kOraclePrec));
    for (long c : {3L, 4L, 5L})
        for (long a = 1; a < c; ++a) {
            if (oracle::gcd(a, c) != 1) continue;
            for (long k : {2 * c, 4 * c})
                for (long n : {-5L, 0L, 2L})
                    CHECK(close(kloosterman_A(a, c, k, n, 0, kOraclePrec),
                                oracle::kloosterman_A(a, c, k, n, 0, kOraclePrec), 1e-80));
        }
    CHECK_THROWS(kloosterman_A(1, 3, 9, 0, 0));
}

TEST_CASE("D matches the direct oracle") {
    const HPReal expect = tan(HPReal::pi(kDefaultPrecision) / 5.0) / sqrt(HPReal(2L, kDefaultPrecision));
    const HPComplex d = kloosterman_D(1, 5, 1, 0, 0, +1);
    CHECK(abs(d.re - expect) < HPReal(1e-40, kDefaultPrecision));
    CHECK(abs(d.im) < HPReal(1e-40, kDefaultPrecision));
    const HPComplex dm = kloosterman_D(1, 5, 1, 0, 0, -1);
    CHECK(dm.re == -d.re);
    for (long c : {3L, 5L, 7L, 8L})
        for (long a = 1; a < c; ++a) {
            if (oracle::gcd(a, c) != 1) continue;
            for (long k = 1; k <= 15; k += 2) {
                if (k % c == 0) continue;
                const auto ctx = context(a, c, k);
                if (region(ctx) == Region::middle) continue;
                const int sign = region(ctx) == Region::lower ? 1 : -1;
                const mpq_class m = m_param(ctx, 0);
                CHECK(close(kloosterman_D(a, c, k, -9, m, sign, kOraclePrec),
                            oracle::kloosterman_D(a, c, k, -9, m, sign, kOraclePrec), 1e-80));
            }
        }
}
