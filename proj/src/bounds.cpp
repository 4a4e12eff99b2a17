#include "ovrank/bounds.hpp"

#include "ovrank/counts.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>

namespace ovrank {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Check strictly_less(const HPReal& lhs, const HPReal& rhs, double policy) {
    const int prec = std::max(lhs.precision(), rhs.precision());
    Check out{Verdict::inconclusive, lhs, rhs, HPReal(prec)};
    const HPReal scale = max(abs(lhs), abs(rhs));
    if (scale.sign() == 0) return out;
    out.relative_margin = (rhs - lhs) / scale;
    if (out.relative_margin > HPReal(policy, prec)) out.verdict = Verdict::pass;
    else if (out.relative_margin < HPReal(-policy, prec)) out.verdict = Verdict::fail;
    return out;
}

namespace {

HPReal num(const char* decimal, int prec) { return HPReal(std::string(decimal), prec); }

// p-bar(0..n) shared across constant evaluations.
std::vector<BigCount> pbar_upto(long n) {
    static std::mutex mu;
    static std::vector<BigCount> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<long>(cache.size()) <= n) cache = pbar_series_theta(static_cast<int>(n));
    return std::vector<BigCount>(cache.begin(), cache.begin() + n + 1);
}

// Upper bound for sum_{r > R} e^{pi sqrt r - alpha r}, valid once the summand
// decreases on [R, inf), i.e. R >= (pi / 2 alpha)^2. With u = sqrt t, mu = pi/(2 alpha):
//   int_R^inf = e^{pi^2/4alpha} [ e^{-alpha(U-mu)^2}/alpha + mu sqrt(pi/alpha) erfc(sqrt(alpha)(U-mu)) ].
HPReal tail_integral(const HPReal& alpha, long R) {
    const int prec = alpha.precision();
    const HPReal pi = HPReal::pi(prec);
    const HPReal mu = pi / (2.0 * alpha);
    const HPReal u = sqrt(HPReal(R, prec));
    const HPReal d = u - mu;
    return exp(pi * pi / (4.0 * alpha)) *
           (exp(-alpha * d * d) / alpha + mu * sqrt(pi / alpha) * erfc(sqrt(alpha) * d));
}

void require_c(int c, int min, const char* what) {
    if (c < min) throw std::invalid_argument(std::string(what) + ": c must be >= " + std::to_string(min));
}

struct Powers {
    HPReal pi, n, root_n, n14, n34, n54, n78, n158, n_m14;
};

Powers powers(long n, int prec) {
    const HPReal nn(n, prec);
    return {HPReal::pi(prec),     nn,
            sqrt(nn),             pow(nn, 0.25),
            pow(nn, 0.75),        pow(nn, 1.25),
            pow(nn, 0.875),       pow(nn, 1.875),
            pow(nn, -0.25)};
}

}  // namespace

CertifiedConstant const_C(int index, int c, int precision_bits, long min_terms) {
    const int prec = precision_bits;
    const HPReal pi = HPReal::pi(prec);
    HPReal coef(1L, prec), alpha(prec);
    switch (index) {
        case 1:
            coef = exp(pi / 16.0) + exp(-7.0 * pi / 16.0);
            alpha = pi;
            break;
        case 2:
            require_c(c, 3, "const_C(2)");
            coef = HPReal(2L, prec);
            alpha = HPReal(static_cast<long>(c) * c - 8, prec) * pi / HPReal(16L * c * c, prec);
            break;
        case 3: alpha = pi; break;
        case 4:
            require_c(c, 3, "const_C(4)");
            alpha = pi / HPReal(2L * c * c, prec);
            break;
        case 5:
            coef = exp(-pi / 8.0);
            alpha = pi / 4.0;
            break;
        default: throw std::invalid_argument("const_C: index must be in 1..5");
    }
    if (alpha.sign() <= 0) throw std::domain_error("const_C: series exponent is not negative; tail diverges");

    const HPReal mu = pi / (2.0 * alpha);
    long R = std::max({64L, min_terms, static_cast<long>(std::ceil((mu * mu).to_double())) + 1});
    const HPReal step = exp(-alpha);
    for (int round = 0; round < 40; ++round) {
        const auto p = pbar_upto(R);
        HPReal partial(prec), w(1L, prec);
        for (long r = 1; r <= R; ++r) {
            w *= step;
            partial += HPReal(p[r], prec) * w;
        }
        partial *= coef;
        const HPReal tail = coef * tail_integral(alpha, R);
        if (!tail.is_finite()) throw std::domain_error("const_C: tail bound is not finite");
        if (tail < partial * (kTailTolerance / 10)) {
            CertifiedConstant out{index, c, R, partial, tail, partial + tail};
            return out;
        }
        R += R / 2;
    }
    throw std::domain_error("const_C: tail bound did not converge");
}

HPReal cbar2(int c, int precision_bits) {
    require_c(c, 3, "cbar2");
    const HPReal pi = HPReal::pi(precision_bits);
    const HPReal c2(static_cast<long>(c) * c, precision_bits);
    const HPReal d = c2 - 8.0;
    return 2.0 * exp(32.0 * c2 * (16.0 * c2 + d * pi) / (pi * pi * d * d));
}

HPReal cbar4(int c, int precision_bits) {
    require_c(c, 3, "cbar4");
    const HPReal pi = HPReal::pi(precision_bits);
    const HPReal c2(static_cast<long>(c) * c, precision_bits);
    return exp(4.0 * c2 * (2.0 * c2 + pi) / (pi * pi));
}

BoundBreakdown error_pieces(int c, long n, int precision_bits) {
    require_c(c, 3, "error_pieces");
    if (n < 2) throw std::invalid_argument("error_pieces: n must be >= 2");
    const int prec = precision_bits;
    const auto P = powers(n, prec);
    const HPReal cc(static_cast<long>(c), prec);
    const HPReal q = P.n14 * cc, q2 = P.n_m14 * cc * cc, q3 = P.n14 * cc * cc;
    const HPReal C2 = cbar2(c, prec), C4 = cbar4(c, prec);

    BoundBreakdown b{c, n, {}, HPReal(prec)};
    b.pieces.emplace("S1", num("1496.9", prec) * q);
    b.pieces.emplace("S2", num("3111.36", prec) * q);
    b.pieces.emplace("S3", num("1363.79", prec) * C4 * q);
    b.pieces.emplace("S4", num("82469.8", prec) * q);
    b.pieces.emplace("S5", num("964.35", prec) * C2 * q);
    b.pieces.emplace("S6", num("482.18", prec) * C2 * q);
    b.pieces.emplace("S7", num("0.9093", prec) * P.n78 * cc);
    b.pieces.emplace("S8", num("0.9093", prec) * P.n78 * cc);
    b.pieces.emplace("S2err", num("386.18", prec) * q2);
    b.pieces.emplace("S5err", num("772.36", prec) * q2);
    b.pieces.emplace("S6err", num("386.18", prec) * q2);
    b.pieces.emplace("I2err", num("1433.39", prec) * q3);
    b.pieces.emplace("I5err", num("2866.78", prec) * q3);
    b.pieces.emplace("I6err", num("1433.39", prec) * q3);
    for (const auto& [name, v] : b.pieces) b.total += v;
    return b;
}

BoundBreakdown error_pieces_raw(int c, long n, int precision_bits) {
    require_c(c, 3, "error_pieces_raw");
    if (n < 4) throw std::invalid_argument("error_pieces_raw: n must be >= 4");
    const int prec = precision_bits;
    const auto P = powers(n, prec);
    const HPReal cc(static_cast<long>(c), prec);
    const HPReal root2 = sqrt(HPReal(2L, prec));
    const HPReal E = exp(2.0 * P.pi);
    const HPReal E8 = exp(2.0 * P.pi + P.pi / 8.0);
    const HPReal K = cot(P.pi / (2.0 * cc));
    const HPReal sk = 2.0 * P.n14;
    const HPReal denom = P.pi * (1.0 - P.pi * P.pi / 24.0);
    const HPReal L = (1.0 + log((cc - 1.0) / 2.0)) / denom;
    const HPReal C1 = const_C(1, c, prec).value, C2 = const_C(2, c, prec).value;
    const HPReal C3 = const_C(3, c, prec).value, C4 = const_C(4, c, prec).value;
    const HPReal C5 = const_C(5, c, prec).value;
    const HPReal s78 = P.n34 * log(P.n / 4.0) / (2.0 * denom * sin(P.pi / cc));
    const HPReal serr = root2 * E8 * K * L * sk / P.root_n;
    const HPReal ierr = 2.0 * root2 * (HPReal(4L, prec) / 3.0 + pow(HPReal(2L, prec), 1.25)) * E8 * K * L * P.n14;

    BoundBreakdown b{c, n, {}, HPReal(prec)};
    b.pieces.emplace("S1", 4.0 * C3 * E * K * sk);
    b.pieces.emplace("S2", 4.0 * C1 * E * root2 * K * sk);
    b.pieces.emplace("S3", 2.0 * C4 * E * K * sk);
    b.pieces.emplace("S4", C5 * E * K * sk);
    b.pieces.emplace("S5", C2 * E * root2 * K * sk);
    b.pieces.emplace("S6", C2 * E / root2 * K * sk);
    b.pieces.emplace("S7", s78);
    b.pieces.emplace("S8", s78);
    b.pieces.emplace("S2err", serr);
    b.pieces.emplace("S5err", 2.0 * serr);
    b.pieces.emplace("S6err", serr);
    b.pieces.emplace("I2err", ierr);
    b.pieces.emplace("I5err", 2.0 * ierr);
    b.pieces.emplace("I6err", ierr);
    for (const auto& [name, v] : b.pieces) b.total += v;
    return b;
}

BoundBreakdown main_term_breakdown(int c, long n, int precision_bits) {
    require_c(c, 3, "main_term_bound");
    if (n < 1) throw std::invalid_argument("main_term_bound: n must be >= 1");
    const int prec = precision_bits;
    const auto P = powers(n, prec);
    const HPReal cc(static_cast<long>(c), prec);
    BoundBreakdown b{c, n, {}, HPReal(prec)};
    b.pieces.emplace("main_G1", num("0.1624", prec) * exp(P.pi * P.root_n / cc) * P.n14 * cc);
    b.pieces.emplace("main_G2", (num("0.0266", prec) * cc + num("0.2123", prec)) *
                                    exp(P.pi * P.root_n * (1.0 - 4.0 / cc)) * P.n14 * cc);
    for (const auto& [name, v] : b.pieces) b.total += v;
    return b;
}

HPReal main_term_bound(int c, long n, int precision_bits) { return main_term_breakdown(c, n, precision_bits).total; }

HPReal error_term_bound(int c, long n, int precision_bits) {
    require_c(c, 3, "error_term_bound");
    if (n < 1) throw std::invalid_argument("error_term_bound: n must be >= 1");
    const int prec = precision_bits;
    const auto P = powers(n, prec);
    const HPReal cc(static_cast<long>(c), prec);
    const HPReal c2 = cc * cc;
    return num("1544.72", prec) * P.n_m14 * c2 + num("87078.1", prec) * P.n14 * cc +
           num("5733.56", prec) * P.n14 * c2 + num("1.8186", prec) * P.n78 * cc +
           num("1363.79", prec) * cbar4(c, prec) * P.n14 * cc + num("1446.53", prec) * cbar2(c, prec) * P.n14 * cc;
}

HPReal r_ratio(int c, long n, int precision_bits) {
    require_c(c, 3, "r_ratio");
    if (n < 2) throw std::invalid_argument("r_ratio: n must be >= 2");
    const int prec = precision_bits;
    const auto P = powers(n, prec);
    const HPReal x = P.pi * P.root_n;
    const HPReal e1 = exp(-x);
    switch (c) {
        case 3:
            return num("13.32", prec) * exp(-2.0 * x / 3.0) * P.n54 + 24.0 * exp(-4.0 * x / 3.0) * P.n54 +
                   e1 * (num("379816.2", prec) * P.n34 + num("5.3711e57", prec) * P.n54 +
                         num("149.07", prec) * P.n158);
        case 4:
            return num("17.76", prec) * exp(-3.0 * x / 4.0) * P.n54 +
                   e1 * (num("675228.9", prec) * P.n34 + num("6.9244e18", prec) * P.n54 +
                         num("198.76", prec) * P.n158);
        case 5:
            return num("69.5", prec) * exp(-4.0 * x / 5.0) * P.n54 +
                   e1 * (num("1.0551e6", prec) * P.n34 + num("7.4708e24", prec) * P.n54 +
                         num("248.45", prec) * P.n158);
        default: {
            const HPReal cc(static_cast<long>(c), prec);
            return 37259.0 * cc * cbar4(c, prec) * exp(-4.0 * x / cc) * P.n54 +
                   num("49.69", prec) * cc * e1 * P.n158;
        }
    }
}

HPReal r_ratio_piecewise(int c, long n, int precision_bits) {
    require_c(c, 3, "r_ratio_piecewise");
    if (n < 2) throw std::invalid_argument("r_ratio_piecewise: n must be >= 2");
    const int prec = precision_bits;
    const auto P = powers(n, prec);
    const HPReal cc(static_cast<long>(c), prec);
    const HPReal c2 = cc * cc;
    const HPReal x = P.pi * P.root_n;
    const HPReal bracket = num("42201.8", prec) * c2 * P.n34 + 156641.0 * c2 * P.n54 +
                           num("2.379e6", prec) * cc * P.n54 + num("49.69", prec) * cc * P.n158 +
                           num("37258.7", prec) * cc * cbar4(c, prec) * P.n54 +
                           num("39519.2", prec) * cc * cbar2(c, prec) * P.n54;
    return num("4.44", prec) * cc * exp((1.0 / cc - 1.0) * x) * P.n54 +
           (num("0.73", prec) * cc + num("5.81", prec)) * cc * exp(-4.0 * x / cc) * P.n54 + exp(-x) * bracket;
}

HPReal inverse_pbar_bound(long n, int precision_bits) {
    if (n < 2) throw std::invalid_argument("inverse_pbar_bound: n must be >= 2");
    const HPReal nn(n, precision_bits);
    return num("27.32", precision_bits) * nn * exp(-HPReal::pi(precision_bits) * sqrt(nn));
}

HPReal m_c(int c, int precision_bits) {
    require_c(c, 6, "m_c");
    const int prec = precision_bits;
    const HPReal pi = HPReal::pi(prec);
    const HPReal cc(static_cast<long>(c), prec);
    const HPReal c2 = cc * cc;
    return num("1.691e13", prec) * pow(cc, 20.0) * exp(16.0 * c2 * (2.0 * c2 + pi) / (pi * pi));
}

HPReal m_c_prime(int c, int precision_bits) {
    require_c(c, 6, "m_c_prime");
    const HPReal cc(static_cast<long>(c), precision_bits);
    return num("5.544e21", precision_bits) * pow(cc, 16.0);
}

Sandwich pbar_sandwich(long n, int precision_bits) {
    if (n < 1) throw std::invalid_argument("pbar_sandwich: n must be >= 1");
    const int prec = precision_bits;
    const HPReal nn(n, prec);
    const HPReal root_n = sqrt(nn);
    const HPReal base = exp(HPReal::pi(prec) * root_n) / (8.0 * nn);
    const HPReal inv = 1.0 / root_n;
    HPReal lower = base * (1.0 - inv);
    if (n == 1) lower = HPReal(prec);
    return {lower, base * (1.0 + inv)};
}

Threshold sandwich_threshold(int c, int precision_bits) {
    require_c(c, 3, "sandwich_threshold");
    const int prec = precision_bits;
    switch (c) {
        case 3: return {3, num("0.0019", prec), num("0.6648", prec), HPReal(2089L, prec), true};
        case 4: return {4, num("0.0091", prec), num("0.4909", prec), HPReal(272L, prec), true};
        case 5: return {5, num("0.0103", prec), num("0.3897", prec), HPReal(449L, prec), true};
        default: {
            const HPReal cc(static_cast<long>(c), prec);
            return {c, 1.0 / (2.0 * cc), 3.0 / (2.0 * cc), m_c(c, prec), false};
        }
    }
}

namespace {

// Records rhs - lhs relative to max(|lhs|,|rhs|). Strict checks need a
// positive margin beyond the policy, non-strict ones only need it >= -policy.
class AuxRecorder {
public:
    AuxRecorder(std::string name, bool strict, int prec)
        : check_{std::move(name), true, 0, HPReal(1e300, prec)}, strict_(strict), prec_(prec) {}

    void add(const HPReal& lhs, const HPReal& rhs) {
        ++check_.samples;
        const HPReal scale = max(abs(lhs), abs(rhs));
        HPReal m(prec_);
        if (scale.sign() != 0) m = (rhs - lhs) / scale;
        if (m < check_.worst_margin) check_.worst_margin = m;
        const bool ok = strict_ ? m > HPReal(kMarginPolicy, prec_) : m >= HPReal(-kMarginPolicy, prec_);
        if (!ok) check_.passed = false;
    }

    AuxCheck done() const { return check_; }

private:
    AuxCheck check_;
    bool strict_;
    int prec_;
};

}  // namespace

std::vector<AuxCheck> aux_inequalities_selftest(int precision_bits) {
    const int prec = precision_bits;
    const HPReal pi = HPReal::pi(prec);
    std::vector<AuxCheck> out;

    std::vector<HPReal> xs;
    for (int i = 1; i <= 500; ++i) xs.emplace_back(HPReal(static_cast<long>(i), prec) / 10.0);
    for (int i = 1; i <= 9; ++i) xs.emplace_back(HPReal(std::pow(10.0, -i), prec));

    {
        AuxRecorder rec("log x <= a(x^{1/a} - 1)", false, prec);
        for (double a : {0.5, 1.0, 2.0, 3.0, 8.0})
            for (const auto& x : xs) rec.add(log(x), a * (pow(x, 1.0 / a) - 1.0));
        out.push_back(rec.done());
    }
    {
        AuxRecorder rec("cot(pi/2c) <= 2c/pi < 0.6367c", true, prec);
        for (long c = 3; c <= 32; ++c) {
            const HPReal cc(c, prec);
            rec.add(cot(pi / (2.0 * cc)), 2.0 * cc / pi);
            rec.add(2.0 * cc / pi, HPReal(std::string("0.6367"), prec) * cc);
        }
        out.push_back(rec.done());
    }
    {
        AuxRecorder rec("(1+log((c-1)/2))/(pi(1-pi^2/24)) < 0.2704c", true, prec);
        for (long c = 3; c <= 32; ++c) {
            const HPReal cc(c, prec);
            rec.add((1.0 + log((cc - 1.0) / 2.0)) / (pi * (1.0 - pi * pi / 24.0)),
                    HPReal(std::string("0.2704"), prec) * cc);
        }
        out.push_back(rec.done());
    }
    {
        AuxRecorder rec("e^{-x}/(1-e^{-x})^2 < (1+x)/x^2", true, prec);
        for (const auto& x : xs) {
            const HPReal d = 1.0 - exp(-x);
            rec.add(exp(-x) / (d * d), (1.0 + x) / (x * x));
        }
        out.push_back(rec.done());
    }
    {
        AuxRecorder rec("sum pbar(n) e^{-2 pi n y} <= exp(2e^{-2 pi y}/(1-e^{-2 pi y})^2)", false, prec);
        const auto p = pbar_upto(200);
        for (long c = 3; c <= 8; ++c) {
            const HPReal cc(c, prec);
            const HPReal c2 = cc * cc;
            for (const HPReal& y : {(c2 - 8.0) / (32.0 * c2), 1.0 / (4.0 * c2)}) {
                const HPReal q = exp(-2.0 * pi * y);
                HPReal partial(prec), w(1L, prec);
                for (size_t r = 0; r < p.size(); ++r) {
                    partial += HPReal(p[r], prec) * w;
                    w *= q;
                }
                const HPReal d = 1.0 - q;
                rec.add(partial, exp(2.0 * q / (d * d)));
            }
        }
        out.push_back(rec.done());
    }
    {
        AuxRecorder rec("e^x > (1+x/y)^y", true, prec);
        for (double y : {3.0, 4.0})
            for (const auto& x : xs)
                if (x.to_double() >= 0.1) rec.add(pow(1.0 + x / y, y), exp(x));
        out.push_back(rec.done());
    }
    {
        AuxRecorder rec("sum_{k <= sqrt n} k^{-1/2} <= 2 n^{1/4}", false, prec);
        HPReal s(prec);
        long k = 0;
        for (long n = 1; n <= 10000; ++n) {
            while ((k + 1) * (k + 1) <= n) {
                ++k;
                s += 1.0 / sqrt(HPReal(k, prec));
            }
            rec.add(s, 2.0 * pow(HPReal(n, prec), 0.25));
        }
        out.push_back(rec.done());
    }
    {
        AuxRecorder rec("sin(pi/c) >= 2/c", false, prec);
        for (long c = 3; c <= 32; ++c) {
            const HPReal cc(c, prec);
            rec.add(2.0 / cc, sin(pi / cc));
        }
        out.push_back(rec.done());
    }
    return out;
}

}  // namespace ovrank
