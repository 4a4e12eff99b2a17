#include "ovrank/hp.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace ovrank {

namespace {

mpfr_prec_t wider(const HPReal& a, const HPReal& b) {
    return std::max<mpfr_prec_t>(a.precision(), b.precision());
}

template <typename Fn>
HPReal unary(const HPReal& x, Fn fn) {
    HPReal r(x.precision());
    fn(r.get(), x.get(), MPFR_RNDN);
    return r;
}

template <typename Fn>
HPReal binary(const HPReal& a, const HPReal& b, Fn fn) {
    HPReal r(static_cast<int>(wider(a, b)));
    fn(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}

// Reduces turns to [0,1).
mpq_class frac(const mpq_class& turns) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), turns.get_num_mpz_t(), turns.get_den_mpz_t());
    mpq_class r = turns - mpq_class(fl);
    r.canonicalize();
    return r;
}

}  // namespace

mpq_class ratio(long num, long den) {
    if (den == 0) throw std::domain_error("ratio: zero denominator");
    mpq_class q{mpz_class(num), mpz_class(den)};
    q.canonicalize();
    return q;
}

HPReal::HPReal(int precision_bits) {
    if (precision_bits < MPFR_PREC_MIN) throw std::invalid_argument("HPReal: precision too small");
    mpfr_init2(v_, precision_bits);
    mpfr_set_zero(v_, 1);
}

HPReal::HPReal(double x, int precision_bits) : HPReal(precision_bits) { mpfr_set_d(v_, x, MPFR_RNDN); }
HPReal::HPReal(long x, int precision_bits) : HPReal(precision_bits) { mpfr_set_si(v_, x, MPFR_RNDN); }
HPReal::HPReal(const mpz_class& x, int precision_bits) : HPReal(precision_bits) {
    mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
}
HPReal::HPReal(const mpq_class& x, int precision_bits) : HPReal(precision_bits) {
    mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
}
HPReal::HPReal(const std::string& decimal, int precision_bits) : HPReal(precision_bits) {
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("HPReal: cannot parse '" + decimal + "'");
}

HPReal::HPReal(const HPReal& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

HPReal::HPReal(HPReal&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
}

HPReal& HPReal::operator=(const HPReal& other) {
    if (this != &other) {
        mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

HPReal& HPReal::operator=(HPReal&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
}

HPReal::~HPReal() { mpfr_clear(v_); }

std::string HPReal::to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    std::vector<char> buf(static_cast<size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
    return std::string(buf.data());
}

HPReal HPReal::pi(int precision_bits) {
    HPReal r(precision_bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

HPReal& HPReal::operator+=(const HPReal& o) { return *this = *this + o; }
HPReal& HPReal::operator-=(const HPReal& o) { return *this = *this - o; }
HPReal& HPReal::operator*=(const HPReal& o) { return *this = *this * o; }
HPReal& HPReal::operator/=(const HPReal& o) { return *this = *this / o; }

HPReal operator-(const HPReal& a) { return unary(a, mpfr_neg); }
HPReal operator+(const HPReal& a, const HPReal& b) { return binary(a, b, mpfr_add); }
HPReal operator-(const HPReal& a, const HPReal& b) { return binary(a, b, mpfr_sub); }
HPReal operator*(const HPReal& a, const HPReal& b) { return binary(a, b, mpfr_mul); }
HPReal operator/(const HPReal& a, const HPReal& b) { return binary(a, b, mpfr_div); }
HPReal operator+(const HPReal& a, double b) { return a + HPReal(b, a.precision()); }
HPReal operator-(const HPReal& a, double b) { return a - HPReal(b, a.precision()); }
HPReal operator*(const HPReal& a, double b) { return a * HPReal(b, a.precision()); }
HPReal operator/(const HPReal& a, double b) { return a / HPReal(b, a.precision()); }
HPReal operator+(double a, const HPReal& b) { return HPReal(a, b.precision()) + b; }
HPReal operator-(double a, const HPReal& b) { return HPReal(a, b.precision()) - b; }
HPReal operator*(double a, const HPReal& b) { return HPReal(a, b.precision()) * b; }
HPReal operator/(double a, const HPReal& b) { return HPReal(a, b.precision()) / b; }

HPReal abs(const HPReal& x) { return unary(x, mpfr_abs); }
HPReal sqrt(const HPReal& x) { return unary(x, mpfr_sqrt); }
HPReal exp(const HPReal& x) { return unary(x, mpfr_exp); }
HPReal log(const HPReal& x) { return unary(x, mpfr_log); }
HPReal sin(const HPReal& x) { return unary(x, mpfr_sin); }
HPReal cos(const HPReal& x) { return unary(x, mpfr_cos); }
HPReal tan(const HPReal& x) { return unary(x, mpfr_tan); }
HPReal cot(const HPReal& x) { return unary(x, mpfr_cot); }
HPReal sinh(const HPReal& x) { return unary(x, mpfr_sinh); }
HPReal cosh(const HPReal& x) { return unary(x, mpfr_cosh); }
HPReal erfc(const HPReal& x) { return unary(x, mpfr_erfc); }
HPReal pow(const HPReal& x, const HPReal& y) { return binary(x, y, mpfr_pow); }
HPReal pow(const HPReal& x, double y) { return pow(x, HPReal(y, x.precision())); }
HPReal max(const HPReal& a, const HPReal& b) { return a < b ? b : a; }
HPReal min(const HPReal& a, const HPReal& b) { return b < a ? b : a; }

HPReal sin_turns(const mpq_class& turns, int precision_bits) {
    HPReal angle(frac(turns), precision_bits);
    angle *= HPReal::pi(precision_bits) * 2.0;
    return sin(angle);
}

HPReal cos_turns(const mpq_class& turns, int precision_bits) {
    HPReal angle(frac(turns), precision_bits);
    angle *= HPReal::pi(precision_bits) * 2.0;
    return cos(angle);
}

HPComplex HPComplex::unit(const mpq_class& turns, int precision_bits) {
    const mpq_class t = frac(turns);
    // Exact values at the quarter turns keep symmetric sums free of rounding noise.
    if (t == 0) return {HPReal(1L, precision_bits), HPReal(precision_bits)};
    if (t == ratio(1, 4)) return {HPReal(precision_bits), HPReal(1L, precision_bits)};
    if (t == ratio(1, 2)) return {HPReal(-1L, precision_bits), HPReal(precision_bits)};
    if (t == ratio(3, 4)) return {HPReal(precision_bits), HPReal(-1L, precision_bits)};
    HPReal angle(t, precision_bits);
    angle *= HPReal::pi(precision_bits) * 2.0;
    HPComplex z(precision_bits);
    mpfr_sin_cos(z.im.get(), z.re.get(), angle.get(), MPFR_RNDN);
    return z;
}

HPComplex& HPComplex::operator+=(const HPComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
}

HPComplex& HPComplex::operator-=(const HPComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

HPComplex& HPComplex::operator*=(const HPComplex& o) {
    HPReal r = re * o.re - im * o.im;
    HPReal i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

HPComplex& HPComplex::operator*=(const HPReal& s) {
    re *= s;
    im *= s;
    return *this;
}

HPComplex conj(const HPComplex& z) { return {z.re, -z.im}; }

HPReal abs(const HPComplex& z) {
    HPReal r(z.precision());
    mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
    return r;
}

HPComplex times_i(const HPComplex& z) { return {-z.im, z.re}; }

}  // namespace ovrank
