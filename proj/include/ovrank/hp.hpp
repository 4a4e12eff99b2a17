// High-precision real and complex values backed by MPFR.
//
// Every HPReal carries its own mantissa precision. Binary operations produce
// a result at the larger of the two operand precisions, so mixing precisions
// never loses bits silently.

#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace ovrank {

inline constexpr int kDefaultPrecision = 160;

// Canonical num/den.
mpq_class ratio(long num, long den);

class HPReal {
public:
    explicit HPReal(int precision_bits = kDefaultPrecision);
    HPReal(double x, int precision_bits);
    HPReal(long x, int precision_bits);
    HPReal(const mpz_class& x, int precision_bits);
    HPReal(const mpq_class& x, int precision_bits);
    HPReal(const std::string& decimal, int precision_bits);

    HPReal(const HPReal& other);
    HPReal(HPReal&& other) noexcept;
    HPReal& operator=(const HPReal& other);
    HPReal& operator=(HPReal&& other) noexcept;
    ~HPReal();

    int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Scientific notation with `digits` significant digits.
    std::string to_string(int digits = 20) const;
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    static HPReal pi(int precision_bits);

    HPReal& operator+=(const HPReal& o);
    HPReal& operator-=(const HPReal& o);
    HPReal& operator*=(const HPReal& o);
    HPReal& operator/=(const HPReal& o);

    friend HPReal operator-(const HPReal& a);
    friend HPReal operator+(const HPReal& a, const HPReal& b);
    friend HPReal operator-(const HPReal& a, const HPReal& b);
    friend HPReal operator*(const HPReal& a, const HPReal& b);
    friend HPReal operator/(const HPReal& a, const HPReal& b);
    friend HPReal operator+(const HPReal& a, double b);
    friend HPReal operator-(const HPReal& a, double b);
    friend HPReal operator*(const HPReal& a, double b);
    friend HPReal operator/(const HPReal& a, double b);
    friend HPReal operator+(double a, const HPReal& b);
    friend HPReal operator-(double a, const HPReal& b);
    friend HPReal operator*(double a, const HPReal& b);
    friend HPReal operator/(double a, const HPReal& b);

    friend bool operator<(const HPReal& a, const HPReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const HPReal& a, const HPReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const HPReal& a, const HPReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const HPReal& a, const HPReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const HPReal& a, const HPReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

private:
    mpfr_t v_;
};

HPReal abs(const HPReal& x);
HPReal sqrt(const HPReal& x);
HPReal exp(const HPReal& x);
HPReal log(const HPReal& x);
HPReal sin(const HPReal& x);
HPReal cos(const HPReal& x);
HPReal tan(const HPReal& x);
HPReal cot(const HPReal& x);
HPReal sinh(const HPReal& x);
HPReal cosh(const HPReal& x);
HPReal erfc(const HPReal& x);
HPReal pow(const HPReal& x, const HPReal& y);
HPReal pow(const HPReal& x, double y);
HPReal max(const HPReal& a, const HPReal& b);
HPReal min(const HPReal& a, const HPReal& b);

// sin and cos of 2*pi*turns, with the rational reduced mod 1 exactly first.
HPReal sin_turns(const mpq_class& turns, int precision_bits);
HPReal cos_turns(const mpq_class& turns, int precision_bits);

struct HPComplex {
    HPReal re;
    HPReal im;

    explicit HPComplex(int precision_bits = kDefaultPrecision)
        : re(precision_bits), im(precision_bits) {}
    HPComplex(HPReal r, HPReal i) : re(std::move(r)), im(std::move(i)) {}

    int precision() const { return re.precision() > im.precision() ? re.precision() : im.precision(); }

    // exp(2*pi*i*turns), computed from the exactly reduced rational angle.
    static HPComplex unit(const mpq_class& turns, int precision_bits);

    HPComplex& operator+=(const HPComplex& o);
    HPComplex& operator-=(const HPComplex& o);
    HPComplex& operator*=(const HPComplex& o);
    HPComplex& operator*=(const HPReal& s);

    friend HPComplex operator+(HPComplex a, const HPComplex& b) { return a += b; }
    friend HPComplex operator-(HPComplex a, const HPComplex& b) { return a -= b; }
    friend HPComplex operator*(HPComplex a, const HPComplex& b) { return a *= b; }
    friend HPComplex operator*(HPComplex a, const HPReal& s) { return a *= s; }
    friend HPComplex operator*(const HPReal& s, HPComplex a) { return a *= s; }
    friend HPComplex operator-(const HPComplex& a) { return {-a.re, -a.im}; }
};

HPComplex conj(const HPComplex& z);
HPReal abs(const HPComplex& z);
// Multiplies by i.
HPComplex times_i(const HPComplex& z);

}  // namespace ovrank
