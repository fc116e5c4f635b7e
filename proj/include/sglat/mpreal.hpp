#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace sglat {

// Thin value-semantics wrapper around mpfr_t. Every value carries its own
// precision; binary operations compute at the larger of the two precisions.
class MpReal {
public:
    static constexpr mpfr_prec_t kDefaultPrec = 256;

    MpReal() { mpfr_init2(v_, kDefaultPrec); mpfr_set_zero(v_, 1); }
    explicit MpReal(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    MpReal(double x, mpfr_prec_t prec = kDefaultPrec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    MpReal(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
    MpReal(const mpz_class& z, mpfr_prec_t prec = kDefaultPrec) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
    }

    MpReal(const MpReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    MpReal(MpReal&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    MpReal& operator=(const MpReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    MpReal& operator=(MpReal&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~MpReal() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Nearest integer, ties to even; value must fit in int64.
    std::int64_t round_to_int64() const {
        MpReal r(prec());
        mpfr_rint(r.v_, v_, MPFR_RNDN);
        if (!mpfr_fits_slong_p(r.v_, MPFR_RNDN))
            throw std::overflow_error("MpReal::round_to_int64: out of range");
        return mpfr_get_si(r.v_, MPFR_RNDN);
    }
    mpz_class round_to_mpz() const {
        MpReal r(prec());
        mpfr_rint(r.v_, v_, MPFR_RNDN);
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), r.v_, MPFR_RNDN);
        return z;
    }
    std::string str(int digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }
    static MpReal from_str(const std::string& s, mpfr_prec_t prec) {
        MpReal r(prec);
        mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN);
        return r;
    }

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }

    MpReal& operator+=(const MpReal& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MpReal& operator-=(const MpReal& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MpReal& operator*=(const MpReal& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MpReal& operator/=(const MpReal& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MpReal& operator*=(long s) { mpfr_mul_si(v_, v_, s, MPFR_RNDN); return *this; }
    MpReal& operator/=(long s) { mpfr_div_si(v_, v_, s, MPFR_RNDN); return *this; }

    // *this += a * b, single rounding
    void addmul(const MpReal& a, const MpReal& b) { mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN); }
    void submul(const MpReal& a, const MpReal& b) { mpfr_fms(v_, a.v_, b.v_, v_, MPFR_RNDN); mpfr_neg(v_, v_, MPFR_RNDN); }

    friend MpReal operator+(const MpReal& a, const MpReal& b) { return bin(mpfr_add, a, b); }
    friend MpReal operator-(const MpReal& a, const MpReal& b) { return bin(mpfr_sub, a, b); }
    friend MpReal operator*(const MpReal& a, const MpReal& b) { return bin(mpfr_mul, a, b); }
    friend MpReal operator/(const MpReal& a, const MpReal& b) { return bin(mpfr_div, a, b); }
    friend MpReal operator-(const MpReal& a) {
        MpReal r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    friend MpReal abs(const MpReal& a) {
        MpReal r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal sqrt(const MpReal& a) { return un(mpfr_sqrt, a); }
    friend MpReal log(const MpReal& a) { return un(mpfr_log, a); }
    friend MpReal exp(const MpReal& a) { return un(mpfr_exp, a); }
    friend MpReal sin(const MpReal& a) { return un(mpfr_sin, a); }
    friend MpReal cos(const MpReal& a) { return un(mpfr_cos, a); }
    friend MpReal round_even(const MpReal& a) {
        MpReal r(a.prec());
        mpfr_rint(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    static MpReal pi(mpfr_prec_t prec) {
        MpReal r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    // 2^e as MpReal
    static MpReal pow2(long e, mpfr_prec_t prec) {
        MpReal r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

private:
    using BinOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using UnOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
    static MpReal bin(BinOp f, const MpReal& a, const MpReal& b) {
        MpReal r(std::max(a.prec(), b.prec()));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static MpReal un(UnOp f, const MpReal& a) {
        MpReal r(a.prec());
        f(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

}  // namespace sglat
