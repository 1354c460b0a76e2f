#include "g2cm/ball.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace g2cm {

RealBall::RealBall(mpfr_prec_t prec) {
    mpfr_init2(mid_, prec);
    mpfr_init2(rad_, kRadPrec);
    mpfr_set_zero(mid_, 1);
    mpfr_set_zero(rad_, 1);
}

RealBall::RealBall(const RealBall& o) {
    mpfr_init2(mid_, mpfr_get_prec(o.mid_));
    mpfr_init2(rad_, kRadPrec);
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

RealBall::RealBall(RealBall&& o) noexcept {
    mpfr_init2(mid_, 2);
    mpfr_init2(rad_, kRadPrec);
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
}

RealBall& RealBall::operator=(const RealBall& o) {
    if (this != &o) {
        mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
        mpfr_set(mid_, o.mid_, MPFR_RNDN);
        mpfr_set(rad_, o.rad_, MPFR_RNDU);
    }
    return *this;
}

RealBall& RealBall::operator=(RealBall&& o) noexcept {
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
    return *this;
}

RealBall::~RealBall() {
    mpfr_clear(mid_);
    mpfr_clear(rad_);
}

void RealBall::bump_ulp(int ternary) {
    if (ternary == 0 || mpfr_zero_p(mid_)) return;
    // one ulp of mid_ bounds the rounding error of a correctly rounded op
    mpfr_exp_t e = mpfr_get_exp(mid_);
    mpfr_t u;
    mpfr_init2(u, kRadPrec);
    mpfr_set_ui_2exp(u, 1, e - mpfr_get_prec(mid_), MPFR_RNDU);
    mpfr_add(rad_, rad_, u, MPFR_RNDU);
    mpfr_clear(u);
}

RealBall RealBall::exact_int(const BigInt& v, mpfr_prec_t prec) {
    RealBall b(prec);
    int t = mpfr_set_z(b.mid_, v.get_mpz_t(), MPFR_RNDN);
    b.bump_ulp(t);
    return b;
}

RealBall RealBall::exact_rat(const BigRat& v, mpfr_prec_t prec) {
    RealBall b(prec);
    int t = mpfr_set_q(b.mid_, v.get_mpq_t(), MPFR_RNDN);
    b.bump_ulp(t);
    return b;
}

RealBall RealBall::from_double(double v, mpfr_prec_t prec) {
    RealBall b(prec);
    mpfr_set_d(b.mid_, v, MPFR_RNDN);
    return b;
}

RealBall RealBall::const_pi(mpfr_prec_t prec) {
    RealBall b(prec);
    int t = mpfr_const_pi(b.mid_, MPFR_RNDN);
    b.bump_ulp(t);
    return b;
}

RealBall RealBall::const_euler(mpfr_prec_t prec) {
    RealBall b(prec);
    int t = mpfr_const_euler(b.mid_, MPFR_RNDN);
    b.bump_ulp(t);
    return b;
}

void RealBall::add_error(const RealBall& r) {
    mpfr_t a;
    mpfr_init2(a, kRadPrec);
    mpfr_abs(a, r.mid_, MPFR_RNDU);
    mpfr_add(a, a, r.rad_, MPFR_RNDU);
    mpfr_add(rad_, rad_, a, MPFR_RNDU);
    mpfr_clear(a);
}

void RealBall::add_error_2exp(long e) {
    mpfr_t u;
    mpfr_init2(u, kRadPrec);
    mpfr_set_ui_2exp(u, 1, e, MPFR_RNDU);
    mpfr_add(rad_, rad_, u, MPFR_RNDU);
    mpfr_clear(u);
}

RealBall RealBall::operator-() const {
    RealBall b(*this);
    mpfr_neg(b.mid_, b.mid_, MPFR_RNDN);
    return b;
}

RealBall RealBall::operator+(const RealBall& o) const {
    RealBall b(std::max(prec(), o.prec()));
    int t = mpfr_add(b.mid_, mid_, o.mid_, MPFR_RNDN);
    mpfr_add(b.rad_, rad_, o.rad_, MPFR_RNDU);
    b.bump_ulp(t);
    return b;
}

RealBall RealBall::operator-(const RealBall& o) const {
    RealBall b(std::max(prec(), o.prec()));
    int t = mpfr_sub(b.mid_, mid_, o.mid_, MPFR_RNDN);
    mpfr_add(b.rad_, rad_, o.rad_, MPFR_RNDU);
    b.bump_ulp(t);
    return b;
}

RealBall RealBall::operator*(const RealBall& o) const {
    RealBall b(std::max(prec(), o.prec()));
    int t = mpfr_mul(b.mid_, mid_, o.mid_, MPFR_RNDN);
    // rad = |a|rb + |b|ra + ra rb
    mpfr_t am, bm, tmp;
    mpfr_init2(am, kRadPrec);
    mpfr_init2(bm, kRadPrec);
    mpfr_init2(tmp, kRadPrec);
    mpfr_abs(am, mid_, MPFR_RNDU);
    mpfr_abs(bm, o.mid_, MPFR_RNDU);
    mpfr_mul(tmp, am, o.rad_, MPFR_RNDU);
    mpfr_set(b.rad_, tmp, MPFR_RNDU);
    mpfr_mul(tmp, bm, rad_, MPFR_RNDU);
    mpfr_add(b.rad_, b.rad_, tmp, MPFR_RNDU);
    mpfr_mul(tmp, rad_, o.rad_, MPFR_RNDU);
    mpfr_add(b.rad_, b.rad_, tmp, MPFR_RNDU);
    mpfr_clear(am);
    mpfr_clear(bm);
    mpfr_clear(tmp);
    b.bump_ulp(t);
    return b;
}

RealBall RealBall::operator/(const RealBall& o) const {
    if (o.contains_zero()) throw Error("RealBall division by ball containing zero");
    RealBall b(std::max(prec(), o.prec()));
    int t = mpfr_div(b.mid_, mid_, o.mid_, MPFR_RNDN);
    // |x/y - xm/ym| <= (ra*|ym| + |xm|*rb) / (|ym| * (|ym| - rb))
    mpfr_t am, bm, num, den, tmp;
    mpfr_init2(am, kRadPrec);
    mpfr_init2(bm, kRadPrec);
    mpfr_init2(num, kRadPrec);
    mpfr_init2(den, kRadPrec);
    mpfr_init2(tmp, kRadPrec);
    mpfr_abs(am, mid_, MPFR_RNDU);
    mpfr_abs(bm, o.mid_, MPFR_RNDD);  // round |ym| down in denominator
    mpfr_mul(num, rad_, bm, MPFR_RNDU);
    mpfr_mul(tmp, am, o.rad_, MPFR_RNDU);
    mpfr_add(num, num, tmp, MPFR_RNDU);
    mpfr_sub(den, bm, o.rad_, MPFR_RNDD);
    mpfr_mul(den, den, bm, MPFR_RNDD);
    mpfr_div(b.rad_, num, den, MPFR_RNDU);
    mpfr_clear(am);
    mpfr_clear(bm);
    mpfr_clear(num);
    mpfr_clear(den);
    mpfr_clear(tmp);
    b.bump_ulp(t);
    return b;
}

RealBall RealBall::abs() const {
    RealBall b(*this);
    if (mpfr_sgn(mid_) < 0) mpfr_neg(b.mid_, b.mid_, MPFR_RNDN);
    return b;
}

void RealBall::get_lo(mpfr_t out) const { mpfr_sub(out, mid_, rad_, MPFR_RNDD); }
void RealBall::get_hi(mpfr_t out) const { mpfr_add(out, mid_, rad_, MPFR_RNDU); }

double RealBall::lo_d() const {
    mpfr_t t;
    mpfr_init2(t, 64);
    get_lo(t);
    double d = mpfr_get_d(t, MPFR_RNDD);
    mpfr_clear(t);
    return d;
}

double RealBall::hi_d() const {
    mpfr_t t;
    mpfr_init2(t, 64);
    get_hi(t);
    double d = mpfr_get_d(t, MPFR_RNDU);
    mpfr_clear(t);
    return d;
}

RealBall RealBall::from_interval(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec) {
    RealBall b(prec);
    mpfr_t m, r;
    mpfr_init2(m, prec + 32);
    mpfr_init2(r, kRadPrec);
    mpfr_add(m, lo, hi, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    mpfr_sub(r, hi, lo, MPFR_RNDU);
    mpfr_div_2ui(r, r, 1, MPFR_RNDU);
    int t = mpfr_set(b.mid_, m, MPFR_RNDN);
    mpfr_add(b.rad_, b.rad_, r, MPFR_RNDU);
    b.bump_ulp(t);
    b.bump_ulp(1);  // cover the averaging rounding
    mpfr_clear(m);
    mpfr_clear(r);
    return b;
}

namespace {
// Monotone increasing f on [lo,hi] -> ball from directed endpoint images.
template <typename F>
RealBall endpoint_map(const RealBall& x, mpfr_prec_t prec, F f) {
    mpfr_t lo, hi, flo, fhi;
    mpfr_init2(lo, prec + 32);
    mpfr_init2(hi, prec + 32);
    mpfr_init2(flo, prec + 32);
    mpfr_init2(fhi, prec + 32);
    x.get_lo(lo);
    x.get_hi(hi);
    f(flo, lo, MPFR_RNDD);
    f(fhi, hi, MPFR_RNDU);
    RealBall b = RealBall::from_interval(flo, fhi, prec);
    mpfr_clear(lo);
    mpfr_clear(hi);
    mpfr_clear(flo);
    mpfr_clear(fhi);
    return b;
}
}  // namespace

RealBall RealBall::sqrt() const {
    mpfr_t lo;
    mpfr_init2(lo, 64);
    get_lo(lo);
    bool neg = mpfr_sgn(lo) < 0;
    mpfr_clear(lo);
    if (neg) {
        if (!contains_zero()) throw Error("sqrt of negative ball");
        // clamp domain to [0, hi]
        mpfr_t hi, zero, shi;
        mpfr_init2(hi, prec() + 32);
        mpfr_init2(zero, 32);
        mpfr_init2(shi, prec() + 32);
        get_hi(hi);
        if (mpfr_sgn(hi) < 0) mpfr_set_zero(hi, 1);
        mpfr_set_zero(zero, 1);
        mpfr_sqrt(shi, hi, MPFR_RNDU);
        RealBall out = from_interval(zero, shi, prec());
        mpfr_clear(hi);
        mpfr_clear(zero);
        mpfr_clear(shi);
        return out;
    }
    return endpoint_map(*this, prec(),
                        [](mpfr_ptr o, mpfr_srcptr i, mpfr_rnd_t r) { mpfr_sqrt(o, i, r); });
}

RealBall RealBall::exp() const {
    return endpoint_map(*this, prec(),
                        [](mpfr_ptr o, mpfr_srcptr i, mpfr_rnd_t r) { mpfr_exp(o, i, r); });
}

RealBall RealBall::log() const {
    mpfr_t lo;
    mpfr_init2(lo, 64);
    get_lo(lo);
    bool bad = mpfr_sgn(lo) <= 0;
    mpfr_clear(lo);
    if (bad) throw Error("log of ball touching (-inf, 0]");
    return endpoint_map(*this, prec(),
                        [](mpfr_ptr o, mpfr_srcptr i, mpfr_rnd_t r) { mpfr_log(o, i, r); });
}

RealBall RealBall::sin() const {
    RealBall b(prec());
    int t = mpfr_sin(b.mid_, mid_, MPFR_RNDN);
    mpfr_set(b.rad_, rad_, MPFR_RNDU);  // |sin'| <= 1
    b.bump_ulp(t);
    // sin is bounded by 1 in absolute value regardless
    return b;
}

RealBall RealBall::cos() const {
    RealBall b(prec());
    int t = mpfr_cos(b.mid_, mid_, MPFR_RNDN);
    mpfr_set(b.rad_, rad_, MPFR_RNDU);
    b.bump_ulp(t);
    return b;
}

RealBall RealBall::pow(const RealBall& e) const { return (log() * e).exp(); }

bool RealBall::contains_zero() const {
    mpfr_t a;
    mpfr_init2(a, kRadPrec);
    mpfr_abs(a, mid_, MPFR_RNDD);
    bool r = mpfr_cmp(a, rad_) <= 0;
    mpfr_clear(a);
    return r;
}

bool RealBall::contains_int(const BigInt& v) const {
    mpfr_t d;
    mpfr_init2(d, prec() + 64);
    mpfr_sub_z(d, mid_, v.get_mpz_t(), MPFR_RNDA);
    mpfr_abs(d, d, MPFR_RNDU);
    bool r = mpfr_cmp(d, rad_) <= 0;
    mpfr_clear(d);
    return r;
}

bool RealBall::contains_rat(const BigRat& v) const {
    mpfr_t q, d;
    mpfr_init2(q, prec() + 64);
    mpfr_init2(d, prec() + 64);
    mpfr_set_q(q, v.get_mpq_t(), MPFR_RNDN);
    mpfr_sub(d, mid_, q, MPFR_RNDA);
    mpfr_abs(d, d, MPFR_RNDU);
    // allow one ulp slack for the rounding of v
    mpfr_t r2;
    mpfr_init2(r2, kRadPrec);
    mpfr_set(r2, rad_, MPFR_RNDU);
    if (!mpfr_zero_p(q)) {
        mpfr_t u;
        mpfr_init2(u, kRadPrec);
        mpfr_set_ui_2exp(u, 1, mpfr_get_exp(q) - prec() - 62, MPFR_RNDU);
        mpfr_add(r2, r2, u, MPFR_RNDU);
        mpfr_clear(u);
    }
    bool r = mpfr_cmp(d, r2) <= 0;
    mpfr_clear(q);
    mpfr_clear(d);
    mpfr_clear(r2);
    return r;
}

std::optional<int> RealBall::sign_certain() const {
    if (contains_zero()) return std::nullopt;
    return mpfr_sgn(mid_) > 0 ? 1 : -1;
}

std::optional<bool> RealBall::lt_certain(const RealBall& o) const {
    mpfr_t a, b;
    mpfr_init2(a, prec() + 32);
    mpfr_init2(b, o.prec() + 32);
    get_hi(a);
    o.get_lo(b);
    if (mpfr_cmp(a, b) < 0) {
        mpfr_clear(a);
        mpfr_clear(b);
        return true;
    }
    get_lo(a);
    o.get_hi(b);
    if (mpfr_cmp(a, b) > 0) {
        mpfr_clear(a);
        mpfr_clear(b);
        return false;
    }
    mpfr_clear(a);
    mpfr_clear(b);
    return std::nullopt;
}

BigInt RealBall::mid_round() const {
    BigInt v;
    mpfr_get_z(v.get_mpz_t(), mid_, MPFR_RNDN);
    return v;
}

BigRat RealBall::mid_rat() const {
    BigRat q;
    mpfr_get_q(q.get_mpq_t(), mid_);
    return q;
}

std::string RealBall::str(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, mid_);
    std::string out(s);
    mpfr_free_str(s);
    mpfr_asprintf(&s, "%.3Rg", rad_);
    out += " +/- ";
    out += s;
    mpfr_free_str(s);
    return out;
}

RealBall RealBall::max(const RealBall& a, const RealBall& b) {
    auto c = a.lt_certain(b);
    if (c.has_value()) return *c ? b : a;
    return join(a, b);
}

RealBall RealBall::min(const RealBall& a, const RealBall& b) {
    auto c = a.lt_certain(b);
    if (c.has_value()) return *c ? a : b;
    return join(a, b);
}

RealBall RealBall::join(const RealBall& a, const RealBall& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    mpfr_t lo, hi, t;
    mpfr_init2(lo, p + 32);
    mpfr_init2(hi, p + 32);
    mpfr_init2(t, p + 32);
    a.get_lo(lo);
    b.get_lo(t);
    if (mpfr_cmp(t, lo) < 0) mpfr_set(lo, t, MPFR_RNDD);
    a.get_hi(hi);
    b.get_hi(t);
    if (mpfr_cmp(t, hi) > 0) mpfr_set(hi, t, MPFR_RNDU);
    RealBall out(p);
    mpfr_add(t, lo, hi, MPFR_RNDN);
    mpfr_div_2ui(t, t, 1, MPFR_RNDN);
    mpfr_set(out.mid_, t, MPFR_RNDN);
    mpfr_sub(t, hi, lo, MPFR_RNDU);
    mpfr_div_2ui(t, t, 1, MPFR_RNDU);
    mpfr_set(out.rad_, t, MPFR_RNDU);
    out.add_error_2exp(mpfr_zero_p(out.mid_) ? mpfr_get_emin() + 64
                                             : mpfr_get_exp(out.mid_) - p + 1);
    mpfr_clear(lo);
    mpfr_clear(hi);
    mpfr_clear(t);
    return out;
}

// ------------------------------------------------------------- ComplexBall

ComplexBall ComplexBall::exact_int(const BigInt& r, const BigInt& i, mpfr_prec_t prec) {
    return {RealBall::exact_int(r, prec), RealBall::exact_int(i, prec)};
}

ComplexBall ComplexBall::inv() const {
    RealBall n = norm();
    if (n.contains_zero()) throw Error("ComplexBall inversion of ball containing zero");
    return {re / n, -(im / n)};
}

ComplexBall ComplexBall::operator/(const ComplexBall& o) const { return *this * o.inv(); }

double ComplexBall::rad_d() const {
    double a = re.rad_d(), b = im.rad_d();
    return std::hypot(a, b) * (1 + 1e-14);
}

std::string ComplexBall::str(int digits) const {
    return "(" + re.str(digits) + ", " + im.str(digits) + " i)";
}

ComplexBall ball_exp_pi_i(const ComplexBall& q) {
    mpfr_prec_t p = q.prec();
    RealBall pi = RealBall::const_pi(p);
    RealBall ax = pi * q.re;
    RealBall ay = pi * q.im;
    RealBall mag = (-ay).exp();
    return {mag * ax.cos(), mag * ax.sin()};
}

} // namespace g2cm
