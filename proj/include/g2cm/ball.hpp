#ifndef G2CM_BALL_HPP
#define G2CM_BALL_HPP

#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

#include "g2cm/integer.hpp"

namespace g2cm {

/// Certified real interval as midpoint +- radius.
///
/// Midpoints carry a per-value precision; radii live at a fixed small
/// precision and every radius operation rounds up, so each arithmetic
/// operation returns a ball containing the exact image of its inputs.
class RealBall {
  public:
    static constexpr mpfr_prec_t kRadPrec = 32;

    RealBall() : RealBall(64) {}
    explicit RealBall(mpfr_prec_t prec);
    RealBall(const RealBall& o);
    RealBall(RealBall&& o) noexcept;
    RealBall& operator=(const RealBall& o);
    RealBall& operator=(RealBall&& o) noexcept;
    ~RealBall();

    static RealBall exact_int(const BigInt& v, mpfr_prec_t prec);
    static RealBall exact_rat(const BigRat& v, mpfr_prec_t prec);
    static RealBall from_double(double v, mpfr_prec_t prec);
    static RealBall const_pi(mpfr_prec_t prec);
    static RealBall const_euler(mpfr_prec_t prec);  // Euler-Mascheroni
    /// Ball covering [lo, hi] exactly (plus rounding slack).
    static RealBall from_interval(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return mpfr_get_prec(mid_); }
    const mpfr_t& mid() const { return mid_; }
    const mpfr_t& rad() const { return rad_; }
    bool is_finite() const { return mpfr_number_p(mid_) && mpfr_number_p(rad_); }

    void add_error(const RealBall& r);       // inflate radius by |r| + rad(r)
    void add_error_2exp(long e);             // inflate radius by 2^e

    RealBall operator-() const;
    RealBall operator+(const RealBall& o) const;
    RealBall operator-(const RealBall& o) const;
    RealBall operator*(const RealBall& o) const;
    RealBall operator/(const RealBall& o) const;  // requires 0 not in o
    RealBall& operator+=(const RealBall& o) { return *this = *this + o; }
    RealBall& operator-=(const RealBall& o) { return *this = *this - o; }
    RealBall& operator*=(const RealBall& o) { return *this = *this * o; }
    RealBall& operator/=(const RealBall& o) { return *this = *this / o; }

    RealBall abs() const;
    RealBall sqrt() const;   // domain-checked
    RealBall exp() const;
    RealBall log() const;    // requires lo() > 0
    RealBall sin() const;
    RealBall cos() const;
    RealBall pow(const RealBall& e) const;  // exp(e*log(this)), lo() > 0
    RealBall square() const { return *this * *this; }

    /// Certified endpoints (outward rounded at mid precision + 32).
    void get_lo(mpfr_t out) const;
    void get_hi(mpfr_t out) const;
    double lo_d() const;
    double hi_d() const;
    double mid_d() const { return mpfr_get_d(mid_, MPFR_RNDN); }
    double rad_d() const { return mpfr_get_d(rad_, MPFR_RNDU); }

    bool contains_zero() const;
    bool contains_int(const BigInt& v) const;
    bool contains_rat(const BigRat& v) const;
    bool is_exact_zero() const { return mpfr_zero_p(mid_) && mpfr_zero_p(rad_); }

    /// Certified sign: +1 / -1 when the ball excludes 0, nullopt otherwise.
    std::optional<int> sign_certain() const;
    /// Certified strict comparison this < o (nullopt when undecided).
    std::optional<bool> lt_certain(const RealBall& o) const;
    std::optional<bool> gt_certain(const RealBall& o) const { return o.lt_certain(*this); }

    /// Nearest integer to the midpoint (no certification implied).
    BigInt mid_round() const;
    BigRat mid_rat() const;

    std::string str(int digits = 20) const;

    static RealBall max(const RealBall& a, const RealBall& b);
    static RealBall min(const RealBall& a, const RealBall& b);
    /// Smallest ball containing both (same mid prec as a).
    static RealBall join(const RealBall& a, const RealBall& b);

  private:
    mpfr_t mid_;
    mpfr_t rad_;
    void bump_ulp(int ternary);  // add one ulp of mid_ to rad_ when inexact
    friend class ComplexBall;
};

/// Rectangular complex enclosure (independent real/imaginary balls).
class ComplexBall {
  public:
    RealBall re, im;

    ComplexBall() = default;
    explicit ComplexBall(mpfr_prec_t prec) : re(prec), im(prec) {}
    ComplexBall(RealBall r, RealBall i) : re(std::move(r)), im(std::move(i)) {}
    static ComplexBall exact_int(const BigInt& r, const BigInt& i, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return re.prec(); }

    ComplexBall operator-() const { return {-re, -im}; }
    ComplexBall operator+(const ComplexBall& o) const { return {re + o.re, im + o.im}; }
    ComplexBall operator-(const ComplexBall& o) const { return {re - o.re, im - o.im}; }
    ComplexBall operator*(const ComplexBall& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    ComplexBall operator/(const ComplexBall& o) const;
    ComplexBall& operator+=(const ComplexBall& o) { return *this = *this + o; }
    ComplexBall& operator-=(const ComplexBall& o) { return *this = *this - o; }
    ComplexBall& operator*=(const ComplexBall& o) { return *this = *this * o; }

    ComplexBall conj() const { return {re, -im}; }
    RealBall norm() const { return re.square() + im.square(); }  // |z|^2
    RealBall abs() const { return norm().sqrt(); }
    ComplexBall square() const { return *this * *this; }
    ComplexBall inv() const;

    /// Certified combined radius (hypot of component radii, rounded up).
    double rad_d() const;
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }

    std::string str(int digits = 20) const;
};

/// exp(i*pi*q) for complex ball q.
ComplexBall ball_exp_pi_i(const ComplexBall& q);

} // namespace g2cm

#endif
