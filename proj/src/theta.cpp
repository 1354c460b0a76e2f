#include "g2cm/theta.hpp"

#include <cmath>

namespace g2cm {

const std::array<std::array<int, 4>, 10>& even_characteristics() {
    static const std::array<std::array<int, 4>, 10> even = [] {
        std::array<std::array<int, 4>, 10> out{};
        int k = 0;
        for (int m1 = 0; m1 < 2; ++m1)
            for (int m2 = 0; m2 < 2; ++m2)
                for (int n1 = 0; n1 < 2; ++n1)
                    for (int n2 = 0; n2 < 2; ++n2)
                        if ((m1 * n1 + m2 * n2) % 2 == 0) out[k++] = {m1, m2, n1, n2};
        return out;
    }();
    return even;
}

ThetaVector theta_constants(const PeriodPoint& p, mpfr_prec_t prec) {
    // lambda_min(Y) lower bound
    RealBall y1 = p.y1(), y2 = p.y2(), y12 = p.y12();
    RealBall tr = y1 + y2;
    RealBall diff = y1 - y2;
    RealBall disc = (diff * diff + RealBall::exact_int(4, prec) * y12 * y12).sqrt();
    RealBall lam = (tr - disc) / RealBall::exact_int(2, prec);
    double lam_lo = lam.lo_d();
    if (lam_lo <= 0) throw PrecisionExhausted("theta: Y eigenvalue bound nonpositive");
    RealBall pi = RealBall::const_pi(prec);
    // choose truncation M with tail <= 2^-(prec+8)
    long M = 4;
    RealBall tail(prec);
    auto tail_at = [&](long Mv) {
        RealBall Mb = RealBall::exact_int(Mv, prec);
        RealBall expo = (-(pi * lam * Mb * Mb)).exp();
        RealBall q = (-(RealBall::exact_int(2, prec) * pi * lam * Mb)).exp();
        RealBall one = RealBall::exact_int(1, prec);
        RealBall denom = one - q;
        if (denom.lo_d() <= 0) return RealBall::exact_int(1, prec);  // useless bound
        RealBall cnt = RealBall::exact_int(16, prec) *
                       ((Mb + one) / denom + q / (denom * denom));
        return expo * cnt;
    };
    double target = std::ldexp(1.0, -static_cast<int>(prec) - 8);
    while (true) {
        tail = tail_at(M);
        if (tail.hi_d() < target && tail.hi_d() > 0) break;
        if (tail.hi_d() <= 0) break;  // underflow: certainly small enough
        ++M;
        if (M > 4000) throw PrecisionExhausted("theta: truncation bound too large");
    }

    ThetaVector out;
    out.truncation = M;
    const auto& chars = even_characteristics();
    for (int ci = 0; ci < 10; ++ci) {
        const auto& ch = chars[ci];
        BigRat a1(ch[0], 2), a2(ch[1], 2), b1(ch[2], 2), b2(ch[3], 2);
        a1.canonicalize();
        a2.canonicalize();
        b1.canonicalize();
        b2.canonicalize();
        ComplexBall sum(prec);
        for (long n1 = -M - 1; n1 <= M + 1; ++n1) {
            BigRat v1 = BigRat(n1) + a1;
            // |v1| <= M filter (exact)
            if (v1 > M || v1 < -M) continue;
            for (long n2 = -M - 1; n2 <= M + 1; ++n2) {
                BigRat v2 = BigRat(n2) + a2;
                if (v2 > M || v2 < -M) continue;
                // q = z1 v1^2 + 2 z12 v1 v2 + z2 v2^2 + 2(v1 b1 + v2 b2)
                RealBall r11 = RealBall::exact_rat(v1 * v1, prec);
                RealBall r12 = RealBall::exact_rat(2 * v1 * v2, prec);
                RealBall r22 = RealBall::exact_rat(v2 * v2, prec);
                RealBall rb = RealBall::exact_rat(2 * (v1 * b1 + v2 * b2), prec);
                ComplexBall q{p.z1.re * r11 + p.z12.re * r12 + p.z2.re * r22 + rb,
                              p.z1.im * r11 + p.z12.im * r12 + p.z2.im * r22};
                sum += ball_exp_pi_i(q);
            }
        }
        sum.re.add_error(tail);
        sum.im.add_error(tail);
        out.v[ci] = sum;
    }
    return out;
}

ComplexBall chi10(const ThetaVector& t) {
    ComplexBall prod = t.v[0] * t.v[0];
    for (int i = 1; i < 10; ++i) prod *= t.v[i] * t.v[i];
    return prod;
}

ComplexBall chi10_classical(const ThetaVector& t) {
    ComplexBall c = chi10(t);
    mpfr_prec_t prec = c.prec();
    RealBall scale = RealBall::exact_rat(BigRat(1, BigInt(1) << 12), prec);
    return {c.re * scale, c.im * scale};
}

} // namespace g2cm
