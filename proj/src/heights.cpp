#include "g2cm/heights.hpp"

namespace g2cm {

RealBall infinity_part(const std::vector<RealBall>& chi10_detY5, mpfr_prec_t prec) {
    if (chi10_detY5.empty()) throw Error("infinity_part: empty orbit");
    RealBall sum(prec);
    for (const auto& v : chi10_detY5) sum += v.log();
    RealBall denom = RealBall::exact_int(-10 * static_cast<long>(chi10_detY5.size()), prec);
    return sum / denom;
}

RealBall finalbh_rhs(const BigInt& disc_K, const RealQuadField& F, mpfr_prec_t prec) {
    RealBall d = RealBall::exact_int(abs(disc_K), prec);
    RealBall logd = d.log();
    RealBall RF = F.regulator(prec);
    RealBall hF3 = RealBall::exact_int(F.h_F * F.h_F * F.h_F, prec);
    RealBall loglogd = logd.log();
    RealBall inv32 = RealBall::exact_rat(BigRat(1, 32), prec);
    RealBall expo = inv32 - RealBall::exact_int(1, prec) / loglogd;
    // d^expo = exp(expo * log d); can be a negative power
    RealBall d_pow = (expo * logd).exp();
    RealBall d_32 = (inv32 * logd).exp();
    RealBall c1 = RealBall::exact_rat(BigRat(74, 100), prec);
    RealBall c2 = RealBall::exact_rat(BigRat(84, 10), prec);
    RealBall c3 = RealBall::exact_rat(BigRat(1, 10), prec);
    RealBall c4 = RealBall::exact_int(7200, prec);
    RealBall c5 = RealBall::exact_int(2430, prec);
    return c1 + c2 * RF + (c3 + c4 * hF3 * RF / d_pow + c5 * RF / d_32) * logd;
}

HeightReport faltings_height(const std::array<RealBall, 4>& h_inf, const BigRat& h0,
                             const BigInt& disc_K, const RealQuadField& F, mpfr_prec_t prec,
                             const BigRat& gammaF) {
    HeightReport r;
    r.h_inf = h_inf;
    r.h0 = RealBall::exact_rat(h0, prec);
    RealBall sum(prec);
    for (auto& h : h_inf) sum += h;
    RealBall quarter = RealBall::exact_rat(BigRat(1, 4), prec);
    RealBall log2 = RealBall::exact_int(2, prec).log();
    RealBall pi = RealBall::const_pi(prec);
    RealBall logpi = pi.log();
    r.faltings = r.h0 + sum * quarter - RealBall::exact_rat(BigRat(4, 5), prec) * log2 - logpi;
    // classical chi10 = 2^{-12} * (product): each h_i grows by (12/10) log 2
    RealBall shift = RealBall::exact_rat(BigRat(12, 10), prec) * log2;
    r.faltings_classical = r.faltings + shift;
    // lower bound: -(gF/2 + (1/4)log dF + log 2pi + gQ) + (sqrt5/20) log dK
    RealBall gQ = RealBall::exact_rat(BigRat(566215, 1000000), prec);
    RealBall gF = RealBall::exact_rat(gammaF, prec);
    RealBall log2pi = (RealBall::exact_int(2, prec) * pi).log();
    RealBall logdF = RealBall::exact_int(F.disc_F, prec).log();
    RealBall logdK = RealBall::exact_int(abs(disc_K), prec).log();
    RealBall sqrt5_20 = RealBall::exact_int(5, prec).sqrt() / RealBall::exact_int(20, prec);
    r.lower_bound =
        -(gF / RealBall::exact_int(2, prec) + quarter * logdF + log2pi + gQ) + sqrt5_20 * logdK;
    r.lower_bound_ok = r.lower_bound.lt_certain(r.faltings);
    r.finalbh_rhs = finalbh_rhs(disc_K, F, prec);
    for (int i = 0; i < 4; ++i) r.hinf_le_finalbh[i] = h_inf[i].lt_certain(r.finalbh_rhs);
    r.below_threshold = abs(disc_K) < 93000000;
    return r;
}

} // namespace g2cm
