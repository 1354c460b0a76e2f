#include "g2cm/igusa.hpp"

#include <cmath>
#include <functional>

namespace g2cm {

namespace {

// binary-form machinery over a generic coefficient ring
template <typename T>
struct Form {
    std::vector<T> c;  // c[k] = coefficient of x^(n-k) z^k
    int deg() const { return static_cast<int>(c.size()) - 1; }
};

template <typename T>
Form<T> dx(const Form<T>& f) {
    Form<T> r;
    int n = f.deg();
    r.c.resize(n);
    for (int k = 0; k < n; ++k) r.c[k] = f.c[k] * T(n - k);
    return r;
}

template <typename T>
Form<T> dz(const Form<T>& f) {
    Form<T> r;
    int n = f.deg();
    r.c.resize(n);
    for (int k = 0; k < n; ++k) r.c[k] = f.c[k + 1] * T(k + 1);
    return r;
}

template <>
Form<ComplexBall> dx(const Form<ComplexBall>& f) {
    Form<ComplexBall> r;
    int n = f.deg();
    r.c.resize(n);
    for (int k = 0; k < n; ++k) {
        ComplexBall s{RealBall::exact_int(n - k, f.c[k].prec()), RealBall(f.c[k].prec())};
        r.c[k] = f.c[k] * s;
    }
    return r;
}

template <>
Form<ComplexBall> dz(const Form<ComplexBall>& f) {
    Form<ComplexBall> r;
    int n = f.deg();
    r.c.resize(n);
    for (int k = 0; k < n; ++k) {
        ComplexBall s{RealBall::exact_int(k + 1, f.c[k + 1].prec()), RealBall(f.c[k + 1].prec())};
        r.c[k] = f.c[k + 1] * s;
    }
    return r;
}

template <typename T>
Form<T> mul(const Form<T>& a, const Form<T>& b, const T& zero) {
    Form<T> r;
    r.c.assign(a.c.size() + b.c.size() - 1, zero);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

template <typename T>
Form<T> deriv(const Form<T>& f, int ax, int az) {
    Form<T> r = f;
    for (int i = 0; i < ax; ++i) r = dx(r);
    for (int i = 0; i < az; ++i) r = dz(r);
    return r;
}

template <typename T>
Form<T> transvectant(const Form<T>& f, const Form<T>& g, int r, const T& zero,
                     const std::function<T(const BigRat&)>& lift) {
    int nf = f.deg(), ng = g.deg();
    Form<T> acc;
    for (int i = 0; i <= r; ++i) {
        Form<T> t = mul(deriv(f, r - i, i), deriv(g, i, r - i), zero);
        BigInt binom;
        mpz_bin_uiui(binom.get_mpz_t(), r, i);
        T s = lift(BigRat((i % 2) ? -binom : binom));
        for (auto& v : t.c) v = v * s;
        if (acc.c.empty())
            acc = t;
        else
            for (size_t k = 0; k < t.c.size(); ++k) acc.c[k] += t.c[k];
    }
    BigInt fnum = 1, fden = 1;
    for (int k = 2; k <= nf - r; ++k) fnum *= k;
    for (int k = 2; k <= ng - r; ++k) fnum *= k;
    for (int k = 2; k <= nf; ++k) fden *= k;
    for (int k = 2; k <= ng; ++k) fden *= k;
    BigRat fr(fnum, fden);
    fr.canonicalize();
    T scale = lift(fr);
    for (auto& v : acc.c) v = v * scale;
    return acc;
}

template <typename T>
IgusaClebschT<T> ic_generic(const std::vector<T>& coeffs, const T& zero,
                            const std::function<T(const BigRat&)>& lift) {
    Form<T> f{coeffs};
    auto tv = [&](const Form<T>& a, const Form<T>& b, int r) {
        return transvectant<T>(a, b, r, zero, lift);
    };
    Form<T> i4 = tv(f, f, 4);
    Form<T> Delta = tv(i4, i4, 2);
    Form<T> y1 = tv(f, i4, 4);
    Form<T> y2 = tv(i4, y1, 2);
    Form<T> y3 = tv(i4, y2, 2);
    T A = tv(f, f, 6).c[0];
    T B = tv(i4, i4, 4).c[0];
    T C = tv(i4, Delta, 4).c[0];
    T D = tv(y3, y1, 2).c[0];
    IgusaClebschT<T> out;
    out.I2 = A * lift(BigRat(-120));
    out.I4 = A * A * lift(BigRat(-720)) + B * lift(BigRat(6750));
    out.I6 = A * A * A * lift(BigRat(8640)) + A * B * lift(BigRat(-108000)) +
             C * lift(BigRat(202500));
    out.I10 = A * A * A * A * A * lift(BigRat(-62208)) +
              A * A * A * B * lift(BigRat(972000)) + A * A * C * lift(BigRat(1620000)) +
              A * B * B * lift(BigRat(-3037500)) + B * C * lift(BigRat(-6075000)) +
              D * lift(BigRat(-4556250));
    out.I6p = (out.I2 * out.I4 - out.I6 * lift(BigRat(3))) * lift(BigRat(1, 2));
    return out;
}

}  // namespace

IgusaClebsch ic_from_sextic(const std::vector<ComplexBall>& coeffs, mpfr_prec_t prec) {
    std::function<ComplexBall(const BigRat&)> lift = [prec](const BigRat& q) {
        return ComplexBall{RealBall::exact_rat(q, prec), RealBall(prec)};
    };
    return ic_generic<ComplexBall>(coeffs, ComplexBall(prec), lift);
}

IgusaClebschExact ic_from_sextic_exact(const std::vector<BigRat>& coeffs) {
    std::function<BigRat(const BigRat&)> lift = [](const BigRat& q) { return q; };
    return ic_generic<BigRat>(coeffs, BigRat(0), lift);
}

std::array<ComplexBall, 3> rosenhain_from_thetas(const ThetaVector& t) {
    // calibrated assignment in the even_characteristics() ordering:
    // lambda = (t0 t1 / (t3 t2))^2-free squared ratios with indices (0,1,3,2,8,9)
    auto sq = [&](int i) { return t.v[i] * t.v[i]; };
    ComplexBall lam = sq(0) * sq(1) / (sq(3) * sq(2));
    ComplexBall mu = sq(1) * sq(8) / (sq(2) * sq(9));
    ComplexBall nu = sq(0) * sq(8) / (sq(3) * sq(9));
    return {lam, mu, nu};
}

InvariantTriple igusa_invariants(const ThetaVector& t) {
    ComplexBall c10 = chi10(t);
    if (c10.contains_zero())
        throw DecomposablePoint("igusa_invariants: chi10 ball contains zero");
    mpfr_prec_t prec = c10.prec();
    auto [lam, mu, nu] = rosenhain_from_thetas(t);
    // sextic z * x (x - z)(x - lam z)(x - mu z)(x - nu z)
    const ComplexBall one = ComplexBall::exact_int(1, 0, prec);
    std::vector<ComplexBall> quintic{one};  // coefficients descending in x
    std::vector<const ComplexBall*> roots{nullptr, &one, &lam, &mu, &nu};
    for (const ComplexBall* r : roots) {
        std::vector<ComplexBall> next(quintic.size() + 1, ComplexBall(prec));
        for (size_t i = 0; i < quintic.size(); ++i) {
            next[i] += quintic[i];
            if (r) next[i + 1] -= quintic[i] * (*r);
        }
        quintic = std::move(next);
    }
    // quintic holds coefficients of x^5..x^0 (first root 0 contributed a zero shift)
    std::vector<ComplexBall> sextic;
    sextic.push_back(ComplexBall(prec));  // a0 = 0 (root at infinity)
    for (auto& c : quintic) sextic.push_back(c);
    IgusaClebsch ic = ic_from_sextic(sextic, prec);
    if (ic.I10.contains_zero())
        throw DecomposablePoint("igusa_invariants: I10 ball contains zero");
    auto js = streng_js(ic);
    InvariantTriple out{js[0], js[1], js[2]};
    ComplexBall i10sq = ic.I10 * ic.I10;
    ComplexBall I2p5 = ic.I2 * ic.I2;
    I2p5 = I2p5 * I2p5 * ic.I2;
    ComplexBall I4p5 = ic.I4 * ic.I4;
    I4p5 = I4p5 * I4p5 * ic.I4;
    ComplexBall I6p5 = ic.I6 * ic.I6;
    I6p5 = I6p5 * I6p5 * ic.I6;
    out.s1 = I2p5 / ic.I10;
    out.s2 = I4p5 / i10sq;
    out.s3 = I6p5 / (i10sq * ic.I10);
    out.degenerate = (ic.I4 * ic.I6p).contains_zero();
    return out;
}

std::optional<BigRat> recognize_rational(const RealBall& x, const BigInt& qmax) {
    // continued fraction of the midpoint, best approximation with den <= qmax
    BigRat mid = x.mid_rat();
    BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    BigInt num = mid.get_num(), den = mid.get_den();
    BigRat cand;
    bool have = false;
    while (den != 0) {
        BigInt a = div_floor(num, den);
        BigInt p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > qmax) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        BigInt r = num - a * den;
        num = den;
        den = r;
        cand = BigRat(p1, q1);
        cand.canonicalize();
        have = true;
    }
    if (!have) return std::nullopt;
    // containment
    if (!x.contains_rat(cand)) return std::nullopt;
    // separation: any other fraction with den <= qmax differs by >= 1/(q qmax);
    // require the ball plus the distance to cand to stay below half of that
    RealBall diff = x - RealBall::exact_rat(cand, x.prec() + 64);
    double width = std::abs(diff.mid_d()) + diff.rad_d() + x.rad_d();
    BigInt qc = cand.get_den();
    double gap = 1.0 / (qc.get_d() * qmax.get_d());
    if (width >= gap / 2) return std::nullopt;
    return cand;
}

ClassPolys class_polynomials(const std::vector<InvariantTriple>& points, const BigInt& qmax) {
    if (points.empty()) throw Error("class_polynomials: no points");
    mpfr_prec_t prec = points[0].j1.prec();
    auto expand = [&](auto pick) {
        std::vector<ComplexBall> poly{ComplexBall::exact_int(1, 0, prec)};
        for (auto& p : points) {
            ComplexBall r = pick(p);
            std::vector<ComplexBall> next(poly.size() + 1, ComplexBall(prec));
            for (size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] += poly[i];
                next[i] -= poly[i] * r;
            }
            poly = std::move(next);
        }
        // poly: ascending coefficients with leading 1 at the back
        std::vector<BigRat> out;
        for (size_t i = 0; i + 1 < poly.size(); ++i) {
            if (!poly[i].im.contains_zero())
                throw RecognitionFailed("class polynomial coefficient not real");
            auto r = recognize_rational(poly[i].re, qmax);
            if (!r) throw RecognitionFailed("class polynomial coefficient not recognized");
            out.push_back(*r);
        }
        return out;
    };
    ClassPolys out;
    out.h1 = expand([](const InvariantTriple& p) { return p.j1; });
    out.h2 = expand([](const InvariantTriple& p) { return p.j2; });
    out.h3 = expand([](const InvariantTriple& p) { return p.j3; });
    return out;
}

ClassPolys supplementary_class_polynomials(const std::vector<InvariantTriple>& points,
                                           const BigInt& qmax) {
    std::vector<InvariantTriple> remap;
    for (auto& p : points) {
        InvariantTriple t;
        t.j1 = p.s1;
        t.j2 = p.s2;
        t.j3 = p.s3;
        remap.push_back(t);
    }
    return class_polynomials(remap, qmax);
}

bool refute_integrality(const std::vector<InvariantTriple>& points) {
    if (points.empty()) return false;
    mpfr_prec_t prec = points[0].j1.prec();
    auto check = [&](auto pick) {
        std::vector<ComplexBall> poly{ComplexBall::exact_int(1, 0, prec)};
        for (auto& p : points) {
            ComplexBall r = pick(p);
            std::vector<ComplexBall> next(poly.size() + 1, ComplexBall(prec));
            for (size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] += poly[i];
                next[i] -= poly[i] * r;
            }
            poly = std::move(next);
        }
        for (size_t i = 0; i + 1 < poly.size(); ++i) {
            // coefficient certifiably non-real or away from every integer
            if (!poly[i].im.contains_zero()) return true;
            BigInt nearest = poly[i].re.mid_round();
            if (!poly[i].re.contains_int(nearest)) return true;
        }
        return false;
    };
    return check([](const InvariantTriple& p) { return p.j1; }) ||
           check([](const InvariantTriple& p) { return p.j2; }) ||
           check([](const InvariantTriple& p) { return p.j3; });
}

} // namespace g2cm
