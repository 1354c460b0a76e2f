#include "g2cm/integer.hpp"

#include <algorithm>

namespace g2cm {

std::vector<std::uint32_t> primes_below(std::uint32_t n) {
    std::vector<bool> comp(n, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i < n; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j < n; j += i)
                comp[j] = true;
        }
    }
    return out;
}

namespace {

BigInt rho_brent(const BigInt& n, Rng& rng) {
    if (n % 2 == 0) return 2;
    while (true) {
        BigInt y = rng.big_below(n - 1) + 1;
        BigInt c = rng.big_below(n - 1) + 1;
        BigInt m = 128, g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (BigInt i = 0; i < r; ++i) y = mod_floor(y * y + c, n);
            BigInt k = 0;
            while (k < r && g == 1) {
                ys = y;
                BigInt lim = std::min(m, BigInt(r - k));
                for (BigInt i = 0; i < lim; ++i) {
                    y = mod_floor(y * y + c, n);
                    q = mod_floor(q * (x - y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = mod_floor(ys * ys + c, n);
                g = gcd(x - ys, n);
            }
        }
        if (g != n) return g;
    }
}

void factor_rec(const BigInt& n, Rng& rng, std::vector<BigInt>& primes) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        primes.push_back(n);
        return;
    }
    BigInt d = rho_brent(n, rng);
    factor_rec(d, rng, primes);
    factor_rec(n / d, rng, primes);
}

}  // namespace

std::vector<std::pair<BigInt, unsigned>> factor(const BigInt& n_in, Rng& rng) {
    BigInt n = n_in;
    if (n < 0) n = -n;
    std::vector<BigInt> primes;
    if (n <= 1) return {};
    // trial division over small primes first
    static const std::vector<std::uint32_t> small = primes_below(100000);
    for (auto p : small) {
        if (BigInt(p) * p > n) break;
        while (n % p == 0) {
            primes.emplace_back(p);
            n /= p;
        }
    }
    if (n > 1) {
        if (is_probable_prime(n))
            primes.push_back(n);
        else
            factor_rec(n, rng, primes);
    }
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<BigInt, unsigned>> out;
    for (auto& p : primes) {
        if (!out.empty() && out.back().first == p)
            out.back().second++;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

bool is_fundamental_discriminant(const BigInt& d) {
    if (d == 1) return false;
    BigInt m4 = mod_floor(d, 4);
    if (m4 == 1) {
        // must be squarefree
        Rng rng(1);
        for (auto& [p, e] : factor(d, rng))
            if (e > 1) return false;
        return true;
    }
    if (m4 == 0) {
        BigInt q = d / 4;
        BigInt qm = mod_floor(q, 4);
        if (qm != 2 && qm != 3) return false;
        Rng rng(1);
        for (auto& [p, e] : factor(q, rng))
            if (e > 1) return false;
        return true;
    }
    return false;
}

} // namespace g2cm
