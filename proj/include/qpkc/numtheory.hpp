// numtheory.hpp -- modular arithmetic, residuosity, brute-force discrete
// logarithm, and constant-weight (combinadic) encoding. All values are 64-bit
// with 128-bit intermediates; everything is sized for exhaustive checking.
#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qpkc/bitword.hpp"

namespace qpkc {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("mul_mod: zero modulus");
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % n);
}

inline std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("mod_pow: modulus must be >= 2");
    std::uint64_t result = 1 % n;
    base %= n;
    while (exp > 0) {
        if (exp & 1u) result = mul_mod(result, base, n);
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    return result;
}

inline std::uint64_t mod_inv(std::uint64_t a, std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("mod_inv: modulus must be >= 2");
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(n), new_r = static_cast<std::int64_t>(a % n);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw std::invalid_argument("mod_inv: input not invertible");
    if (t < 0) t += static_cast<std::int64_t>(n);
    return static_cast<std::uint64_t>(t);
}

inline bool is_prime_trial(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// Jacobi symbol (a/n) for odd n >= 3.
inline int jacobi(std::uint64_t a, std::uint64_t n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("jacobi: n must be odd and >= 3");
    a %= n;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::uint64_t m = n % 8;
            if (m == 3 || m == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

// A modulus with optional known factorization n = p * q, verified by trial
// division at construction.
class Modulus {
public:
    explicit Modulus(std::uint64_t n) : n_(n) {
        if (n < 2) throw std::invalid_argument("Modulus: n must be >= 2");
    }

    Modulus(std::uint64_t p, std::uint64_t q) : n_(p * q), pq_(std::pair{p, q}) {
        if (!is_prime_trial(p) || !is_prime_trial(q))
            throw std::invalid_argument("Modulus: factors must be prime");
        if (p == q) throw std::invalid_argument("Modulus: factors must be distinct");
    }

    std::uint64_t n() const { return n_; }
    bool has_factors() const { return pq_.has_value(); }
    std::uint64_t p() const { return require_factors().first; }
    std::uint64_t q() const { return require_factors().second; }
    std::uint64_t phi() const { return (p() - 1) * (q() - 1); }

private:
    const std::pair<std::uint64_t, std::uint64_t>& require_factors() const {
        if (!pq_) throw std::logic_error("Modulus: factorization not known");
        return *pq_;
    }

    std::uint64_t n_;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> pq_;
};

// Euler criterion on each prime factor: x is a residue mod n = pq iff it is a
// residue mod p and mod q. Requires gcd(x, n) == 1 and odd factors.
inline bool is_qr(std::uint64_t x, const Modulus& m) {
    if (!m.has_factors())
        throw std::invalid_argument("is_qr: factorization required");
    if (std::gcd(x, m.n()) != 1)
        throw std::invalid_argument("is_qr: x must be coprime to n");
    auto euler = [&](std::uint64_t p) {
        if (p == 2) return true;
        return mod_pow(x % p, (p - 1) / 2, p) == 1;
    };
    return euler(m.p()) && euler(m.q());
}

// Smallest x >= 0 with g^x == h (mod p), by exhaustive search. Throws if h is
// not in the subgroup generated by g.
inline std::uint64_t dlog_bruteforce(std::uint64_t g, std::uint64_t h, std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 20))
        throw std::invalid_argument("dlog_bruteforce: modulus too large");
    h %= p;
    std::uint64_t x = 0, cur = 1 % p;
    do {
        if (cur == h) return x;
        cur = mul_mod(cur, g % p, p);
        ++x;
    } while (cur != 1 % p && x < p);
    throw std::invalid_argument("dlog_bruteforce: target not in subgroup");
}

// Multiplicative order of g mod p (prime p).
inline std::uint64_t element_order(std::uint64_t g, std::uint64_t p) {
    std::uint64_t cur = g % p, ord = 1;
    if (cur == 0) throw std::invalid_argument("element_order: g divisible by p");
    while (cur != 1) {
        cur = mul_mod(cur, g % p, p);
        if (++ord > p) throw std::logic_error("element_order: no order found");
    }
    return ord;
}

inline bool is_generator(std::uint64_t g, std::uint64_t p) {
    return g % p != 0 && element_order(g, p) == p - 1;
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (acc > ~std::uint64_t{0}) throw std::overflow_error("binomial: overflow");
    }
    return static_cast<std::uint64_t>(acc);
}

// Constant-weight code: bijection between [0, C(n,k)) and length-n words of
// Hamming weight k. Position i of the word e_1 e_2 ... e_n is stored at
// bit (n - i), i.e. e_1 is the most significant bit.
struct CwCode {
    int n;
    int k;

    CwCode(int n_, int k_) : n(n_), k(k_) {
        if (n < 1 || n > 62 || k < 0 || k > n)
            throw std::invalid_argument("CwCode: bad parameters");
    }

    std::uint64_t size() const { return binomial(n, k); }

    BitWord encode(std::uint64_t m) const {
        if (m >= size()) throw std::out_of_range("CwCode::encode: message out of range");
        std::uint64_t rem = m;
        int kr = k;
        std::uint64_t bits = 0;
        for (int i = 1; i <= n; ++i) {
            std::uint64_t c = binomial(n - i, kr);
            if (c <= rem) {
                bits |= std::uint64_t{1} << (n - i);
                rem -= c;
                --kr;
            }
        }
        return BitWord(n, bits);
    }

    // m = sum_i e_i * C(n-i, k - sum_{j<i} e_j).
    std::uint64_t decode(const BitWord& e) const {
        if (e.width() != n) throw std::invalid_argument("CwCode::decode: wrong width");
        if (e.hamming_weight() != k)
            throw std::invalid_argument("CwCode::decode: wrong Hamming weight");
        std::uint64_t m = 0;
        int seen = 0;
        for (int i = 1; i <= n; ++i) {
            if (e.bit(n - i)) {
                m += binomial(n - i, k - seen);
                ++seen;
            }
        }
        return m;
    }
};

} // namespace qpkc
