// qpke.hpp -- public-key encryption of quantum messages via induced trapdoor
// one-way quantum transformations |m> -> |g(m,r)>|f(m,r)>, with seven concrete
// schemes: rsa, elgamal, gm, ecc, mceliece, niederreiter, otu.
//
// Every encryption and decryption is executed step by step through the
// simulator's XOR oracles and uncomputations; the classical evaluation path
// (classical_eval / classical_decrypt) is the independent degeneration oracle.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qpkc/bitword.hpp"
#include "qpkc/ecurve.hpp"
#include "qpkc/gf2.hpp"
#include "qpkc/numtheory.hpp"
#include "qpkc/qsim.hpp"
#include "qpkc/rng.hpp"

namespace qpkc {

enum class SchemeId { rsa, elgamal, gm, ecc, mceliece, niederreiter, otu };

inline const char* to_string(SchemeId s) {
    switch (s) {
        case SchemeId::rsa: return "rsa";
        case SchemeId::elgamal: return "elgamal";
        case SchemeId::gm: return "gm";
        case SchemeId::ecc: return "ecc";
        case SchemeId::mceliece: return "mceliece";
        case SchemeId::niederreiter: return "niederreiter";
        case SchemeId::otu: return "otu";
    }
    throw std::logic_error("unknown scheme");
}

inline SchemeId scheme_from_string(const std::string& s) {
    if (s == "rsa") return SchemeId::rsa;
    if (s == "elgamal") return SchemeId::elgamal;
    if (s == "gm") return SchemeId::gm;
    if (s == "ecc") return SchemeId::ecc;
    if (s == "mceliece") return SchemeId::mceliece;
    if (s == "niederreiter") return SchemeId::niederreiter;
    if (s == "otu") return SchemeId::otu;
    throw std::invalid_argument("unknown scheme '" + s + "'");
}

enum class DecryptionCase { case1_g_of_r, case1_g_of_m, case2_recovers_r };

// ---- per-scheme key material --------------------------------------------

struct RsaKeys {
    std::uint64_t n = 0, e = 0;                       // public
    std::optional<std::uint64_t> p, q, s;             // private: factors, e^-1 mod phi
    int width() const { return bit_length(n - 1); }
};

struct ElgamalKeys {
    std::uint64_t p = 0, alpha = 0, beta = 0;         // public, beta = alpha^s
    std::optional<std::uint64_t> s;                   // private
    int width() const { return bit_length(p - 1); }
};

struct GmKeys {
    std::uint64_t n = 0, t = 0;                       // public: modulus, QNR with Jacobi 1
    int k = 0;                                        // message bits
    std::optional<std::uint64_t> p, q;                // private factors
    int value_width() const { return bit_length(n - 1); }
};

struct EccKeys {
    Curve curve;                                      // public
    Point base;                                       // P
    Point pub;                                        // Q = sP
    std::uint64_t base_order = 0;                     // ord(P), enumerable at desk scale
    std::optional<std::uint64_t> s;                   // private
    int width() const { return bit_length(curve.p - 1); }
};

struct McElieceKeys {
    GF2Matrix gpub;                                   // G' = SGP (k x n)
    GF2Matrix gpub_rinv;                              // right inverse of G'
    int t = 0;                                        // public capability
    std::optional<GF2Matrix> scramble;                // S
    std::optional<LinearCode> code;                   // G, H, decoder
    std::optional<GF2Matrix> perm;                    // P
    int n() const { return gpub.cols(); }
    int k() const { return gpub.rows(); }
};

struct NiederreiterKeys {
    GF2Matrix hpub;                                   // H' = MHP ((n-k) x n)
    int t = 0;
    std::optional<GF2Matrix> mix;                     // M
    std::optional<LinearCode> code;
    std::optional<GF2Matrix> perm;                    // P
    int n() const { return hpub.cols(); }
    int k() const { return hpub.cols() - hpub.rows(); }
};

struct OtuKeys {
    int n = 0, k = 0;                                 // public: code length, weight
    std::vector<std::uint64_t> b;                     // public coefficients
    std::optional<std::uint64_t> gen, d, p;           // private
    std::optional<std::vector<std::uint64_t>> primes; // private p_1..p_n
    int message_width() const { return bit_length(binomial(n, k) - 1); }
    int cipher_width() const {
        std::vector<std::uint64_t> sorted = b;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        std::uint64_t mx = 0;
        for (int i = 0; i < k; ++i) mx += sorted[static_cast<std::size_t>(i)];
        return bit_length(mx);
    }
};

struct KeyPair {
    SchemeId scheme;
    std::variant<RsaKeys, ElgamalKeys, GmKeys, EccKeys, McElieceKeys,
                 NiederreiterKeys, OtuKeys>
        keys;

    template <class T> const T& as() const {
        const T* k = std::get_if<T>(&keys);
        if (!k) throw std::invalid_argument("KeyPair: scheme mismatch");
        return *k;
    }
};

// ---- key generation ------------------------------------------------------

inline KeyPair rsa_keygen(std::uint64_t p, std::uint64_t q, std::uint64_t e) {
    if (!is_prime_trial(p) || !is_prime_trial(q) || p == q)
        throw std::invalid_argument("rsa_keygen: p, q must be distinct primes");
    std::uint64_t phi = (p - 1) * (q - 1);
    if (e < 2 || e >= phi || std::gcd(e, phi) != 1)
        throw std::invalid_argument("rsa_keygen: e must be a unit mod phi(N)");
    RsaKeys k;
    k.n = p * q;
    k.e = e;
    k.p = p;
    k.q = q;
    k.s = mod_inv(e, phi);
    return KeyPair{SchemeId::rsa, k};
}

inline KeyPair elgamal_keygen(std::uint64_t p, std::uint64_t alpha, std::uint64_t s) {
    if (!is_prime_trial(p) || p < 3)
        throw std::invalid_argument("elgamal_keygen: p must be prime");
    if (!is_generator(alpha, p))
        throw std::invalid_argument("elgamal_keygen: alpha must generate Z_p^*");
    if (s < 1 || s >= p - 1)
        throw std::invalid_argument("elgamal_keygen: s out of range");
    ElgamalKeys k;
    k.p = p;
    k.alpha = alpha;
    k.s = s;
    k.beta = mod_pow(alpha, s, p);
    return KeyPair{SchemeId::elgamal, k};
}

// t defaults to the smallest quadratic nonresidue with Jacobi symbol +1.
inline KeyPair gm_keygen(std::uint64_t p, std::uint64_t q, int kbits,
                         std::optional<std::uint64_t> t = std::nullopt) {
    if (!is_prime_trial(p) || !is_prime_trial(q) || p == q || p == 2 || q == 2)
        throw std::invalid_argument("gm_keygen: p, q must be distinct odd primes");
    if (kbits < 1 || kbits > 6)
        throw std::invalid_argument("gm_keygen: k out of desk-scale range");
    Modulus mod(p, q);
    auto valid_t = [&](std::uint64_t cand) {
        return std::gcd(cand, mod.n()) == 1 && jacobi(cand, mod.n()) == 1 &&
               !is_qr(cand, mod);
    };
    std::uint64_t tv;
    if (t) {
        if (!valid_t(*t))
            throw std::invalid_argument("gm_keygen: t must be a Jacobi-1 nonresidue");
        tv = *t;
    } else {
        tv = 2;
        while (tv < mod.n() && !valid_t(tv)) ++tv;
        if (tv == mod.n()) throw std::invalid_argument("gm_keygen: no valid t found");
    }
    GmKeys k;
    k.n = mod.n();
    k.t = tv;
    k.k = kbits;
    k.p = p;
    k.q = q;
    return KeyPair{SchemeId::gm, k};
}

inline KeyPair ecc_keygen(const Curve& curve, const Point& base, std::uint64_t s) {
    if (base.inf || !curve.contains(base))
        throw std::invalid_argument("ecc_keygen: base point must lie on the curve");
    std::uint64_t ord = point_order(curve, base);
    if (s < 1 || s >= ord)
        throw std::invalid_argument("ecc_keygen: s must be in [1, ord(P))");
    EccKeys k{curve, base, scalar_mul(curve, s, base), ord, s};
    return KeyPair{SchemeId::ecc, k};
}

inline KeyPair mceliece_keygen_explicit(const LinearCode& code, const GF2Matrix& s,
                                        const GF2Matrix& p) {
    if (s.rows() != code.k() || s.cols() != code.k() || s.rank() != code.k())
        throw std::invalid_argument("mceliece_keygen: S must be k x k invertible");
    if (p.rows() != code.n() || p.cols() != code.n())
        throw std::invalid_argument("mceliece_keygen: P must be n x n");
    McElieceKeys k;
    k.gpub = s * code.generator() * p;
    k.gpub_rinv = k.gpub.right_inverse();
    k.t = code.t();
    k.scramble = s;
    k.code = code;
    k.perm = p;
    return KeyPair{SchemeId::mceliece, k};
}

inline KeyPair mceliece_keygen(const LinearCode& code, Rng& rng) {
    return mceliece_keygen_explicit(code,
                                    GF2Matrix::random_invertible(code.k(), rng),
                                    GF2Matrix::random_permutation(code.n(), rng));
}

inline KeyPair niederreiter_keygen_explicit(const LinearCode& code, const GF2Matrix& m,
                                            const GF2Matrix& p) {
    int rows = code.n() - code.k();
    if (m.rows() != rows || m.cols() != rows || m.rank() != rows)
        throw std::invalid_argument("niederreiter_keygen: M must be invertible");
    if (p.rows() != code.n() || p.cols() != code.n())
        throw std::invalid_argument("niederreiter_keygen: P must be n x n");
    NiederreiterKeys k;
    k.hpub = m * code.check() * p;
    k.t = code.t();
    k.mix = m;
    k.code = code;
    k.perm = p;
    return KeyPair{SchemeId::niederreiter, k};
}

inline KeyPair niederreiter_keygen(const LinearCode& code, Rng& rng) {
    return niederreiter_keygen_explicit(
        code, GF2Matrix::random_invertible(code.n() - code.k(), rng),
        GF2Matrix::random_permutation(code.n(), rng));
}

// Requires p greater than the product of the k largest p_i, so the decryption
// value u = prod p_i^{e_i} is exact over the integers.
inline KeyPair otu_keygen(std::uint64_t p, std::uint64_t g, std::uint64_t d,
                          const std::vector<std::uint64_t>& primes, int k) {
    int n = static_cast<int>(primes.size());
    if (n < 2 || k < 1 || k > n)
        throw std::invalid_argument("otu_keygen: need 1 <= k <= n and n >= 2");
    std::set<std::uint64_t> seen;
    for (std::uint64_t pi : primes) {
        if (!is_prime_trial(pi))
            throw std::invalid_argument("otu_keygen: p_i must be prime");
        if (!seen.insert(pi).second)
            throw std::invalid_argument("otu_keygen: p_i must be distinct");
    }
    std::vector<std::uint64_t> sorted(primes);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    std::uint64_t bound = 1;
    for (int i = 0; i < k; ++i) bound *= sorted[static_cast<std::size_t>(i)];
    if (!is_prime_trial(p) || p <= bound)
        throw std::invalid_argument(
            "otu_keygen: p must be a prime above the product of the k largest p_i");
    if (!is_generator(g, p))
        throw std::invalid_argument("otu_keygen: g must generate Z_p^*");
    if (d >= p - 1) throw std::invalid_argument("otu_keygen: d out of range");

    OtuKeys keys;
    keys.n = n;
    keys.k = k;
    keys.gen = g;
    keys.d = d;
    keys.p = p;
    keys.primes = primes;
    for (std::uint64_t pi : primes)
        keys.b.push_back((d + dlog_bruteforce(g, pi, p)) % (p - 1));
    return KeyPair{SchemeId::otu, keys};
}

// Desk-scale default parameter sampler used by the verification suites.
inline KeyPair keygen_random(SchemeId scheme, Rng& rng) {
    switch (scheme) {
        case SchemeId::rsa: {
            const std::pair<std::uint64_t, std::uint64_t> pqs[] = {{3, 5}, {3, 11}, {5, 7}};
            auto [p, q] = pqs[rng.below(3)];
            std::uint64_t phi = (p - 1) * (q - 1);
            std::uint64_t e;
            do { e = 2 + rng.below(phi - 2); } while (std::gcd(e, phi) != 1);
            return rsa_keygen(p, q, e);
        }
        case SchemeId::elgamal: {
            const std::uint64_t ps[] = {11, 23};
            std::uint64_t p = ps[rng.below(2)];
            std::uint64_t alpha;
            do { alpha = 2 + rng.below(p - 3); } while (!is_generator(alpha, p));
            return elgamal_keygen(p, alpha, 1 + rng.below(p - 2));
        }
        case SchemeId::gm:
            return gm_keygen(3, 5, static_cast<int>(2 + rng.below(2)));
        case SchemeId::ecc: {
            Curve curve(11, 1, 6);
            Point base = Point::affine(2, 7);
            std::uint64_t ord = point_order(curve, base);
            return ecc_keygen(curve, base, 1 + rng.below(ord - 1));
        }
        case SchemeId::mceliece:
            return mceliece_keygen(LinearCode::hamming74(), rng);
        case SchemeId::niederreiter:
            return niederreiter_keygen(LinearCode::hamming74(), rng);
        case SchemeId::otu: {
            const std::uint64_t ps[] = {37, 41, 43, 53, 59, 61, 67, 71, 73, 79};
            std::uint64_t p = ps[rng.below(10)];
            std::uint64_t g;
            do { g = 2 + rng.below(p - 3); } while (!is_generator(g, p));
            return otu_keygen(p, g, rng.below(p - 1), {2, 3, 5, 7}, 2);
        }
    }
    throw std::logic_error("keygen_random: unknown scheme");
}

// ---- scheme description, message space, randomness domain ----------------

struct SchemeInfo {
    SchemeId scheme;
    int message_width;
    DecryptionCase decryption_case;
    std::string randomness_description;
};

inline int message_width(const KeyPair& kp) {
    switch (kp.scheme) {
        case SchemeId::rsa: return kp.as<RsaKeys>().width();
        case SchemeId::elgamal: return kp.as<ElgamalKeys>().width();
        case SchemeId::gm: return kp.as<GmKeys>().k;
        case SchemeId::ecc: return kp.as<EccKeys>().width();
        case SchemeId::mceliece: return kp.as<McElieceKeys>().k();
        case SchemeId::niederreiter: return kp.as<NiederreiterKeys>().n();
        case SchemeId::otu: return kp.as<OtuKeys>().message_width();
    }
    throw std::logic_error("message_width: unknown scheme");
}

inline SchemeInfo describe(const KeyPair& kp) {
    SchemeInfo info{kp.scheme, message_width(kp), DecryptionCase::case2_recovers_r, ""};
    switch (kp.scheme) {
        case SchemeId::rsa:
            info.randomness_description = "uniform word of the modulus width";
            break;
        case SchemeId::elgamal:
            info.decryption_case = DecryptionCase::case1_g_of_m;
            info.randomness_description = "uniform exponent in [0, p-1)";
            break;
        case SchemeId::gm:
            info.randomness_description = "k words in [1, 2^k) coprime to N";
            break;
        case SchemeId::ecc:
            info.decryption_case = DecryptionCase::case1_g_of_r;
            info.randomness_description = "scalar in [1, ord(P)) with rQ != O";
            break;
        case SchemeId::mceliece:
            info.randomness_description = "uniform word of weight t";
            break;
        case SchemeId::niederreiter:
            info.randomness_description = "uniform word of weight t";
            break;
        case SchemeId::otu:
            info.randomness_description = "uniform word of the message width";
            break;
    }
    return info;
}

inline bool message_space_contains(const KeyPair& kp, std::uint64_t m) {
    switch (kp.scheme) {
        case SchemeId::rsa: {
            const auto& k = kp.as<RsaKeys>();
            return m >= 1 && m < k.n && std::gcd(m, k.n) == 1;
        }
        case SchemeId::elgamal: {
            const auto& k = kp.as<ElgamalKeys>();
            return m >= 1 && m < k.p;
        }
        case SchemeId::gm:
            return m < (std::uint64_t{1} << kp.as<GmKeys>().k);
        case SchemeId::ecc:
            return m < (std::uint64_t{1} << kp.as<EccKeys>().width());
        case SchemeId::mceliece:
            return m < (std::uint64_t{1} << kp.as<McElieceKeys>().k());
        case SchemeId::niederreiter:
            return m < (std::uint64_t{1} << kp.as<NiederreiterKeys>().n());
        case SchemeId::otu:
            return m < binomial(kp.as<OtuKeys>().n, kp.as<OtuKeys>().k);
    }
    throw std::logic_error("message_space_contains: unknown scheme");
}

inline std::vector<std::uint64_t> enumerate_message_space(const KeyPair& kp) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << message_width(kp)); ++m)
        if (message_space_contains(kp, m)) out.push_back(m);
    return out;
}

using Randomness = std::vector<BitWord>;

inline bool r_in_domain(const KeyPair& kp, const Randomness& r) {
    switch (kp.scheme) {
        case SchemeId::rsa: {
            const auto& k = kp.as<RsaKeys>();
            return r.size() == 1 && r[0].width() == k.width();
        }
        case SchemeId::elgamal: {
            const auto& k = kp.as<ElgamalKeys>();
            int w = bit_length(k.p > 2 ? k.p - 2 : 1);
            return r.size() == 1 && r[0].width() == w && r[0].value() < k.p - 1;
        }
        case SchemeId::gm: {
            const auto& k = kp.as<GmKeys>();
            if (r.size() != static_cast<std::size_t>(k.k)) return false;
            for (const auto& w : r) {
                if (w.width() != k.k) return false;
                if (w.value() == 0 || std::gcd(w.value(), k.n) != 1) return false;
            }
            return true;
        }
        case SchemeId::ecc: {
            const auto& k = kp.as<EccKeys>();
            int w = bit_length(k.base_order - 1);
            if (r.size() != 1 || r[0].width() != w) return false;
            std::uint64_t v = r[0].value();
            if (v < 1 || v >= k.base_order) return false;
            return !scalar_mul(k.curve, v, k.pub).inf;
        }
        case SchemeId::mceliece: {
            const auto& k = kp.as<McElieceKeys>();
            return r.size() == 1 && r[0].width() == k.n() &&
                   r[0].hamming_weight() == k.t;
        }
        case SchemeId::niederreiter: {
            const auto& k = kp.as<NiederreiterKeys>();
            return r.size() == 1 && r[0].width() == k.n() &&
                   r[0].hamming_weight() == k.t;
        }
        case SchemeId::otu: {
            const auto& k = kp.as<OtuKeys>();
            return r.size() == 1 && r[0].width() == k.message_width();
        }
    }
    throw std::logic_error("r_in_domain: unknown scheme");
}

inline Randomness sample_randomness(const KeyPair& kp, Rng& rng) {
    switch (kp.scheme) {
        case SchemeId::rsa: {
            const auto& k = kp.as<RsaKeys>();
            return {BitWord(k.width(), rng.below(std::uint64_t{1} << k.width()))};
        }
        case SchemeId::elgamal: {
            const auto& k = kp.as<ElgamalKeys>();
            int w = bit_length(k.p > 2 ? k.p - 2 : 1);
            return {BitWord(w, rng.below(k.p - 1))};
        }
        case SchemeId::gm: {
            const auto& k = kp.as<GmKeys>();
            Randomness r;
            for (int i = 0; i < k.k; ++i) {
                std::uint64_t v;
                do { v = 1 + rng.below((std::uint64_t{1} << k.k) - 1); }
                while (std::gcd(v, k.n) != 1);
                r.emplace_back(k.k, v);
            }
            return r;
        }
        case SchemeId::ecc: {
            const auto& k = kp.as<EccKeys>();
            int w = bit_length(k.base_order - 1);
            std::uint64_t v;
            do { v = 1 + rng.below(k.base_order - 1); }
            while (scalar_mul(k.curve, v, k.pub).inf);
            return {BitWord(w, v)};
        }
        case SchemeId::mceliece:
        case SchemeId::niederreiter: {
            int n, t;
            if (kp.scheme == SchemeId::mceliece) {
                n = kp.as<McElieceKeys>().n();
                t = kp.as<McElieceKeys>().t;
            } else {
                n = kp.as<NiederreiterKeys>().n();
                t = kp.as<NiederreiterKeys>().t;
            }
            std::uint64_t v = 0;
            for (int remaining = t; remaining > 0;) {
                std::uint64_t bit = std::uint64_t{1} << rng.below(static_cast<std::uint64_t>(n));
                if (!(v & bit)) { v |= bit; --remaining; }
            }
            return {BitWord(n, v)};
        }
        case SchemeId::otu: {
            const auto& k = kp.as<OtuKeys>();
            int w = k.message_width();
            return {BitWord(w, rng.below(std::uint64_t{1} << w))};
        }
    }
    throw std::logic_error("sample_randomness: unknown scheme");
}

// Full enumeration of the randomness domain (all domains here are small).
inline std::vector<Randomness> enumerate_r_domain(const KeyPair& kp) {
    std::vector<Randomness> out;
    switch (kp.scheme) {
        case SchemeId::rsa: {
            const auto& k = kp.as<RsaKeys>();
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << k.width()); ++v)
                out.push_back({BitWord(k.width(), v)});
            return out;
        }
        case SchemeId::elgamal: {
            const auto& k = kp.as<ElgamalKeys>();
            int w = bit_length(k.p > 2 ? k.p - 2 : 1);
            for (std::uint64_t v = 0; v + 1 < k.p; ++v) out.push_back({BitWord(w, v)});
            return out;
        }
        case SchemeId::gm: {
            const auto& k = kp.as<GmKeys>();
            std::vector<std::uint64_t> candidates;
            for (std::uint64_t v = 1; v < (std::uint64_t{1} << k.k); ++v)
                if (std::gcd(v, k.n) == 1) candidates.push_back(v);
            std::vector<std::size_t> idx(static_cast<std::size_t>(k.k), 0);
            for (;;) {
                Randomness r;
                for (int i = 0; i < k.k; ++i)
                    r.emplace_back(k.k, candidates[idx[static_cast<std::size_t>(i)]]);
                out.push_back(r);
                int pos = k.k - 1;
                while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == candidates.size())
                    idx[static_cast<std::size_t>(pos--)] = 0;
                if (pos < 0) break;
            }
            return out;
        }
        case SchemeId::ecc: {
            const auto& k = kp.as<EccKeys>();
            int w = bit_length(k.base_order - 1);
            for (std::uint64_t v = 1; v < k.base_order; ++v)
                if (!scalar_mul(k.curve, v, k.pub).inf) out.push_back({BitWord(w, v)});
            return out;
        }
        case SchemeId::mceliece:
        case SchemeId::niederreiter: {
            int n, t;
            if (kp.scheme == SchemeId::mceliece) {
                n = kp.as<McElieceKeys>().n();
                t = kp.as<McElieceKeys>().t;
            } else {
                n = kp.as<NiederreiterKeys>().n();
                t = kp.as<NiederreiterKeys>().t;
            }
            CwCode cw(n, t);
            for (std::uint64_t i = 0; i < cw.size(); ++i)
                out.push_back({cw.encode(i)});
            return out;
        }
        case SchemeId::otu: {
            const auto& k = kp.as<OtuKeys>();
            int w = k.message_width();
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << w); ++v)
                out.push_back({BitWord(w, v)});
            return out;
        }
    }
    throw std::logic_error("enumerate_r_domain: unknown scheme");
}

// ---- classical evaluation (the degeneration oracle) ----------------------

using ClassicalSide = std::variant<BitWord, Point>;

struct ClassicalCipher {
    std::vector<BitWord> g;          // g(m,r) components (empty when g == 0)
    std::vector<BitWord> f;          // f(m,r) components
    std::vector<ClassicalSide> side; // classical transmissions
};

namespace detail {

// The i-th bit of the m_1 m_2 ... m_k string convention (m_1 most significant).
inline std::uint64_t gm_bit(std::uint64_t m, int k, int i) {
    return (m >> (k - i)) & 1u;
}

inline std::uint64_t gm_component(const GmKeys& key, std::uint64_t m,
                                  std::uint64_t ri, int i) {
    std::uint64_t c = mul_mod(ri % key.n, ri % key.n, key.n);
    if (gm_bit(m, key.k, i)) c = mul_mod(c, key.t, key.n);
    return c;
}

inline std::uint64_t otu_cipher(const OtuKeys& key, std::uint64_t m) {
    CwCode cw(key.n, key.k);
    BitWord e = cw.encode(m);
    std::uint64_t c = 0;
    for (int i = 1; i <= key.n; ++i)
        if (e.bit(key.n - i)) c += key.b[static_cast<std::size_t>(i - 1)];
    return c;
}

inline std::uint64_t otu_sum_from_e(const OtuKeys& key, std::uint64_t e_bits) {
    std::uint64_t c = 0;
    for (int i = 1; i <= key.n; ++i)
        if ((e_bits >> (key.n - i)) & 1u) c += key.b[static_cast<std::size_t>(i - 1)];
    return c;
}

// Decryption map c -> e(m): u = g^((c - k d) mod (p-1)) mod p, e_i = [p_i | u].
inline std::uint64_t otu_e_from_c(const OtuKeys& key, std::uint64_t c) {
    std::uint64_t pm1 = *key.p - 1;
    std::uint64_t kd = (static_cast<std::uint64_t>(key.k) % pm1) * (*key.d % pm1) % pm1;
    std::uint64_t exp = ((c % pm1) + pm1 - kd % pm1) % pm1;
    std::uint64_t u = mod_pow(*key.gen, exp, *key.p);
    std::uint64_t e_bits = 0;
    for (int i = 1; i <= key.n; ++i)
        if (u % (*key.primes)[static_cast<std::size_t>(i - 1)] == 0)
            e_bits |= std::uint64_t{1} << (key.n - i);
    return e_bits;
}

} // namespace detail

inline ClassicalCipher classical_eval(const KeyPair& kp, std::uint64_t m,
                                      const Randomness& r) {
    if (!message_space_contains(kp, m))
        throw std::invalid_argument("classical_eval: message outside message space");
    if (!r_in_domain(kp, r))
        throw std::invalid_argument("classical_eval: r out of domain");
    ClassicalCipher out;
    switch (kp.scheme) {
        case SchemeId::rsa: {
            const auto& k = kp.as<RsaKeys>();
            out.g = {BitWord(k.width(), m) ^ r[0]};
            out.f = {BitWord(k.width(), mod_pow(m, k.e, k.n))};
            return out;
        }
        case SchemeId::elgamal: {
            const auto& k = kp.as<ElgamalKeys>();
            std::uint64_t br = mod_pow(k.beta, r[0].value(), k.p);
            out.g = {BitWord(k.width(), m)};
            out.f = {BitWord(k.width(), mul_mod(m, br, k.p))};
            out.side = {BitWord(k.width(), mod_pow(k.alpha, r[0].value(), k.p))};
            return out;
        }
        case SchemeId::gm: {
            const auto& k = kp.as<GmKeys>();
            std::uint64_t mask = BitWord::mask(k.k);
            std::uint64_t prev = 0;
            for (int i = 1; i <= k.k; ++i) {
                std::uint64_t ri = r[static_cast<std::size_t>(i - 1)].value();
                std::uint64_t gi = (i == 1 ? m : (prev * m) & mask) ^ ri;
                out.g.emplace_back(k.k, gi);
                out.f.emplace_back(k.value_width(), detail::gm_component(k, m, ri, i));
                prev = ri;
            }
            return out;
        }
        case SchemeId::ecc: {
            const auto& k = kp.as<EccKeys>();
            Point rq = scalar_mul(k.curve, r[0].value(), k.pub);
            out.f = {BitWord(k.width(), m) ^ BitWord(k.width(), rq.x)};
            out.side = {scalar_mul(k.curve, r[0].value(), k.base)};
            return out;
        }
        case SchemeId::mceliece: {
            const auto& k = kp.as<McElieceKeys>();
            out.f = {vec_mul(BitWord(k.k(), m), k.gpub) ^ r[0]};
            return out;
        }
        case SchemeId::niederreiter: {
            const auto& k = kp.as<NiederreiterKeys>();
            out.g = {BitWord(k.n(), m) ^ r[0]};
            out.f = {vec_mul(BitWord(k.n(), m), k.hpub.transpose())};
            return out;
        }
        case SchemeId::otu: {
            const auto& k = kp.as<OtuKeys>();
            out.g = {BitWord(k.message_width(), m) ^ r[0]};
            out.f = {BitWord(k.cipher_width(), detail::otu_cipher(k, m))};
            return out;
        }
    }
    throw std::logic_error("classical_eval: unknown scheme");
}

inline std::uint64_t classical_decrypt(const KeyPair& kp, const ClassicalCipher& c) {
    switch (kp.scheme) {
        case SchemeId::rsa: {
            const auto& k = kp.as<RsaKeys>();
            return mod_pow(c.f.at(0).value(), *k.s, k.n);
        }
        case SchemeId::elgamal: {
            const auto& k = kp.as<ElgamalKeys>();
            std::uint64_t c1 = std::get<BitWord>(c.side.at(0)).value();
            std::uint64_t br = mod_pow(c1, *k.s, k.p);
            return mul_mod(c.f.at(0).value(), mod_inv(br, k.p), k.p);
        }
        case SchemeId::gm: {
            const auto& k = kp.as<GmKeys>();
            Modulus mod(*k.p, *k.q);
            std::uint64_t m = 0;
            for (int i = 1; i <= k.k; ++i) {
                bool residue = is_qr(c.f.at(static_cast<std::size_t>(i - 1)).value(), mod);
                if (!residue) m |= std::uint64_t{1} << (k.k - i);
            }
            return m;
        }
        case SchemeId::ecc: {
            const auto& k = kp.as<EccKeys>();
            Point rp = std::get<Point>(c.side.at(0));
            Point rq = scalar_mul(k.curve, *k.s, rp);
            if (rq.inf) throw std::runtime_error("classical_decrypt: rQ is infinity");
            return c.f.at(0).value() ^ rq.x;
        }
        case SchemeId::mceliece: {
            const auto& k = kp.as<McElieceKeys>();
            GF2Matrix pinv = k.perm->transpose();
            BitWord y = vec_mul(c.f.at(0), pinv); // mSG + rP^{-1}
            BitWord e = k.code->syndrome_decode(k.code->syndrome_of(y));
            BitWord msg_sg = y ^ e;
            BitWord ms = vec_mul(msg_sg, k.code->generator_right_inverse());
            return vec_mul(ms, k.scramble->inverse()).value();
        }
        case SchemeId::niederreiter: {
            const auto& k = kp.as<NiederreiterKeys>();
            BitWord rh = c.f.at(0) ^ vec_mul(c.g.at(0), k.hpub.transpose());
            BitWord synd = vec_mul(rh, k.mix->transpose().inverse());
            BitWord rp = k.code->syndrome_decode(synd); // r P^T
            BitWord r = vec_mul(rp, *k.perm);
            return (c.g.at(0) ^ r).value();
        }
        case SchemeId::otu: {
            const auto& k = kp.as<OtuKeys>();
            std::uint64_t e_bits = detail::otu_e_from_c(k, c.f.at(0).value());
            CwCode cw(k.n, k.k);
            return cw.decode(BitWord(k.n, e_bits));
        }
    }
    throw std::logic_error("classical_decrypt: unknown scheme");
}

inline BitWord classical_roundtrip(const KeyPair& kp, const BitWord& m,
                                   const Randomness& r) {
    if (m.width() != message_width(kp))
        throw std::invalid_argument("classical_roundtrip: wrong message width");
    ClassicalCipher c = classical_eval(kp, m.value(), r);
    return BitWord(message_width(kp), classical_decrypt(kp, c));
}

// Exhaustive unitarity condition: for every r in the domain, m -> (g, f) must be
// injective over the message space.
inline void check_joint_injectivity(const KeyPair& kp) {
    auto messages = enumerate_message_space(kp);
    for (const auto& r : enumerate_r_domain(kp)) {
        std::map<std::vector<std::uint64_t>, std::uint64_t> seen;
        for (std::uint64_t m : messages) {
            ClassicalCipher c = classical_eval(kp, m, r);
            std::vector<std::uint64_t> key;
            for (const auto& w : c.g) key.push_back(w.value());
            for (const auto& w : c.f) key.push_back(w.value());
            auto [it, inserted] = seen.emplace(std::move(key), m);
            if (!inserted)
                throw std::runtime_error("joint injectivity violated for scheme " +
                                         std::string(to_string(kp.scheme)));
        }
    }
}

// ---- quantum encryption / decryption --------------------------------------

struct CipherState {
    SchemeId scheme;
    PureState state;
    std::vector<ClassicalSide> classical;
};

struct DecryptResult {
    PureState message;
    std::vector<BitWord> recovered_r; // empty for the cases that never yield r
};

// Expected register layout of a cipher state.
inline RegisterLayout cipher_layout(const KeyPair& kp) {
    switch (kp.scheme) {
        case SchemeId::rsa: {
            int w = kp.as<RsaKeys>().width();
            return RegisterLayout{{"g", w}, {"f", w}};
        }
        case SchemeId::elgamal: {
            int w = kp.as<ElgamalKeys>().width();
            return RegisterLayout{{"g", w}, {"f", w}};
        }
        case SchemeId::gm: {
            const auto& k = kp.as<GmKeys>();
            std::vector<std::pair<std::string, int>> regs;
            for (int i = 1; i <= k.k; ++i)
                regs.emplace_back("g" + std::to_string(i), k.k);
            for (int i = 1; i <= k.k; ++i)
                regs.emplace_back("f" + std::to_string(i), k.value_width());
            return RegisterLayout(regs);
        }
        case SchemeId::ecc:
            return RegisterLayout{{"f", kp.as<EccKeys>().width()}};
        case SchemeId::mceliece:
            return RegisterLayout{{"f", kp.as<McElieceKeys>().n()}};
        case SchemeId::niederreiter: {
            const auto& k = kp.as<NiederreiterKeys>();
            return RegisterLayout{{"g", k.n()}, {"f", k.n() - k.k()}};
        }
        case SchemeId::otu: {
            const auto& k = kp.as<OtuKeys>();
            return RegisterLayout{{"g", k.message_width()}, {"f", k.cipher_width()}};
        }
    }
    throw std::logic_error("cipher_layout: unknown scheme");
}

inline RegisterLayout message_layout(const KeyPair& kp) {
    return RegisterLayout{{"m", message_width(kp)}};
}

namespace detail {

inline void require_message_state(const KeyPair& kp, const PureState& message) {
    if (!(message.layout() == message_layout(kp)))
        throw std::invalid_argument("encrypt: message must live on the 'm' register");
    for (const auto& [label, amp] : message.terms())
        if (!message_space_contains(kp, label))
            throw std::invalid_argument(
                "encrypt: basis state outside the scheme's message space");
}

} // namespace detail

inline CipherState encrypt(const KeyPair& kp, const PureState& message,
                           const Randomness& r) {
    detail::require_message_state(kp, message);
    if (!r_in_domain(kp, r)) throw std::invalid_argument("encrypt: r out of domain");

    switch (kp.scheme) {
        case SchemeId::rsa: {
            const auto& key = kp.as<RsaKeys>();
            int w = key.width();
            PureState s = append_register(message, "f", w);
            s = apply_xor_oracle(s, {"m"}, "f", [&](std::span<const std::uint64_t> v) {
                return mod_pow(v[0], key.e, key.n);
            });
            s = xor_constant(s, "m", r[0]);
            s = rename_register(s, "m", "g");
            return CipherState{kp.scheme, std::move(s), {}};
        }
        case SchemeId::elgamal: {
            const auto& key = kp.as<ElgamalKeys>();
            std::uint64_t br = mod_pow(key.beta, r[0].value(), key.p);
            PureState s = append_register(message, "f", key.width());
            s = apply_xor_oracle(s, {"m"}, "f", [&](std::span<const std::uint64_t> v) {
                return mul_mod(v[0], br, key.p);
            });
            s = rename_register(s, "m", "g");
            BitWord side(key.width(), mod_pow(key.alpha, r[0].value(), key.p));
            return CipherState{kp.scheme, std::move(s), {side}};
        }
        case SchemeId::gm: {
            const auto& key = kp.as<GmKeys>();
            std::uint64_t mask = BitWord::mask(key.k);
            PureState s = message;
            for (int i = 1; i <= key.k; ++i)
                s = append_register(s, "g" + std::to_string(i), key.k);
            for (int i = 1; i <= key.k; ++i)
                s = append_register(s, "f" + std::to_string(i), key.value_width());
            for (int i = 1; i <= key.k; ++i) {
                std::uint64_t ri = r[static_cast<std::size_t>(i - 1)].value();
                int idx = i;
                s = apply_xor_oracle(s, {"m"}, "f" + std::to_string(i),
                                     [&key, ri, idx](std::span<const std::uint64_t> v) {
                                         return detail::gm_component(key, v[0], ri, idx);
                                     });
            }
            std::uint64_t r1 = r[0].value();
            s = apply_xor_oracle(s, {"m"}, "g1", [&](std::span<const std::uint64_t> v) {
                return v[0] ^ r1;
            });
            for (int i = 2; i <= key.k; ++i) {
                std::uint64_t rprev = r[static_cast<std::size_t>(i - 2)].value();
                std::uint64_t ri = r[static_cast<std::size_t>(i - 1)].value();
                s = apply_xor_oracle(s, {"m"}, "g" + std::to_string(i),
                                     [rprev, ri, mask](std::span<const std::uint64_t> v) {
                                         return ((rprev * v[0]) & mask) ^ ri;
                                     });
            }
            s = apply_uncompute(s, {"g1"}, "m", [&](std::span<const std::uint64_t> v) {
                return v[0] ^ r1;
            });
            s = drop_register(s, "m");
            return CipherState{kp.scheme, std::move(s), {}};
        }
        case SchemeId::ecc: {
            const auto& key = kp.as<EccKeys>();
            Point rq = scalar_mul(key.curve, r[0].value(), key.pub);
            PureState s = xor_constant(message, "m", BitWord(key.width(), rq.x));
            s = rename_register(s, "m", "f");
            Point rp = scalar_mul(key.curve, r[0].value(), key.base);
            return CipherState{kp.scheme, std::move(s), {rp}};
        }
        case SchemeId::mceliece: {
            const auto& key = kp.as<McElieceKeys>();
            PureState s = append_register(message, "f", key.n());
            s = apply_xor_oracle(s, {"m"}, "f", [&](std::span<const std::uint64_t> v) {
                return vec_mul(BitWord(key.k(), v[0]), key.gpub).value();
            });
            s = apply_uncompute(s, {"f"}, "m", [&](std::span<const std::uint64_t> v) {
                return vec_mul(BitWord(key.n(), v[0]), key.gpub_rinv).value();
            });
            s = drop_register(s, "m");
            s = xor_constant(s, "f", r[0]);
            return CipherState{kp.scheme, std::move(s), {}};
        }
        case SchemeId::niederreiter: {
            const auto& key = kp.as<NiederreiterKeys>();
            GF2Matrix ht = key.hpub.transpose();
            PureState s = append_register(message, "f", key.n() - key.k());
            s = apply_xor_oracle(s, {"m"}, "f", [&](std::span<const std::uint64_t> v) {
                return vec_mul(BitWord(key.n(), v[0]), ht).value();
            });
            s = xor_constant(s, "m", r[0]);
            s = rename_register(s, "m", "g");
            return CipherState{kp.scheme, std::move(s), {}};
        }
        case SchemeId::otu: {
            const auto& key = kp.as<OtuKeys>();
            CwCode cw(key.n, key.k);
            PureState s = append_register(message, "e", key.n);
            s = apply_xor_oracle(s, {"m"}, "e", [&](std::span<const std::uint64_t> v) {
                return cw.encode(v[0]).value();
            });
            s = append_register(s, "f", key.cipher_width());
            s = apply_xor_oracle(s, {"e"}, "f", [&](std::span<const std::uint64_t> v) {
                return detail::otu_sum_from_e(key, v[0]);
            });
            s = apply_uncompute(s, {"m"}, "e", [&](std::span<const std::uint64_t> v) {
                return cw.encode(v[0]).value();
            });
            s = drop_register(s, "e");
            s = xor_constant(s, "m", r[0]);
            s = rename_register(s, "m", "g");
            return CipherState{kp.scheme, std::move(s), {}};
        }
    }
    throw std::logic_error("encrypt: unknown scheme");
}

namespace detail {

template <class T> const T& require_private(const std::optional<T>& v) {
    if (!v) throw std::invalid_argument("decrypt: private key material missing");
    return *v;
}

} // namespace detail

inline DecryptResult decrypt(const KeyPair& kp, const CipherState& cipher) {
    if (cipher.scheme != kp.scheme)
        throw std::invalid_argument("decrypt: scheme mismatch between key and cipher");
    if (!(cipher.state.layout() == cipher_layout(kp)))
        throw std::invalid_argument("decrypt: unexpected cipher layout");

    switch (kp.scheme) {
        case SchemeId::rsa: {
            const auto& key = kp.as<RsaKeys>();
            std::uint64_t sexp = detail::require_private(key.s);
            int w = key.width();
            PureState s = append_register(cipher.state, "m", w);
            s = apply_xor_oracle(s, {"f"}, "m", [&](std::span<const std::uint64_t> v) {
                return mod_pow(v[0], sexp, key.n);
            });
            s = apply_xor_oracle(s, {"m"}, "g",
                                 [](std::span<const std::uint64_t> v) { return v[0]; });
            MeasureResult mr = measure_register_deterministic(s, "g");
            s = xor_constant(mr.post, "g", mr.outcome);
            s = drop_register(s, "g");
            s = apply_uncompute(s, {"m"}, "f", [&](std::span<const std::uint64_t> v) {
                return mod_pow(v[0], key.e, key.n);
            });
            s = drop_register(s, "f");
            return DecryptResult{std::move(s), {mr.outcome}};
        }
        case SchemeId::elgamal: {
            const auto& key = kp.as<ElgamalKeys>();
            std::uint64_t sexp = detail::require_private(key.s);
            std::uint64_t c1 = std::get<BitWord>(cipher.classical.at(0)).value();
            std::uint64_t br = mod_pow(c1, sexp, key.p);
            PureState s = apply_uncompute(cipher.state, {"g"}, "f",
                                          [&](std::span<const std::uint64_t> v) {
                                              return mul_mod(v[0], br, key.p);
                                          });
            s = drop_register(s, "f");
            s = rename_register(s, "g", "m");
            return DecryptResult{std::move(s), {}};
        }
        case SchemeId::gm: {
            const auto& key = kp.as<GmKeys>();
            Modulus mod(detail::require_private(key.p), detail::require_private(key.q));
            std::uint64_t mask = BitWord::mask(key.k);
            std::vector<std::string> fregs;
            for (int i = 1; i <= key.k; ++i) fregs.push_back("f" + std::to_string(i));

            PureState s = append_register(cipher.state, "m", key.k);
            s = apply_xor_oracle(s, fregs, "m", [&](std::span<const std::uint64_t> v) {
                std::uint64_t m = 0;
                for (int i = 1; i <= key.k; ++i)
                    if (!is_qr(v[static_cast<std::size_t>(i - 1)], mod))
                        m |= std::uint64_t{1} << (key.k - i);
                return m;
            });

            std::vector<BitWord> recovered;
            std::uint64_t prev = 0;
            for (int i = 1; i <= key.k; ++i) {
                std::string gi = "g" + std::to_string(i);
                if (i == 1) {
                    s = apply_xor_oracle(s, {"m"}, gi,
                                         [](std::span<const std::uint64_t> v) { return v[0]; });
                } else {
                    std::uint64_t rprev = prev;
                    s = apply_xor_oracle(s, {"m"}, gi,
                                         [rprev, mask](std::span<const std::uint64_t> v) {
                                             return (rprev * v[0]) & mask;
                                         });
                }
                MeasureResult mr = measure_register_deterministic(s, gi);
                recovered.push_back(mr.outcome);
                prev = mr.outcome.value();
                s = xor_constant(mr.post, gi, mr.outcome);
                s = drop_register(s, gi);
            }
            for (int i = 1; i <= key.k; ++i) {
                std::uint64_t ri = recovered[static_cast<std::size_t>(i - 1)].value();
                int idx = i;
                s = apply_uncompute(s, {"m"}, "f" + std::to_string(i),
                                    [&key, ri, idx](std::span<const std::uint64_t> v) {
                                        return detail::gm_component(key, v[0], ri, idx);
                                    });
                s = drop_register(s, "f" + std::to_string(i));
            }
            return DecryptResult{std::move(s), std::move(recovered)};
        }
        case SchemeId::ecc: {
            const auto& key = kp.as<EccKeys>();
            std::uint64_t sexp = detail::require_private(key.s);
            Point rp = std::get<Point>(cipher.classical.at(0));
            if (!key.curve.contains(rp))
                throw std::invalid_argument("decrypt: classical point not on curve");
            Point rq = scalar_mul(key.curve, sexp, rp);
            if (rq.inf) throw std::runtime_error("decrypt: rQ is the identity");
            PureState s = xor_constant(cipher.state, "f", BitWord(key.width(), rq.x));
            s = rename_register(s, "f", "m");
            return DecryptResult{std::move(s), {}};
        }
        case SchemeId::mceliece: {
            const auto& key = kp.as<McElieceKeys>();
            const auto& code = detail::require_private(key.code);
            const auto& perm = detail::require_private(key.perm);
            const auto& scr = detail::require_private(key.scramble);
            GF2Matrix pinv = perm.transpose();
            GF2Matrix ht = code.check().transpose();
            GF2Matrix sinv = scr.inverse();
            int n = key.n(), k = key.k();

            PureState s = append_register(cipher.state, "y", n);
            s = apply_xor_oracle(s, {"f"}, "y", [&](std::span<const std::uint64_t> v) {
                return vec_mul(BitWord(n, v[0]), pinv).value();
            });
            s = apply_uncompute(s, {"y"}, "f", [&](std::span<const std::uint64_t> v) {
                return vec_mul(BitWord(n, v[0]), perm).value();
            });
            s = drop_register(s, "f");
            s = append_register(s, "synd", n - k);
            s = apply_xor_oracle(s, {"y"}, "synd", [&](std::span<const std::uint64_t> v) {
                return vec_mul(BitWord(n, v[0]), ht).value();
            });
            MeasureResult mr = measure_register_deterministic(s, "synd");
            BitWord err = code.syndrome_decode(mr.outcome); // r P^{-1}
            s = xor_constant(mr.post, "synd", mr.outcome);
            s = drop_register(s, "synd");
            s = xor_constant(s, "y", err); // y = mSG
            s = append_register(s, "u", k);
            s = apply_xor_oracle(s, {"y"}, "u", [&](std::span<const std::uint64_t> v) {
                return vec_mul(BitWord(n, v[0]), code.generator_right_inverse()).value();
            });
            s = apply_uncompute(s, {"u"}, "y", [&](std::span<const std::uint64_t> v) {
                return vec_mul(BitWord(k, v[0]), code.generator()).value();
            });
            s = drop_register(s, "y");
            s = append_register(s, "m", k);
            s = apply_xor_oracle(s, {"u"}, "m", [&](std::span<const std::uint64_t> v) {
                return vec_mul(BitWord(k, v[0]), sinv).value();
            });
            s = apply_uncompute(s, {"m"}, "u", [&](std::span<const std::uint64_t> v) {
                return vec_mul(BitWord(k, v[0]), scr).value();
            });
            s = drop_register(s, "u");
            return DecryptResult{std::move(s), {vec_mul(err, perm)}};
        }
        case SchemeId::niederreiter: {
            const auto& key = kp.as<NiederreiterKeys>();
            const auto& code = detail::require_private(key.code);
            const auto& perm = detail::require_private(key.perm);
            const auto& mix = detail::require_private(key.mix);
            GF2Matrix hpub_t = key.hpub.transpose();
            int n = key.n();

            PureState s = apply_xor_oracle(cipher.state, {"g"}, "f",
                                           [&](std::span<const std::uint64_t> v) {
                                               return vec_mul(BitWord(n, v[0]), hpub_t).value();
                                           });
            MeasureResult mr = measure_register_deterministic(s, "f");
            BitWord synd = vec_mul(mr.outcome, mix.transpose().inverse());
            BitWord rp = code.syndrome_decode(synd); // r P^T
            BitWord r = vec_mul(rp, perm);
            s = xor_constant(mr.post, "f", mr.outcome);
            s = drop_register(s, "f");
            s = xor_constant(s, "g", r);
            s = rename_register(s, "g", "m");
            return DecryptResult{std::move(s), {r}};
        }
        case SchemeId::otu: {
            const auto& key = kp.as<OtuKeys>();
            detail::require_private(key.p);
            CwCode cw(key.n, key.k);
            PureState s = append_register(cipher.state, "e", key.n);
            s = apply_xor_oracle(s, {"f"}, "e", [&](std::span<const std::uint64_t> v) {
                return detail::otu_e_from_c(key, v[0]);
            });
            s = append_register(s, "m", key.message_width());
            s = apply_xor_oracle(s, {"e"}, "m", [&](std::span<const std::uint64_t> v) {
                return cw.decode(BitWord(key.n, v[0]));
            });
            s = apply_xor_oracle(s, {"m"}, "g",
                                 [](std::span<const std::uint64_t> v) { return v[0]; });
            MeasureResult mr = measure_register_deterministic(s, "g");
            s = xor_constant(mr.post, "g", mr.outcome);
            s = drop_register(s, "g");
            s = apply_uncompute(s, {"e"}, "f", [&](std::span<const std::uint64_t> v) {
                return detail::otu_sum_from_e(key, v[0]);
            });
            s = drop_register(s, "f");
            s = apply_uncompute(s, {"m"}, "e", [&](std::span<const std::uint64_t> v) {
                return cw.encode(v[0]).value();
            });
            s = drop_register(s, "e");
            return DecryptResult{std::move(s), {mr.outcome}};
        }
    }
    throw std::logic_error("decrypt: unknown scheme");
}

// ---- cipher ensembles (the receiver's mixed view over unknown r) ----------

struct RSupport {
    std::vector<std::pair<double, Randomness>> points;
};

inline RSupport full_r_support(const KeyPair& kp) {
    auto domain = enumerate_r_domain(kp);
    RSupport s;
    double p = 1.0 / static_cast<double>(domain.size());
    for (auto& r : domain) s.points.emplace_back(p, std::move(r));
    return s;
}

inline RSupport sampled_r_support(const KeyPair& kp, int count, Rng& rng) {
    std::set<std::vector<std::pair<int, std::uint64_t>>> seen;
    RSupport s;
    int attempts = 0;
    while (static_cast<int>(s.points.size()) < count) {
        if (++attempts > 100000)
            throw std::runtime_error("sampled_r_support: domain too small");
        Randomness r = sample_randomness(kp, rng);
        std::vector<std::pair<int, std::uint64_t>> key;
        for (const auto& w : r) key.emplace_back(w.width(), w.value());
        if (seen.insert(key).second)
            s.points.emplace_back(1.0 / count, std::move(r));
    }
    return s;
}

inline CipherEnsemble encrypt_ensemble(const KeyPair& kp, const PureState& message,
                                       const RSupport& support) {
    std::vector<CipherEnsemble::Member> members;
    for (const auto& [p, r] : support.points)
        members.push_back(CipherEnsemble::Member{p, r, encrypt(kp, message, r).state});
    return CipherEnsemble(std::move(members));
}

} // namespace qpkc
