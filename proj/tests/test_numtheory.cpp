#include <doctest.h>

#include <map>
#include <numeric>
#include <set>

#include "qpkc/numtheory.hpp"
#include "qpkc/rng.hpp"

using namespace qpkc;

TEST_SUITE("numtheory") {

TEST_CASE("mod_pow") {
    CHECK(mod_pow(9, 1, 15) == 9);
    CHECK(mod_pow(2, 3, 15) == 8);
    CHECK(mod_pow(7, 3, 15) == 343 % 15); // direct division oracle
    CHECK(mod_pow(7, 3, 15) == 13);
    CHECK(mod_pow(5, 0, 7) == 1);
}

TEST_CASE("mod_inv") {
    CHECK(mod_inv(1, 7) == 1);
    CHECK(mod_inv(3, 8) == 3); // 3*3 = 9 = 1 mod 8
    CHECK(mul_mod(mod_inv(3, 8), 3, 8) == 1);
    CHECK_THROWS_AS(mod_inv(3, 9), std::invalid_argument);
    for (std::uint64_t a = 1; a < 101; ++a)
        if (std::gcd(a, std::uint64_t{101}) == 1)
            CHECK(mul_mod(a, mod_inv(a, 101), 101) == 1);
}

TEST_CASE("jacobi symbol") {
    CHECK(jacobi(1, 15) == 1);
    CHECK(jacobi(4, 15) == 1);
    // 2 is a nonresidue mod 3 and mod 5 (enumerate squares), yet (2/15) = +1.
    std::set<std::uint64_t> sq3, sq5;
    for (std::uint64_t x = 1; x < 3; ++x) sq3.insert(x * x % 3);
    for (std::uint64_t x = 1; x < 5; ++x) sq5.insert(x * x % 5);
    CHECK(!sq3.count(2));
    CHECK(!sq5.count(2));
    CHECK(jacobi(2, 15) == 1);
    // Consistency with Euler's criterion for prime modulus.
    for (std::uint64_t a = 1; a < 23; ++a) {
        int euler = mod_pow(a, 11, 23) == 1 ? 1 : -1;
        CHECK(jacobi(a, 23) == euler);
    }
    CHECK(jacobi(15, 15) == 0);
}

TEST_CASE("quadratic residues mod composite") {
    Modulus m(3, 5);
    CHECK(is_qr(1, m));
    CHECK(is_qr(4, m));
    CHECK(!is_qr(2, m));
    // Oracle: enumerate squares of units mod 15.
    std::set<std::uint64_t> squares;
    for (std::uint64_t x = 1; x < 15; ++x)
        if (std::gcd(x, std::uint64_t{15}) == 1) squares.insert(x * x % 15);
    for (std::uint64_t x = 1; x < 15; ++x)
        if (std::gcd(x, std::uint64_t{15}) == 1)
            CHECK(is_qr(x, m) == (squares.count(x) > 0));
    CHECK_THROWS_AS(is_qr(3, m), std::invalid_argument);
    CHECK_THROWS_AS(is_qr(2, Modulus(15)), std::invalid_argument);
}

TEST_CASE("jacobi partitions units: counts for N = 15 and 21") {
    for (auto [p, q] : {std::pair<std::uint64_t, std::uint64_t>{3, 5}, {3, 7}}) {
        Modulus m(p, q);
        int residues = 0, pseudo = 0, minus = 0;
        for (std::uint64_t x = 1; x < m.n(); ++x) {
            if (std::gcd(x, m.n()) != 1) continue;
            int j = jacobi(x, m.n());
            bool qr = is_qr(x, m);
            if (j == -1) {
                CHECK(!qr);
                ++minus;
            } else if (qr) {
                ++residues;
            } else {
                ++pseudo;
            }
        }
        std::uint64_t units = (p - 1) * (q - 1);
        CHECK(residues == static_cast<int>(units / 4));
        CHECK(pseudo == static_cast<int>(units / 4));
        CHECK(minus == static_cast<int>(units / 2));
    }
}

TEST_CASE("is_qr of squares (sampled)") {
    Rng rng(4);
    Modulus m(5, 7);
    for (int i = 0; i < 200; ++i) {
        std::uint64_t x = 1 + rng.below(m.n() - 1);
        if (std::gcd(x, m.n()) != 1) continue;
        CHECK(is_qr(mul_mod(x, x, m.n()), m));
    }
}

TEST_CASE("rsa exponentiation round trip (sampled)") {
    Modulus m(3, 11);
    std::uint64_t e = 7, s = mod_inv(e, m.phi());
    for (std::uint64_t x = 1; x < m.n(); ++x) {
        if (std::gcd(x, m.n()) != 1) continue;
        CHECK(mod_pow(mod_pow(x, e, m.n()), s, m.n()) == x);
    }
}

TEST_CASE("discrete logarithm by exhaustion") {
    CHECK(dlog_bruteforce(2, 1, 11) == 0);
    CHECK(dlog_bruteforce(2, 8, 11) == 3);
    // Oracle: enumerate powers of 2 mod 11.
    std::map<std::uint64_t, std::uint64_t> powers;
    std::uint64_t cur = 1;
    for (std::uint64_t x = 0; x < 10; ++x) {
        powers.emplace(cur, x);
        cur = cur * 2 % 11;
    }
    CHECK(powers.at(7) == 7);
    CHECK(dlog_bruteforce(2, 7, 11) == 7);
    // 3 generates only {1,3,9,5,4} mod 11; 2 is outside.
    CHECK_THROWS_AS(dlog_bruteforce(3, 2, 11), std::invalid_argument);
}

TEST_CASE("modulus construction") {
    CHECK_THROWS_AS(Modulus(4, 5), std::invalid_argument);
    CHECK_THROWS_AS(Modulus(5, 5), std::invalid_argument);
    CHECK(Modulus(3, 5).phi() == 8);
    CHECK(!Modulus(15).has_factors());
}

TEST_CASE("constant-weight code: n=4 k=2 against the summation formula") {
    CwCode code(4, 2);
    CHECK(code.size() == 6);
    // Oracle: evaluate m = sum_i e_i C(n-i, k - sum_{j<i} e_j) for every
    // weight-2 word and confirm the map is exactly the inverse of encode.
    std::map<std::uint64_t, std::uint64_t> decoded;
    for (std::uint64_t bits = 0; bits < 16; ++bits) {
        BitWord e(4, bits);
        if (e.hamming_weight() != 2) continue;
        std::uint64_t m = 0;
        int seen = 0;
        for (int i = 1; i <= 4; ++i) {
            if ((bits >> (4 - i)) & 1u) {
                m += binomial(4 - i, 2 - seen);
                ++seen;
            }
        }
        CHECK(decoded.emplace(m, bits).second);
        CHECK(code.decode(e) == m);
        CHECK(code.encode(m) == e);
    }
    CHECK(decoded.size() == 6);
}

TEST_CASE("constant-weight bijection, exhaustive n <= 12") {
    for (int n = 1; n <= 12; ++n) {
        for (int k = 0; k <= n; ++k) {
            CwCode code(n, k);
            std::set<std::uint64_t> words;
            for (std::uint64_t m = 0; m < code.size(); ++m) {
                BitWord e = code.encode(m);
                CHECK(e.hamming_weight() == k);
                CHECK(code.decode(e) == m);
                words.insert(e.value());
            }
            CHECK(words.size() == code.size());
            CHECK(code.size() == binomial(n, k));
        }
    }
}

TEST_CASE("constant-weight errors") {
    CwCode code(4, 2);
    CHECK(code.decode(code.encode(0)) == 0);
    CHECK_THROWS_AS(code.encode(6), std::out_of_range);
    CHECK_THROWS_AS(code.decode(BitWord(4, 0b1000)), std::invalid_argument);
}

} // TEST_SUITE
