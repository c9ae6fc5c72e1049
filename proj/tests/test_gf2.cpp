#include <doctest.h>

#include <map>
#include <set>

#include "qpkc/gf2.hpp"

using namespace qpkc;

namespace {

// Oracle: plain O(n^3) product over GF(2), independent of the row-XOR path.
GF2Matrix slow_mul(const GF2Matrix& a, const GF2Matrix& b) {
    GF2Matrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            bool acc = false;
            for (int k = 0; k < a.cols(); ++k) acc ^= a.at(i, k) && b.at(k, j);
            out.set(i, j, acc);
        }
    return out;
}

} // namespace

TEST_SUITE("gf2") {

TEST_CASE("bitword basics") {
    BitWord w(7, 0b1010100);
    CHECK(w.to_string() == "1010100");
    CHECK(BitWord::from_string("1010100") == w);
    CHECK(w.hamming_weight() == 3);
    CHECK((w ^ BitWord(7, 0b0000001)).value() == 0b1010101);
    CHECK_THROWS_AS(w ^ BitWord(6, 0), std::invalid_argument);
    CHECK_THROWS_AS(BitWord(3, 8), std::invalid_argument);
    CHECK(BitWord(3, 5).concat(BitWord(2, 1)) == BitWord(5, 0b10101));
    CHECK(BitWord(5, 0b10101).high_bits(3) == BitWord(3, 5));
    CHECK(BitWord(5, 0b10101).low_bits(2) == BitWord(2, 1));
}

TEST_CASE("matrix product: identity and Hamming G H^T") {
    LinearCode ham = LinearCode::hamming74();
    GF2Matrix i4 = GF2Matrix::identity(4);
    CHECK(i4 * ham.generator() == ham.generator());

    GF2Matrix prod = ham.generator() * ham.check().transpose();
    CHECK(prod.rows() == 4);
    CHECK(prod.cols() == 3);
    CHECK(prod.is_zero());
    CHECK(slow_mul(ham.generator(), ham.check().transpose()).is_zero());

    GF2Matrix a(2, 3), b(2, 3);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
}

TEST_CASE("matrix product associativity on random triples") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        GF2Matrix a = GF2Matrix::random(3, 5, rng);
        GF2Matrix b = GF2Matrix::random(5, 4, rng);
        GF2Matrix c = GF2Matrix::random(4, 6, rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == slow_mul(a, b));
    }
}

TEST_CASE("generalized right inverse") {
    CHECK(GF2Matrix::identity(5).right_inverse() == GF2Matrix::identity(5));

    LinearCode ham = LinearCode::hamming74();
    GF2Matrix x = ham.generator().right_inverse();
    CHECK(ham.generator() * x == GF2Matrix::identity(4));

    GF2Matrix zero(2, 4);
    CHECK_THROWS_AS(zero.right_inverse(), std::invalid_argument);

    // 100 random full-row-rank matrices
    Rng rng(7);
    int done = 0;
    while (done < 100) {
        int k = 1 + static_cast<int>(rng.below(6));
        int n = k + static_cast<int>(rng.below(5));
        GF2Matrix g = GF2Matrix::random(k, n, rng);
        if (!g.full_row_rank()) continue;
        CHECK(g * g.right_inverse() == GF2Matrix::identity(k));
        ++done;
    }
}

TEST_CASE("right inverse is deterministic") {
    Rng rng(3);
    GF2Matrix g = GF2Matrix::random(3, 6, rng);
    while (!g.full_row_rank()) g = GF2Matrix::random(3, 6, rng);
    CHECK(g.right_inverse() == g.right_inverse());
}

TEST_CASE("random invertible matrices") {
    Rng rng(21);
    CHECK(GF2Matrix::random_invertible(1, rng) == GF2Matrix::identity(1));
    GF2Matrix m = GF2Matrix::random_invertible(4, rng);
    CHECK(m * m.inverse() == GF2Matrix::identity(4));
    for (int i = 0; i < 1000; ++i)
        CHECK(GF2Matrix::random_invertible(3, rng).rank() == 3);
}

TEST_CASE("permutation matrices preserve weight") {
    Rng rng(5);
    CHECK(GF2Matrix::random_permutation(1, rng) == GF2Matrix::identity(1));
    GF2Matrix p = GF2Matrix::random_permutation(7, rng);
    CHECK(p.transpose() * p == GF2Matrix::identity(7));
    for (std::uint64_t v = 0; v < 128; ++v) { // every 7-bit word
        BitWord w(7, v);
        CHECK(vec_mul(w, p).hamming_weight() == w.hamming_weight());
    }
}

TEST_CASE("syndrome decoding on the Hamming code") {
    LinearCode ham = LinearCode::hamming74();
    CHECK(ham.syndrome_decode(BitWord(3, 0)) == BitWord(7, 0));

    // Weight-1 oracle: exhaustive search over unit vectors.
    GF2Matrix ht = ham.check().transpose();
    for (int i = 0; i < 7; ++i) {
        BitWord e(7, std::uint64_t{1} << i);
        BitWord synd = vec_mul(e, ht);
        BitWord found(7, 0);
        int matches = 0;
        for (int j = 0; j < 7; ++j) {
            BitWord cand(7, std::uint64_t{1} << j);
            if (vec_mul(cand, ht) == synd) { found = cand; ++matches; }
        }
        CHECK(matches == 1);
        CHECK(ham.syndrome_decode(synd) == found);
        CHECK(found == e);
    }

    // The [7,4] Hamming code is perfect: every nonzero syndrome aliases to a
    // weight-1 error, so weight-2 patterns decode to the wrong unit vector.
    BitWord e2(7, 0b0000011);
    BitWord synd2 = vec_mul(e2, ht);
    CHECK(synd2.value() != 0);
    BitWord aliased = ham.syndrome_decode(synd2);
    CHECK(aliased.hamming_weight() == 1);
    CHECK(aliased != e2);
}

TEST_CASE("decode throws on syndromes outside every weight <= t coset") {
    // A non-perfect code leaves syndromes uncovered; exhaustive search over
    // all weight <= t patterns confirms absence before asserting the throw.
    Rng rng(47);
    LinearCode code = LinearCode::random_code(11, 7, 1, rng);
    GF2Matrix ht = code.check().transpose();
    bool found_uncovered = false;
    for (std::uint64_t sv = 1; sv < 16 && !found_uncovered; ++sv) {
        BitWord synd(4, sv);
        bool covered = false;
        detail::for_each_low_weight(code.n(), code.t(), [&](std::uint64_t bits) {
            if (vec_mul(BitWord(code.n(), bits), ht) == synd) covered = true;
        });
        if (!covered) {
            found_uncovered = true;
            CHECK_THROWS_AS(code.syndrome_decode(synd), std::runtime_error);
        }
    }
    CHECK(found_uncovered); // 16 syndromes, only 12 covered at t = 1
}

TEST_CASE("exhaustive decode of every correctable error, shipped codes") {
    Rng rng(13);
    std::vector<LinearCode> codes;
    codes.push_back(LinearCode::hamming74());
    codes.push_back(LinearCode::random_code(8, 2, 2, rng));
    codes.push_back(LinearCode::random_code(11, 7, 1, rng));
    codes.push_back(LinearCode::random_code(12, 4, 2, rng));
    for (const auto& code : codes) {
        GF2Matrix ht = code.check().transpose();
        detail::for_each_low_weight(code.n(), code.t(), [&](std::uint64_t bits) {
            BitWord e(code.n(), bits);
            CHECK(code.syndrome_decode(vec_mul(e, ht)) == e);
        });
    }
}

TEST_CASE("linear code construction rejects inconsistency") {
    // [4,2] with repeated check columns cannot certify t=1.
    GF2Matrix a(2, 2);
    a.set(0, 0, true);
    a.set(1, 0, true); // rows of A equal -> duplicate syndromes at weight 1
    CHECK_THROWS_AS(LinearCode::from_standard_form(a, 1), std::invalid_argument);
    CHECK_NOTHROW(LinearCode::from_standard_form(a, 0));
}

} // TEST_SUITE
