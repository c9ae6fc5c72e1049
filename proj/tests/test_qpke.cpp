#include <doctest.h>

#include <map>
#include <set>

#include "qpkc/density.hpp"
#include "qpkc/qpke.hpp"

using namespace qpkc;

namespace {

const SchemeId kAllSchemes[] = {SchemeId::rsa,      SchemeId::elgamal,
                                SchemeId::gm,       SchemeId::ecc,
                                SchemeId::mceliece, SchemeId::niederreiter,
                                SchemeId::otu};

PureState random_message(const KeyPair& kp, int max_terms, Rng& rng) {
    auto space = enumerate_message_space(kp);
    int want = 1 + static_cast<int>(
                       rng.below(std::min<std::uint64_t>(max_terms, space.size())));
    std::set<std::uint64_t> chosen;
    while (static_cast<int>(chosen.size()) < want)
        chosen.insert(space[rng.below(space.size())]);
    PureState::TermMap terms;
    double norm = 0;
    RegisterLayout layout = message_layout(kp);
    for (std::uint64_t m : chosen) {
        Amplitude a{rng.real() * 2 - 1, rng.real() * 2 - 1};
        std::uint64_t label = layout.with_value(0, layout.reg("m"), m);
        terms[label] = a;
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& [l, a] : terms) a /= norm;
    return PureState(layout, std::move(terms));
}

} // namespace

TEST_SUITE("qpke") {

TEST_CASE("keygen: worked examples") {
    KeyPair rsa = rsa_keygen(3, 5, 3);
    CHECK(rsa.as<RsaKeys>().n == 15);
    CHECK(*rsa.as<RsaKeys>().s == 3); // 3*3 = 9 = 1 mod 8

    KeyPair eg = elgamal_keygen(11, 2, 4);
    CHECK(eg.as<ElgamalKeys>().beta == 5); // 2^4 = 16 = 5 mod 11

    KeyPair mc = mceliece_keygen_explicit(LinearCode::hamming74(),
                                          GF2Matrix::identity(4),
                                          GF2Matrix::identity(7));
    CHECK(mc.as<McElieceKeys>().gpub == LinearCode::hamming74().generator());
    CHECK(mc.as<McElieceKeys>().gpub.full_row_rank());
}

TEST_CASE("keygen: parameter validation") {
    CHECK_THROWS_AS(rsa_keygen(4, 5, 3), std::invalid_argument);
    CHECK_THROWS_AS(rsa_keygen(3, 5, 2), std::invalid_argument); // gcd(2, 8) != 1
    CHECK_THROWS_AS(elgamal_keygen(11, 3, 4), std::invalid_argument); // ord(3) = 5
    CHECK_THROWS_AS(gm_keygen(3, 5, 2, 4), std::invalid_argument); // 4 is a QR
    // OTU: p must exceed the product of the k largest p_i (5*7 = 35).
    CHECK_THROWS_AS(otu_keygen(31, 3, 5, {2, 3, 5, 7}, 2), std::invalid_argument);
    CHECK_NOTHROW(otu_keygen(37, 2, 5, {2, 3, 5, 7}, 2));
}

TEST_CASE("keygen: key consistency relations") {
    Rng rng(101);
    for (SchemeId scheme : kAllSchemes) {
        for (int i = 0; i < 5; ++i) {
            KeyPair kp = keygen_random(scheme, rng);
            switch (scheme) {
                case SchemeId::rsa: {
                    const auto& k = kp.as<RsaKeys>();
                    CHECK(mul_mod(k.e, *k.s, (*k.p - 1) * (*k.q - 1)) == 1);
                    break;
                }
                case SchemeId::elgamal: {
                    const auto& k = kp.as<ElgamalKeys>();
                    CHECK(mod_pow(k.alpha, *k.s, k.p) == k.beta);
                    break;
                }
                case SchemeId::gm: {
                    const auto& k = kp.as<GmKeys>();
                    CHECK(*k.p * *k.q == k.n);
                    CHECK(jacobi(k.t, k.n) == 1);
                    CHECK(!is_qr(k.t, Modulus(*k.p, *k.q)));
                    break;
                }
                case SchemeId::ecc: {
                    const auto& k = kp.as<EccKeys>();
                    CHECK(scalar_mul(k.curve, *k.s, k.base) == k.pub);
                    break;
                }
                case SchemeId::mceliece: {
                    const auto& k = kp.as<McElieceKeys>();
                    CHECK(*k.scramble * k.code->generator() * *k.perm == k.gpub);
                    CHECK(k.gpub * k.gpub_rinv == GF2Matrix::identity(k.k()));
                    break;
                }
                case SchemeId::niederreiter: {
                    const auto& k = kp.as<NiederreiterKeys>();
                    CHECK(*k.mix * k.code->check() * *k.perm == k.hpub);
                    break;
                }
                case SchemeId::otu: {
                    const auto& k = kp.as<OtuKeys>();
                    for (std::size_t j = 0; j < k.b.size(); ++j) {
                        // b_i = d + dlog_g(p_i) mod (p-1)
                        std::uint64_t pm1 = *k.p - 1;
                        std::uint64_t lg = (k.b[j] + pm1 - *k.d % pm1) % pm1;
                        CHECK(mod_pow(*k.gen, lg, *k.p) == (*k.primes)[j]);
                    }
                    break;
                }
            }
        }
    }
}

TEST_CASE("randomness domains") {
    Rng rng(55);
    KeyPair nd = niederreiter_keygen(LinearCode::hamming74(), rng);
    for (int i = 0; i < 50; ++i) {
        Randomness r = sample_randomness(nd, rng);
        CHECK(r[0].width() == 7);
        CHECK(r[0].hamming_weight() == 1);
    }
    CHECK(enumerate_r_domain(nd).size() == 7);

    KeyPair gm = gm_keygen(3, 5, 2);
    for (int i = 0; i < 50; ++i) {
        Randomness r = sample_randomness(gm, rng);
        REQUIRE(r.size() == 2);
        for (const auto& w : r) CHECK((w.value() == 1 || w.value() == 2));
    }
    CHECK(enumerate_r_domain(gm).size() == 4);

    KeyPair rsa = rsa_keygen(3, 5, 3);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 400; ++i) {
        Randomness r = sample_randomness(rsa, rng);
        CHECK(r[0].width() == 4);
        seen.insert(r[0].value());
    }
    CHECK(seen.size() == 16);
    CHECK(enumerate_r_domain(rsa).size() == 16);

    // Reproducibility under a fixed seed.
    Rng a(9), b(9);
    for (SchemeId scheme : kAllSchemes) {
        KeyPair k1 = keygen_random(scheme, a);
        KeyPair k2 = keygen_random(scheme, b);
        CHECK(sample_randomness(k1, a) == sample_randomness(k2, b));
    }
}

TEST_CASE("rsa encryption: worked examples") {
    KeyPair kp = rsa_keygen(3, 5, 3);
    Randomness r{BitWord(4, 6)};

    PureState msg = PureState::basis(message_layout(kp), {{"m", 2}});
    CipherState c = encrypt(kp, msg, r);
    std::uint64_t label = c.state.sole_label();
    CHECK(c.state.layout().extract(label, "g") == (2 ^ 6));
    CHECK(c.state.layout().extract(label, "f") == 8); // 2^3 mod 15

    // (|2> + |7>)/sqrt(2) -> (|4>|8> + |1>|13>)/sqrt(2)
    RegisterLayout ml = message_layout(kp);
    double inv = 1.0 / std::sqrt(2.0);
    PureState sup(ml, {{2, inv}, {7, inv}});
    CipherState cs = encrypt(kp, sup, r);
    const auto& cl = cs.state.layout();
    std::uint64_t l1 = cl.with_value(cl.with_value(0, cl.reg("g"), 4), cl.reg("f"), 8);
    std::uint64_t l2 = cl.with_value(cl.with_value(0, cl.reg("g"), 1), cl.reg("f"), 13);
    CHECK(cs.state.amplitude(l1).real() == doctest::Approx(inv));
    CHECK(cs.state.amplitude(l2).real() == doctest::Approx(inv));

    // Decryption inverts the worked example and recovers r.
    DecryptResult d = decrypt(kp, c);
    CHECK(d.message.sole_label() == 2);
    REQUIRE(d.recovered_r.size() == 1);
    CHECK(d.recovered_r[0] == BitWord(4, 6));
}

TEST_CASE("elgamal encryption: worked example") {
    KeyPair kp = elgamal_keygen(11, 2, 4);
    Randomness r{BitWord(4, 3)};
    PureState msg = PureState::basis(message_layout(kp), {{"m", 7}});
    CipherState c = encrypt(kp, msg, r);
    CHECK(std::get<BitWord>(c.classical.at(0)).value() == 8); // 2^3 mod 11
    std::uint64_t label = c.state.sole_label();
    CHECK(c.state.layout().extract(label, "g") == 7);
    CHECK(c.state.layout().extract(label, "f") == 6); // 7 * 5^3 mod 11

    DecryptResult d = decrypt(kp, c);
    CHECK(d.message.sole_label() == 7);
    CHECK(d.recovered_r.empty());
}

TEST_CASE("ecc encryption: worked example from the group table") {
    Curve curve(11, 1, 6);
    KeyPair kp = ecc_keygen(curve, Point::affine(2, 7), 3);
    CHECK(kp.as<EccKeys>().pub == Point::affine(8, 3));

    Randomness r{BitWord(4, 2)};
    PureState msg = PureState::basis(message_layout(kp), {{"m", 5}});
    CipherState c = encrypt(kp, msg, r);
    CHECK(std::get<Point>(c.classical.at(0)) == Point::affine(5, 2)); // 2P
    // 2Q = 6P = (7, 9); 5 XOR 7 = 2.
    CHECK(c.state.layout().extract(c.state.sole_label(), "f") == 2);

    DecryptResult d = decrypt(kp, c);
    CHECK(d.message.sole_label() == 5);
    CHECK(d.recovered_r.empty());
}

TEST_CASE("niederreiter decryption: syndrome decode of the masked error") {
    Rng rng(7);
    KeyPair kp = niederreiter_keygen(LinearCode::hamming74(), rng);
    BitWord m = BitWord::from_string("1010100");
    BitWord r = BitWord(7, std::uint64_t{1} << 5); // unit vector at position 2
    PureState msg = PureState::basis(message_layout(kp), {{"m", m.value()}});
    CipherState c = encrypt(kp, msg, {r});

    const auto& k = kp.as<NiederreiterKeys>();
    std::uint64_t label = c.state.sole_label();
    CHECK(c.state.layout().extract(label, "g") == (m ^ r).value());
    CHECK(c.state.layout().extract(label, "f") ==
          vec_mul(m, k.hpub.transpose()).value());

    DecryptResult d = decrypt(kp, c);
    CHECK(d.message.sole_label() == m.value());
    REQUIRE(d.recovered_r.size() == 1);
    CHECK(d.recovered_r[0] == r);
}

TEST_CASE("mceliece with degenerate keys reduces to the plain code") {
    KeyPair kp = mceliece_keygen_explicit(LinearCode::hamming74(),
                                          GF2Matrix::identity(4),
                                          GF2Matrix::identity(7));
    BitWord r(7, std::uint64_t{1} << 3);
    PureState msg = PureState::basis(message_layout(kp), {{"m", 0b1011}});
    CipherState c = encrypt(kp, msg, {r});
    BitWord expect = vec_mul(BitWord(4, 0b1011), kp.as<McElieceKeys>().gpub) ^ r;
    CHECK(c.state.layout().extract(c.state.sole_label(), "f") == expect.value());

    DecryptResult d = decrypt(kp, c);
    CHECK(d.message.sole_label() == 0b1011);
    REQUIRE(d.recovered_r.size() == 1);
    CHECK(d.recovered_r[0] == r);
}

TEST_CASE("encrypt validates message support and randomness domain") {
    KeyPair kp = rsa_keygen(3, 5, 3);
    // 6 shares a factor with 15: outside the message space.
    PureState bad = PureState::basis(message_layout(kp), {{"m", 6}});
    CHECK_THROWS_AS(encrypt(kp, bad, {BitWord(4, 1)}), std::invalid_argument);
    PureState ok = PureState::basis(message_layout(kp), {{"m", 2}});
    CHECK_THROWS_AS(encrypt(kp, ok, {BitWord(3, 1)}), std::invalid_argument);

    Rng rng(3);
    KeyPair nd = niederreiter_keygen(LinearCode::hamming74(), rng);
    PureState msg = PureState::basis(message_layout(nd), {{"m", 1}});
    CHECK_THROWS_AS(encrypt(nd, msg, {BitWord(7, 0b11)}), std::invalid_argument);
}

TEST_CASE("decrypt rejects mismatched schemes") {
    KeyPair rsa = rsa_keygen(3, 5, 3);
    KeyPair eg = elgamal_keygen(11, 2, 4);
    PureState msg = PureState::basis(message_layout(rsa), {{"m", 2}});
    CipherState c = encrypt(rsa, msg, {BitWord(4, 6)});
    CHECK_THROWS_AS(decrypt(eg, c), std::invalid_argument);
}

TEST_CASE("decrypt under the wrong key errors out") {
    // N = 33: e = 3 and e = 7 are genuinely different trapdoors (unlike
    // N = 15, where lambda(15) = 4 makes every odd-exponent pair agree).
    KeyPair alice = rsa_keygen(3, 11, 3);
    KeyPair mallory = rsa_keygen(3, 11, 7);
    double inv = 1.0 / std::sqrt(2.0);
    PureState msg(message_layout(alice), {{2, inv}, {7, inv}});
    CipherState c = encrypt(alice, msg, {BitWord(6, 6)});
    // The residual register is no longer constant across branches, so the
    // deterministic mid-circuit measurement trips on superpositions.
    CHECK_THROWS_AS(decrypt(mallory, c), std::runtime_error);
    // A basis cipher decrypts without error but to the wrong plaintext
    // (m^(e*s') is self-consistent), matching the classical behavior.
    CipherState cb = encrypt(alice, PureState::basis(message_layout(alice), {{"m", 2}}),
                             {BitWord(6, 6)});
    DecryptResult d = decrypt(mallory, cb);
    CHECK(d.message.sole_label() != 2);
    CHECK(d.message.sole_label() == mod_pow(mod_pow(2, 3, 33), 3, 33)); // f^(s')
}

TEST_CASE("tampered ciphers: syndrome-register flips never pass silently") {
    Rng rng(909);
    // A non-perfect code leaves undecodable syndromes, so some tampers throw
    // outright and the rest decode to a wrong plaintext, never the original.
    KeyPair nd = niederreiter_keygen(LinearCode::random_code(8, 2, 2, rng), rng);
    BitWord m(8, 0b10110001);
    Randomness r = sample_randomness(nd, rng);
    CipherState c = encrypt(nd, PureState::basis(message_layout(nd), {{"m", m.value()}}), r);
    int throws = 0, wrong = 0;
    for (std::uint64_t e = 1; e < 64; ++e) {
        CipherState t = c;
        t.state = xor_constant(t.state, "f", BitWord(6, e));
        try {
            DecryptResult d = decrypt(nd, t);
            if (d.message.sole_label() != m.value()) ++wrong;
        } catch (const std::runtime_error&) {
            ++throws;
        }
    }
    CHECK(throws + wrong == 63);
    CHECK(throws > 0); // only 37 of 64 syndromes are covered at t = 2
    CHECK(wrong > 0);
}

TEST_CASE("masking-register flips inside the error support re-randomize") {
    // Flipping a g-register bit where r is already set yields another valid
    // cipher of the same message under r XOR e: the plaintext survives and
    // the recovered randomness shifts. This is the malleability the
    // authentication layer exists to catch.
    Rng rng(911);
    KeyPair nd = niederreiter_keygen(LinearCode::hamming74(), rng);
    BitWord m(7, 0b1010100);
    Randomness r = sample_randomness(nd, rng);
    CipherState c = encrypt(nd, PureState::basis(message_layout(nd), {{"m", m.value()}}), r);
    for (int bit = 0; bit < 7; ++bit) {
        if (!r[0].bit(bit)) continue;
        CipherState t = c;
        t.state = xor_constant(t.state, "g", BitWord(7, std::uint64_t{1} << bit));
        DecryptResult d = decrypt(nd, t);
        CHECK(d.message.sole_label() == m.value());
        CHECK(d.recovered_r.at(0) == r[0].with_bit_flipped(bit));
    }
}

TEST_CASE("round trip over random keys, messages and randomness") {
    Rng rng(2024);
    for (SchemeId scheme : kAllSchemes) {
        for (int key_i = 0; key_i < 10; ++key_i) {
            KeyPair kp = keygen_random(scheme, rng);
            for (int trial = 0; trial < 3; ++trial) {
                PureState msg = random_message(kp, 16, rng);
                Randomness r = sample_randomness(kp, rng);
                DecryptResult d = decrypt(kp, encrypt(kp, msg, r));
                CHECK(fidelity_pure(d.message, msg) >= 1.0 - 1e-9);
                bool recovers = describe(kp).decryption_case ==
                                DecryptionCase::case2_recovers_r;
                CHECK(d.recovered_r.empty() == !recovers);
                if (recovers) {
                    REQUIRE(d.recovered_r.size() == r.size());
                    for (std::size_t i = 0; i < r.size(); ++i)
                        CHECK(d.recovered_r[i] == r[i]);
                }
            }
        }
    }
}

TEST_CASE("case classification per scheme") {
    Rng rng(42);
    std::map<SchemeId, DecryptionCase> expect{
        {SchemeId::rsa, DecryptionCase::case2_recovers_r},
        {SchemeId::elgamal, DecryptionCase::case1_g_of_m},
        {SchemeId::gm, DecryptionCase::case2_recovers_r},
        {SchemeId::ecc, DecryptionCase::case1_g_of_r},
        {SchemeId::mceliece, DecryptionCase::case2_recovers_r},
        {SchemeId::niederreiter, DecryptionCase::case2_recovers_r},
        {SchemeId::otu, DecryptionCase::case2_recovers_r},
    };
    for (SchemeId scheme : kAllSchemes) {
        KeyPair kp = keygen_random(scheme, rng);
        CHECK(describe(kp).decryption_case == expect.at(scheme));
    }
}

TEST_CASE("classical round trip: worked examples") {
    KeyPair rsa = rsa_keygen(3, 5, 3);
    ClassicalCipher c = classical_eval(rsa, 2, {BitWord(4, 9)});
    CHECK(c.f.at(0).value() == 8);
    CHECK(classical_decrypt(rsa, c) == 2);
    CHECK(classical_roundtrip(rsa, BitWord(4, 2), {BitWord(4, 9)}) == BitWord(4, 2));

    // gm N=15, k=2, m=10b, r=(2,1): c = (8, 1), residuosity recovers the bits.
    KeyPair gm = gm_keygen(3, 5, 2);
    REQUIRE(gm.as<GmKeys>().t == 2);
    ClassicalCipher cg = classical_eval(gm, 0b10, {BitWord(2, 2), BitWord(2, 1)});
    CHECK(cg.f.at(0).value() == 8); // 2^1 * 2^2 mod 15
    CHECK(cg.f.at(1).value() == 1); // 2^0 * 1^2 mod 15
    CHECK(classical_decrypt(gm, cg) == 0b10);
}

TEST_CASE("degeneration: basis-state ciphers equal the classical cipher") {
    Rng rng(77);
    for (SchemeId scheme : kAllSchemes) {
        KeyPair kp = keygen_random(scheme, rng);
        auto messages = enumerate_message_space(kp);
        auto domain = enumerate_r_domain(kp);
        // Sampled here; the acceptance suite runs the full exhaustive pass.
        for (int i = 0; i < 25; ++i) {
            std::uint64_t m = messages[rng.below(messages.size())];
            const Randomness& r = domain[rng.below(domain.size())];
            PureState msg = PureState::basis(message_layout(kp), {{"m", m}});
            CipherState c = encrypt(kp, msg, r);
            ClassicalCipher cc = classical_eval(kp, m, r);
            REQUIRE(c.state.term_count() == 1);
            std::uint64_t label = c.state.sole_label();
            const auto& layout = c.state.layout();

            std::size_t gi = 0, fi = 0;
            for (const auto& reg : layout.registers()) {
                if (reg.name[0] == 'g')
                    CHECK(layout.extract(label, reg) == cc.g.at(gi++).value());
                else
                    CHECK(layout.extract(label, reg) == cc.f.at(fi++).value());
            }
            CHECK(gi == cc.g.size());
            CHECK(fi == cc.f.size());
            REQUIRE(c.classical.size() == cc.side.size());
            for (std::size_t s = 0; s < cc.side.size(); ++s)
                CHECK((c.classical[s] == cc.side[s]));
            CHECK(classical_decrypt(kp, cc) == m);
        }
    }
}

TEST_CASE("joint injectivity holds for every scheme") {
    Rng rng(5);
    for (SchemeId scheme : kAllSchemes) {
        KeyPair kp = keygen_random(scheme, rng);
        CHECK_NOTHROW(check_joint_injectivity(kp));
    }
}

TEST_CASE("cipher ensembles") {
    KeyPair kp = rsa_keygen(3, 5, 3);
    PureState msg = PureState::basis(message_layout(kp), {{"m", 2}});

    RSupport single;
    single.points.emplace_back(1.0, Randomness{BitWord(4, 6)});
    CipherEnsemble es = encrypt_ensemble(kp, msg, single);
    REQUIRE(es.members().size() == 1);
    CHECK(fidelity_pure(es.members()[0].state,
                        encrypt(kp, msg, {BitWord(4, 6)}).state) ==
          doctest::Approx(1.0));

    Rng rng(8);
    RSupport four = sampled_r_support(kp, 4, rng);
    CipherEnsemble e4 = encrypt_ensemble(kp, msg, four);
    CHECK(e4.members().size() == 4);
    double total = 0;
    std::set<std::uint64_t> labels;
    for (const auto& m : e4.members()) {
        total += m.probability;
        CHECK(m.state.term_count() == 1); // basis message -> basis cipher
        labels.insert(m.state.sole_label());
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(labels.size() == 4); // distinct r give distinct cipher labels here
}

TEST_CASE("fidelity non-decrease and trace-distance non-increase (Prop. 1)") {
    Rng rng(303);
    KeyPair rsa = rsa_keygen(3, 5, 3);
    KeyPair gm = gm_keygen(3, 5, 2);
    for (const KeyPair& kp : {rsa, gm}) {
        for (int pair_i = 0; pair_i < 4; ++pair_i) {
            PureState m1 = random_message(kp, 8, rng);
            PureState m2 = random_message(kp, 8, rng);
            RSupport support = kp.scheme == SchemeId::rsa
                                   ? sampled_r_support(kp, 4, rng)
                                   : full_r_support(kp);
            CipherEnsemble e1 = encrypt_ensemble(kp, m1, support);
            CipherEnsemble e2 = encrypt_ensemble(kp, m2, support);
            auto basis = span_basis({&e1, &e2});
            double f_pure = fidelity_pure(m1, m2);
            double f_mixed = fidelity(ensemble_to_density(e1, basis),
                                      ensemble_to_density(e2, basis));
            CHECK(f_mixed >= f_pure - 1e-8);
            double d_pure = std::sqrt(std::max(0.0, 1 - f_pure * f_pure));
            double d_mixed = trace_distance(ensemble_to_density(e1, basis),
                                            ensemble_to_density(e2, basis));
            CHECK(d_mixed <= d_pure + 1e-8);
        }
    }
}

} // TEST_SUITE
