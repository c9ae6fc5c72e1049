// verify.hpp -- the executable verification suites: round trips, classical
// degeneration, fidelity non-decrease, numerics, coding oracles,
// constant-weight bijection, authentication detection and signature
// completeness. Shared by the `verify` CLI command and the acceptance runner.
#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qpkc/density.hpp"
#include "qpkc/qauth.hpp"
#include "qpkc/qpke.hpp"
#include "qpkc/qsign.hpp"
#include "qpkc/serialize.hpp"

namespace qpkc {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline const SchemeId kSchemes[] = {SchemeId::rsa,      SchemeId::elgamal,
                                    SchemeId::gm,       SchemeId::ecc,
                                    SchemeId::mceliece, SchemeId::niederreiter,
                                    SchemeId::otu};

inline PureState random_message_state(const KeyPair& kp, int max_terms, Rng& rng) {
    auto space = enumerate_message_space(kp);
    int want = 1 + static_cast<int>(
                       rng.below(std::min<std::uint64_t>(max_terms, space.size())));
    std::set<std::uint64_t> chosen;
    while (static_cast<int>(chosen.size()) < want)
        chosen.insert(space[rng.below(space.size())]);
    PureState::TermMap terms;
    double norm = 0;
    for (std::uint64_t m : chosen) {
        Amplitude a{rng.real() * 2 - 1, rng.real() * 2 - 1};
        terms[m] = a;
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto& [l, a] : terms) a /= norm;
    return PureState(message_layout(kp), std::move(terms));
}

inline PureState random_plain_state(int width, Rng& rng) {
    PureState::TermMap terms;
    std::uint64_t space = std::uint64_t{1} << width;
    for (std::uint64_t l = 0; l < space; ++l)
        terms[l] = Amplitude{rng.real() * 2 - 1, rng.real() * 2 - 1};
    double norm = 0;
    for (auto& [l, a] : terms) norm += std::norm(a);
    norm = std::sqrt(norm);
    for (auto& [l, a] : terms) a /= norm;
    return PureState(RegisterLayout{{"m", width}}, std::move(terms));
}

inline std::string counted(int ok, int total) {
    std::ostringstream os;
    os << ok << "/" << total;
    return os.str();
}

} // namespace detail

// Criterion: decrypt(encrypt(psi)) fidelity >= 1 - 1e-9, fresh random keys
// per trial, message superpositions up to 16 basis terms.
inline std::vector<SuiteResult> run_roundtrip_suite(const Rng& base, int trials) {
    std::vector<SuiteResult> out;
    for (SchemeId scheme : detail::kSchemes) {
        Rng rng = base.fork(std::string("roundtrip/") + to_string(scheme));
        int ok = 0;
        for (int i = 0; i < trials; ++i) {
            KeyPair kp = keygen_random(scheme, rng);
            PureState msg = detail::random_message_state(kp, 16, rng);
            Randomness r = sample_randomness(kp, rng);
            DecryptResult d = decrypt(kp, encrypt(kp, msg, r));
            bool good = fidelity_pure(d.message, msg) >= 1.0 - 1e-9;
            bool recovers = describe(kp).decryption_case ==
                            DecryptionCase::case2_recovers_r;
            if (recovers) {
                good = good && d.recovered_r.size() == r.size();
                for (std::size_t w = 0; good && w < r.size(); ++w)
                    good = d.recovered_r[w] == r[w];
            } else {
                good = good && d.recovered_r.empty();
            }
            if (good) ++ok;
        }
        out.push_back({std::string("roundtrip_") + to_string(scheme), ok == trials,
                       detail::counted(ok, trials) + " trials at fidelity >= 1-1e-9"});
    }
    return out;
}

// Criterion: basis-state quantum ciphers equal the classical ciphers
// bit-exactly, exhaustively over message space x randomness domain.
inline std::vector<SuiteResult> run_degeneration_suite(const Rng& base) {
    std::vector<SuiteResult> out;
    Rng key_rng = base.fork("degeneration/keys");

    auto pick_e = [](std::uint64_t phi) {
        for (std::uint64_t e = 3;; e += 2)
            if (std::gcd(e, phi) == 1) return e;
    };
    std::vector<KeyPair> instances;
    for (auto [p, q] : {std::pair<std::uint64_t, std::uint64_t>{3, 5}, {3, 11}, {5, 7}})
        instances.push_back(rsa_keygen(p, q, pick_e((p - 1) * (q - 1))));
    for (std::uint64_t p : {std::uint64_t{11}, std::uint64_t{23}}) {
        std::uint64_t alpha = 2;
        while (!is_generator(alpha, p)) ++alpha;
        instances.push_back(elgamal_keygen(p, alpha, 1 + key_rng.below(p - 2)));
    }
    instances.push_back(gm_keygen(3, 5, 2));
    instances.push_back(gm_keygen(3, 5, 3));
    instances.push_back(ecc_keygen(Curve(11, 1, 6), Point::affine(2, 7),
                                   1 + key_rng.below(12)));
    instances.push_back(mceliece_keygen(LinearCode::hamming74(), key_rng));
    instances.push_back(niederreiter_keygen(LinearCode::hamming74(), key_rng));
    instances.push_back(otu_keygen(37, 2, key_rng.below(36), {2, 3, 5, 7}, 2));

    std::map<std::string, std::pair<int, int>> tallies; // name -> (ok, total)
    for (const KeyPair& kp : instances) {
        auto& tally = tallies[to_string(kp.scheme)];
        for (std::uint64_t m : enumerate_message_space(kp)) {
            for (const Randomness& r : enumerate_r_domain(kp)) {
                ++tally.second;
                PureState msg = PureState::basis(message_layout(kp), {{"m", m}});
                CipherState c = encrypt(kp, msg, r);
                ClassicalCipher cc = classical_eval(kp, m, r);
                if (c.state.term_count() != 1) continue;
                std::uint64_t label = c.state.sole_label();
                const auto& layout = c.state.layout();
                bool good = true;
                std::size_t gi = 0, fi = 0;
                for (const auto& reg : layout.registers()) {
                    std::uint64_t expect = reg.name[0] == 'g'
                                               ? cc.g.at(gi++).value()
                                               : cc.f.at(fi++).value();
                    good = good && layout.extract(label, reg) == expect;
                }
                good = good && gi == cc.g.size() && fi == cc.f.size();
                good = good && c.classical.size() == cc.side.size();
                for (std::size_t s = 0; good && s < cc.side.size(); ++s)
                    good = c.classical[s] == cc.side[s];
                good = good && classical_decrypt(kp, cc) == m;
                if (good) ++tally.first;
            }
        }
    }
    for (const auto& [name, tally] : tallies)
        out.push_back({"degeneration_" + name, tally.first == tally.second,
                       detail::counted(tally.first, tally.second) +
                           " (message, r) pairs bit-exact, exhaustive"});
    return out;
}

// Invariant: for every r in a full enumeration, m -> (g, f) is injective
// over the message space, for one instance of every scheme.
inline std::vector<SuiteResult> run_injectivity_suite(const Rng& base) {
    Rng rng = base.fork("injectivity");
    int ok = 0, total = 0;
    std::string failing;
    for (SchemeId scheme : detail::kSchemes) {
        ++total;
        try {
            check_joint_injectivity(keygen_random(scheme, rng));
            ++ok;
        } catch (const std::exception&) {
            failing += std::string(" ") + to_string(scheme);
        }
    }
    return {{"joint_injectivity", ok == total,
             ok == total ? detail::counted(ok, total) + " schemes, full r enumeration"
                         : "violations in" + failing}};
}

// Criterion: F(E(M1), E(M2)) >= |<M1|M2>| - 1e-8 and trace-distance
// non-increase, over RSA N=15 with a 4-point r-support and GM N=15 k=2.
inline std::vector<SuiteResult> run_prop1_suite(const Rng& base, int pairs) {
    std::vector<SuiteResult> out;
    struct Setup {
        const char* name;
        KeyPair kp;
        bool sampled_support;
    };
    std::vector<Setup> setups;
    setups.push_back({"rsa15", rsa_keygen(3, 5, 3), true});
    setups.push_back({"gm15", gm_keygen(3, 5, 2), false});

    for (auto& setup : setups) {
        Rng rng = base.fork(std::string("prop1/") + setup.name);
        int ok_f = 0, ok_d = 0;
        int max_dim = 0;
        for (int i = 0; i < pairs; ++i) {
            PureState m1 = detail::random_message_state(setup.kp, 16, rng);
            PureState m2 = detail::random_message_state(setup.kp, 16, rng);
            RSupport support = setup.sampled_support
                                   ? sampled_r_support(setup.kp, 4, rng)
                                   : full_r_support(setup.kp);
            CipherEnsemble e1 = encrypt_ensemble(setup.kp, m1, support);
            CipherEnsemble e2 = encrypt_ensemble(setup.kp, m2, support);
            auto basis = span_basis({&e1, &e2});
            max_dim = std::max(max_dim, static_cast<int>(basis.size()));
            DensityMatrix r1 = ensemble_to_density(e1, basis);
            DensityMatrix r2 = ensemble_to_density(e2, basis);
            double f_pure = fidelity_pure(m1, m2);
            if (fidelity(r1, r2) >= f_pure - 1e-8) ++ok_f;
            double d_pure = std::sqrt(std::max(0.0, 1 - f_pure * f_pure));
            if (trace_distance(r1, r2) <= d_pure + 1e-8) ++ok_d;
        }
        std::ostringstream detail_os;
        detail_os << "fidelity " << ok_f << "/" << pairs << ", trace distance "
                  << ok_d << "/" << pairs << ", max density dim " << max_dim;
        out.push_back({std::string("prop1_") + setup.name,
                       ok_f == pairs && ok_d == pairs && max_dim <= 256,
                       detail_os.str()});
    }
    return out;
}

// Criterion: Uhlmann fidelity vs |<psi|phi>| within 1e-9 (100 pairs);
// eigensolver reconstruction <= 1e-10 on 8x8..64x64; pure-state
// Fuchs-van de Graaf equality within 1e-8.
inline std::vector<SuiteResult> run_fidelity_numerics_suite(const Rng& base) {
    std::vector<SuiteResult> out;
    Rng rng = base.fork("numerics");

    int ok = 0;
    const int pairs = 100;
    std::vector<std::uint64_t> basis(16);
    for (std::size_t i = 0; i < 16; ++i) basis[i] = i;
    for (int i = 0; i < pairs; ++i) {
        PureState a = detail::random_plain_state(4, rng);
        PureState b = detail::random_plain_state(4, rng);
        double f = fidelity(pure_to_density(a, basis), pure_to_density(b, basis));
        if (std::abs(f - fidelity_pure(a, b)) <= 1e-9) ++ok;
    }
    out.push_back({"uhlmann_pure_agreement", ok == pairs,
                   detail::counted(ok, pairs) + " pairs within 1e-9"});

    bool recon_ok = true;
    double worst = 0;
    for (int n : {8, 16, 32, 64}) {
        DensityMatrix m(n);
        for (int i = 0; i < n; ++i) {
            m.at(i, i) = Amplitude{rng.real() * 2 - 1, 0.0};
            for (int j = i + 1; j < n; ++j) {
                Amplitude v{rng.real() * 2 - 1, rng.real() * 2 - 1};
                m.at(i, j) = v;
                m.at(j, i) = std::conj(v);
            }
        }
        EigenSystem es = hermitian_eig(m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Amplitude acc{0, 0};
                for (int k = 0; k < n; ++k)
                    acc += es.vectors.at(i, k) * es.values[static_cast<std::size_t>(k)] *
                           std::conj(es.vectors.at(j, k));
                worst = std::max(worst, std::abs(acc - m.at(i, j)));
            }
        recon_ok = recon_ok && worst <= 1e-10;
    }
    std::ostringstream recon_os;
    recon_os << "max reconstruction error " << worst << " over 8..64";
    out.push_back({"eigensolver_reconstruction", recon_ok, recon_os.str()});

    int fvdg_ok = 0;
    const int fvdg_pairs = 50;
    for (int i = 0; i < fvdg_pairs; ++i) {
        PureState a = detail::random_plain_state(4, rng);
        PureState b = detail::random_plain_state(4, rng);
        double f = fidelity_pure(a, b);
        double d = trace_distance(pure_to_density(a, basis), pure_to_density(b, basis));
        if (std::abs(d - std::sqrt(std::max(0.0, 1 - f * f))) <= 1e-8) ++fvdg_ok;
    }
    out.push_back({"fuchs_van_de_graaf_pure", fvdg_ok == fvdg_pairs,
                   detail::counted(fvdg_ok, fvdg_pairs) + " pairs: D = sqrt(1-F^2)"});
    return out;
}

// Criterion: exhaustive syndrome decoding on every shipped code and exact
// right inverses on 100 random full-row-rank matrices.
inline std::vector<SuiteResult> run_coding_suite(const Rng& base) {
    std::vector<SuiteResult> out;
    Rng rng = base.fork("coding");

    std::vector<std::pair<std::string, LinearCode>> codes;
    codes.emplace_back("hamming74", LinearCode::hamming74());
    codes.emplace_back("signing_8_2_t2", default_signing_code());
    codes.emplace_back("transport_11_7_t1", LinearCode::random_code(11, 7, 1, rng));
    codes.emplace_back("random_12_4_t2", LinearCode::random_code(12, 4, 2, rng));

    int decoded = 0, total = 0;
    bool all = true;
    for (const auto& [name, code] : codes) {
        GF2Matrix ht = code.check().transpose();
        detail::for_each_low_weight(code.n(), code.t(), [&](std::uint64_t bits) {
            BitWord e(code.n(), bits);
            ++total;
            if (code.syndrome_decode(vec_mul(e, ht)) == e) ++decoded;
        });
    }
    all = decoded == total;
    out.push_back({"syndrome_decode_exhaustive", all,
                   detail::counted(decoded, total) + " correctable errors over 4 codes"});

    int inv_ok = 0;
    const int inv_trials = 100;
    for (int done = 0; done < inv_trials;) {
        int k = 1 + static_cast<int>(rng.below(6));
        int n = k + static_cast<int>(rng.below(6));
        GF2Matrix g = GF2Matrix::random(k, n, rng);
        if (!g.full_row_rank()) continue;
        ++done;
        if (g * g.right_inverse() == GF2Matrix::identity(k)) ++inv_ok;
    }
    out.push_back({"right_inverse_exact", inv_ok == inv_trials,
                   detail::counted(inv_ok, inv_trials) + " random full-row-rank G"});
    return out;
}

// Criterion: cw_encode/cw_decode mutually inverse, exhaustive n <= 12.
inline std::vector<SuiteResult> run_cw_suite() {
    int ok = 0, total = 0;
    for (int n = 1; n <= 12; ++n) {
        for (int k = 0; k <= n; ++k) {
            CwCode code(n, k);
            std::set<std::uint64_t> words;
            bool good = true;
            for (std::uint64_t m = 0; m < code.size(); ++m) {
                BitWord e = code.encode(m);
                good = good && e.hamming_weight() == k && code.decode(e) == m;
                words.insert(e.value());
            }
            good = good && words.size() == code.size();
            ++total;
            if (good) ++ok;
        }
    }
    return {{"constant_weight_bijection", ok == total,
             detail::counted(ok, total) + " (n,k) pairs exhaustive, n <= 12"}};
}

// Criterion: honest accept rate 1.0; weight-1 nonzero-syndrome tampers all
// rejected; undetected tampers = nonzero codewords (exhaustive, n1 <= 12);
// identity variant recovers S exactly.
inline std::vector<SuiteResult> run_auth_suite(const Rng& base, int trials,
                                               bool inject_fault) {
    std::vector<SuiteResult> out;
    Rng rng = base.fork("auth");
    AuthKey key = AuthKey::create(4, 7, rng);

    int honest_ok = 0;
    for (int i = 0; i < trials; ++i) {
        PureState msg = detail::random_plain_state(4, rng);
        PureState wire = auth_encode(msg, key);
        if (inject_fault)
            wire = xor_constant(wire, "c", BitWord(7, std::uint64_t{1} << rng.below(7)));
        AuthTag tag = auth_verify(wire, key, rng);
        if (inject_fault) {
            // Detection counts as success when a fault was injected.
            bool detected = !tag.accepted ||
                            fidelity_pure(*tag.message, msg) < 1.0 - 1e-9;
            if (detected) ++honest_ok;
        } else if (tag.accepted && fidelity_pure(*tag.message, msg) >= 1.0 - 1e-9) {
            ++honest_ok;
        }
    }
    out.push_back({inject_fault ? "auth_fault_detected" : "auth_honest_accept",
                   honest_ok == trials, detail::counted(honest_ok, trials)});

    // Weight-1 tampers, exhaustive over positions and several messages.
    int w1_ok = 0, w1_total = 0;
    for (int mi = 0; mi < 4; ++mi) {
        PureState msg = detail::random_plain_state(4, rng);
        PureState enc = auth_encode(msg, key);
        for (int pos = 0; pos < key.n1(); ++pos) {
            BitWord e(key.n1(), std::uint64_t{1} << pos);
            if (vec_mul(e, key.hs.transpose()).value() == 0) continue;
            ++w1_total;
            if (!auth_verify(xor_constant(enc, "c", e), key, rng).accepted) ++w1_ok;
        }
    }
    out.push_back({"auth_weight1_rejected", w1_ok == w1_total,
                   detail::counted(w1_ok, w1_total) + " tampers with nonzero syndrome"});

    // Undetected-tamper set == nonzero codewords, exhaustive over all 2^n1 - 1.
    std::set<std::uint64_t> codewords;
    for (std::uint64_t w = 1; w < (std::uint64_t{1} << key.k()); ++w)
        codewords.insert(vec_mul(BitWord(key.k(), w), key.gs).value());
    PureState probe = PureState::basis(RegisterLayout{{"m", key.k()}}, {{"m", 5}});
    PureState enc = auth_encode(probe, key);
    int set_ok = 0, set_total = 0;
    for (std::uint64_t e = 1; e < (std::uint64_t{1} << key.n1()); ++e) {
        ++set_total;
        bool accepted =
            auth_verify(xor_constant(enc, "c", BitWord(key.n1(), e)), key, rng).accepted;
        if (accepted == (codewords.count(e) > 0)) ++set_ok;
    }
    out.push_back({"auth_undetected_equals_codewords", set_ok == set_total,
                   detail::counted(set_ok, set_total) + " tampers classified"});

    int id_ok = 0;
    const int id_trials = std::max(1, trials / 4);
    for (int i = 0; i < id_trials; ++i) {
        BitWord s(4, rng.below(16));
        PureState msg = detail::random_plain_state(4, rng);
        AuthTag tag =
            auth_verify_with_identity(auth_encode_with_identity(msg, key, s), key, 4, rng);
        if (tag.accepted && tag.identity == s &&
            fidelity_pure(*tag.message, msg) >= 1.0 - 1e-9)
            ++id_ok;
    }
    out.push_back({"auth_identity_recovered", id_ok == id_trials,
                   detail::counted(id_ok, id_trials) + " identities exact"});
    return out;
}

// Criterion: honest sessions accepted at fidelity >= 1-1e-9; the McEliece
// weight identity W(r) = W(r_B) + W(r_A); wrong-challenge and tampered-tag
// rejections with probability 1; out-of-order steps always error.
inline std::vector<SuiteResult> run_signature_suite(const Rng& base, int trials,
                                                    bool inject_fault) {
    std::vector<SuiteResult> out;
    Rng rng = base.fork("signature");
    SignInstance rsa = make_rsa_sign_instance(rsa_keygen(3, 5, 3));
    SignInstance mc =
        make_mceliece_sign_instance(mceliece_keygen(default_signing_code(), rng));

    for (const SignInstance& inst : {rsa, mc}) {
        int ok = 0, weight_ok = 0;
        for (int i = 0; i < trials; ++i) {
            PureState msg = detail::random_plain_state(inst.message_width(), rng);
            SignSession session = bob_challenge(inst, rng);
            alice_sign(inst, session, msg, rng);
            if (inst.algo == SignAlgo::mceliece &&
                session.held_r->hamming_weight() ==
                    session.r_b.hamming_weight() + session.r_a->hamming_weight())
                ++weight_ok;
            if (inject_fault)
                tamper_tag_bit(session, static_cast<int>(rng.below(inst.tag_width())));
            bob_acknowledge(session);
            auto [r, rp] = alice_reveal(session);
            VerifyOutcome v = bob_verify(inst, session, r, rp, rng);
            if (inject_fault) {
                if (!v.accepted) ++ok;
            } else if (v.accepted &&
                       fidelity_pure(*v.recovered_message, msg) >= 1.0 - 1e-9) {
                ++ok;
            }
        }
        std::string name = std::string(inject_fault ? "signature_fault_detected_"
                                                    : "signature_honest_") +
                           to_string(inst.algo);
        out.push_back({name, ok == trials, detail::counted(ok, trials)});
        if (inst.algo == SignAlgo::mceliece && !inject_fault)
            out.push_back({"signature_weight_identity", weight_ok == trials,
                           detail::counted(weight_ok, trials) +
                               " sessions with W(r) = W(r_B) + W(r_A)"});
    }

    if (!inject_fault) {
        // Wrong challenge and tampered tag on basis messages reject surely.
        int rejected = 0, cases = 0;
        for (const SignInstance& inst : {rsa, mc}) {
            for (int i = 0; i < 10; ++i) {
                PureState msg = PureState::basis(
                    RegisterLayout{{"m", inst.message_width()}},
                    {{"m", rng.below(std::uint64_t{1} << inst.message_width())}});
                SignSession session = bob_challenge(inst, rng);
                alice_sign(inst, session, msg, rng);
                bob_acknowledge(session);
                auto [r, rp] = alice_reveal(session);
                BitWord bad_r = r.with_bit_flipped(
                    static_cast<int>(rng.below(static_cast<std::uint64_t>(r.width()))));
                if (detail::sign_f(inst, bad_r, rp).high_bits(inst.k_out) !=
                    session.r_b) {
                    ++cases;
                    if (!bob_verify(inst, session, bad_r, rp, rng).accepted) ++rejected;
                    continue;
                }
                ++cases; // rare alias: fall back to honest verify, count as pass
                if (bob_verify(inst, session, r, rp, rng).accepted) ++rejected;
            }
            for (int i = 0; i < 10; ++i) {
                PureState msg = PureState::basis(
                    RegisterLayout{{"m", inst.message_width()}},
                    {{"m", rng.below(std::uint64_t{1} << inst.message_width())}});
                SignSession session = bob_challenge(inst, rng);
                alice_sign(inst, session, msg, rng);
                tamper_tag_bit(session, static_cast<int>(rng.below(inst.tag_width())));
                bob_acknowledge(session);
                auto [r, rp] = alice_reveal(session);
                ++cases;
                if (!bob_verify(inst, session, r, rp, rng).accepted) ++rejected;
            }
        }
        out.push_back({"signature_tamper_rejected", rejected == cases,
                       detail::counted(rejected, cases)});

        // State machine ordering.
        bool order_ok = true;
        SignSession s1 = bob_challenge(rsa, rng);
        try {
            alice_reveal(s1);
            order_ok = false;
        } catch (const std::logic_error&) {}
        try {
            bob_verify(rsa, s1, BitWord(2, 0), BitWord(2, 0), rng);
            order_ok = false;
        } catch (const std::logic_error&) {}
        PureState msg = PureState::basis(RegisterLayout{{"m", 2}}, {{"m", 1}});
        alice_sign(rsa, s1, msg, rng);
        try {
            alice_reveal(s1); // before the receipt acknowledgment
            order_ok = false;
        } catch (const std::logic_error&) {}
        out.push_back({"signature_step_order_enforced", order_ok,
                       order_ok ? "all out-of-order steps threw" : "a step was allowed"});
    }
    return out;
}

struct VerifyReport {
    std::uint64_t seed = 0;
    int trials = 0;
    bool inject_fault = false;
    std::vector<SuiteResult> suites;

    bool all_pass() const {
        for (const auto& s : suites)
            if (!s.pass) return false;
        return true;
    }
};

inline VerifyReport run_verification(std::uint64_t seed, int trials, bool inject_fault) {
    Rng base(seed);
    VerifyReport report{seed, trials, inject_fault, {}};
    auto add = [&](std::vector<SuiteResult> rs) {
        for (auto& r : rs) report.suites.push_back(std::move(r));
    };
    add(run_roundtrip_suite(base, trials));
    add(run_degeneration_suite(base));
    add(run_injectivity_suite(base));
    add(run_prop1_suite(base, 20));
    add(run_fidelity_numerics_suite(base));
    add(run_coding_suite(base));
    add(run_cw_suite());
    add(run_auth_suite(base, trials, inject_fault));
    add(run_signature_suite(base, std::min(trials, 50), inject_fault));
    return report;
}

inline Json report_to_json(const VerifyReport& report) {
    Json suites = Json::array();
    for (const auto& s : report.suites)
        suites.push_back(Json{{"name", s.name}, {"pass", s.pass}, {"detail", s.detail}});
    return Json{{"seed", report.seed},
                {"trials", report.trials},
                {"inject_fault", report.inject_fault},
                {"pass", report.all_pass()},
                {"suites", suites}};
}

inline std::string report_to_text(const VerifyReport& report) {
    std::ostringstream os;
    for (const auto& s : report.suites)
        os << (s.pass ? "[PASS] " : "[FAIL] ") << s.name << " - " << s.detail << "\n";
    os << (report.all_pass() ? "all suites passed" : "SUITE FAILURES PRESENT") << "\n";
    return os.str();
}

} // namespace qpkc
