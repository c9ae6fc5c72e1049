// qsign.hpp -- interactive digital signature of quantum messages. A session
// walks the five protocol steps in strict order: Bob's challenge, Alice's
// signed state, Bob's receipt, Alice's reveal, Bob's verification. Two
// instances: RSA (f(x) = x^e mod N) and McEliece (f(x1, x2) = x1 G' + x2).
//
// The signature rides on the envelope: the tag register can be copied for
// repeated verification, but once the message is extracted the tag is gone.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpkc/bitword.hpp"
#include "qpkc/qpke.hpp"
#include "qpkc/qsim.hpp"

namespace qpkc {

enum class SignAlgo { rsa, mceliece };

inline const char* to_string(SignAlgo a) {
    return a == SignAlgo::rsa ? "rsa" : "mceliece";
}

// Width bookkeeping: f maps {0,1}^k x {0,1}^n -> {0,1}^{k'} x {0,1}^{n'}.
struct SignInstance {
    SignAlgo algo;
    KeyPair keys; // rsa or mceliece KeyPair (Alice holds the private part)
    int k = 0, n = 0;         // input split
    int k_out = 0, n_out = 0; // output split (k', n')

    int message_width() const { return algo == SignAlgo::rsa ? n : k; }
    int tag_width() const { return algo == SignAlgo::rsa ? k + n : n; }
    int challenge_weight() const {
        return algo == SignAlgo::mceliece ? kp_mc().t / 2 : -1;
    }
    const RsaKeys& kp_rsa() const { return keys.as<RsaKeys>(); }
    const McElieceKeys& kp_mc() const { return keys.as<McElieceKeys>(); }
};

inline SignInstance make_rsa_sign_instance(const KeyPair& rsa_kp) {
    const auto& key = rsa_kp.as<RsaKeys>();
    int w = key.width();
    if (w < 2)
        throw std::invalid_argument("sign instance: modulus too small to split");
    SignInstance inst{SignAlgo::rsa, rsa_kp};
    inst.k = w / 2;
    inst.n = w - inst.k;
    inst.k_out = inst.k;
    inst.n_out = inst.n;
    return inst;
}

// Default signing code: an [8,2] code of minimum distance 5 (t = 2), so the
// challenge weight floor(t/2) = 1 is nondegenerate and n is even.
inline LinearCode default_signing_code() {
    GF2Matrix a(2, 6);
    const int bits[2][6] = {{1, 1, 1, 1, 0, 0}, {0, 0, 1, 1, 1, 1}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 6; ++j) a.set(i, j, bits[i][j]);
    return LinearCode::from_standard_form(a, 2);
}

inline SignInstance make_mceliece_sign_instance(const KeyPair& mc_kp) {
    const auto& key = mc_kp.as<McElieceKeys>();
    if (key.n() % 2 != 0)
        throw std::invalid_argument("sign instance: code length must be even");
    SignInstance inst{SignAlgo::mceliece, mc_kp};
    inst.k = key.k();
    inst.n = key.n();
    inst.k_out = key.n() / 2;
    inst.n_out = key.n() / 2;
    return inst;
}

enum class SignPhase {
    challenge_sent,
    signed_state_sent,
    receipt_acknowledged,
    revealed,
    verified
};

inline const char* to_string(SignPhase p) {
    switch (p) {
        case SignPhase::challenge_sent: return "challenge_sent";
        case SignPhase::signed_state_sent: return "signed_state_sent";
        case SignPhase::receipt_acknowledged: return "receipt_acknowledged";
        case SignPhase::revealed: return "revealed";
        case SignPhase::verified: return "verified";
    }
    return "?";
}

struct VerifyOutcome {
    bool challenge_check = false; // first k' bits of f(r, r') equal r_B
    bool tag_check = false;       // tag register measured |0>
    bool accepted = false;
    std::optional<PureState> recovered_message;
};

struct TranscriptEntry {
    int step = 0;
    std::string direction;
    std::string kind;
    std::optional<BitWord> word_a; // challenge r_B / revealed r
    std::optional<BitWord> word_b; // revealed r'
    std::optional<PureState> state;
    std::optional<VerifyOutcome> outcome;
};

struct SignSession {
    SignPhase phase = SignPhase::challenge_sent;
    BitWord r_b;
    std::optional<BitWord> r_a;                 // Alice-side
    std::optional<BitWord> held_r, held_rprime; // Alice-side until reveal
    std::optional<PureState> signed_state;      // registers: m, tag [, tag<i>]
    int copies = 0;
    std::vector<TranscriptEntry> transcript;

    void require_phase(SignPhase expect, const char* op) const {
        if (phase != expect)
            throw std::logic_error(std::string(op) + ": protocol step out of order (phase " +
                                   to_string(phase) + ")");
    }
};

namespace detail {

inline BitWord sample_weight_word(int width, int weight, Rng& rng) {
    if (weight > width)
        throw std::invalid_argument("sample_weight_word: weight exceeds width");
    std::uint64_t v = 0;
    for (int remaining = weight; remaining > 0;) {
        std::uint64_t bit = std::uint64_t{1} << rng.below(static_cast<std::uint64_t>(width));
        if (!(v & bit)) { v |= bit; --remaining; }
    }
    return BitWord(width, v);
}

// f evaluated on the revealed pair: rsa takes (r | r')^e mod N, mceliece takes
// r' G' + r; both return a word whose leading k' bits carry the challenge.
inline BitWord sign_f(const SignInstance& inst, const BitWord& r, const BitWord& rp) {
    if (inst.algo == SignAlgo::rsa) {
        const auto& key = inst.kp_rsa();
        std::uint64_t x = (r.value() << inst.n) | rp.value();
        return BitWord(inst.k + inst.n, mod_pow(x, key.e, key.n));
    }
    const auto& key = inst.kp_mc();
    return vec_mul(rp, key.gpub) ^ r;
}

// Tag of a basis message under the signing randomness r.
inline std::uint64_t sign_tag(const SignInstance& inst, std::uint64_t m,
                              const BitWord& r) {
    if (inst.algo == SignAlgo::rsa) {
        const auto& key = inst.kp_rsa();
        std::uint64_t x = (r.value() << inst.n) | m;
        return mod_pow(x, key.e, key.n);
    }
    const auto& key = inst.kp_mc();
    return (vec_mul(BitWord(inst.k, m), key.gpub) ^ r).value();
}

} // namespace detail

// Step (1): Bob draws the challenge. The RSA challenge domain is restricted
// to r_B for which some (r_B | r_A) < N exists; McEliece challenges carry
// Hamming weight floor(t/2).
inline SignSession bob_challenge(const SignInstance& inst, Rng& rng) {
    SignSession session;
    if (inst.algo == SignAlgo::rsa) {
        const auto& key = inst.kp_rsa();
        std::uint64_t top = (key.n - 1) >> inst.n; // max feasible r_B
        session.r_b = BitWord(inst.k_out, rng.below(top + 1));
    } else {
        session.r_b = detail::sample_weight_word(inst.k_out, inst.challenge_weight(), rng);
    }
    session.transcript.push_back(
        TranscriptEntry{1, "bob->alice", "challenge", session.r_b, {}, {}, {}});
    return session;
}

// Step (2): Alice inverts f on (r_B, r_A) with her trapdoor and appends the
// tag register |f(m, r)> to the message.
inline void alice_sign(const SignInstance& inst, SignSession& session,
                       const PureState& message, Rng& rng) {
    session.require_phase(SignPhase::challenge_sent, "alice_sign");
    if (!(message.layout() == RegisterLayout{{"m", inst.message_width()}}))
        throw std::invalid_argument("alice_sign: message must live on 'm'");

    BitWord r(1, 0), rp(1, 0);
    if (inst.algo == SignAlgo::rsa) {
        const auto& key = inst.kp_rsa();
        if (!key.s)
            throw std::invalid_argument("alice_sign: private key material missing");
        std::uint64_t d = *key.s;
        bool found = false;
        for (int attempt = 0; attempt < 1024 && !found; ++attempt) {
            BitWord ra(inst.n_out, rng.below(std::uint64_t{1} << inst.n_out));
            std::uint64_t x = (session.r_b.value() << inst.n_out) | ra.value();
            if (x >= key.n || std::gcd(x, key.n) != 1) continue;
            session.r_a = ra;
            std::uint64_t y = mod_pow(x, d, key.n);
            r = BitWord(inst.k, y >> inst.n);
            rp = BitWord(inst.n, y & BitWord::mask(inst.n));
            found = true;
        }
        if (!found)
            throw std::runtime_error("alice_sign: no usable r_A within budget");
    } else {
        const auto& key = inst.kp_mc();
        if (!key.code)
            throw std::invalid_argument("alice_sign: private key material missing");
        const auto& code = *key.code;
        session.r_a = detail::sample_weight_word(inst.n_out, inst.challenge_weight(), rng);
        BitWord y = session.r_b.concat(*session.r_a); // width n
        BitWord y_unperm = vec_mul(y, key.perm->transpose());
        BitWord err = code.syndrome_decode(code.syndrome_of(y_unperm));
        r = vec_mul(err, *key.perm);            // width n, weight <= t
        rp = vec_mul(y ^ r, key.gpub_rinv);     // width k
        if (!(detail::sign_f(inst, r, rp) == y))
            throw std::logic_error("alice_sign: trapdoor inversion failed");
    }

    PureState s = append_register(message, "tag", inst.tag_width());
    BitWord r_held = r;
    s = apply_xor_oracle(s, {"m"}, "tag", [&](std::span<const std::uint64_t> v) {
        return detail::sign_tag(inst, v[0], r_held);
    });
    session.signed_state = std::move(s);
    session.held_r = r;
    session.held_rprime = rp;
    session.phase = SignPhase::signed_state_sent;
    session.transcript.push_back(TranscriptEntry{2, "alice->bob", "signed_state", {}, {},
                                                 session.signed_state, {}});
}

// Step (3): Bob confirms receipt; reveal is impossible before this.
inline void bob_acknowledge(SignSession& session) {
    session.require_phase(SignPhase::signed_state_sent, "bob_acknowledge");
    session.phase = SignPhase::receipt_acknowledged;
    session.transcript.push_back(TranscriptEntry{3, "bob->alice", "receipt_ack", {}, {}, {}, {}});
}

// Step (4): Alice announces (r, r').
inline std::pair<BitWord, BitWord> alice_reveal(SignSession& session) {
    session.require_phase(SignPhase::receipt_acknowledged, "alice_reveal");
    session.phase = SignPhase::revealed;
    session.transcript.push_back(TranscriptEntry{4, "alice->bob", "reveal", *session.held_r,
                                                 *session.held_rprime, {}, {}});
    return {*session.held_r, *session.held_rprime};
}

namespace detail {

inline std::string newest_tag_register(const SignSession& session) {
    return session.copies == 0 ? "tag" : "tag" + std::to_string(session.copies);
}

} // namespace detail

// XOR-copies the tag into a fresh register for one more verification
// pass. Requires the tag to be classically correlated with the message (a
// single tag value per message value in every branch).
inline PureState copy_tag_register(SignSession& session) {
    if (!session.signed_state)
        throw std::logic_error("copy_tag_register: no signed state held");
    const PureState& s = *session.signed_state;
    std::map<std::uint64_t, std::uint64_t> tag_of;
    for (const auto& [label, amp] : s.terms()) {
        std::uint64_t m = s.layout().extract(label, "m");
        std::uint64_t tag = s.layout().extract(label, "tag");
        auto [it, inserted] = tag_of.emplace(m, tag);
        if (!inserted && it->second != tag)
            throw std::runtime_error(
                "copy_tag_register: tag register is not basis-correlated");
    }
    ++session.copies;
    std::string copy_name = "tag" + std::to_string(session.copies);
    PureState out = append_register(s, copy_name, s.layout().reg("tag").width);
    out = apply_xor_oracle(out, {"tag"}, copy_name,
                           [](std::span<const std::uint64_t> v) { return v[0]; });
    session.signed_state = out;
    return out;
}

// Step (5): check the challenge, then uncompute and measure a tag register.
// Consumes the newest copy first; the session completes when the primary tag
// is consumed and the message extracted. A failed challenge check skips the
// tag measurement entirely and leaves the signed state intact for dispute.
inline VerifyOutcome bob_verify(const SignInstance& inst, SignSession& session,
                                const BitWord& r, const BitWord& rp, Rng& rng) {
    session.require_phase(SignPhase::revealed, "bob_verify");
    VerifyOutcome out;
    BitWord fv = detail::sign_f(inst, r, rp);
    out.challenge_check = fv.high_bits(inst.k_out) == session.r_b;
    if (!out.challenge_check) {
        session.phase = SignPhase::verified;
        session.transcript.push_back(TranscriptEntry{5, "bob", "verdict", {}, {}, {}, out});
        return out;
    }

    std::string target = detail::newest_tag_register(session);
    bool is_copy = target != "tag";
    PureState s = apply_xor_oracle(*session.signed_state, {"m"}, target,
                                   [&](std::span<const std::uint64_t> v) {
                                       return detail::sign_tag(inst, v[0], r);
                                   });
    MeasureResult mr = measure_register(s, target, rng);
    out.tag_check = mr.outcome.value() == 0;
    out.accepted = out.challenge_check && out.tag_check;

    PureState post = xor_constant(mr.post, target, mr.outcome);
    if (is_copy) {
        post = drop_register(post, target);
        --session.copies;
        session.signed_state = post;
        // stays in `revealed`; the primary tag is still attached
    } else {
        session.signed_state = post; // tag register now |0> in every term
        session.phase = SignPhase::verified;
        if (out.accepted) out.recovered_message = drop_register(post, "tag");
    }
    session.transcript.push_back(TranscriptEntry{5, "bob", "verdict", {}, {}, {}, out});
    return out;
}

// Adversary hook: flip one bit of the announced r in transit. Rewrites the
// step-4 transcript payload (the transcript records the channel content as
// delivered) and returns the value Bob receives.
inline BitWord tamper_revealed_r(SignSession& session, int bit) {
    if (session.phase != SignPhase::revealed)
        throw std::logic_error("tamper_revealed_r: nothing revealed yet");
    BitWord bad = session.held_r->with_bit_flipped(bit);
    for (auto& e : session.transcript)
        if (e.kind == "reveal") e.word_a = bad;
    return bad;
}

// Adversary hook used by demos and tests: flip one bit of the in-flight tag.
// The transcript's step-2 payload is the channel content, so it records the
// state as delivered, not as sent.
inline void tamper_tag_bit(SignSession& session, int bit) {
    if (!session.signed_state)
        throw std::logic_error("tamper_tag_bit: no signed state held");
    int w = session.signed_state->layout().reg("tag").width;
    if (bit < 0 || bit >= w) throw std::out_of_range("tamper_tag_bit: bit index");
    session.signed_state = xor_constant(*session.signed_state, "tag",
                                        BitWord(w, std::uint64_t{1} << bit));
    for (auto& e : session.transcript)
        if (e.kind == "signed_state") e.state = session.signed_state;
}

} // namespace qpkc
