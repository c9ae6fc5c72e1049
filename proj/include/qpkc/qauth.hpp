// qauth.hpp -- public-key authentication of quantum messages: the generic
// h(m) = (m, a(m)) framework instantiated with the SN-S linear-code scheme
// G_s = [I_k | A], plus the Hadamard identity-register variant.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpkc/gf2.hpp"
#include "qpkc/qpke.hpp"
#include "qpkc/qsim.hpp"

namespace qpkc {

// SN-S authentication key: standard-form generator G_s = [I_k | A] with A
// random, parity check H_s = [A^T | I_{n1-k}] (over GF(2), -A^T = A^T), and
// the deterministic right inverse. The code needs no error-correcting power.
struct AuthKey {
    GF2Matrix gs;      // k x n1
    GF2Matrix hs;      // (n1-k) x n1
    GF2Matrix gs_rinv; // n1 x k

    static AuthKey from_a(const GF2Matrix& a) {
        int k = a.rows(), n1 = k + a.cols();
        GF2Matrix gs(k, n1), hs(n1 - k, n1);
        for (int i = 0; i < k; ++i) {
            gs.set(i, i, true);
            for (int j = 0; j < n1 - k; ++j) gs.set(i, k + j, a.at(i, j));
        }
        for (int i = 0; i < n1 - k; ++i) {
            for (int j = 0; j < k; ++j) hs.set(i, j, a.at(j, i));
            hs.set(i, k + i, true);
        }
        if (!(gs * hs.transpose()).is_zero())
            throw std::logic_error("AuthKey: G_s H_s^T != 0");
        return AuthKey{gs, hs, gs.right_inverse()};
    }

    static AuthKey create(int k, int n1, Rng& rng) {
        if (k < 1 || n1 <= k)
            throw std::invalid_argument("AuthKey: need n1 > k >= 1");
        return from_a(GF2Matrix::random(k, n1 - k, rng));
    }

    int k() const { return gs.rows(); }
    int n1() const { return gs.cols(); }
};

struct AuthTag {
    bool accepted = false;
    std::optional<PureState> message;  // present iff accepted
    std::optional<BitWord> identity;   // identity-register variant only
};

// |m> -> |m G_s> on n1 qubits; the message register is cleared through the
// right inverse and dropped.
inline PureState auth_encode(const PureState& msg, const AuthKey& key) {
    if (!(msg.layout() == RegisterLayout{{"m", key.k()}}))
        throw std::invalid_argument("auth_encode: message must be k qubits on 'm'");
    PureState s = append_register(msg, "c", key.n1());
    s = apply_xor_oracle(s, {"m"}, "c", [&](std::span<const std::uint64_t> v) {
        return vec_mul(BitWord(key.k(), v[0]), key.gs).value();
    });
    s = apply_uncompute(s, {"c"}, "m", [&](std::span<const std::uint64_t> v) {
        return vec_mul(BitWord(key.n1(), v[0]), key.gs_rinv).value();
    });
    return drop_register(s, "m");
}

// Verification per the SN-S circuit: recompute the message register through
// G_s^{-1}, accumulate the syndrome in a check register, clear the codeword
// register by re-encoding, then measure both. Accept iff both are |0>.
// Tampering surfaces as a reject outcome, never as an error.
inline AuthTag auth_verify(const PureState& state, const AuthKey& key, Rng& rng) {
    if (!(state.layout() == RegisterLayout{{"c", key.n1()}}))
        throw std::invalid_argument("auth_verify: state must be n1 qubits on 'c'");
    PureState s = append_register(state, "m", key.k());
    s = apply_xor_oracle(s, {"c"}, "m", [&](std::span<const std::uint64_t> v) {
        return vec_mul(BitWord(key.n1(), v[0]), key.gs_rinv).value();
    });
    s = append_register(s, "chk", key.n1() - key.k());
    s = apply_xor_oracle(s, {"c"}, "chk", [&](std::span<const std::uint64_t> v) {
        return vec_mul(BitWord(key.n1(), v[0]), key.hs.transpose()).value();
    });
    s = apply_xor_oracle(s, {"m"}, "c", [&](std::span<const std::uint64_t> v) {
        return vec_mul(BitWord(key.k(), v[0]), key.gs).value();
    });

    MeasureResult chk = measure_register(s, "chk", rng);
    MeasureResult cw = measure_register(chk.post, "c", rng);
    if (chk.outcome.value() != 0 || cw.outcome.value() != 0)
        return AuthTag{false, std::nullopt, std::nullopt};

    PureState msg = drop_register(drop_register(cw.post, "chk"), "c");
    return AuthTag{true, std::move(msg), std::nullopt};
}

// Identity variant: an identity register |S> is passed through a Hadamard
// layer and prepended; the receiver undoes the layer and measures S.
inline PureState auth_encode_with_identity(const PureState& msg, const AuthKey& key,
                                           const BitWord& identity) {
    if (identity.width() > 8)
        throw std::invalid_argument("auth_encode_with_identity: identity width > 8");
    PureState encoded = auth_encode(msg, key);
    RegisterLayout layout{{"id", identity.width()}, {"c", key.n1()}};
    PureState::TermMap terms;
    std::uint64_t id_shift = static_cast<std::uint64_t>(key.n1());
    for (const auto& [label, amp] : encoded.terms())
        terms.emplace((identity.value() << id_shift) | label, amp);
    PureState s(layout, std::move(terms));
    return apply_hadamard(s, "id");
}

inline AuthTag auth_verify_with_identity(const PureState& state, const AuthKey& key,
                                         int identity_width, Rng& rng) {
    if (!(state.layout() == RegisterLayout{{"id", identity_width}, {"c", key.n1()}}))
        throw std::invalid_argument("auth_verify_with_identity: unexpected layout");
    PureState s = apply_hadamard(state, "id");
    MeasureResult id = measure_register(s, "id", rng);
    PureState rest = xor_constant(id.post, "id", id.outcome);
    rest = drop_register(rest, "id");
    AuthTag tag = auth_verify(rest, key, rng);
    tag.identity = id.outcome;
    return tag;
}

// Generic h(m) = (m, a(m)) framework with a pluggable authentication code.
inline PureState auth_encode_fn(const PureState& msg, int k, int tag_width,
                                const std::function<std::uint64_t(std::uint64_t)>& a) {
    if (!(msg.layout() == RegisterLayout{{"m", k}}))
        throw std::invalid_argument("auth_encode_fn: message must be k qubits on 'm'");
    // h(m) = (m, a(m)) packed as one register with m in the leading bits.
    PureState s = append_register(msg, "c", k + tag_width);
    s = apply_xor_oracle(s, {"m"}, "c", [&](std::span<const std::uint64_t> v) {
        return (v[0] << tag_width) | a(v[0]);
    });
    s = apply_uncompute(s, {"c"}, "m", [&](std::span<const std::uint64_t> v) {
        return v[0] >> tag_width;
    });
    return drop_register(s, "m");
}

inline AuthTag auth_verify_fn(const PureState& state, int k, int tag_width,
                              const std::function<std::uint64_t(std::uint64_t)>& a,
                              Rng& rng) {
    if (!(state.layout() == RegisterLayout{{"c", k + tag_width}}))
        throw std::invalid_argument("auth_verify_fn: unexpected layout");
    PureState s = append_register(state, "m", k);
    s = apply_xor_oracle(s, {"c"}, "m", [&](std::span<const std::uint64_t> v) {
        return v[0] >> tag_width;
    });
    s = apply_xor_oracle(s, {"m"}, "c", [&](std::span<const std::uint64_t> v) {
        return (v[0] << tag_width) | a(v[0]);
    });
    MeasureResult chk = measure_register(s, "c", rng);
    if (chk.outcome.value() != 0) return AuthTag{false, std::nullopt, std::nullopt};
    return AuthTag{true, drop_register(chk.post, "c"), std::nullopt};
}

// Transport composition: encode, then ship through a qpke scheme whose
// message width equals n1 (quantum McEliece by default).
inline CipherState auth_send(const PureState& msg, const AuthKey& key,
                             const KeyPair& pke, const Randomness& r) {
    if (message_width(pke) != key.n1())
        throw std::invalid_argument("auth_send: pke message width must equal n1");
    PureState encoded = rename_register(auth_encode(msg, key), "c", "m");
    return encrypt(pke, encoded, r);
}

inline AuthTag auth_receive(const CipherState& cipher, const AuthKey& key,
                            const KeyPair& pke, Rng& rng) {
    DecryptResult d = decrypt(pke, cipher);
    PureState encoded = rename_register(d.message, "m", "c");
    return auth_verify(encoded, key, rng);
}

} // namespace qpkc
