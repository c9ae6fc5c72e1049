// qpkc -- command-line front end: key generation, encryption and decryption
// of serialized states, authentication, signature demos with replayable
// transcripts, and the property verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qpkc/qauth.hpp"
#include "qpkc/qpke.hpp"
#include "qpkc/qsign.hpp"
#include "qpkc/serialize.hpp"
#include "qpkc/verify.hpp"

namespace {

using namespace qpkc;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

void write_json(const std::string& path, const Json& j) {
    write_text(path, j.dump(2) + "\n");
}

// FNV-1a over the canonical public-key JSON.
std::string key_fingerprint(const KeyPair& kp) {
    std::string bytes = to_json(kp, /*include_private=*/false).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct KeygenOptions {
    std::string scheme;
    std::string out = "key.json";
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> p, q, e, alpha, s, g, d, a, b, px, py, t;
    std::optional<int> k, n1;
    std::string code = "hamming74";
    std::vector<std::uint64_t> primes;
};

LinearCode parse_code(const std::string& spec, Rng& rng) {
    if (spec == "hamming74") return LinearCode::hamming74();
    if (spec == "signing82") return default_signing_code();
    int n = 0, k = 0, t = 0;
    if (std::sscanf(spec.c_str(), "random:%d,%d,%d", &n, &k, &t) == 3)
        return LinearCode::random_code(n, k, t, rng);
    throw std::runtime_error("unknown code spec '" + spec +
                             "' (use hamming74, signing82 or random:n,k,t)");
}

KeyPair run_keygen(const KeygenOptions& opt) {
    Rng rng = Rng(opt.seed).fork("keygen");
    SchemeId scheme = scheme_from_string(opt.scheme);
    auto need = [&](const std::optional<std::uint64_t>& v, const char* name) {
        if (!v) throw std::runtime_error(std::string("missing --") + name);
        return *v;
    };
    switch (scheme) {
        case SchemeId::rsa:
            return rsa_keygen(need(opt.p, "p"), need(opt.q, "q"), need(opt.e, "e"));
        case SchemeId::elgamal:
            return elgamal_keygen(need(opt.p, "p"), need(opt.alpha, "alpha"),
                                  need(opt.s, "s"));
        case SchemeId::gm:
            return gm_keygen(need(opt.p, "p"), need(opt.q, "q"),
                             opt.k.value_or(2), opt.t);
        case SchemeId::ecc: {
            Curve curve(need(opt.p, "p"), need(opt.a, "a"), need(opt.b, "b"));
            Point base = Point::affine(need(opt.px, "px"), need(opt.py, "py"));
            return ecc_keygen(curve, base, need(opt.s, "s"));
        }
        case SchemeId::mceliece:
            return mceliece_keygen(parse_code(opt.code, rng), rng);
        case SchemeId::niederreiter:
            return niederreiter_keygen(parse_code(opt.code, rng), rng);
        case SchemeId::otu: {
            std::vector<std::uint64_t> primes =
                opt.primes.empty() ? std::vector<std::uint64_t>{2, 3, 5, 7} : opt.primes;
            return otu_keygen(need(opt.p, "p"), need(opt.g, "g"), need(opt.d, "d"),
                              primes, opt.k.value_or(2));
        }
    }
    throw std::runtime_error("unknown scheme");
}

int cmd_encrypt(const std::string& key_path, const std::string& in_path,
                const std::string& out_path, std::uint64_t seed) {
    KeyPair kp = keypair_from_json(read_json(key_path));
    PureState msg = purestate_from_json(read_json(in_path));
    Rng rng = Rng(seed).fork("encrypt");
    Randomness r = sample_randomness(kp, rng);
    CipherState cipher = encrypt(kp, msg, r);
    write_json(out_path, to_json(cipher));
    std::cout << "encrypted under scheme " << to_string(kp.scheme) << " ("
              << cipher.state.term_count() << " terms)\n";
    if (msg.term_count() == 1) {
        // Degeneration view: a basis message has a classical cipher.
        std::uint64_t m = msg.layout().extract(msg.sole_label(), "m");
        ClassicalCipher cc = classical_eval(kp, m, r);
        std::cout << "classical cipher:";
        for (const auto& w : cc.g) std::cout << " g=" << w.to_string();
        for (const auto& w : cc.f) std::cout << " f=" << w.to_string();
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_decrypt(const std::string& key_path, const std::string& in_path,
                const std::string& out_path) {
    KeyPair kp = keypair_from_json(read_json(key_path));
    CipherState cipher = cipherstate_from_json(read_json(in_path));
    DecryptResult d = decrypt(kp, cipher);
    write_json(out_path, to_json(d.message));
    std::cout << "decrypted " << d.message.term_count() << " terms\n";
    for (const auto& r : d.recovered_r)
        std::cout << "recovered r = " << r.to_string() << "\n";
    return kExitOk;
}

int cmd_auth_encode(const std::string& key_path, const std::string& in_path,
                    const std::string& out_path, std::optional<std::string> identity) {
    AuthKey key = authkey_from_json(read_json(key_path));
    PureState msg = purestate_from_json(read_json(in_path));
    PureState encoded = identity
                            ? auth_encode_with_identity(msg, key,
                                                        BitWord::from_string(*identity))
                            : auth_encode(msg, key);
    write_json(out_path, to_json(encoded));
    std::cout << "encoded " << msg.term_count() << " terms into " << key.n1()
              << " qubits\n";
    return kExitOk;
}

int cmd_auth_verify(const std::string& key_path, const std::string& in_path,
                    const std::string& out_path, std::optional<int> identity_width,
                    std::uint64_t seed) {
    AuthKey key = authkey_from_json(read_json(key_path));
    PureState state = purestate_from_json(read_json(in_path));
    Rng rng = Rng(seed).fork("auth-verify");
    AuthTag tag = identity_width
                      ? auth_verify_with_identity(state, key, *identity_width, rng)
                      : auth_verify(state, key, rng);
    if (!tag.accepted) {
        std::cout << "reject\n";
        return kExitVerifyFailure;
    }
    std::cout << "accept\n";
    if (tag.identity) std::cout << "identity = " << tag.identity->to_string() << "\n";
    if (!out_path.empty()) write_json(out_path, to_json(*tag.message));
    return kExitOk;
}

int cmd_sign_demo(const std::string& algo, const std::string& out_path,
                  std::uint64_t seed, const std::string& tamper,
                  const std::string& message_bits) {
    Rng rng = Rng(seed).fork("sign-demo");
    SignInstance inst =
        algo == "rsa"
            ? make_rsa_sign_instance(rsa_keygen(3, 5, 3))
            : make_mceliece_sign_instance(mceliece_keygen(default_signing_code(), rng));

    PureState msg = [&] {
        RegisterLayout layout{{"m", inst.message_width()}};
        if (!message_bits.empty())
            return PureState::basis(layout,
                                    {{"m", BitWord::from_string(message_bits).value()}});
        double inv = 1.0 / std::sqrt(2.0);
        return PureState(layout, {{0, inv}, {1, inv}});
    }();

    SignSession session = bob_challenge(inst, rng);
    alice_sign(inst, session, msg, rng);
    if (tamper.rfind("tag-bit:", 0) == 0)
        tamper_tag_bit(session, std::stoi(tamper.substr(8)));
    bob_acknowledge(session);
    auto [r, rp] = alice_reveal(session);
    if (tamper == "reveal-r") r = tamper_revealed_r(session, 0);
    VerifyOutcome out = bob_verify(inst, session, r, rp, rng);

    if (!out_path.empty()) write_json(out_path, transcript_to_json(inst, session));
    std::cout << "challenge_check=" << (out.challenge_check ? "pass" : "fail")
              << " tag_check=" << (out.tag_check ? "pass" : "fail") << " -> "
              << (out.accepted ? "accepted" : "rejected") << "\n";
    return out.accepted ? kExitOk : kExitVerifyFailure;
}

int cmd_replay(const std::string& in_path, std::uint64_t seed) {
    Rng rng = Rng(seed).fork("replay");
    ReplayResult result = replay_transcript(read_json(in_path), rng);
    std::cout << "replayed verdict: " << (result.outcome.accepted ? "accepted" : "rejected")
              << (result.matches_recorded ? " (matches transcript)"
                                          : " (DIFFERS from transcript)")
              << "\n";
    return result.matches_recorded ? kExitOk : kExitVerifyFailure;
}

int cmd_verify(std::uint64_t seed, int trials, bool inject_fault,
               const std::string& out_path) {
    VerifyReport report = run_verification(seed, trials, inject_fault);
    std::cout << report_to_text(report);
    if (!out_path.empty()) write_json(out_path, report_to_json(report));
    return report.all_pass() ? kExitOk : kExitVerifyFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale simulator for public-key encryption, authentication "
                 "and signature of quantum messages"};
    app.require_subcommand(1);

    KeygenOptions kg;
    auto* keygen = app.add_subcommand("keygen", "generate a key pair");
    keygen->add_option("--scheme", kg.scheme)->required();
    keygen->add_option("--out", kg.out);
    keygen->add_option("--seed", kg.seed);
    keygen->add_option("--p", kg.p);
    keygen->add_option("--q", kg.q);
    keygen->add_option("--e", kg.e);
    keygen->add_option("--alpha", kg.alpha);
    keygen->add_option("--s", kg.s);
    keygen->add_option("--g", kg.g);
    keygen->add_option("--d", kg.d);
    keygen->add_option("--a", kg.a);
    keygen->add_option("--b", kg.b);
    keygen->add_option("--px", kg.px);
    keygen->add_option("--py", kg.py);
    keygen->add_option("--t", kg.t);
    keygen->add_option("--k", kg.k);
    keygen->add_option("--n1", kg.n1);
    keygen->add_option("--code", kg.code);
    keygen->add_option("--primes", kg.primes);

    std::string key_path, in_path, out_path, algo = "rsa", tamper, message_bits;
    std::uint64_t seed = 0;
    int trials = 100;
    bool inject_fault = false;
    std::optional<std::string> identity;
    std::optional<int> identity_width;

    auto* enc = app.add_subcommand("encrypt", "encrypt a serialized state");
    enc->add_option("--key", key_path)->required();
    enc->add_option("--in", in_path)->required();
    enc->add_option("--out", out_path)->required();
    enc->add_option("--seed", seed);

    auto* dec = app.add_subcommand("decrypt", "decrypt a serialized cipher");
    dec->add_option("--key", key_path)->required();
    dec->add_option("--in", in_path)->required();
    dec->add_option("--out", out_path)->required();

    auto* aenc = app.add_subcommand("auth-encode", "encode a message for authentication");
    aenc->add_option("--key", key_path)->required();
    aenc->add_option("--in", in_path)->required();
    aenc->add_option("--out", out_path)->required();
    aenc->add_option("--identity", identity);

    auto* aver = app.add_subcommand("auth-verify", "verify an authenticated state");
    aver->add_option("--key", key_path)->required();
    aver->add_option("--in", in_path)->required();
    aver->add_option("--out", out_path);
    aver->add_option("--identity-width", identity_width);
    aver->add_option("--seed", seed);

    auto* sdemo = app.add_subcommand("sign-demo", "run a signature session end to end");
    sdemo->add_option("--scheme", algo)->check(CLI::IsMember({"rsa", "mceliece"}));
    sdemo->add_option("--out", out_path);
    sdemo->add_option("--seed", seed);
    sdemo->add_option("--tamper", tamper);
    sdemo->add_option("--message", message_bits);

    auto* rep = app.add_subcommand("replay", "re-verify a saved transcript");
    rep->add_option("--in", in_path)->required();
    rep->add_option("--seed", seed);

    auto* ver = app.add_subcommand("verify", "run the property verification suites");
    ver->add_option("--seed", seed);
    ver->add_option("--trials", trials)->check(CLI::PositiveNumber);
    ver->add_flag("--inject-fault", inject_fault);
    ver->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (keygen->parsed()) {
            if (kg.scheme == "auth") {
                Rng rng = Rng(kg.seed).fork("keygen");
                AuthKey key = AuthKey::create(kg.k.value_or(4), kg.n1.value_or(7), rng);
                write_json(kg.out, to_json(key));
                std::cout << "auth key [" << key.n1() << "," << key.k() << "]\n";
                return kExitOk;
            }
            KeyPair kp = run_keygen(kg);
            write_json(kg.out, to_json(kp));
            std::cout << "scheme " << to_string(kp.scheme) << ", public-key fingerprint "
                      << key_fingerprint(kp) << "\n";
            return kExitOk;
        }
        if (enc->parsed()) return cmd_encrypt(key_path, in_path, out_path, seed);
        if (dec->parsed()) return cmd_decrypt(key_path, in_path, out_path);
        if (aenc->parsed()) return cmd_auth_encode(key_path, in_path, out_path, identity);
        if (aver->parsed())
            return cmd_auth_verify(key_path, in_path, out_path, identity_width, seed);
        if (sdemo->parsed())
            return cmd_sign_demo(algo, out_path, seed, tamper, message_bits);
        if (rep->parsed()) return cmd_replay(in_path, seed);
        if (ver->parsed()) return cmd_verify(seed, trials, inject_fault, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
