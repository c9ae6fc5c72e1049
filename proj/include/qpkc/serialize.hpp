// serialize.hpp -- JSON encodings for every externally visible object. The
// exact field names here are the project's wire/file schema; see
// docs/formats.md. Bit order: BitWord values and basis labels print most
// significant bit first; matrix rows print column 0 first.
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qpkc/ecurve.hpp"
#include "qpkc/gf2.hpp"
#include "qpkc/qauth.hpp"
#include "qpkc/qpke.hpp"
#include "qpkc/qsign.hpp"
#include "qpkc/qsim.hpp"

namespace qpkc {

using Json = nlohmann::ordered_json;

// ---- primitives -----------------------------------------------------------

inline Json to_json(const BitWord& w) {
    return Json{{"width", w.width()}, {"value", w.to_string()}};
}

inline BitWord bitword_from_json(const Json& j) {
    BitWord w = BitWord::from_string(j.at("value").get<std::string>());
    if (w.width() != j.at("width").get<int>())
        throw std::invalid_argument("bitword_from_json: width disagrees with value");
    return w;
}

inline Json to_json(const GF2Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        std::string row(static_cast<std::size_t>(m.cols()), '0');
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j)) row[static_cast<std::size_t>(j)] = '1';
        rows.push_back(row);
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

inline GF2Matrix gf2matrix_from_json(const Json& j) {
    int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
    GF2Matrix m(rows, cols);
    const Json& data = j.at("data");
    if (static_cast<int>(data.size()) != rows)
        throw std::invalid_argument("gf2matrix_from_json: row count mismatch");
    for (int i = 0; i < rows; ++i) {
        const std::string row = data.at(static_cast<std::size_t>(i)).get<std::string>();
        if (static_cast<int>(row.size()) != cols)
            throw std::invalid_argument("gf2matrix_from_json: row width mismatch");
        for (int c = 0; c < cols; ++c)
            m.set(i, c, row[static_cast<std::size_t>(c)] == '1');
    }
    return m;
}

inline Json to_json(const Point& p) {
    return Json{{"inf", p.inf}, {"x", p.x}, {"y", p.y}};
}

inline Point point_from_json(const Json& j) {
    if (j.at("inf").get<bool>()) return Point::infinity();
    return Point::affine(j.at("x").get<std::uint64_t>(), j.at("y").get<std::uint64_t>());
}

inline Json to_json(const LinearCode& code) {
    return Json{{"generator", to_json(code.generator())},
                {"check", to_json(code.check())},
                {"t", code.t()}};
}

inline LinearCode linearcode_from_json(const Json& j) {
    return LinearCode(gf2matrix_from_json(j.at("generator")),
                      gf2matrix_from_json(j.at("check")), j.at("t").get<int>());
}

// ---- states ----------------------------------------------------------------

inline Json to_json(const PureState& s) {
    Json layout = Json::array();
    for (const auto& r : s.layout().registers())
        layout.push_back(Json::array({r.name, r.width}));
    Json terms = Json::array();
    for (const auto& [label, amp] : s.terms()) {
        terms.push_back(Json{
            {"basis", BitWord(s.layout().total_width(), label).to_string()},
            {"re", amp.real()},
            {"im", amp.imag()}});
    }
    return Json{{"layout", layout}, {"terms", terms}};
}

inline PureState purestate_from_json(const Json& j) {
    std::vector<std::pair<std::string, int>> regs;
    for (const auto& r : j.at("layout"))
        regs.emplace_back(r.at(0).get<std::string>(), r.at(1).get<int>());
    RegisterLayout layout(regs);
    PureState::TermMap terms;
    for (const auto& t : j.at("terms")) {
        BitWord basis = BitWord::from_string(t.at("basis").get<std::string>());
        if (basis.width() != layout.total_width())
            throw std::invalid_argument("purestate_from_json: basis width mismatch");
        terms[basis.value()] =
            Amplitude{t.at("re").get<double>(), t.at("im").get<double>()};
    }
    return PureState(std::move(layout), std::move(terms));
}

// ---- keys -------------------------------------------------------------------

inline Json to_json(const KeyPair& kp, bool include_private = true) {
    Json j{{"scheme", to_string(kp.scheme)}};
    Json pub = Json::object(), priv = Json::object();
    switch (kp.scheme) {
        case SchemeId::rsa: {
            const auto& k = kp.as<RsaKeys>();
            pub = Json{{"n", k.n}, {"e", k.e}};
            if (k.s) priv = Json{{"p", *k.p}, {"q", *k.q}, {"s", *k.s}};
            break;
        }
        case SchemeId::elgamal: {
            const auto& k = kp.as<ElgamalKeys>();
            pub = Json{{"p", k.p}, {"alpha", k.alpha}, {"beta", k.beta}};
            if (k.s) priv = Json{{"s", *k.s}};
            break;
        }
        case SchemeId::gm: {
            const auto& k = kp.as<GmKeys>();
            pub = Json{{"n", k.n}, {"t", k.t}, {"k", k.k}};
            if (k.p) priv = Json{{"p", *k.p}, {"q", *k.q}};
            break;
        }
        case SchemeId::ecc: {
            const auto& k = kp.as<EccKeys>();
            pub = Json{{"p", k.curve.p},
                       {"a", k.curve.a},
                       {"b", k.curve.b},
                       {"base", to_json(k.base)},
                       {"pub", to_json(k.pub)},
                       {"order", k.base_order}};
            if (k.s) priv = Json{{"s", *k.s}};
            break;
        }
        case SchemeId::mceliece: {
            const auto& k = kp.as<McElieceKeys>();
            pub = Json{{"gpub", to_json(k.gpub)}, {"t", k.t}};
            if (k.code)
                priv = Json{{"scramble", to_json(*k.scramble)},
                            {"code", to_json(*k.code)},
                            {"perm", to_json(*k.perm)}};
            break;
        }
        case SchemeId::niederreiter: {
            const auto& k = kp.as<NiederreiterKeys>();
            pub = Json{{"hpub", to_json(k.hpub)}, {"t", k.t}};
            if (k.code)
                priv = Json{{"mix", to_json(*k.mix)},
                            {"code", to_json(*k.code)},
                            {"perm", to_json(*k.perm)}};
            break;
        }
        case SchemeId::otu: {
            const auto& k = kp.as<OtuKeys>();
            pub = Json{{"n", k.n}, {"k", k.k}, {"b", k.b}};
            if (k.p)
                priv = Json{{"g", *k.gen}, {"d", *k.d}, {"p", *k.p}, {"primes", *k.primes}};
            break;
        }
    }
    j["public"] = pub;
    if (include_private && !priv.empty()) j["private"] = priv;
    return j;
}

inline KeyPair keypair_from_json(const Json& j) {
    SchemeId scheme = scheme_from_string(j.at("scheme").get<std::string>());
    const Json& pub = j.at("public");
    bool has_priv = j.contains("private");
    const Json priv = has_priv ? j.at("private") : Json::object();
    switch (scheme) {
        case SchemeId::rsa: {
            if (has_priv)
                return rsa_keygen(priv.at("p").get<std::uint64_t>(),
                                  priv.at("q").get<std::uint64_t>(),
                                  pub.at("e").get<std::uint64_t>());
            RsaKeys k;
            k.n = pub.at("n").get<std::uint64_t>();
            k.e = pub.at("e").get<std::uint64_t>();
            return KeyPair{scheme, k};
        }
        case SchemeId::elgamal: {
            if (has_priv)
                return elgamal_keygen(pub.at("p").get<std::uint64_t>(),
                                      pub.at("alpha").get<std::uint64_t>(),
                                      priv.at("s").get<std::uint64_t>());
            ElgamalKeys k;
            k.p = pub.at("p").get<std::uint64_t>();
            k.alpha = pub.at("alpha").get<std::uint64_t>();
            k.beta = pub.at("beta").get<std::uint64_t>();
            return KeyPair{scheme, k};
        }
        case SchemeId::gm: {
            if (has_priv)
                return gm_keygen(priv.at("p").get<std::uint64_t>(),
                                 priv.at("q").get<std::uint64_t>(), pub.at("k").get<int>(),
                                 pub.at("t").get<std::uint64_t>());
            GmKeys k;
            k.n = pub.at("n").get<std::uint64_t>();
            k.t = pub.at("t").get<std::uint64_t>();
            k.k = pub.at("k").get<int>();
            return KeyPair{scheme, k};
        }
        case SchemeId::ecc: {
            Curve curve(pub.at("p").get<std::uint64_t>(), pub.at("a").get<std::uint64_t>(),
                        pub.at("b").get<std::uint64_t>());
            Point base = point_from_json(pub.at("base"));
            if (has_priv)
                return ecc_keygen(curve, base, priv.at("s").get<std::uint64_t>());
            EccKeys k{curve, base, point_from_json(pub.at("pub")),
                      pub.at("order").get<std::uint64_t>(), std::nullopt};
            return KeyPair{scheme, k};
        }
        case SchemeId::mceliece: {
            if (has_priv)
                return mceliece_keygen_explicit(linearcode_from_json(priv.at("code")),
                                                gf2matrix_from_json(priv.at("scramble")),
                                                gf2matrix_from_json(priv.at("perm")));
            McElieceKeys k;
            k.gpub = gf2matrix_from_json(pub.at("gpub"));
            k.gpub_rinv = k.gpub.right_inverse();
            k.t = pub.at("t").get<int>();
            return KeyPair{scheme, k};
        }
        case SchemeId::niederreiter: {
            if (has_priv)
                return niederreiter_keygen_explicit(linearcode_from_json(priv.at("code")),
                                                    gf2matrix_from_json(priv.at("mix")),
                                                    gf2matrix_from_json(priv.at("perm")));
            NiederreiterKeys k;
            k.hpub = gf2matrix_from_json(pub.at("hpub"));
            k.t = pub.at("t").get<int>();
            return KeyPair{scheme, k};
        }
        case SchemeId::otu: {
            if (has_priv)
                return otu_keygen(priv.at("p").get<std::uint64_t>(),
                                  priv.at("g").get<std::uint64_t>(),
                                  priv.at("d").get<std::uint64_t>(),
                                  priv.at("primes").get<std::vector<std::uint64_t>>(),
                                  pub.at("k").get<int>());
            OtuKeys k;
            k.n = pub.at("n").get<int>();
            k.k = pub.at("k").get<int>();
            k.b = pub.at("b").get<std::vector<std::uint64_t>>();
            return KeyPair{scheme, k};
        }
    }
    throw std::logic_error("keypair_from_json: unknown scheme");
}

// ---- cipher states -----------------------------------------------------------

inline Json to_json(const ClassicalSide& side) {
    if (const BitWord* w = std::get_if<BitWord>(&side))
        return Json{{"type", "word"}, {"width", w->width()}, {"value", w->to_string()}};
    const Point& p = std::get<Point>(side);
    return Json{{"type", "point"}, {"inf", p.inf}, {"x", p.x}, {"y", p.y}};
}

inline ClassicalSide classicalside_from_json(const Json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "word") return bitword_from_json(j);
    if (type == "point") return point_from_json(j);
    throw std::invalid_argument("classicalside_from_json: unknown type");
}

inline Json to_json(const CipherState& c) {
    Json classical = Json::array();
    for (const auto& side : c.classical) classical.push_back(to_json(side));
    return Json{{"scheme", to_string(c.scheme)},
                {"classical", classical},
                {"state", to_json(c.state)}};
}

inline CipherState cipherstate_from_json(const Json& j) {
    std::vector<ClassicalSide> classical;
    for (const auto& s : j.at("classical"))
        classical.push_back(classicalside_from_json(s));
    return CipherState{scheme_from_string(j.at("scheme").get<std::string>()),
                       purestate_from_json(j.at("state")), std::move(classical)};
}

// ---- authentication keys -------------------------------------------------------

inline Json to_json(const AuthKey& key) {
    return Json{{"gs", to_json(key.gs)}, {"hs", to_json(key.hs)}};
}

inline AuthKey authkey_from_json(const Json& j) {
    GF2Matrix gs = gf2matrix_from_json(j.at("gs"));
    int k = gs.rows(), n1 = gs.cols();
    GF2Matrix a(k, n1 - k);
    for (int i = 0; i < k; ++i) {
        for (int c = 0; c < k; ++c)
            if (gs.at(i, c) != (i == c))
                throw std::invalid_argument("authkey_from_json: G_s not standard form");
        for (int c = 0; c < n1 - k; ++c) a.set(i, c, gs.at(i, k + c));
    }
    AuthKey key = AuthKey::from_a(a);
    if (!(key.hs == gf2matrix_from_json(j.at("hs"))))
        throw std::invalid_argument("authkey_from_json: H_s inconsistent with G_s");
    return key;
}

// ---- signature transcripts -------------------------------------------------------

inline Json to_json(const VerifyOutcome& v) {
    return Json{{"challenge_check", v.challenge_check},
                {"tag_check", v.tag_check},
                {"accepted", v.accepted}};
}

inline Json transcript_to_json(const SignInstance& inst, const SignSession& session) {
    Json entries = Json::array();
    for (const auto& e : session.transcript) {
        Json entry{{"step", e.step}, {"direction", e.direction}, {"kind", e.kind}};
        Json payload = Json::object();
        if (e.word_a) payload[e.kind == "challenge" ? "r_b" : "r"] = to_json(*e.word_a);
        if (e.word_b) payload["r_prime"] = to_json(*e.word_b);
        if (e.state) payload["state"] = to_json(*e.state);
        if (e.outcome) payload["outcome"] = to_json(*e.outcome);
        entry["payload"] = payload;
        entries.push_back(entry);
    }
    return Json{{"algo", to_string(inst.algo)},
                {"key", to_json(inst.keys, /*include_private=*/false)},
                {"entries", entries}};
}

struct ReplayResult {
    VerifyOutcome outcome;
    bool matches_recorded = false;
};

// Re-runs step (5) from a saved transcript: the public key, the challenge,
// the signed state and the revealed pair fully determine the verdict.
inline ReplayResult replay_transcript(const Json& transcript, Rng& rng) {
    KeyPair keys = keypair_from_json(transcript.at("key"));
    const std::string algo = transcript.at("algo").get<std::string>();
    SignInstance inst = algo == "rsa" ? make_rsa_sign_instance(keys)
                                      : make_mceliece_sign_instance(keys);

    SignSession session;
    std::optional<BitWord> r, rp;
    std::optional<VerifyOutcome> recorded;
    for (const auto& e : transcript.at("entries")) {
        const std::string kind = e.at("kind").get<std::string>();
        const Json& payload = e.at("payload");
        if (kind == "challenge") {
            session.r_b = bitword_from_json(payload.at("r_b"));
        } else if (kind == "signed_state") {
            session.signed_state = purestate_from_json(payload.at("state"));
        } else if (kind == "reveal") {
            r = bitword_from_json(payload.at("r"));
            rp = bitword_from_json(payload.at("r_prime"));
        } else if (kind == "verdict") {
            VerifyOutcome v;
            v.challenge_check = payload.at("outcome").at("challenge_check").get<bool>();
            v.tag_check = payload.at("outcome").at("tag_check").get<bool>();
            v.accepted = payload.at("outcome").at("accepted").get<bool>();
            recorded = v;
        }
    }
    if (!session.signed_state || !r || !rp)
        throw std::invalid_argument("replay_transcript: transcript incomplete");
    session.phase = SignPhase::revealed;

    ReplayResult result;
    result.outcome = bob_verify(inst, session, *r, *rp, rng);
    result.matches_recorded =
        recorded && recorded->challenge_check == result.outcome.challenge_check &&
        recorded->tag_check == result.outcome.tag_check &&
        recorded->accepted == result.outcome.accepted;
    return result;
}

} // namespace qpkc
