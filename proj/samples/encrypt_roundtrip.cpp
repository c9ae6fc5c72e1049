// Walks one encryption round trip per scheme for a 2-term superposition and
// prints the cipher registers, the recovered randomness and the fidelity.

#include <iostream>

#include "qpkc/qpke.hpp"
#include "qpkc/serialize.hpp"

using namespace qpkc;

int main() {
    Rng rng(7);
    for (SchemeId scheme : {SchemeId::rsa, SchemeId::elgamal, SchemeId::gm,
                            SchemeId::ecc, SchemeId::mceliece,
                            SchemeId::niederreiter, SchemeId::otu}) {
        KeyPair kp = keygen_random(scheme, rng);
        auto space = enumerate_message_space(kp);
        double inv = 1.0 / std::sqrt(2.0);
        PureState msg(message_layout(kp),
                      {{space[0], inv}, {space[space.size() / 2], inv}});
        Randomness r = sample_randomness(kp, rng);
        CipherState cipher = encrypt(kp, msg, r);
        DecryptResult back = decrypt(kp, cipher);

        std::cout << "== " << to_string(scheme) << " ==\n";
        std::cout << "cipher state: " << to_json(cipher.state).dump() << "\n";
        for (const auto& rec : back.recovered_r)
            std::cout << "recovered r: " << rec.to_string() << "\n";
        std::cout << "round-trip fidelity: " << fidelity_pure(back.message, msg)
                  << "\n\n";
    }
    return 0;
}
