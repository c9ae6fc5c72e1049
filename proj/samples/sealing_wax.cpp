// Demonstrates the interactive signature on a quantum message: the tag can be
// copied and verified repeatedly while attached, but once the message is
// extracted no further verification is possible.

#include <iostream>

#include "qpkc/qsign.hpp"

using namespace qpkc;

int main() {
    Rng rng(21);
    SignInstance inst =
        make_mceliece_sign_instance(mceliece_keygen(default_signing_code(), rng));

    double inv = 1.0 / std::sqrt(2.0);
    PureState msg(RegisterLayout{{"m", inst.message_width()}}, {{0, inv}, {3, inv}});

    SignSession session = bob_challenge(inst, rng);
    std::cout << "1. Bob's challenge r_B = " << session.r_b.to_string() << "\n";

    alice_sign(inst, session, msg, rng);
    std::cout << "2. Alice signed; tag width " << inst.tag_width() << ", W(r) = "
              << session.held_r->hamming_weight() << "\n";

    copy_tag_register(session);
    std::cout << "   Bob copies the tag for a second look\n";

    bob_acknowledge(session);
    std::cout << "3. Bob acknowledged receipt\n";

    auto [r, rp] = alice_reveal(session);
    std::cout << "4. Alice revealed r = " << r.to_string() << ", r' = "
              << rp.to_string() << "\n";

    VerifyOutcome first = bob_verify(inst, session, r, rp, rng);
    std::cout << "5. first verification (on the copy): "
              << (first.accepted ? "accepted" : "rejected") << "\n";

    VerifyOutcome second = bob_verify(inst, session, r, rp, rng);
    std::cout << "   second verification (extracts the message): "
              << (second.accepted ? "accepted" : "rejected")
              << ", fidelity = " << fidelity_pure(*second.recovered_message, msg)
              << "\n";

    PureState late_copy = copy_tag_register(session);
    bool tag_gone = true;
    for (const auto& [label, amp] : late_copy.terms())
        tag_gone = tag_gone && late_copy.layout().extract(label, "tag1") == 0;
    std::cout << "   after extraction the copied tag is |0>: "
              << (tag_gone ? "yes - no further verification possible" : "no") << "\n";
    return 0;
}
