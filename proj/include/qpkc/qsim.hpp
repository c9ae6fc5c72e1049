// qsim.hpp -- sparse state-vector simulator over named bit registers.
//
// States are sparse maps from basis labels to complex amplitudes. Every gate
// here except the Hadamard layer permutes basis labels, so term counts only
// grow where a Hadamard is applied. Registers are packed into a 64-bit label
// with the FIRST declared register in the most significant bits, so a label
// printed most-significant-bit-first reads in register declaration order.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qpkc/bitword.hpp"
#include "qpkc/rng.hpp"

namespace qpkc {

using Amplitude = std::complex<double>;

inline constexpr double kAmplitudePrune = 1e-12;
inline constexpr double kNormTolerance = 1e-9;

class RegisterLayout {
public:
    struct Register {
        std::string name;
        int width = 0;
        int shift = 0; // lsb offset within the packed label
    };

    RegisterLayout() = default;

    RegisterLayout(std::initializer_list<std::pair<std::string, int>> regs)
        : RegisterLayout(std::vector<std::pair<std::string, int>>(regs)) {}

    explicit RegisterLayout(const std::vector<std::pair<std::string, int>>& regs) {
        for (const auto& [name, width] : regs) add(name, width);
    }

    int total_width() const { return total_; }
    std::size_t size() const { return regs_.size(); }
    const std::vector<Register>& registers() const { return regs_; }

    bool has(std::string_view name) const {
        for (const auto& r : regs_)
            if (r.name == name) return true;
        return false;
    }

    const Register& reg(std::string_view name) const {
        for (const auto& r : regs_)
            if (r.name == name) return r;
        throw std::invalid_argument("RegisterLayout: unknown register '" +
                                    std::string(name) + "'");
    }

    std::uint64_t extract(std::uint64_t label, const Register& r) const {
        return (label >> r.shift) & BitWord::mask(r.width);
    }

    std::uint64_t extract(std::uint64_t label, std::string_view name) const {
        return extract(label, reg(name));
    }

    BitWord extract_word(std::uint64_t label, std::string_view name) const {
        const Register& r = reg(name);
        return BitWord(r.width, extract(label, r));
    }

    std::uint64_t with_value(std::uint64_t label, const Register& r,
                             std::uint64_t value) const {
        std::uint64_t m = BitWord::mask(r.width) << r.shift;
        return (label & ~m) | ((value << r.shift) & m);
    }

    RegisterLayout appended(const std::string& name, int width) const {
        RegisterLayout out = *this;
        out.add(name, width);
        return out;
    }

    RegisterLayout removed(std::string_view name) const {
        RegisterLayout out;
        bool found = false;
        for (const auto& r : regs_) {
            if (r.name == name) { found = true; continue; }
            out.add(r.name, r.width);
        }
        if (!found) throw std::invalid_argument("RegisterLayout: unknown register");
        return out;
    }

    RegisterLayout renamed(std::string_view from, const std::string& to) const {
        RegisterLayout out;
        bool found = false;
        for (const auto& r : regs_) {
            if (r.name == from) { out.add(to, r.width); found = true; }
            else out.add(r.name, r.width);
        }
        if (!found) throw std::invalid_argument("RegisterLayout: unknown register");
        return out;
    }

    friend bool operator==(const RegisterLayout& a, const RegisterLayout& b) {
        if (a.regs_.size() != b.regs_.size()) return false;
        for (std::size_t i = 0; i < a.regs_.size(); ++i)
            if (a.regs_[i].name != b.regs_[i].name ||
                a.regs_[i].width != b.regs_[i].width)
                return false;
        return true;
    }

private:
    void add(const std::string& name, int width) {
        if (width < 1) throw std::invalid_argument("RegisterLayout: width must be >= 1");
        if (name.empty() || has(name))
            throw std::invalid_argument("RegisterLayout: register names must be unique");
        if (total_ + width > 64)
            throw std::invalid_argument("RegisterLayout: total width exceeds 64");
        // New register takes the lowest bits; existing registers shift up.
        for (auto& r : regs_) r.shift += width;
        regs_.push_back(Register{name, width, 0});
        total_ += width;
    }

    std::vector<Register> regs_;
    int total_ = 0;
};

// Unit-norm sparse superposition over the basis labels of a RegisterLayout.
// Amplitudes below kAmplitudePrune in magnitude are dropped.
class PureState {
public:
    using TermMap = std::map<std::uint64_t, Amplitude>;

    PureState(RegisterLayout layout, TermMap terms)
        : layout_(std::move(layout)), amps_(std::move(terms)) {
        prune();
        double n = norm();
        if (std::abs(n - 1.0) > kNormTolerance)
            throw std::invalid_argument("PureState: norm must be 1");
    }

    static PureState basis(const RegisterLayout& layout,
                           const std::vector<std::pair<std::string, std::uint64_t>>& values) {
        std::uint64_t label = 0;
        for (const auto& [name, v] : values) {
            const auto& r = layout.reg(name);
            if (r.width < 64 && (v >> r.width) != 0)
                throw std::invalid_argument("PureState::basis: value does not fit register");
            label = layout.with_value(label, r, v);
        }
        return PureState(layout, TermMap{{label, Amplitude{1.0, 0.0}}});
    }

    const RegisterLayout& layout() const { return layout_; }
    const TermMap& terms() const { return amps_; }
    std::size_t term_count() const { return amps_.size(); }

    Amplitude amplitude(std::uint64_t label) const {
        auto it = amps_.find(label);
        return it == amps_.end() ? Amplitude{0.0, 0.0} : it->second;
    }

    double norm() const {
        double s = 0;
        for (const auto& [label, a] : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

    // The single basis label of a definite state; throws when in superposition.
    std::uint64_t sole_label() const {
        if (amps_.size() != 1)
            throw std::logic_error("PureState: state is a superposition");
        return amps_.begin()->first;
    }

private:
    void prune() {
        for (auto it = amps_.begin(); it != amps_.end();)
            it = std::abs(it->second) < kAmplitudePrune ? amps_.erase(it) : std::next(it);
    }

    RegisterLayout layout_;
    TermMap amps_;
};

inline Amplitude inner_product(const PureState& a, const PureState& b) {
    if (!(a.layout() == b.layout()))
        throw std::invalid_argument("inner_product: layouts differ");
    Amplitude acc{0.0, 0.0};
    for (const auto& [label, amp] : a.terms())
        acc += std::conj(amp) * b.amplitude(label);
    return acc;
}

inline double fidelity_pure(const PureState& a, const PureState& b) {
    return std::abs(inner_product(a, b));
}

// Classical function lifted by the oracle; receives source register values in
// the order the sources were named.
using OracleFn = std::function<std::uint64_t(std::span<const std::uint64_t>)>;

namespace detail {

struct OracleRefs {
    std::vector<const RegisterLayout::Register*> sources;
    const RegisterLayout::Register* target;
};

inline OracleRefs resolve_oracle(const RegisterLayout& layout,
                                 const std::vector<std::string>& sources,
                                 const std::string& target) {
    OracleRefs refs;
    refs.target = &layout.reg(target);
    for (const auto& s : sources) {
        if (s == target)
            throw std::invalid_argument("oracle: target overlaps a source register");
        refs.sources.push_back(&layout.reg(s));
    }
    return refs;
}

inline std::uint64_t eval_oracle(const RegisterLayout& layout, const OracleRefs& refs,
                                 std::uint64_t label, const OracleFn& fn,
                                 std::vector<std::uint64_t>& scratch) {
    scratch.clear();
    for (const auto* r : refs.sources) scratch.push_back(layout.extract(label, *r));
    std::uint64_t y = fn(scratch);
    if (refs.target->width < 64 && (y >> refs.target->width) != 0)
        throw std::invalid_argument("oracle: function output wider than target register");
    return y;
}

} // namespace detail

// |x>|y> -> |x>|y XOR fn(x)>. A permutation of basis labels: amplitudes carry.
inline PureState apply_xor_oracle(const PureState& s,
                                  const std::vector<std::string>& sources,
                                  const std::string& target, const OracleFn& fn) {
    auto refs = detail::resolve_oracle(s.layout(), sources, target);
    PureState::TermMap out;
    std::vector<std::uint64_t> scratch;
    for (const auto& [label, amp] : s.terms()) {
        std::uint64_t y = detail::eval_oracle(s.layout(), refs, label, fn, scratch);
        std::uint64_t cur = s.layout().extract(label, *refs.target);
        out.emplace(s.layout().with_value(label, *refs.target, cur ^ y), amp);
    }
    return PureState(s.layout(), std::move(out));
}

// Clears a register whose content is, in every term, fn of the sources.
// Throws when the redundancy is violated in any term; that is the signature
// of an irreversible uncomputation attempt (tampered or inconsistent state).
inline PureState apply_uncompute(const PureState& s,
                                 const std::vector<std::string>& sources,
                                 const std::string& target, const OracleFn& fn) {
    auto refs = detail::resolve_oracle(s.layout(), sources, target);
    PureState::TermMap out;
    std::vector<std::uint64_t> scratch;
    for (const auto& [label, amp] : s.terms()) {
        std::uint64_t y = detail::eval_oracle(s.layout(), refs, label, fn, scratch);
        std::uint64_t cur = s.layout().extract(label, *refs.target);
        if (cur != y)
            throw std::runtime_error("apply_uncompute: register is not redundant");
        out.emplace(s.layout().with_value(label, *refs.target, 0), amp);
    }
    return PureState(s.layout(), std::move(out));
}

// XORs a constant word into a register.
inline PureState xor_constant(const PureState& s, const std::string& target,
                              const BitWord& value) {
    const auto& r = s.layout().reg(target);
    if (value.width() != r.width)
        throw std::invalid_argument("xor_constant: width mismatch");
    PureState::TermMap out;
    for (const auto& [label, amp] : s.terms()) {
        std::uint64_t cur = s.layout().extract(label, r);
        out.emplace(s.layout().with_value(label, r, cur ^ value.value()), amp);
    }
    return PureState(s.layout(), std::move(out));
}

// Hadamard on every qubit of the register. Term count may grow by 2^width.
inline PureState apply_hadamard(const PureState& s, const std::string& register_name) {
    const auto& r = s.layout().reg(register_name);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    PureState::TermMap cur = s.terms();
    for (int q = 0; q < r.width; ++q) {
        std::uint64_t bit = std::uint64_t{1} << (r.shift + q);
        PureState::TermMap next;
        for (const auto& [label, amp] : cur) {
            Amplitude c = amp * inv_sqrt2;
            next[label & ~bit] += c;
            next[label | bit] += (label & bit) ? -c : c;
        }
        for (auto it = next.begin(); it != next.end();)
            it = std::abs(it->second) < kAmplitudePrune ? next.erase(it) : std::next(it);
        cur = std::move(next);
    }
    return PureState(s.layout(), std::move(cur));
}

struct MeasureResult {
    BitWord outcome;
    PureState post;
    double probability; // Born probability of the sampled outcome
};

// Projective measurement of one register in the computational basis.
inline MeasureResult measure_register(const PureState& s,
                                      const std::string& register_name, Rng& rng) {
    const auto& r = s.layout().reg(register_name);
    std::map<std::uint64_t, double> marginal;
    for (const auto& [label, amp] : s.terms())
        marginal[s.layout().extract(label, r)] += std::norm(amp);

    double u = rng.real();
    double acc = 0;
    std::uint64_t outcome = marginal.rbegin()->first;
    double prob = marginal.rbegin()->second;
    for (const auto& [value, p] : marginal) {
        acc += p;
        if (u < acc) { outcome = value; prob = p; break; }
    }

    PureState::TermMap collapsed;
    double scale = 1.0 / std::sqrt(prob);
    for (const auto& [label, amp] : s.terms())
        if (s.layout().extract(label, r) == outcome)
            collapsed.emplace(label, amp * scale);
    return MeasureResult{BitWord(r.width, outcome),
                         PureState(s.layout(), std::move(collapsed)), prob};
}

// Measurement that the caller asserts is deterministic (the register is a
// tensor factor in a definite basis state). Throws if any other outcome has
// weight above tolerance.
inline MeasureResult measure_register_deterministic(const PureState& s,
                                                    const std::string& register_name) {
    Rng rng(0);
    MeasureResult res = measure_register(s, register_name, rng);
    if (res.probability < 1.0 - kNormTolerance)
        throw std::runtime_error(
            "measure_register_deterministic: outcome was not deterministic");
    return res;
}

// Appends a fresh |0> register (takes the low bits; existing labels shift up).
inline PureState append_register(const PureState& s, const std::string& name, int width) {
    RegisterLayout layout = s.layout().appended(name, width);
    PureState::TermMap out;
    for (const auto& [label, amp] : s.terms())
        out.emplace(label << width, amp);
    return PureState(std::move(layout), std::move(out));
}

// Removes a register that is |0> in every term.
inline PureState drop_register(const PureState& s, const std::string& name) {
    const auto& r = s.layout().reg(name);
    RegisterLayout layout = s.layout().removed(name);
    PureState::TermMap out;
    std::uint64_t low_mask = (std::uint64_t{1} << r.shift) - 1;
    int high_shift = r.shift + r.width;
    for (const auto& [label, amp] : s.terms()) {
        if (s.layout().extract(label, r) != 0)
            throw std::runtime_error("drop_register: register not cleared");
        std::uint64_t low = label & low_mask;
        std::uint64_t high =
            high_shift >= 64 ? 0 : (label >> high_shift) << r.shift;
        out.emplace(high | low, amp);
    }
    return PureState(std::move(layout), std::move(out));
}

inline PureState rename_register(const PureState& s, std::string_view from,
                                 const std::string& to) {
    return PureState(s.layout().renamed(from, to), PureState::TermMap(s.terms()));
}

// Probability-weighted set of pure cipher states; the receiver's mixed view.
class CipherEnsemble {
public:
    struct Member {
        double probability;
        std::vector<BitWord> randomness;
        PureState state;
    };

    explicit CipherEnsemble(std::vector<Member> members) : members_(std::move(members)) {
        if (members_.empty())
            throw std::invalid_argument("CipherEnsemble: empty");
        double total = 0;
        for (const auto& m : members_) {
            if (m.probability <= 0)
                throw std::invalid_argument("CipherEnsemble: probabilities must be positive");
            if (!(m.state.layout() == members_.front().state.layout()))
                throw std::invalid_argument("CipherEnsemble: members must share a layout");
            total += m.probability;
        }
        if (std::abs(total - 1.0) > kNormTolerance)
            throw std::invalid_argument("CipherEnsemble: probabilities must sum to 1");
    }

    const std::vector<Member>& members() const { return members_; }
    const RegisterLayout& layout() const { return members_.front().state.layout(); }

private:
    std::vector<Member> members_;
};

} // namespace qpkc
