#pragma once
// Exhaustive scan of the arity-2 fragment of the tensor square of the
// level-3 operad over z2. The degree-0 component is spanned by {mu, tau mu}
// in each factor, the degree -1 component by {E11, tau E11}; the linear
// differential sends both E11 and tau E11 to mu + tau mu.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "core.hpp"

namespace hirsch {

/* Element of (H (x) H)(2) over z2 in degree 0 or -1, as a bitmask.
 * Degree 0 basis (bits 0..3): (mu|tau mu) (x) (mu|tau mu), low bit = right
 * factor's tau flag. Degree -1 basis (bits 0..7): bit 2 set means the E
 * sits in the left factor; bits 0..1 are the tau flags (left, right). */
struct OperadElem2 {
    int degree = 0;
    std::uint8_t bits = 0;

    friend bool operator==(const OperadElem2&, const OperadElem2&) = default;
};

namespace arity2 {

constexpr std::uint8_t kDeg0Size = 4;
constexpr std::uint8_t kDeg1Size = 8;

/* Degree -1 basis index from (E in left factor, tau on left, tau on right). */
constexpr std::uint8_t deg1_index(bool e_left, bool tau_l, bool tau_r) {
    return static_cast<std::uint8_t>((e_left ? 4 : 0) | (tau_l ? 2 : 0) | (tau_r ? 1 : 0));
}

constexpr std::uint8_t deg0_index(bool tau_l, bool tau_r) {
    return static_cast<std::uint8_t>((tau_l ? 2 : 0) | (tau_r ? 1 : 0));
}

inline std::string deg1_name(std::uint8_t i) {
    const bool e_left = i & 4, tau_l = i & 2, tau_r = i & 1;
    std::string l = e_left ? (tau_l ? "tE11" : "E11") : (tau_l ? "tmu" : "mu");
    std::string r = e_left ? (tau_r ? "tmu" : "mu") : (tau_r ? "tE11" : "E11");
    return l + "(x)" + r;
}

inline std::string deg0_name(std::uint8_t i) {
    const bool tau_l = i & 2, tau_r = i & 1;
    return std::string(tau_l ? "tmu" : "mu") + "(x)" + (tau_r ? "tmu" : "mu");
}

}  // namespace arity2

inline std::string show(const OperadElem2& x) {
    const std::uint8_t n = x.degree == 0 ? arity2::kDeg0Size : arity2::kDeg1Size;
    std::string out;
    for (std::uint8_t i = 0; i < n; ++i)
        if (x.bits & (1u << i)) {
            if (!out.empty()) out += " + ";
            out += x.degree == 0 ? arity2::deg0_name(i) : arity2::deg1_name(i);
        }
    return out.empty() ? "0" : out;
}

/* d(E11) = d(tau E11) = mu + tau mu applied by the Leibniz rule; degree-0
 * elements are cycles. */
inline OperadElem2 operad2_diff(const OperadElem2& x) {
    if (x.degree == 0) return {1, 0};
    if (x.degree != -1) throw DomainError("arity-2 scan handles degrees 0 and -1 only");
    std::uint8_t out = 0;
    for (std::uint8_t i = 0; i < arity2::kDeg1Size; ++i) {
        if (!(x.bits & (1u << i))) continue;
        const bool e_left = i & 4, tau_l = i & 2, tau_r = i & 1;
        if (e_left) {
            out ^= 1u << arity2::deg0_index(false, tau_r);
            out ^= 1u << arity2::deg0_index(true, tau_r);
        } else {
            out ^= 1u << arity2::deg0_index(tau_l, false);
            out ^= 1u << arity2::deg0_index(tau_l, true);
        }
    }
    return {0, out};
}

/* Precompose both factors with the transposition: tau flags flip everywhere. */
inline OperadElem2 operad2_tau(const OperadElem2& x) {
    std::uint8_t out = 0;
    const std::uint8_t n = x.degree == 0 ? arity2::kDeg0Size : arity2::kDeg1Size;
    for (std::uint8_t i = 0; i < n; ++i)
        if (x.bits & (1u << i)) out ^= 1u << (i ^ 3u);
    return {x.degree, out};
}

/* Swap the two tensor factors. */
inline OperadElem2 operad2_transpose(const OperadElem2& x) {
    std::uint8_t out = 0;
    const std::uint8_t n = x.degree == 0 ? arity2::kDeg0Size : arity2::kDeg1Size;
    for (std::uint8_t i = 0; i < n; ++i) {
        if (!(x.bits & (1u << i))) continue;
        const bool tau_l = i & 2, tau_r = i & 1;
        if (x.degree == 0)
            out ^= 1u << arity2::deg0_index(tau_r, tau_l);
        else
            out ^= 1u << arity2::deg1_index(!(i & 4), tau_r, tau_l);
    }
    return {x.degree, out};
}

/* The two-term homotopy mu (x) E11 + E11 (x) tau mu. */
inline OperadElem2 commutation_homotopy() {
    std::uint8_t bits = 0;
    bits |= 1u << arity2::deg1_index(false, false, false);
    bits |= 1u << arity2::deg1_index(true, false, true);
    return {-1, bits};
}

/* The commutator boundary mu (x) mu + tau mu (x) tau mu. */
inline OperadElem2 commutation_target() {
    std::uint8_t bits = 0;
    bits |= 1u << arity2::deg0_index(false, false);
    bits |= 1u << arity2::deg0_index(true, true);
    return {0, bits};
}

struct Arity2Scan {
    std::vector<OperadElem2> solutions;
    std::vector<OperadElem2> orbit;
    bool homotopy_is_solution = false;
    bool orbit_inside_solutions = false;
    bool solutions_inside_orbit = false;
};

/* All 256 degree -1 candidates against d(h) = mu (x) mu + tau mu (x) tau mu,
 * plus the closure of the two-term homotopy under the two symmetries. */
inline Arity2Scan arity2_scan() {
    Arity2Scan out;
    const OperadElem2 target = commutation_target();
    for (unsigned bits = 0; bits < 256; ++bits) {
        OperadElem2 h{-1, static_cast<std::uint8_t>(bits)};
        if (operad2_diff(h) == target) out.solutions.push_back(h);
    }

    const OperadElem2 h0 = commutation_homotopy();
    std::vector<OperadElem2> orbit{h0};
    for (std::size_t i = 0; i < orbit.size(); ++i)
        for (OperadElem2 next : {operad2_tau(orbit[i]), operad2_transpose(orbit[i])}) {
            bool known = false;
            for (const auto& o : orbit) known = known || o == next;
            if (!known) orbit.push_back(next);
        }
    out.orbit = std::move(orbit);

    auto contains = [](const std::vector<OperadElem2>& v, const OperadElem2& x) {
        for (const auto& e : v)
            if (e == x) return true;
        return false;
    };
    out.homotopy_is_solution = contains(out.solutions, h0);
    out.orbit_inside_solutions = true;
    for (const auto& o : out.orbit)
        out.orbit_inside_solutions = out.orbit_inside_solutions && contains(out.solutions, o);
    out.solutions_inside_orbit = true;
    for (const auto& s : out.solutions)
        out.solutions_inside_orbit = out.solutions_inside_orbit && contains(out.orbit, s);
    return out;
}

}  // namespace hirsch
