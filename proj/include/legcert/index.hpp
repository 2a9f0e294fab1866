// include/legcert/index.hpp — rotation angles and the Conley-Zehnder bound
// for rainbow closures of positive braids.
//
// The capping path of a consecutive chord pair decomposes into three arc
// shapes: the braid-area arc that finishes at the target chord (a quarter
// turn), the exit/kink/rise piece of a trip over the top (-3/4 turn), and
// the apex/descent/re-entry piece (+3/4 turn). Trips contribute the latter
// two in equal numbers, except that a path starting on a kink chord begins
// mid-trip with one extra descent piece. Hence the angle is pi/2 when the
// first chord sits in the braid area and 3*pi/2 when it is a kink, the
// rotation number is 0 or 1, and the Conley-Zehnder index of a word is
// bounded below by its length.

#pragma once

#include "legcert/pushout.hpp"

namespace legcert {

struct RotationData {
    int from = -1, to = -1;   // ordered chord pair
    int theta_half_pi = 0;    // rotation angle in units of pi/2: 1 or 3
    int rot = 0;              // floor(theta / pi): 0 or 1
    int type1_arcs = 0, type2_arcs = 0, type3_arcs = 0;
};

inline RotationData rotation_number(const Diagram& d, int c_from, int c_to) {
    if (!d.rainbow_closure)
        throw Error(Errc::NotBraidClosure, "rotation numbers are defined for rainbow closures");
    if (c_from < 0 || c_from >= d.num_crossings() || c_to < 0 || c_to >= d.num_crossings())
        throw Error(Errc::UnknownCrossing, "chord pair out of range");
    PushOutLoop probe = pushout_loop(d, {c_from, c_to}); // capping path = first stretch
    const Stretch& cap = probe.stretches.front();

    RotationData out;
    out.from = c_from;
    out.to = c_to;
    for (auto [e, fwd] : cap.traversals)
        if (d.edges[e].zone == EdgeZone::ReturnArc) ++out.type3_arcs;
    for (size_t i = 0; i + 1 < cap.traversals.size(); ++i) {
        const EndRef at = d.edges[cap.traversals[i].first].head;
        if (d.crossings[at.crossing].kind == CrossingKind::Kink &&
            at.slot % 2 != d.crossings[at.crossing].over_pair)
            ++out.type2_arcs; // passage through a kink's loop branch
    }
    bool from_braid = d.crossings[c_from].kind == CrossingKind::BraidLetter;
    out.type1_arcs = from_braid ? 1 : 0;
    if (from_braid ? out.type2_arcs != out.type3_arcs : out.type3_arcs != out.type2_arcs + 1)
        throw Error(Errc::NotBraidClosure, "capping path of (" + d.crossings[c_from].label + "," +
                                               d.crossings[c_to].label +
                                               ") has an unexpected arc decomposition");
    out.theta_half_pi = from_braid ? 1 : 3;
    out.rot = out.theta_half_pi / 2;
    return out;
}

// CZ((c1...cn)) = sum_k (rot(c_k, c_{k+1}) + 1) >= n.
inline int cz_index(const Diagram& d, const std::vector<int>& word) {
    if (!d.rainbow_closure)
        throw Error(Errc::NotBraidClosure, "the Conley-Zehnder bound needs a rainbow closure");
    int cz = 0;
    for (size_t k = 0; k < word.size(); ++k)
        cz += rotation_number(d, word[k], word[(k + 1) % word.size()]).rot + 1;
    return cz;
}

// Which candidate monomials the feasibility stage may restrict to.
enum class GeneratorPolicy {
    SingleChord, // rainbow closures: degree-0 orbits come from single chords
    ActionFilter // generic diagrams: only the action estimate filters
};

inline GeneratorPolicy degree_zero_generators(const Diagram& d) {
    return d.rainbow_closure ? GeneratorPolicy::SingleChord : GeneratorPolicy::ActionFilter;
}

inline const char* policy_name(GeneratorPolicy p) {
    return p == GeneratorPolicy::SingleChord ? "single-chord" : "action-filter";
}

} // namespace legcert
