// include/legcert/pushout.hpp — push-out loops of cyclic chord words.
//
// The push-out of a cyclic word c1...cn runs next to the knot, offset to the
// left of its travel direction, and jumps up each chord from its under- to
// its over-endpoint. Positive capping follows the knot orientation from the
// end of one chord to the start of the next; negative capping travels
// against it. Winding numbers around faces only depend on the net number of
// passes along each edge; linking with the knot localizes at crossings (a
// strand copy crosses the transverse strand once per pass-through, and the
// climb at a jump crosses the germs of the under strand between z-levels).

#pragma once

#include <string>
#include <vector>

#include "legcert/diagram.hpp"
#include "legcert/errors.hpp"

namespace legcert {

enum class Capping { Positive, Negative };

struct LoopSegment {
    enum class Kind { ParallelArc, ChordJump };
    Kind kind;
    int edge = -1;        // ParallelArc
    bool forward = true;  // ParallelArc travel direction
    int crossing = -1;    // ChordJump
};

struct Stretch {
    std::vector<std::pair<int, bool>> traversals; // (edge, forward)
};

struct PushOutLoop {
    std::vector<int> word;          // crossing indices, cyclically ordered
    Capping capping = Capping::Positive;
    std::vector<Stretch> stretches; // stretches[k] links word[k] to word[k+1]

    // Cyclic segment view: jump at word[k], then stretch k.
    std::vector<LoopSegment> segments() const {
        std::vector<LoopSegment> out;
        for (size_t k = 0; k < word.size(); ++k) {
            LoopSegment jump;
            jump.kind = LoopSegment::Kind::ChordJump;
            jump.crossing = word[k];
            out.push_back(jump);
            for (auto [e, fwd] : stretches[k].traversals) {
                LoopSegment arc;
                arc.kind = LoopSegment::Kind::ParallelArc;
                arc.edge = e;
                arc.forward = fwd;
                out.push_back(arc);
            }
        }
        return out;
    }
};

inline PushOutLoop pushout_loop(const Diagram& d, const std::vector<int>& word,
                                Capping capping = Capping::Positive) {
    if (word.empty()) throw Error(Errc::UnknownCrossing, "empty chord word");
    for (int c : word)
        if (c < 0 || c >= d.num_crossings())
            throw Error(Errc::UnknownCrossing, "chord index " + std::to_string(c));
    PushOutLoop loop;
    loop.word = word;
    loop.capping = capping;
    const auto& cycle = d.knot_cycle();
    const int n = d.num_edges();
    for (size_t k = 0; k < word.size(); ++k) {
        int from = word[k];
        int to = word[(k + 1) % word.size()];
        Stretch s;
        if (capping == Capping::Positive) {
            int e = d.crossings[from].edge[d.over_out_slot(from)];
            int target = d.crossings[to].edge[d.under_in_slot(to)];
            int pos = d.cycle_position(e);
            while (true) {
                s.traversals.push_back({cycle[pos], true});
                if (cycle[pos] == target) break;
                pos = (pos + 1) % n;
            }
        } else {
            int e = d.crossings[from].edge[d.over_in_slot(from)];
            int target = d.crossings[to].edge[d.under_out_slot(to)];
            int pos = d.cycle_position(e);
            while (true) {
                s.traversals.push_back({cycle[pos], false});
                if (cycle[pos] == target) break;
                pos = (pos + n - 1) % n;
            }
        }
        loop.stretches.push_back(std::move(s));
    }
    return loop;
}

inline std::vector<int> loop_edge_counts(const Diagram& d, const PushOutLoop& loop) {
    std::vector<int> net(d.num_edges(), 0);
    for (const auto& s : loop.stretches)
        for (auto [e, fwd] : s.traversals) net[e] += fwd ? 1 : -1;
    return net;
}

// Winding numbers of the push-out around every face.
inline std::vector<int> loop_winding(const Diagram& d, const PushOutLoop& loop) {
    return d.winding_from_counts(loop_edge_counts(d, loop));
}

// Linking number lk(P, knot), counted over the crossings where P passes
// above the knot.
inline int linking_number(const Diagram& d, const PushOutLoop& loop) {
    int lk = 0;
    // pass-throughs inside stretches
    for (const auto& s : loop.stretches) {
        for (size_t i = 0; i + 1 < s.traversals.size(); ++i) {
            auto [e, fwd] = s.traversals[i];
            const EndRef at = fwd ? d.edges[e].head : d.edges[e].tail;
            int pair = at.slot % 2;
            if (pair == d.crossings[at.crossing].over_pair)
                lk += (fwd ? 1 : -1) * d.crossing_sign(at.crossing);
        }
    }
    // jump connectors: climb from the arrival quadrant (near the under
    // level) to the departure quadrant (near the over level), rotating ccw;
    // each under-strand germ crossed en route is a crossing of P over knot
    for (size_t k = 0; k < loop.word.size(); ++k) {
        int c = loop.word[k];
        int qa, qd;
        if (loop.capping == Capping::Positive) {
            qa = (d.under_in_slot(c) + 3) % 4;
            qd = d.over_out_slot(c);
        } else {
            qa = (d.under_out_slot(c) + 3) % 4;
            qd = d.over_in_slot(c);
        }
        int cur = qa;
        while (cur != qd) {
            int germ = (cur + 1) % 4;
            if (germ % 2 != d.crossings[c].over_pair)
                lk += d.slot_incoming(c, germ) ? 1 : -1;
            cur = (cur + 1) % 4;
        }
    }
    return lk;
}

// --- structural arc predicates --------------------------------------------

// The leftmost complete descending arc of a rainbow closure: the return arc
// of the innermost kink followed by the descending over-passages it feeds,
// including the trailing horizontal edge.
inline std::vector<int> leftmost_descending_arc(const Diagram& d) {
    if (!d.rainbow_closure) throw Error(Errc::NotBraidClosure, "arc predicates need a rainbow closure");
    int kink1 = -1;
    for (int c = 0; c < d.num_crossings(); ++c)
        if (d.crossings[c].kind == CrossingKind::Kink && d.crossings[c].kink_index == 1) kink1 = c;
    int e = d.crossings[kink1].edge[d.over_out_slot(kink1)]; // north, the return arc
    std::vector<int> arc{e};
    while (true) {
        const EndRef at = d.edges[e].head;
        if (d.crossings[at.crossing].kind != CrossingKind::BraidLetter) break;
        if (at.slot != d.over_in_slot(at.crossing)) break;
        e = d.crossings[at.crossing].edge[d.over_out_slot(at.crossing)];
        arc.push_back(e);
    }
    return arc;
}

// All maximal descending chains through the braid area, each including the
// horizontal pieces at both ends. A chain is complete when it runs the full
// height of the braid.
struct DescendingChain {
    std::vector<int> edges;
    int first_row = 0, last_row = 0;
    bool complete(const Diagram& d) const {
        return first_row == 1 && last_row == d.source_braid.strands - 1;
    }
};

inline std::vector<DescendingChain> descending_chains(const Diagram& d) {
    if (!d.rainbow_closure) throw Error(Errc::NotBraidClosure, "arc predicates need a rainbow closure");
    std::vector<DescendingChain> out;
    for (int c = 0; c < d.num_crossings(); ++c) {
        if (d.crossings[c].kind != CrossingKind::BraidLetter) continue;
        int e_in = d.crossings[c].edge[d.over_in_slot(c)];
        // chain starts here iff the edge's tail is not itself a descending exit
        const EndRef tail = d.edges[e_in].tail;
        if (d.crossings[tail.crossing].kind == CrossingKind::BraidLetter &&
            tail.slot == d.over_out_slot(tail.crossing))
            continue;
        DescendingChain chain;
        chain.edges.push_back(e_in);
        chain.first_row = d.crossings[c].braid_row;
        int cur = c;
        while (true) {
            chain.last_row = d.crossings[cur].braid_row;
            int e_out = d.crossings[cur].edge[d.over_out_slot(cur)];
            chain.edges.push_back(e_out);
            const EndRef at = d.edges[e_out].head;
            if (d.crossings[at.crossing].kind != CrossingKind::BraidLetter) break;
            if (at.slot != d.over_in_slot(at.crossing)) break;
            cur = at.crossing;
        }
        out.push_back(std::move(chain));
    }
    return out;
}

// Does some stretch of P traverse `run` consecutively, forward, with no
// chord jump inside?
inline bool loop_contains_run(const PushOutLoop& loop, const std::vector<int>& run) {
    if (run.empty()) return true;
    for (const auto& s : loop.stretches) {
        const auto& tr = s.traversals;
        for (size_t i = 0; i + run.size() <= tr.size(); ++i) {
            bool match = true;
            for (size_t j = 0; j < run.size(); ++j)
                if (!tr[i + j].second || tr[i + j].first != run[j]) {
                    match = false;
                    break;
                }
            if (match) return true;
        }
    }
    return false;
}

inline bool contains_most_interior_long_overhead_arc(const Diagram& d, const PushOutLoop& loop) {
    return loop_contains_run(loop, leftmost_descending_arc(d));
}

inline bool contains_complete_descending_arc(const Diagram& d, const PushOutLoop& loop) {
    for (const auto& chain : descending_chains(d))
        if (chain.complete(d) && loop_contains_run(loop, chain.edges)) return true;
    return false;
}

} // namespace legcert
