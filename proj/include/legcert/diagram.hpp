// include/legcert/diagram.hpp — Lagrangian projections as combinatorial maps.
//
// A diagram is a connected 4-valent planar map with a rotation system
// (4 edge-ends per crossing in counterclockwise slot order), an over/under
// decoration per crossing, and edge directions carrying the knot
// orientation. Faces, winding numbers, crossing signs and corner data are
// all derived from this structure; no coordinates are stored in the map.
//
// Slot conventions used by the rainbow-closure builder:
//   braid crossing: slot 0=NE, 1=NW, 2=SW, 3=SE (diagonal strands)
//   kink crossing:  slot 0=E,  1=N,  2=W,  3=S  (axis strands)
// Strands join opposite slots; the over strand is one of the two pairs.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "legcert/braid.hpp"
#include "legcert/errors.hpp"

namespace legcert {

struct EndRef {
    int crossing = -1;
    int slot = -1;
    friend bool operator==(const EndRef&, const EndRef&) = default;
};

enum class EdgeZone { Generic, BraidRun, ExitStub, Teardrop, ReturnArc };

struct DiagEdge {
    std::string id;
    EndRef tail, head; // directed tail -> head along the knot orientation
    EdgeZone zone = EdgeZone::Generic;
};

enum class CrossingKind { Generic, BraidLetter, Kink };

struct DiagCrossing {
    std::string label;
    std::array<int, 4> edge{-1, -1, -1, -1};  // edge index per slot, ccw
    std::array<bool, 4> is_head{};            // true if that edge arrives here
    int over_pair = 0;                        // 0 -> slots {0,2}, 1 -> slots {1,3}
    CrossingKind kind = CrossingKind::Generic;
    int braid_row = 0, braid_col = 0;  // BraidLetter: generator row, occurrence
    int kink_index = 0;                // Kink: 1..p
};

struct Face {
    std::vector<int> sides;      // side = 2*edge + (0 forward | 1 backward)
    std::string label;
    bool unbounded = false;
};

using GridPt = std::pair<long long, long long>;

// Integer-grid geometry synthesised for rainbow closures; used by the SVG
// renderer and by the coordinate-realization oracles in the tests.
struct Layout {
    std::vector<std::vector<GridPt>> edge_polyline; // per edge, tail germ -> head germ
    std::vector<GridPt> crossing_center;
    // strand segments through each crossing: over_from, over_to, under_from, under_to
    std::vector<std::array<GridPt, 4>> crossing_strand;
    std::vector<GridPt> face_rep; // representative interior point per face
};

inline int side_of(int edge, bool forward) { return 2 * edge + (forward ? 0 : 1); }

class Diagram {
public:
    std::vector<DiagCrossing> crossings;
    std::vector<DiagEdge> edges;
    std::vector<Face> faces;
    int unbounded_face = -1;
    bool rainbow_closure = false;
    BraidWord source_braid;                  // valid iff rainbow_closure
    std::vector<int> first_row_faces;        // block-word aliases R1..RK, in order

    int num_crossings() const { return static_cast<int>(crossings.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }
    int num_faces() const { return static_cast<int>(faces.size()); }

    // --- slot-level queries -------------------------------------------------

    bool slot_incoming(int c, int slot) const { return crossings[c].is_head[slot]; }

    int in_slot(int c, int pair) const { return slot_incoming(c, pair) ? pair : pair + 2; }
    int out_slot(int c, int pair) const { return slot_incoming(c, pair) ? pair + 2 : pair; }
    int over_in_slot(int c) const { return in_slot(c, crossings[c].over_pair); }
    int over_out_slot(int c) const { return out_slot(c, crossings[c].over_pair); }
    int under_in_slot(int c) const { return in_slot(c, 1 - crossings[c].over_pair); }
    int under_out_slot(int c) const { return out_slot(c, 1 - crossings[c].over_pair); }

    int crossing_sign(int c) const {
        int o = over_out_slot(c), u = under_out_slot(c);
        if (u == (o + 1) % 4) return 1;
        if (u == (o + 3) % 4) return -1;
        throw Error(Errc::ParseError,
                    "crossing " + crossings[c].label + " has inconsistent strand directions");
    }

    int writhe() const {
        int s = 0;
        for (int c = 0; c < num_crossings(); ++c) s += crossing_sign(c);
        return s;
    }
    int tb() const { return writhe(); }

    // --- faces ---------------------------------------------------------------

    int face_of_side(int side) const { return side_face_[side]; }
    int face_left(int edge) const { return side_face_[side_of(edge, true)]; }
    int face_right(int edge) const { return side_face_[side_of(edge, false)]; }

    // Face occupying quadrant q of crossing c (the sector between slot q and
    // slot q+1 in ccw order).
    int quadrant_face(int c, int q) const {
        int e = crossings[c].edge[q];
        bool departs_forward = !crossings[c].is_head[q];
        return side_face_[side_of(e, departs_forward)];
    }

    // Corner sign: +1 when the ccw boundary of the quadrant's face jumps from
    // the under- to the over-strand here (a positive puncture), -1 otherwise.
    int corner_eta(int c, int q) const {
        return (q % 2) == crossings[c].over_pair ? 1 : -1;
    }

    struct Corner {
        int crossing, quadrant;
    };

    // Corners of a face in boundary order.
    std::vector<Corner> face_corners(int f) const {
        std::vector<Corner> out;
        for (int side : faces[f].sides) {
            int e = side / 2;
            bool fwd = (side % 2 == 0);
            const EndRef& at = fwd ? edges[e].head : edges[e].tail;
            out.push_back({at.crossing, (at.slot + 3) % 4});
        }
        return out;
    }

    int face_index(const std::string& label) const {
        for (int f = 0; f < num_faces(); ++f)
            if (faces[f].label == label) return f;
        throw Error(Errc::ParseError, "no face labeled '" + label + "'");
    }
    int crossing_index(const std::string& label) const {
        for (int c = 0; c < num_crossings(); ++c)
            if (crossings[c].label == label) return c;
        throw Error(Errc::UnknownCrossing, "'" + label + "'");
    }
    std::vector<int> bounded_faces() const {
        std::vector<int> out;
        for (int f = 0; f < num_faces(); ++f)
            if (f != unbounded_face) out.push_back(f);
        return out;
    }

    // --- knot traversal ------------------------------------------------------

    const std::vector<int>& knot_cycle() const { return knot_cycle_; }
    int cycle_position(int edge) const { return cycle_pos_[edge]; }

    // --- winding numbers ------------------------------------------------------

    // Winding numbers of a closed curve with net edge-traversal counts `net`
    // (+1 per forward pass of the corridor along each edge) around every
    // face. The knot's own winding map is winding_from_counts(all ones).
    std::vector<int> winding_from_counts(const std::vector<int>& net) const {
        std::vector<int> wind(num_faces(), 0);
        std::vector<char> done(num_faces(), 0);
        std::vector<int> queue{unbounded_face};
        done[unbounded_face] = 1;
        while (!queue.empty()) {
            int f = queue.back();
            queue.pop_back();
            for (int e = 0; e < num_edges(); ++e) {
                int L = face_left(e), R = face_right(e);
                if (L == f && !done[R]) {
                    wind[R] = wind[f] - net[e];
                    done[R] = 1;
                    queue.push_back(R);
                } else if (R == f && !done[L]) {
                    wind[L] = wind[f] + net[e];
                    done[L] = 1;
                    queue.push_back(L);
                }
            }
        }
        for (int e = 0; e < num_edges(); ++e)
            if (wind[face_left(e)] - wind[face_right(e)] != net[e])
                throw Error(Errc::InconsistentWinding,
                            "edge " + edges[e].id + " disagrees with face propagation");
        return wind;
    }

    std::vector<int> winding_numbers() const {
        return winding_from_counts(std::vector<int>(num_edges(), 1));
    }

    // --- construction ---------------------------------------------------------

    // Derives faces, validates planarity and knot-ness, fixes the unbounded
    // face from the given edge-side.
    void finalize(int unbounded_side) {
        validate_slots();
        trace_faces();
        if (num_faces() != num_crossings() + 2)
            throw Error(Errc::EulerViolation,
                        std::to_string(num_faces()) + " faces on " + std::to_string(num_crossings()) +
                            " crossings (rotation system is not planar)");
        trace_knot();
        unbounded_face = side_face_[unbounded_side];
        faces[unbounded_face].unbounded = true;
        winding_numbers(); // propagation consistency check
    }

    // Deterministic names for any faces the input left unlabeled.
    void fill_missing_face_labels() {
        int next = 1;
        for (auto& f : faces) {
            if (!f.label.empty()) continue;
            std::string candidate;
            do {
                candidate = "F" + std::to_string(next++);
            } while (has_face_label(candidate));
            f.label = candidate;
        }
    }

    bool has_face_label(const std::string& label) const {
        for (const auto& f : faces)
            if (f.label == label) return true;
        return false;
    }

private:
    std::vector<int> side_face_;
    std::vector<int> knot_cycle_;
    std::vector<int> cycle_pos_;

    void validate_slots() {
        std::vector<std::array<int, 2>> seen(num_edges(), {0, 0});
        for (int c = 0; c < num_crossings(); ++c) {
            for (int s = 0; s < 4; ++s) {
                int e = crossings[c].edge[s];
                if (e < 0 || e >= num_edges())
                    throw Error(Errc::ParseError, "crossing " + crossings[c].label + " slot unfilled");
                const EndRef end = crossings[c].is_head[s] ? edges[e].head : edges[e].tail;
                if (!(end == EndRef{c, s}))
                    throw Error(Errc::ParseError, "edge " + edges[e].id + " and crossing " +
                                                      crossings[c].label + " disagree about attachment");
                seen[e][crossings[c].is_head[s] ? 1 : 0]++;
            }
            for (int pair = 0; pair < 2; ++pair)
                if (crossings[c].is_head[pair] == crossings[c].is_head[pair + 2])
                    throw Error(Errc::ParseError,
                                "strand through " + crossings[c].label + " lacks a coherent direction");
        }
        for (int e = 0; e < num_edges(); ++e)
            if (seen[e][0] != 1 || seen[e][1] != 1)
                throw Error(Errc::ParseError, "edge " + edges[e].id + " is not attached exactly twice");
    }

    void trace_faces() {
        faces.clear();
        side_face_.assign(2 * num_edges(), -1);
        for (int start = 0; start < 2 * num_edges(); ++start) {
            if (side_face_[start] >= 0) continue;
            Face face;
            int side = start;
            do {
                side_face_[side] = static_cast<int>(faces.size());
                face.sides.push_back(side);
                int e = side / 2;
                bool fwd = (side % 2 == 0);
                const EndRef& at = fwd ? edges[e].head : edges[e].tail;
                int depart = (at.slot + 3) % 4;
                int f = crossings[at.crossing].edge[depart];
                bool next_forward = !crossings[at.crossing].is_head[depart];
                side = side_of(f, next_forward);
            } while (side != start);
            faces.push_back(std::move(face));
        }
    }

    void trace_knot() {
        knot_cycle_.clear();
        cycle_pos_.assign(num_edges(), -1);
        int e = 0;
        do {
            if (cycle_pos_[e] >= 0)
                throw Error(Errc::MultiComponent, "knot traversal revisits edge " + edges[e].id);
            cycle_pos_[e] = static_cast<int>(knot_cycle_.size());
            knot_cycle_.push_back(e);
            const EndRef& at = edges[e].head;
            int exit = (at.slot + 2) % 4;
            if (crossings[at.crossing].is_head[exit])
                throw Error(Errc::ParseError,
                            "orientation reverses inside crossing " + crossings[at.crossing].label);
            e = crossings[at.crossing].edge[exit];
        } while (e != 0);
        if (static_cast<int>(knot_cycle_.size()) != num_edges())
            throw Error(Errc::MultiComponent,
                        "diagram splits into several components (" +
                            std::to_string(knot_cycle_.size()) + " of " +
                            std::to_string(num_edges()) + " edges in one loop)");
    }
};

// ---------------------------------------------------------------------------
// Rainbow closure builder
// ---------------------------------------------------------------------------

// Lagrangian projection of the Legendrian rainbow closure of a positive
// braid: w crossings from the braid letters plus one kink per strand. Braid
// crossings carry sign +1 (the over strand descends) and kinks sign -1, so
// the writhe equals w - p = tb.
//
// Labels follow the usual region/crossing markings of these projections:
// braid crossings r{i},{j} (generator row i, j-th occurrence), kinks
// alpha1..alphap, kink disks B1..Bp, the regions on the other side A1..Ap,
// braid-strip faces R{i},{j}. For words in staircase block form the
// first-row faces additionally populate first_row_faces (aliases R1..RK).
inline Diagram rainbow_closure_diagram(const BraidWord& braid, Layout* layout_out = nullptr) {
    const int p = braid.strands;
    const int w = braid.length();
    if (p > 1 && closure_components(braid) != 1)
        throw Error(Errc::NotAKnot, "closure is a link");

    Diagram d;
    d.rainbow_closure = true;
    d.source_braid = braid;

    Layout layout;
    auto y_level = [&](int lvl) -> long long { return 4LL * (p - lvl + 1); };

    // crossings 0..w-1: braid letters; w..w+p-1: kinks
    std::vector<int> occurrence(p, 0);
    for (int t = 0; t < w; ++t) {
        DiagCrossing c;
        c.kind = CrossingKind::BraidLetter;
        c.braid_row = braid.letters[t];
        c.braid_col = ++occurrence[braid.letters[t] - 1];
        c.over_pair = 1; // descending NW-SE strand is over
        c.label = "r" + std::to_string(c.braid_row) + "," + std::to_string(c.braid_col);
        d.crossings.push_back(c);
    }
    for (int l = 1; l <= p; ++l) {
        DiagCrossing c;
        c.kind = CrossingKind::Kink;
        c.kink_index = l;
        c.over_pair = 1; // the post-loop N-S rise is over
        c.label = "alpha" + std::to_string(l);
        d.crossings.push_back(c);
    }
    layout.crossing_center.resize(d.crossings.size());
    layout.crossing_strand.resize(d.crossings.size());
    for (int t = 0; t < w; ++t)
        layout.crossing_center[t] = {4LL * (t + 1), y_level(braid.letters[t]) - 2};
    for (int l = 1; l <= p; ++l)
        layout.crossing_center[w + l - 1] = {4LL * w + 4LL * l, y_level(l)};

    auto attach = [&](int cr, int slot, int edge, bool head) {
        d.crossings[cr].edge[slot] = edge;
        d.crossings[cr].is_head[slot] = head;
    };
    auto add_edge = [&](EndRef tail, EndRef head, EdgeZone zone, std::vector<GridPt> poly) {
        int idx = d.num_edges();
        d.edges.push_back({"e" + std::to_string(idx + 1), tail, head, zone});
        attach(tail.crossing, tail.slot, idx, false);
        attach(head.crossing, head.slot, idx, true);
        layout.edge_polyline.push_back(std::move(poly));
        return idx;
    };

    auto braid_germ = [&](int t, int slot) -> GridPt {
        auto [x, ymid] = layout.crossing_center[t];
        switch (slot) {
            case 0: return {x + 2, ymid + 2};  // NE
            case 1: return {x - 2, ymid + 2};  // NW
            case 2: return {x - 2, ymid - 2};  // SW
            default: return {x + 2, ymid - 2}; // SE
        }
    };
    auto kink_germ = [&](int k, int slot) -> GridPt {
        auto [x, y] = layout.crossing_center[k];
        switch (slot) {
            case 0: return {x + 2, y};  // E
            case 1: return {x, y + 2};  // N
            case 2: return {x - 2, y};  // W
            default: return {x, y - 2}; // S
        }
    };

    std::vector<EndRef> last_out(p + 1);
    std::vector<GridPt> last_pt(p + 1);
    std::vector<std::vector<GridPt>> return_poly(p + 1);
    std::vector<bool> pending_return(p + 1, true);

    // Each strand is seeded at its kink: alpha_l exits north, rises beside
    // the other risers, runs over the top and comes back down into the braid
    // from the left.
    for (int l = 1; l <= p; ++l) {
        int k = w + l - 1;
        last_out[l] = {k, 1};
        auto [kx, ky] = layout.crossing_center[k];
        return_poly[l] = {{kx, ky + 2},
                          {kx, 4LL * p + 4LL * l},
                          {-4LL * l, 4LL * p + 4LL * l},
                          {-4LL * l, y_level(l)}};
        last_pt[l] = {-4LL * l, y_level(l)};
    }

    auto connect_to = [&](int level, EndRef head, GridPt head_pt) {
        if (pending_return[level]) {
            auto poly = return_poly[level];
            poly.push_back(head_pt);
            add_edge(last_out[level], head, EdgeZone::ReturnArc, std::move(poly));
            pending_return[level] = false;
        } else {
            add_edge(last_out[level], head, EdgeZone::BraidRun, {last_pt[level], head_pt});
        }
    };

    for (int t = 0; t < w; ++t) {
        int row = braid.letters[t];
        connect_to(row, {t, 1}, braid_germ(t, 1));     // upper-left in, NW
        connect_to(row + 1, {t, 2}, braid_germ(t, 2)); // lower-left in, SW
        last_out[row] = {t, 0};                        // ascender exits NE
        last_pt[row] = braid_germ(t, 0);
        last_out[row + 1] = {t, 3};                    // descender exits SE
        last_pt[row + 1] = braid_germ(t, 3);
    }
    int outer_teardrop_edge = -1;
    for (int l = 1; l <= p; ++l) {
        int k = w + l - 1;
        if (pending_return[l]) {
            auto poly = return_poly[l];
            poly.push_back(kink_germ(k, 2));
            add_edge(last_out[l], {k, 2}, EdgeZone::ReturnArc, std::move(poly));
            pending_return[l] = false;
        } else {
            add_edge(last_out[l], {k, 2}, EdgeZone::ExitStub, {last_pt[l], kink_germ(k, 2)});
        }
        auto [kx, ky] = layout.crossing_center[k];
        int td = add_edge({k, 0}, {k, 3}, EdgeZone::Teardrop,
                          {{kx + 2, ky}, {kx + 3, ky}, {kx + 3, ky - 3}, {kx, ky - 3}, {kx, ky - 2}});
        if (l == p) outer_teardrop_edge = td;
    }

    for (int t = 0; t < w; ++t)
        layout.crossing_strand[t] = {braid_germ(t, 1), braid_germ(t, 3),
                                     braid_germ(t, 2), braid_germ(t, 0)};
    for (int l = 1; l <= p; ++l) {
        int k = w + l - 1;
        layout.crossing_strand[k] = {kink_germ(k, 3), kink_germ(k, 1),
                                     kink_germ(k, 2), kink_germ(k, 0)};
    }

    // The NE quadrant of the outermost kink lies in the unbounded region;
    // that quadrant is the left side of its teardrop edge at departure.
    d.finalize(side_of(outer_teardrop_edge, true));

    // face labels
    for (int l = 1; l <= p; ++l) {
        int k = w + l - 1;
        d.faces[d.quadrant_face(k, 3)].label = "B" + std::to_string(l);
        d.faces[d.quadrant_face(k, 1)].label = "A" + std::to_string(l);
    }
    for (int t = 0; t < w; ++t) {
        const auto& c = d.crossings[t];
        if (c.braid_col >= occurrence[c.braid_row - 1]) continue; // last in its row
        int f = d.quadrant_face(t, 3); // east quadrant
        if (d.faces[f].label.empty())
            d.faces[f].label = "R" + std::to_string(c.braid_row) + "," + std::to_string(c.braid_col);
    }

    // First-row aliases for staircase block words
    // (s1...s_{p-1})^{q1} (s_{a2}...s_{p-1})^{q2} ... with a1 = 1.
    {
        std::vector<std::pair<int, int>> blocks; // (start generator, repetitions)
        size_t pos = 0;
        bool staircase = (p >= 2);
        while (staircase && pos < braid.letters.size()) {
            int a = braid.letters[pos];
            size_t q = 0;
            while (pos < braid.letters.size() && braid.letters[pos] == a) {
                size_t col = pos;
                for (int g = a; g <= p - 1; ++g, ++col)
                    if (col >= braid.letters.size() || braid.letters[col] != g) {
                        staircase = false;
                        break;
                    }
                if (!staircase) break;
                pos = col;
                ++q;
            }
            if (staircase && q > 0) blocks.push_back({a, static_cast<int>(q)});
        }
        if (staircase && !blocks.empty() && blocks[0].first == 1) {
            std::vector<int> letter_index_of_block_col; // first letter of each column
            size_t idx = 0;
            for (size_t b = 0; b < blocks.size(); ++b) {
                auto [a, q] = blocks[b];
                for (int j = 1; j <= q; ++j) {
                    int top_crossing = static_cast<int>(idx); // the column's top letter
                    if (b > 0 && j == 1)
                        d.first_row_faces.push_back(d.quadrant_face(top_crossing, 1)); // west
                    if (j < q)
                        d.first_row_faces.push_back(d.quadrant_face(top_crossing, 3)); // east
                    idx += static_cast<size_t>(p - a);
                }
            }
        }
    }
    d.fill_missing_face_labels();

    layout.face_rep.resize(d.num_faces());
    for (int f = 0; f < d.num_faces(); ++f) {
        auto corner = d.face_corners(f).front();
        auto [cx, cy] = layout.crossing_center[corner.crossing];
        static const int braid_dir[4][2] = {{0, 1}, {-1, 0}, {0, -1}, {1, 0}};
        static const int kink_dir[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
        const int(*dir)[2] =
            d.crossings[corner.crossing].kind == CrossingKind::Kink ? kink_dir : braid_dir;
        layout.face_rep[f] = {cx + dir[corner.quadrant][0], cy + dir[corner.quadrant][1]};
    }
    if (layout_out) *layout_out = std::move(layout);
    return d;
}

// ---------------------------------------------------------------------------
// RSFT disks
// ---------------------------------------------------------------------------

struct RsftDisk {
    int face = -1;
    std::vector<int> chord_word; // crossing indices in boundary order
};

// Bounded faces all of whose corners are positive punctures. Each covers its
// complementary region once and forces a +-1 constant term in the surgered
// differential of the orbit spelled by its boundary chords.
inline std::vector<RsftDisk> rsft_disks(const Diagram& d) {
    std::vector<RsftDisk> out;
    for (int f : d.bounded_faces()) {
        bool all_positive = true;
        std::vector<int> word;
        for (const auto& corner : d.face_corners(f)) {
            if (d.corner_eta(corner.crossing, corner.quadrant) != 1) {
                all_positive = false;
                break;
            }
            word.push_back(corner.crossing);
        }
        if (all_positive) out.push_back({f, std::move(word)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Interchange format
// ---------------------------------------------------------------------------
//
//   crossing <id> ends=<e.f|e.t,...x4 ccw> over=<end,end> sign=<+1|-1> [label=<name>]
//   edge <id> from=<crossing>.<slot 1..4> to=<crossing>.<slot>
//   unbounded <edge>.<L|R>
//   facelabel <edge>.<L|R> <name>
//
// The JSON mirror carries the same fields. Crossing `ends` and edge
// endpoints describe the same attachments twice and are cross-checked.

namespace detail {

struct SideTok {
    std::string edge;
    bool left;
};

inline SideTok parse_side_token(const std::string& tok) {
    auto dot = tok.rfind('.');
    if (dot == std::string::npos || dot + 2 != tok.size() || (tok[dot + 1] != 'L' && tok[dot + 1] != 'R'))
        throw Error(Errc::ParseError, "bad edge-side '" + tok + "' (want <edge>.L or <edge>.R)");
    return {tok.substr(0, dot), tok[dot + 1] == 'L'};
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else
            cur.push_back(ch);
    }
    out.push_back(cur);
    return out;
}

} // namespace detail

struct DiagramText {
    struct CrossingLine {
        std::string id;
        std::vector<std::string> ends; // e.f / e.t tokens
        std::vector<std::string> over;
        int sign = 0;
        std::string label;
    };
    struct EdgeLine {
        std::string id;
        std::string from, to; // crossing.slot (1-based)
    };
    std::vector<CrossingLine> crossings;
    std::vector<EdgeLine> edges;
    std::string unbounded;
    std::vector<std::pair<std::string, std::string>> facelabels;
};

inline Diagram assemble_diagram(const DiagramText& in) {
    Diagram d;
    std::map<std::string, int> cid, eid;
    for (const auto& c : in.crossings) {
        if (cid.count(c.id)) throw Error(Errc::ParseError, "duplicate crossing '" + c.id + "'");
        cid[c.id] = d.num_crossings();
        DiagCrossing cr;
        cr.label = c.label.empty() ? c.id : c.label;
        d.crossings.push_back(cr);
    }
    for (const auto& e : in.edges) {
        if (eid.count(e.id)) throw Error(Errc::ParseError, "duplicate edge '" + e.id + "'");
        eid[e.id] = d.num_edges();
        d.edges.push_back({e.id, {}, {}, EdgeZone::Generic});
    }
    auto parse_endref = [&](const std::string& tok) -> EndRef {
        auto dot = tok.rfind('.');
        if (dot == std::string::npos) throw Error(Errc::ParseError, "bad end '" + tok + "'");
        auto c = cid.find(tok.substr(0, dot));
        if (c == cid.end()) throw Error(Errc::ParseError, "unknown crossing in '" + tok + "'");
        int slot = std::atoi(tok.c_str() + dot + 1);
        if (slot < 1 || slot > 4) throw Error(Errc::ParseError, "slot out of range in '" + tok + "'");
        return {c->second, slot - 1};
    };
    for (const auto& e : in.edges) {
        d.edges[eid[e.id]].tail = parse_endref(e.from);
        d.edges[eid[e.id]].head = parse_endref(e.to);
    }
    for (const auto& c : in.crossings) {
        if (c.ends.size() != 4)
            throw Error(Errc::EulerViolation, "crossing '" + c.id + "' has " +
                                                  std::to_string(c.ends.size()) + " ends; need 4-valent");
        DiagCrossing& cr = d.crossings[cid[c.id]];
        for (int s = 0; s < 4; ++s) {
            const std::string& tok = c.ends[s];
            auto dot = tok.rfind('.');
            if (dot == std::string::npos || dot + 2 != tok.size() ||
                (tok[dot + 1] != 'f' && tok[dot + 1] != 't'))
                throw Error(Errc::ParseError, "bad end token '" + tok + "' (want <edge>.f|.t)");
            auto e = eid.find(tok.substr(0, dot));
            if (e == eid.end()) throw Error(Errc::ParseError, "unknown edge in '" + tok + "'");
            cr.edge[s] = e->second;
            cr.is_head[s] = (tok[dot + 1] == 't');
        }
        if (c.over.size() != 2)
            throw Error(Errc::ParseError, "crossing '" + c.id + "' needs exactly two over ends");
        int over_slot = -1;
        for (int s = 0; s < 4; ++s) {
            std::string tok = c.ends[s];
            if (tok == c.over[0] || tok == c.over[1]) {
                if (over_slot >= 0 && (s % 2) != (over_slot % 2))
                    throw Error(Errc::ParseError,
                                "over ends of '" + c.id + "' are not an opposite slot pair");
                over_slot = s;
            }
        }
        if (over_slot < 0)
            throw Error(Errc::ParseError, "over ends of '" + c.id + "' not among its ends");
        cr.over_pair = over_slot % 2;
    }
    if (in.unbounded.empty())
        throw Error(Errc::UnlabeledUnboundedFace, "missing 'unbounded' marker");
    auto ub = detail::parse_side_token(in.unbounded);
    auto ue = eid.find(ub.edge);
    if (ue == eid.end()) throw Error(Errc::ParseError, "unknown edge in unbounded marker");
    d.finalize(side_of(ue->second, ub.left));
    for (const auto& [side_tok, name] : in.facelabels) {
        auto st = detail::parse_side_token(side_tok);
        auto e = eid.find(st.edge);
        if (e == eid.end()) throw Error(Errc::ParseError, "unknown edge in facelabel " + side_tok);
        Face& f = d.faces[d.face_of_side(side_of(e->second, st.left))];
        if (!f.label.empty() && f.label != name)
            throw Error(Errc::ParseError, "face labeled twice: '" + f.label + "' vs '" + name + "'");
        f.label = name;
    }
    for (const auto& c : in.crossings) {
        int idx = cid[c.id];
        if (c.sign != 0 && c.sign != d.crossing_sign(idx))
            throw Error(Errc::ParseError, "declared sign of '" + c.id +
                                              "' contradicts rotation and orientation");
    }
    d.fill_missing_face_labels();
    return d;
}

inline Diagram load_diagram_text(const std::string& text) {
    DiagramText out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw) || kw[0] == '#') continue;
        auto fail = [&](const std::string& msg) -> Error {
            return Error(Errc::ParseError, "line " + std::to_string(lineno) + ": " + msg);
        };
        if (kw == "crossing") {
            DiagramText::CrossingLine c;
            if (!(ls >> c.id)) throw fail("crossing id missing");
            std::string kv;
            while (ls >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw fail("expected key=value, got '" + kv + "'");
                std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
                if (key == "ends") c.ends = detail::split(val, ',');
                else if (key == "over") c.over = detail::split(val, ',');
                else if (key == "sign") c.sign = std::atoi(val.c_str());
                else if (key == "label") c.label = val;
                else throw fail("unknown crossing key '" + key + "'");
            }
            out.crossings.push_back(std::move(c));
        } else if (kw == "edge") {
            DiagramText::EdgeLine e;
            if (!(ls >> e.id)) throw fail("edge id missing");
            std::string kv;
            while (ls >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw fail("expected key=value, got '" + kv + "'");
                std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
                if (key == "from") e.from = val;
                else if (key == "to") e.to = val;
                else throw fail("unknown edge key '" + key + "'");
            }
            out.edges.push_back(std::move(e));
        } else if (kw == "unbounded") {
            if (!(ls >> out.unbounded)) throw fail("unbounded marker missing edge-side");
        } else if (kw == "facelabel") {
            std::string side, name;
            if (!(ls >> side >> name)) throw fail("facelabel wants <edge-side> <name>");
            out.facelabels.push_back({side, name});
        } else {
            throw fail("unknown directive '" + kw + "'");
        }
    }
    return assemble_diagram(out);
}

inline Diagram load_diagram_json(const nlohmann::json& j) {
    DiagramText out;
    try {
        for (const auto& c : j.at("crossings")) {
            DiagramText::CrossingLine cl;
            cl.id = c.at("id").get<std::string>();
            for (const auto& e : c.at("ends")) cl.ends.push_back(e.get<std::string>());
            for (const auto& e : c.at("over")) cl.over.push_back(e.get<std::string>());
            cl.sign = c.value("sign", 0);
            cl.label = c.value("label", std::string());
            out.crossings.push_back(std::move(cl));
        }
        for (const auto& e : j.at("edges"))
            out.edges.push_back({e.at("id").get<std::string>(), e.at("from").get<std::string>(),
                                 e.at("to").get<std::string>()});
        out.unbounded = j.value("unbounded", std::string());
        if (j.contains("facelabels"))
            for (const auto& [k, v] : j.at("facelabels").items())
                out.facelabels.push_back({k, v.get<std::string>()});
    } catch (const nlohmann::json::exception& ex) {
        throw Error(Errc::ParseError, std::string("diagram json: ") + ex.what());
    }
    return assemble_diagram(out);
}

// Text or JSON, sniffed on the first non-space byte.
inline Diagram load_diagram(const std::string& text) {
    for (char ch : text) {
        if (ch == ' ' || ch == '\n' || ch == '\t' || ch == '\r') continue;
        if (ch == '{') return load_diagram_json(nlohmann::json::parse(text, nullptr, true, true));
        break;
    }
    return load_diagram_text(text);
}

inline nlohmann::json diagram_to_json(const Diagram& d) {
    nlohmann::json j;
    j["crossings"] = nlohmann::json::array();
    j["edges"] = nlohmann::json::array();
    auto end_token = [&](int c, int s) {
        return d.edges[d.crossings[c].edge[s]].id + (d.crossings[c].is_head[s] ? ".t" : ".f");
    };
    for (int c = 0; c < d.num_crossings(); ++c) {
        nlohmann::json jc;
        jc["id"] = d.crossings[c].label;
        jc["ends"] = {end_token(c, 0), end_token(c, 1), end_token(c, 2), end_token(c, 3)};
        int op = d.crossings[c].over_pair;
        jc["over"] = {end_token(c, op), end_token(c, op + 2)};
        jc["sign"] = d.crossing_sign(c);
        jc["label"] = d.crossings[c].label;
        j["crossings"].push_back(jc);
    }
    for (const auto& e : d.edges) {
        nlohmann::json je;
        je["id"] = e.id;
        je["from"] = d.crossings[e.tail.crossing].label + "." + std::to_string(e.tail.slot + 1);
        je["to"] = d.crossings[e.head.crossing].label + "." + std::to_string(e.head.slot + 1);
        j["edges"].push_back(je);
    }
    // one witness side per face (lowest side index)
    nlohmann::json labels = nlohmann::json::object();
    std::string unbounded_side;
    for (int f = 0; f < d.num_faces(); ++f) {
        int side = d.faces[f].sides.front();
        std::string tok = d.edges[side / 2].id + (side % 2 == 0 ? ".L" : ".R");
        if (f == d.unbounded_face) unbounded_side = tok;
        else labels[tok] = d.faces[f].label;
    }
    j["unbounded"] = unbounded_side;
    j["facelabels"] = labels;
    return j;
}

inline std::string diagram_to_text(const Diagram& d) {
    std::ostringstream out;
    auto end_token = [&](int c, int s) {
        return d.edges[d.crossings[c].edge[s]].id + (d.crossings[c].is_head[s] ? ".t" : ".f");
    };
    for (int c = 0; c < d.num_crossings(); ++c) {
        int op = d.crossings[c].over_pair;
        out << "crossing " << d.crossings[c].label << " ends=" << end_token(c, 0) << ','
            << end_token(c, 1) << ',' << end_token(c, 2) << ',' << end_token(c, 3)
            << " over=" << end_token(c, op) << ',' << end_token(c, op + 2)
            << " sign=" << (d.crossing_sign(c) > 0 ? "+1" : "-1")
            << " label=" << d.crossings[c].label << '\n';
    }
    for (const auto& e : d.edges)
        out << "edge " << e.id << " from=" << d.crossings[e.tail.crossing].label << '.'
            << (e.tail.slot + 1) << " to=" << d.crossings[e.head.crossing].label << '.'
            << (e.head.slot + 1) << '\n';
    for (int f = 0; f < d.num_faces(); ++f) {
        int side = d.faces[f].sides.front();
        std::string tok = d.edges[side / 2].id + (side % 2 == 0 ? ".L" : ".R");
        if (f == d.unbounded_face) out << "unbounded " << tok << '\n';
        else out << "facelabel " << tok << ' ' << d.faces[f].label << '\n';
    }
    return out.str();
}

} // namespace legcert
