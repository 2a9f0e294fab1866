// include/legcert/svg.hpp — deterministic SVG rendering.
//
// Rainbow closures render from the exact grid layout. Loaded diagrams go
// through a barycentric embedding of the subdivided map pinned to the
// unbounded face; when the iteration degenerates the renderer reports
// LayoutFailure rather than emit garbage.

#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "legcert/diagram.hpp"

namespace legcert {

struct SvgOptions {
    double scale = 8.0;
    double under_gap = 0.9; // half-gap carved out of the under strand
    bool labels = true;
};

namespace svgdetail {

struct P2 {
    double x = 0, y = 0;
};

inline std::string fmt(double v) {
    char buf[32];
    snprintf(buf, sizeof buf, "%.2f", v + 0.0); // normalize -0
    return buf;
}

inline void polyline(std::ostringstream& out, const std::vector<P2>& pts, const char* cls) {
    out << "  <polyline class=\"" << cls << "\" fill=\"none\" points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i) out << ' ';
        out << fmt(pts[i].x) << ',' << fmt(pts[i].y);
    }
    out << "\"/>\n";
}

inline P2 toward(const P2& a, const P2& b, double dist) {
    double dx = b.x - a.x, dy = b.y - a.y;
    double len = std::sqrt(dx * dx + dy * dy);
    if (len < 1e-12) return a;
    return {a.x + dx / len * dist, a.y + dy / len * dist};
}

// Layout for arbitrary diagrams: subdivide every edge twice, pin the
// unbounded face's subdivision cycle to a circle, relax everything else to
// the neighbor average.
inline std::vector<P2> generic_positions(const Diagram& d, std::vector<std::array<int, 2>>& edge_subs) {
    int n = d.num_crossings();
    int total = n + 2 * d.num_edges();
    edge_subs.resize(d.num_edges());
    for (int e = 0; e < d.num_edges(); ++e) edge_subs[e] = {n + 2 * e, n + 2 * e + 1};
    std::vector<std::vector<int>> adj(total);
    auto link = [&](int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (int e = 0; e < d.num_edges(); ++e) {
        link(d.edges[e].tail.crossing, edge_subs[e][0]);
        link(edge_subs[e][0], edge_subs[e][1]);
        link(edge_subs[e][1], d.edges[e].head.crossing);
    }
    // pin the outer cycle: walk the unbounded face once
    std::vector<int> outer;
    for (int side : d.faces[d.unbounded_face].sides) {
        int e = side / 2;
        bool fwd = side % 2 == 0;
        if (fwd) {
            outer.push_back(edge_subs[e][0]);
            outer.push_back(edge_subs[e][1]);
            outer.push_back(d.edges[e].head.crossing);
        } else {
            outer.push_back(edge_subs[e][1]);
            outer.push_back(edge_subs[e][0]);
            outer.push_back(d.edges[e].tail.crossing);
        }
    }
    std::vector<P2> pos(total);
    std::vector<bool> pinned(total, false);
    const double R = 50.0;
    int m = static_cast<int>(outer.size());
    for (int k = 0; k < m; ++k) {
        int v = outer[k];
        if (pinned[v]) continue; // a vertex may appear twice on the outer walk
        pinned[v] = true;
        double ang = 2.0 * 3.14159265358979323846 * k / m;
        pos[v] = {R * std::cos(ang), R * std::sin(ang)};
    }
    for (int iter = 0; iter < 3000; ++iter) {
        for (int v = 0; v < total; ++v) {
            if (pinned[v] || adj[v].empty()) continue;
            P2 avg{0, 0};
            for (int w : adj[v]) {
                avg.x += pos[w].x;
                avg.y += pos[w].y;
            }
            pos[v] = {avg.x / adj[v].size(), avg.y / adj[v].size()};
        }
    }
    // interior loop edges collapse onto their crossing; bulge them away
    // from the crossing's other neighbors instead
    for (int e = 0; e < d.num_edges(); ++e) {
        if (d.edges[e].tail.crossing != d.edges[e].head.crossing) continue;
        int sa = edge_subs[e][0], sb = edge_subs[e][1];
        if (pinned[sa] || pinned[sb]) continue;
        int c = d.edges[e].tail.crossing;
        P2 avg{0, 0};
        double reach = 0;
        int k = 0;
        for (int slot = 0; slot < 4; ++slot) {
            int f = d.crossings[c].edge[slot];
            int sub = d.crossings[c].is_head[slot] ? edge_subs[f][1] : edge_subs[f][0];
            if (sub == sa || sub == sb) continue;
            avg.x += pos[sub].x;
            avg.y += pos[sub].y;
            reach += std::hypot(pos[sub].x - pos[c].x, pos[sub].y - pos[c].y);
            ++k;
        }
        if (k == 0) continue;
        avg = {avg.x / k, avg.y / k};
        reach /= k;
        double ux = pos[c].x - avg.x, uy = pos[c].y - avg.y;
        double un = std::hypot(ux, uy);
        if (un < 1e-9) { ux = 1; uy = 0; un = 1; }
        ux /= un;
        uy /= un;
        pos[sa] = {pos[c].x + reach * (0.9 * ux - 0.35 * uy), pos[c].y + reach * (0.9 * uy + 0.35 * ux)};
        pos[sb] = {pos[c].x + reach * (0.9 * ux + 0.35 * uy), pos[c].y + reach * (0.9 * uy - 0.35 * ux)};
    }
    // degenerate collapse check
    for (int e = 0; e < d.num_edges(); ++e) {
        P2 a = pos[edge_subs[e][0]], b = pos[edge_subs[e][1]];
        if (std::abs(a.x - b.x) + std::abs(a.y - b.y) < 1e-6)
            throw Error(Errc::LayoutFailure, "barycentric relaxation collapsed edge " + d.edges[e].id);
    }
    return pos;
}

} // namespace svgdetail

inline std::string render_svg(const Diagram& d, const Layout* layout = nullptr,
                              const SvgOptions& options = {}) {
    using svgdetail::P2;
    std::vector<std::vector<P2>> strands; // per edge polyline (tail germ .. head germ)
    std::vector<std::array<P2, 4>> cross; // over from/to, under from/to
    std::vector<P2> face_pos(d.num_faces());
    std::vector<P2> cross_pos(d.num_crossings());

    if (layout) {
        for (const auto& pl : layout->edge_polyline) {
            std::vector<P2> pts;
            for (auto [x, y] : pl) pts.push_back({double(x), double(-y)});
            strands.push_back(pts);
        }
        for (const auto& s : layout->crossing_strand)
            cross.push_back({P2{double(s[0].first), double(-s[0].second)},
                             P2{double(s[1].first), double(-s[1].second)},
                             P2{double(s[2].first), double(-s[2].second)},
                             P2{double(s[3].first), double(-s[3].second)}});
        for (int f = 0; f < d.num_faces(); ++f)
            face_pos[f] = {double(layout->face_rep[f].first), double(-layout->face_rep[f].second)};
        for (int c = 0; c < d.num_crossings(); ++c)
            cross_pos[c] = {double(layout->crossing_center[c].first),
                            double(-layout->crossing_center[c].second)};
    } else {
        std::vector<std::array<int, 2>> subs;
        auto pos = svgdetail::generic_positions(d, subs);
        for (int e = 0; e < d.num_edges(); ++e) {
            P2 a = pos[d.edges[e].tail.crossing];
            P2 b = pos[subs[e][0]], c = pos[subs[e][1]];
            P2 h = pos[d.edges[e].head.crossing];
            strands.push_back({svgdetail::toward(a, b, 1.5), b, c, svgdetail::toward(h, c, 1.5)});
        }
        for (int c = 0; c < d.num_crossings(); ++c) {
            cross_pos[c] = pos[c];
            auto germ_pt = [&](int slot) {
                int e = d.crossings[c].edge[slot];
                int sub = d.crossings[c].is_head[slot] ? subs[e][1] : subs[e][0];
                return svgdetail::toward(pos[c], pos[sub], 1.5);
            };
            cross.push_back({germ_pt(d.over_in_slot(c)), germ_pt(d.over_out_slot(c)),
                             germ_pt(d.under_in_slot(c)), germ_pt(d.under_out_slot(c))});
        }
        for (int f = 0; f < d.num_faces(); ++f) {
            // average of the subdivision points on the face boundary
            P2 acc{0, 0};
            int k = 0;
            for (int side : d.faces[f].sides) {
                int e = side / 2;
                acc.x += pos[subs[e][0]].x + pos[subs[e][1]].x;
                acc.y += pos[subs[e][0]].y + pos[subs[e][1]].y;
                k += 2;
            }
            face_pos[f] = {acc.x / k, acc.y / k};
        }
    }

    double s = options.scale;
    auto S = [&](P2 p) { return P2{p.x * s, p.y * s}; };
    double minx = 1e18, miny = 1e18, maxx = -1e18, maxy = -1e18;
    auto grow = [&](P2 p) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    };
    for (auto& pl : strands)
        for (auto& p : pl) grow(S(p));
    double pad = 4 * s;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\""
        << svgdetail::fmt(minx - pad) << ' ' << svgdetail::fmt(miny - pad) << ' '
        << svgdetail::fmt(maxx - minx + 2 * pad) << ' ' << svgdetail::fmt(maxy - miny + 2 * pad)
        << "\">\n";
    out << " <style>.strand{stroke:#153;stroke-width:" << svgdetail::fmt(0.35 * s)
        << "}.over{stroke:#153;stroke-width:" << svgdetail::fmt(0.35 * s)
        << "}.under{stroke:#153;stroke-width:" << svgdetail::fmt(0.35 * s)
        << "}text{font:italic " << svgdetail::fmt(1.6 * s)
        << "px serif;fill:#333}.facelabel{fill:#888}</style>\n";

    out << " <g id=\"strands\">\n";
    for (const auto& pl : strands) {
        std::vector<P2> scaled;
        for (auto p : pl) scaled.push_back(S(p));
        svgdetail::polyline(out, scaled, "strand");
    }
    out << " </g>\n";

    out << " <g id=\"crossings\">\n";
    for (int c = 0; c < d.num_crossings(); ++c) {
        P2 center = cross_pos[c];
        // over strand drawn whole, under strand broken around the center
        svgdetail::polyline(out, {S(cross[c][0]), S(center), S(cross[c][1])}, "over");
        svgdetail::polyline(out, {S(cross[c][2]), S(svgdetail::toward(center, cross[c][2], options.under_gap))},
                            "under");
        svgdetail::polyline(out, {S(svgdetail::toward(center, cross[c][3], options.under_gap)), S(cross[c][3])},
                            "under");
    }
    out << " </g>\n";

    out << " <g id=\"labels\">\n";
    if (options.labels) {
        for (int c = 0; c < d.num_crossings(); ++c) {
            P2 p = S(cross_pos[c]);
            out << "  <text x=\"" << svgdetail::fmt(p.x + 0.5 * s) << "\" y=\""
                << svgdetail::fmt(p.y - 0.5 * s) << "\">" << d.crossings[c].label << "</text>\n";
        }
        for (int f = 0; f < d.num_faces(); ++f) {
            if (f == d.unbounded_face) continue;
            P2 p = S(face_pos[f]);
            out << "  <text class=\"facelabel\" x=\"" << svgdetail::fmt(p.x) << "\" y=\""
                << svgdetail::fmt(p.y) << "\">" << d.faces[f].label << "</text>\n";
        }
    }
    out << " </g>\n</svg>\n";
    return out.str();
}

} // namespace legcert
