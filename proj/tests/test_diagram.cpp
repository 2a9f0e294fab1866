#include <doctest.h>

#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "geom_oracle.hpp"
#include "legcert/diagram.hpp"

using namespace legcert;

namespace {

BraidWord torus_braid(int p, int q) {
    std::vector<int> word;
    for (int rep = 0; rep < q; ++rep)
        for (int i = 1; i < p; ++i) word.push_back(i);
    return validate_braid(word, p);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int face_by_label(const Diagram& d, const std::string& label) { return d.face_index(label); }

} // namespace

TEST_CASE("trefoil rainbow closure structure") {
    Diagram d = rainbow_closure_diagram(validate_braid({1, 1, 1}, 2));
    CHECK(d.num_crossings() == 5);
    CHECK(d.num_faces() == 7);
    std::set<std::string> labels;
    for (const auto& f : d.faces)
        if (!f.unbounded) labels.insert(f.label);
    CHECK(labels == std::set<std::string>{"R1,1", "R1,2", "A1", "A2", "B1", "B2"});
    CHECK(d.writhe() == 1);
    CHECK(d.tb() == thurston_bennequin(d.source_braid));
}

TEST_CASE("euler count and writhe across a braid corpus") {
    std::vector<BraidWord> corpus;
    for (int p = 2; p <= 4; ++p)
        for (int q = p + 1; q <= 6; ++q)
            if (std::gcd(p, q) == 1) corpus.push_back(torus_braid(p, q));
    corpus.push_back(validate_braid({1, 2, 3, 1, 2, 3, 1, 2, 3, 2, 3, 2, 3, 2, 3}, 4));
    corpus.push_back(validate_braid({1, 1, 1, 2, 1, 2}, 3)); // irregular positive word
    for (const auto& b : corpus) {
        Diagram d = rainbow_closure_diagram(b);
        CHECK(d.num_faces() == d.num_crossings() + 2);
        CHECK(d.writhe() == b.length() - b.strands);
    }
}

TEST_CASE("torus winding numbers match the closed forms") {
    for (int p = 2; p <= 4; ++p) {
        for (int q = p + 1; q <= 6; ++q) {
            if (std::gcd(p, q) != 1) continue;
            Diagram d = rainbow_closure_diagram(torus_braid(p, q));
            auto wind = d.winding_numbers();
            for (int i = 1; i <= p - 1; ++i)
                for (int j = 1; j <= q - 1; ++j)
                    CHECK(wind[face_by_label(d, "R" + std::to_string(i) + "," + std::to_string(j))] ==
                          p - i);
            for (int i = 1; i <= p; ++i) {
                CHECK(wind[face_by_label(d, "A" + std::to_string(i))] == p + 1 - i);
                CHECK(wind[face_by_label(d, "B" + std::to_string(i))] == p - 1 - i);
            }
            CHECK(wind[d.unbounded_face] == 0);
        }
    }
}

TEST_CASE("winding agrees with the ray-casting oracle") {
    for (auto [p, q] : {std::pair{2, 3}, {3, 5}, {4, 5}}) {
        Layout lay;
        Diagram d = rainbow_closure_diagram(torus_braid(p, q), &lay);
        auto wind = d.winding_numbers();
        for (int f = 0; f < d.num_faces(); ++f)
            CHECK(wind[f] == geom::winding_at(d, lay, geom::nudged_rep(lay, f)));
        CHECK(geom::geometric_writhe(d, lay) == d.writhe());
    }
    Layout lay;
    Diagram d =
        rainbow_closure_diagram(validate_braid({1, 2, 3, 1, 2, 3, 1, 2, 3, 2, 3, 2, 3, 2, 3}, 4), &lay);
    auto wind = d.winding_numbers();
    for (int f = 0; f < d.num_faces(); ++f)
        CHECK(wind[f] == geom::winding_at(d, lay, geom::nudged_rep(lay, f)));
    CHECK(geom::geometric_writhe(d, lay) == d.writhe());
}

TEST_CASE("rsft disks include every kink teardrop") {
    for (auto [p, q] : {std::pair{2, 3}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}) {
        Diagram d = rainbow_closure_diagram(torus_braid(p, q));
        auto disks = rsft_disks(d);
        for (int l = 1; l <= p; ++l) {
            bool found = false;
            for (const auto& disk : disks)
                if (d.faces[disk.face].label == "B" + std::to_string(l)) {
                    REQUIRE(disk.chord_word.size() == 1);
                    CHECK(d.crossings[disk.chord_word[0]].label == "alpha" + std::to_string(l));
                    found = true;
                }
            CHECK(found);
        }
    }
}

TEST_CASE("first-row face aliases for block words") {
    // (s1 s2 s3)^3 (s2 s3)^3: five first-row faces R1..R5
    Diagram d = rainbow_closure_diagram(validate_braid({1, 2, 3, 1, 2, 3, 1, 2, 3, 2, 3, 2, 3, 2, 3}, 4));
    REQUIRE(d.first_row_faces.size() == 5);
    std::set<int> distinct(d.first_row_faces.begin(), d.first_row_faces.end());
    CHECK(distinct.size() == 5);
    // torus words: q-1 of them, all in the top row
    Diagram t = rainbow_closure_diagram(torus_braid(3, 5));
    REQUIRE(t.first_row_faces.size() == 4);
    for (int j = 1; j <= 4; ++j)
        CHECK(t.first_row_faces[j - 1] == t.face_index("R1," + std::to_string(j)));
}

TEST_CASE("diagram text and json round trips") {
    Diagram d = rainbow_closure_diagram(torus_braid(2, 3));
    Diagram d2 = load_diagram(diagram_to_text(d));
    CHECK(d2.num_crossings() == d.num_crossings());
    CHECK(d2.writhe() == d.writhe());
    CHECK(d2.faces.size() == d.faces.size());
    for (int f = 0; f < d.num_faces(); ++f) CHECK(d2.has_face_label(d.faces[f].label));
    Diagram d3 = load_diagram(diagram_to_json(d).dump());
    CHECK(d3.num_crossings() == d.num_crossings());
    CHECK(d3.unbounded_face >= 0);
    CHECK(d3.winding_numbers() == d.winding_numbers());
}

TEST_CASE("loader rejects malformed diagrams") {
    Diagram d = rainbow_closure_diagram(torus_braid(2, 3));
    std::string text = diagram_to_text(d);

    SUBCASE("missing unbounded marker") {
        std::string broken;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line))
            if (line.rfind("unbounded", 0) != 0) broken += line + "\n";
        CHECK_THROWS_AS(load_diagram(broken), Error);
    }
    SUBCASE("wrong arity") {
        CHECK_THROWS_AS(load_diagram("crossing a ends=e1.f,e1.t,e2.f over=e1.f,e1.t sign=+1\n"
                                     "edge e1 from=a.1 to=a.2\nedge e2 from=a.3 to=a.3\nunbounded e1.L\n"),
                        Error);
    }
    SUBCASE("gibberish") { CHECK_THROWS_AS(load_diagram("knot 5_2 please"), Error); }
    SUBCASE("two-component links are refused") {
        const char* hopf =
            "crossing c1 ends=e4.t,e1.f,e3.f,e2.t over=e4.t,e3.f\n"
            "crossing c2 ends=e2.f,e3.t,e1.t,e4.f over=e2.f,e1.t\n"
            "edge e1 from=c1.2 to=c2.3\n"
            "edge e2 from=c2.1 to=c1.4\n"
            "edge e3 from=c1.3 to=c2.2\n"
            "edge e4 from=c2.4 to=c1.1\n"
            "unbounded e1.R\n";
        try {
            load_diagram(hopf);
            FAIL("link accepted");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::MultiComponent);
        }
    }
}

TEST_CASE("chekanov 5_2 fixtures load and have the advertised shape") {
    for (const char* name : {"/left52.ldg", "/right52.ldg"}) {
        Diagram d = load_diagram(read_file(std::string(LEGCERT_DATA_DIR) + name));
        CHECK(d.num_crossings() == 9);
        CHECK(d.num_faces() == 11);
        CHECK(d.writhe() == 1);
        for (const char* lbl : {"A1", "A2", "A3", "A4", "B1", "B2", "B3", "B4", "B5", "B6"})
            CHECK_NOTHROW(d.face_index(lbl));
        // winding numbers from the displayed meridian vector
        auto wind = d.winding_numbers();
        std::map<std::string, int> expect{{"A1", -1}, {"A2", 1}, {"A3", 1},  {"A4", -1}, {"B1", 0},
                                          {"B2", 1},  {"B3", -1}, {"B4", 0}, {"B5", -1}, {"B6", 1}};
        for (const auto& [lbl, w] : expect) CHECK(wind[d.face_index(lbl)] == w);
        // the a4 kink disk is an all-positive teardrop on A4
        bool found_a4 = false;
        for (const auto& disk : rsft_disks(d))
            if (disk.chord_word.size() == 1 && d.crossings[disk.chord_word[0]].label == "a4") {
                CHECK(d.faces[disk.face].label == "A4");
                found_a4 = true;
            }
        CHECK(found_a4);
    }
}

TEST_CASE("the two 5_2 diagrams are not isomorphic as labeled maps") {
    Diagram l = load_diagram(read_file(std::string(LEGCERT_DATA_DIR) + "/left52.ldg"));
    Diagram r = load_diagram(read_file(std::string(LEGCERT_DATA_DIR) + "/right52.ldg"));
    // compare the corner prints of the labeled faces
    auto corner_print = [](const Diagram& d) {
        std::map<std::string, std::multiset<std::string>> out;
        for (int f = 0; f < d.num_faces(); ++f) {
            std::multiset<std::string> corners;
            for (const auto& c : d.face_corners(f))
                corners.insert(d.crossings[c.crossing].label +
                               (d.corner_eta(c.crossing, c.quadrant) > 0 ? "+" : "-"));
            out[d.faces[f].label] = corners;
        }
        return out;
    };
    CHECK(corner_print(l) != corner_print(r));
}
