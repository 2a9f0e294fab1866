#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "legcert/index.hpp"

using namespace legcert;

namespace {
BraidWord torus_braid(int p, int q) {
    std::vector<int> word;
    for (int rep = 0; rep < q; ++rep)
        for (int i = 1; i < p; ++i) word.push_back(i);
    return validate_braid(word, p);
}
} // namespace

TEST_CASE("rotation angles split by chord location") {
    Diagram d = rainbow_closure_diagram(torus_braid(3, 4));
    for (int ci = 0; ci < d.num_crossings(); ++ci)
        for (int cj = 0; cj < d.num_crossings(); ++cj) {
            RotationData rd = rotation_number(d, ci, cj);
            if (d.crossings[ci].kind == CrossingKind::BraidLetter) {
                CHECK(rd.theta_half_pi == 1);
                CHECK(rd.rot == 0);
                CHECK(rd.type1_arcs == 1);
                CHECK(rd.type2_arcs == rd.type3_arcs);
            } else {
                CHECK(rd.theta_half_pi == 3);
                CHECK(rd.rot == 1);
                CHECK(rd.type3_arcs == rd.type2_arcs + 1);
            }
        }
}

TEST_CASE("cz index bounds and examples") {
    Diagram d = rainbow_closure_diagram(torus_braid(2, 3));
    CHECK(cz_index(d, {}) == 0);
    CHECK(cz_index(d, {d.crossing_index("alpha1")}) == 2);
    // words of braid chords have cz exactly their length
    std::vector<int> braid_chords;
    for (int c = 0; c < d.num_crossings(); ++c)
        if (d.crossings[c].kind == CrossingKind::BraidLetter) braid_chords.push_back(c);
    for (int a : braid_chords)
        for (int b : braid_chords) {
            CHECK(cz_index(d, {a, b}) == 2);
            for (int c : braid_chords) CHECK(cz_index(d, {a, b, c}) == 3);
        }
}

TEST_CASE("cz index is cyclic and at least the word length") {
    std::mt19937 rng(7);
    for (auto [p, q] : {std::pair{2, 5}, {3, 4}, {4, 5}}) {
        Diagram d = rainbow_closure_diagram(torus_braid(p, q));
        std::uniform_int_distribution<int> pick(0, d.num_crossings() - 1);
        std::uniform_int_distribution<int> len(1, 5);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<int> word;
            int n = len(rng);
            for (int i = 0; i < n; ++i) word.push_back(pick(rng));
            int cz = cz_index(d, word);
            CHECK(cz >= n);
            std::vector<int> rot(word.begin() + 1, word.end());
            rot.push_back(word.front());
            CHECK(cz_index(d, rot) == cz);
        }
    }
}

TEST_CASE("generic diagrams are rejected and fall back to the action policy") {
    std::ifstream in(std::string(LEGCERT_DATA_DIR) + "/left52.ldg");
    std::ostringstream ss;
    ss << in.rdbuf();
    Diagram d = load_diagram(ss.str());
    CHECK_THROWS_AS(rotation_number(d, 0, 1), Error);
    CHECK_THROWS_AS(cz_index(d, {0}), Error);
    CHECK(degree_zero_generators(d) == GeneratorPolicy::ActionFilter);
    Diagram t = rainbow_closure_diagram(torus_braid(2, 3));
    CHECK(degree_zero_generators(t) == GeneratorPolicy::SingleChord);
}
