#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "geom_oracle.hpp"
#include "legcert/action.hpp"

using namespace legcert;

namespace {

BraidWord torus_braid(int p, int q) {
    std::vector<int> word;
    for (int rep = 0; rep < q; ++rep)
        for (int i = 1; i < p; ++i) word.push_back(i);
    return validate_braid(word, p);
}

Diagram load_fixture(const std::string& name) {
    std::ifstream in(std::string(LEGCERT_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_diagram(ss.str());
}

// relation as a readable signature "face: +a1 -a5 ..." for set comparisons
std::map<std::string, std::map<std::string, int>> nontrivial_signatures(const Diagram& d,
                                                                        const ActionSystem& sys) {
    std::map<std::string, std::map<std::string, int>> out;
    for (const auto& rel : sys.relations) {
        if (!rel.mixed_signs()) continue;
        std::map<std::string, int> row;
        for (const auto& [c, k] : rel.coef) row[d.crossings[c].label] = k;
        out[d.faces[rel.face].label] = row;
    }
    return out;
}

std::vector<std::string> paper_chain_52{
    "act(a8) == act(a9)", "act(a4) << act(a7)", "act(a7) << act(a3)", "act(a3) << act(a5)",
    "act(a5) << act(a6)", "act(a6) << act(a2)", "act(a2) << act(a1)", "area(B6) << act(a8)"};

// exhaustive reference enumeration
std::vector<std::vector<int>> brute_candidates(const Diagram& d, const AreaAssignment& asg,
                                               const std::vector<int>& target, const Rational& eps,
                                               int max_len) {
    std::set<std::vector<int>> got;
    std::vector<int> tc = canonical_rotation(target);
    for (int len = 1; len <= max_len; ++len) {
        std::vector<int> w(len, 0);
        while (true) {
            Rational bound = asg.word_action(target) +
                             Rational(3) * eps * Rational(len + static_cast<int>(target.size()));
            if (asg.word_action(w) < bound) {
                auto cw = canonical_rotation(w);
                if (cw != tc) got.insert(cw);
            }
            int i = len - 1;
            while (i >= 0 && w[i] == d.num_crossings() - 1) w[i--] = 0;
            if (i < 0) break;
            ++w[i];
        }
    }
    return {got.begin(), got.end()};
}

} // namespace

TEST_CASE("left 5_2 has exactly the four mixed-sign relations") {
    Diagram d = load_fixture("left52.ldg");
    auto sys = corner_relations(d);
    auto sigs = nontrivial_signatures(d, sys);
    std::map<std::string, std::map<std::string, int>> expect{
        {"B2", {{"a1", 1}, {"a5", -1}, {"a6", -1}, {"a7", -1}}},
        {"B3", {{"a2", 1}, {"a5", -1}, {"a6", -1}, {"a9", -1}}},
        {"B5", {{"a3", 1}, {"a7", -1}, {"a8", -1}}},
        {"B6", {{"a4", 1}, {"a8", -1}, {"a9", -1}}},
    };
    CHECK(sigs == expect);
    // teardrops and the remaining faces are all-positive
    for (const auto& rel : sys.relations)
        if (!rel.mixed_signs())
            for (const auto& [c, k] : rel.coef) CHECK(k > 0);
}

TEST_CASE("right 5_2 has exactly the five mixed-sign relations") {
    Diagram d = load_fixture("right52.ldg");
    auto sigs = nontrivial_signatures(d, corner_relations(d));
    std::map<std::string, std::map<std::string, int>> expect{
        {"B2", {{"a1", 1}, {"a5", -1}, {"a6", -1}, {"a7", -1}}},
        {"B3", {{"a2", 1}, {"a5", -1}, {"a6", -1}, {"a9", -1}}},
        {"B5", {{"a3", 1}, {"a7", -1}, {"a8", -1}}},
        {"B6", {{"a4", 1}, {"a8", -1}, {"a9", -1}}},
        {"B4", {{"a4", -2}, {"a6", 1}, {"a7", 1}, {"a8", 1}, {"a9", 1}}},
    };
    CHECK(sigs == expect);
}

TEST_CASE("trefoil relations against the coordinate-realization oracle") {
    Layout lay;
    Diagram d = rainbow_closure_diagram(torus_braid(2, 3), &lay);
    geom::balance_layout(d, lay);
    auto areas = geom::face_areas(d, lay);
    auto gaps = geom::chord_z_gaps(d, lay);
    auto sys = corner_relations(d);
    for (const auto& rel : sys.relations) {
        Rational rhs(0);
        for (const auto& [c, k] : rel.coef) rhs += Rational(k) * (gaps[c].first - gaps[c].second);
        CHECK(rhs == areas[rel.face]); // exact
        CHECK(std::abs((rhs - areas[rel.face]).to_double()) < 1e-9);
    }
    // admissibility: sum wind * area = 0 on the balanced realization
    Rational total(0);
    for (int f = 0; f < d.num_faces(); ++f)
        total += Rational(sys.admissibility[f]) * areas[f];
    CHECK(total.is_zero());
}

TEST_CASE("admissibility row is the dependent combination of the relations") {
    for (const char* fixture : {"left52.ldg", "right52.ldg"}) {
        Diagram d = load_fixture(fixture);
        auto sys = corner_relations(d);
        // sum_F wind(F) * (corner form of F) must cancel chord by chord
        std::map<int, int> total;
        for (const auto& rel : sys.relations)
            for (const auto& [c, k] : rel.coef) total[c] += sys.admissibility[rel.face] * k;
        for (const auto& [c, k] : total) CHECK(k == 0);
    }
}

TEST_CASE("realize_areas meets the worked 5_2 ordering") {
    Diagram d = load_fixture("left52.ldg");
    auto sys = corner_relations(d);
    ConstraintParser parser(d, sys);
    AreaAssignment asg = realize_areas(d, sys, parser.parse_all(paper_chain_52));
    auto act = [&](const char* l) { return asg.action[d.crossing_index(l)]; };
    CHECK(act("a8") == act("a9"));
    CHECK(act("a8") < act("a4"));
    CHECK(act("a4") == Rational(2) * act("a8") + asg.area[d.face_index("B6")]);
    CHECK(Rational(100) * act("a4") <= act("a7"));
    CHECK(Rational(100) * act("a7") <= act("a3"));
    CHECK(Rational(100) * act("a3") <= act("a5"));
    CHECK(Rational(100) * act("a5") <= act("a6"));
    CHECK(Rational(100) * act("a6") <= act("a2"));
    CHECK(Rational(100) * act("a2") <= act("a1"));
    for (int f : d.bounded_faces()) CHECK(asg.area[f].sign() > 0);
}

TEST_CASE("realize_areas can keep B1 small among the kink disks") {
    // B1 cannot be smaller than every face (its teardrop relation forces
    // A(alpha1) above the first-row chord actions, which the solver proves
    // via Farkas), but it can be far below the other kink disks B2..Bp.
    for (auto [p, q] : {std::pair{3, 5}, {4, 5}}) {
        Diagram d = rainbow_closure_diagram(torus_braid(p, q));
        auto sys = corner_relations(d);
        ConstraintParser parser(d, sys);
        std::vector<std::string> lines;
        for (int l = 2; l <= p; ++l)
            lines.push_back("area(B1) * 1000 <= area(B" + std::to_string(l) + ")");
        AreaAssignment asg = realize_areas(d, sys, parser.parse_all(lines));
        Rational b1 = asg.area[d.face_index("B1")];
        for (int l = 2; l <= p; ++l)
            CHECK(Rational(1000) * b1 <= asg.area[d.face_index("B" + std::to_string(l))]);
    }
    // and the all-faces version really is impossible
    Diagram d = rainbow_closure_diagram(torus_braid(3, 5));
    auto sys = corner_relations(d);
    ConstraintParser parser(d, sys);
    std::vector<std::string> lines;
    for (int f : d.bounded_faces())
        if (d.faces[f].label != "B1")
            lines.push_back("area(B1) * 1000 <= area(" + d.faces[f].label + ")");
    CHECK_THROWS_AS(realize_areas(d, sys, parser.parse_all(lines)), Error);
}

TEST_CASE("contradictory constraints are infeasible with a certificate") {
    Diagram d = rainbow_closure_diagram(torus_braid(2, 3));
    auto sys = corner_relations(d);
    ConstraintParser parser(d, sys);
    auto bad = parser.parse_all({"1 <= area(R1,1)", "area(R1,1) <= 0"});
    CHECK_THROWS_AS(realize_areas(d, sys, bad), Error);
    try {
        realize_areas(d, sys, bad);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Infeasible);
    }
}

TEST_CASE("constraint parser rejects garbage") {
    Diagram d = rainbow_closure_diagram(torus_braid(2, 3));
    auto sys = corner_relations(d);
    ConstraintParser parser(d, sys);
    CHECK_THROWS_AS(parser.parse("act(a8) < act(a9)"), Error);
    CHECK_THROWS_AS(parser.parse("act(zz) <= 1"), Error);
    CHECK_THROWS_AS(parser.parse("hello <= 1"), Error);
}

TEST_CASE("candidate enumeration reproduces the worked 5_2 list") {
    Diagram d = load_fixture("left52.ldg");
    auto sys = corner_relations(d);
    ConstraintParser parser(d, sys);
    AreaAssignment asg = realize_areas(d, sys, parser.parse_all(paper_chain_52));
    Rational eps = asg.min_action() / Rational(1000);
    std::vector<int> target{d.crossing_index("a4")};
    auto got = enumerate_candidates(d, asg, target, eps, 4);
    int a8 = d.crossing_index("a8"), a9 = d.crossing_index("a9");
    std::vector<std::vector<int>> expect{{std::min(a8, a9)}, {std::max(a8, a9)}};
    expect.push_back(canonical_rotation({a8, a8}));
    expect.push_back(canonical_rotation({a8, a9}));
    expect.push_back(canonical_rotation({a9, a9}));
    std::sort(expect.begin(), expect.end(), [&](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        Rational aa = asg.word_action(a), ba = asg.word_action(b);
        if (!(aa == ba)) return aa < ba;
        return a < b;
    });
    CHECK(got == expect);
}

TEST_CASE("enumeration agrees with brute force and is complete") {
    Diagram d = rainbow_closure_diagram(torus_braid(2, 3));
    auto sys = corner_relations(d);
    AreaAssignment asg = realize_areas(d, sys, {});
    std::vector<int> target{d.crossing_index("alpha1")};
    for (const Rational& eps : {Rational(0), asg.min_action() / Rational(10), Rational(1, 3)}) {
        for (int max_len : {1, 3, 5}) {
            auto fast = enumerate_candidates(d, asg, target, eps, max_len);
            auto slow = brute_candidates(d, asg, target, eps, max_len);
            std::set<std::vector<int>> fast_set(fast.begin(), fast.end());
            CHECK(fast_set == std::set<std::vector<int>>(slow.begin(), slow.end()));
            CHECK(fast_set.size() == fast.size());
            // completeness under extension: any in-bound extension is present
            for (const auto& w : fast) {
                if (static_cast<int>(w.size()) >= max_len) continue;
                for (int c = 0; c < d.num_crossings(); ++c) {
                    std::vector<int> ext = w;
                    ext.push_back(c);
                    Rational bound =
                        asg.word_action(target) +
                        Rational(3) * eps * Rational(static_cast<int>(ext.size() + target.size()));
                    auto canon = canonical_rotation(ext);
                    if (asg.word_action(ext) < bound && canon != canonical_rotation(target))
                        CHECK(fast_set.count(canon));
                }
            }
        }
    }
}

TEST_CASE("tiny action targets yield no candidates") {
    Diagram d = load_fixture("left52.ldg");
    auto sys = corner_relations(d);
    ConstraintParser parser(d, sys);
    AreaAssignment asg = realize_areas(d, sys, parser.parse_all(paper_chain_52));
    // B6 is tiny, so nothing fits under the B6-area target with eps -> 0
    int smallest = 0;
    for (int c = 1; c < d.num_crossings(); ++c)
        if (asg.action[c] < asg.action[smallest]) smallest = c;
    AreaAssignment shifted = asg;
    shifted.action.push_back(asg.area[d.face_index("B6")]); // fake tiny target chord
    // use the real API instead: target = cheapest chord, epsilon 0; candidates
    // must all have action strictly below it, and none do
    auto got = enumerate_candidates(d, asg, {smallest}, Rational(0), 3);
    CHECK(got.empty());
}

TEST_CASE("enumeration budget trips") {
    Diagram d = load_fixture("left52.ldg");
    auto sys = corner_relations(d);
    AreaAssignment asg = realize_areas(d, sys, {});
    CHECK_THROWS_AS(enumerate_candidates(d, asg, {0}, Rational(1000), 6, 50), Error);
}
