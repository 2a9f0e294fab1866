#include <doctest.h>

#include <fstream>
#include <numeric>
#include <sstream>

#include "legcert/feasibility.hpp"

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

std::vector<std::vector<int>> braid_chord_singletons(const Diagram& d) {
    std::vector<std::vector<int>> out;
    for (int c = 0; c < d.num_crossings(); ++c)
        if (d.crossings[c].kind == CrossingKind::BraidLetter) out.push_back({c});
    return out;
}

std::vector<std::vector<int>> all_singletons_except(const Diagram& d, int skip) {
    std::vector<std::vector<int>> out;
    for (int c = 0; c < d.num_crossings(); ++c)
        if (c != skip) out.push_back({c});
    return out;
}

FeasibilitySystem left52_system(const Diagram& d) {
    int a8 = d.crossing_index("a8"), a9 = d.crossing_index("a9");
    return build_system(d, {d.crossing_index("a4")},
                        {{a8}, {a9}, {a8, a8}, {a9, a9}, {a8, a9}});
}

} // namespace

TEST_CASE("trefoil system shape and verdict") {
    Diagram d = rainbow_closure_diagram(torus_braid(2, 3));
    auto sys = build_system(d, {d.crossing_index("alpha1")}, braid_chord_singletons(d));
    CHECK(sys.rows() == 6);
    CHECK(sys.cols() == 3);
    // rhs is the B1 indicator in label order
    for (int i = 0; i < sys.rows(); ++i)
        CHECK(sys.rhs[i] == Rational(sys.face_labels[i] == "B1" ? 1 : 0));
    auto verdict = only_trivial(sys);
    CHECK(verdict.kind == FeasibilityVerdict::Kind::OnlyTrivial);
    for (const auto& mx : verdict.maxima) {
        REQUIRE(mx.has_value());
        CHECK(mx->is_zero());
    }
}

TEST_CASE("torus family is only-trivial, braid chords or all chords") {
    for (auto [p, q] :
         {std::pair{2, 3}, {2, 5}, {2, 7}, {3, 4}, {3, 5}, {4, 5}}) {
        Diagram d = rainbow_closure_diagram(torus_braid(p, q));
        int alpha1 = d.crossing_index("alpha1");
        auto narrow = build_system(d, {alpha1}, braid_chord_singletons(d));
        CHECK(only_trivial(narrow).kind == FeasibilityVerdict::Kind::OnlyTrivial);
        auto wide = build_system(d, {alpha1}, all_singletons_except(d, alpha1));
        CHECK(only_trivial(wide).kind == FeasibilityVerdict::Kind::OnlyTrivial);
    }
}

TEST_CASE("5_2 candidate systems: solo eliminations hold, jointly a witness") {
    // Every candidate is excluded one-at-a-time by a face with a positive
    // coefficient away from A4 (the one-at-a-time check), yet the pair
    // (a8) + (a9) satisfies every row jointly: I(a4) - I(a8) - I(a9) = B6
    // is componentwise nonnegative. The joint solver must surface that.
    for (const char* fixture : {"left52.ldg", "right52.ldg"}) {
        Diagram d = load_fixture(fixture);
        auto sys = left52_system(d); // same labels in both fixtures
        CHECK(sys.rows() == 10);
        CHECK(sys.cols() == 5);
        for (int j = 0; j < sys.cols(); ++j) {
            bool positive_off_target = false;
            for (int i = 0; i < sys.rows(); ++i)
                if (sys.face_labels[i] != "A4" && sys.matrix[i][j].sign() > 0)
                    positive_off_target = true;
            CHECK(positive_off_target);
        }
        auto solo = solo_maxima(sys);
        for (int j = 0; j < sys.cols(); ++j) {
            REQUIRE(solo[j].has_value());
            CHECK(solo[j]->is_zero());
        }
        auto verdict = only_trivial(sys);
        REQUIRE(verdict.kind == FeasibilityVerdict::Kind::Witness);
        CHECK(satisfies_rows(sys, verdict.witness));
        // the witness is exactly one copy each of (a8) and (a9)
        for (int j = 0; j < sys.cols(); ++j) {
            bool is_single = sys.candidates[j].size() == 1;
            CHECK(verdict.witness[j] == Rational(is_single ? 1 : 0));
        }
        // and the box oracle independently finds an integer witness
        CHECK(integer_oracle(sys, 10).kind == FeasibilityVerdict::Kind::Witness);
    }
}

TEST_CASE("a rational-only witness is caught by the integer oracle") {
    // {(a8^2), (a9^2)} admits x = (1/2, 1/2) over the rationals but no
    // nonzero integer point: the relaxation direction the certificate
    // machinery must respect (rational OnlyTrivial is sound, rational
    // Witness is conservative until an integer point confirms it)
    Diagram d = load_fixture("left52.ldg");
    int a8 = d.crossing_index("a8"), a9 = d.crossing_index("a9");
    auto sys = build_system(d, {d.crossing_index("a4")}, {{a8, a8}, {a9, a9}});
    auto lp = only_trivial(sys);
    REQUIRE(lp.kind == FeasibilityVerdict::Kind::Witness);
    CHECK(lp.witness[0] == Rational(1, 2));
    CHECK(lp.witness[1] == Rational(1, 2));
    CHECK(integer_oracle(sys, 10).kind == FeasibilityVerdict::Kind::OnlyTrivial);
}

TEST_CASE("dual certificates accompany zero maxima") {
    // a8-flavored candidates only: the system is only-trivial and every
    // variable carries a verified dual
    Diagram d = load_fixture("left52.ldg");
    int a8 = d.crossing_index("a8"), a9 = d.crossing_index("a9");
    auto sys = build_system(d, {d.crossing_index("a4")}, {{a8}, {a8, a8}, {a8, a9}});
    auto verdict = only_trivial(sys);
    REQUIRE(verdict.kind == FeasibilityVerdict::Kind::OnlyTrivial);
    for (int j = 0; j < sys.cols(); ++j) {
        const auto& y = verdict.duals[j];
        REQUIRE(static_cast<int>(y.size()) == sys.rows());
        Rational yb(0);
        for (int i = 0; i < sys.rows(); ++i) {
            CHECK(y[i].sign() >= 0);
            yb += y[i] * sys.rhs[i];
        }
        CHECK(yb.is_zero());
        for (int k = 0; k < sys.cols(); ++k) {
            Rational col(0);
            for (int i = 0; i < sys.rows(); ++i) col += y[i] * sys.matrix[i][k];
            CHECK(col >= Rational(k == j ? 1 : 0));
        }
    }
}

TEST_CASE("empty candidate set is trivially only-trivial") {
    Diagram d = rainbow_closure_diagram(torus_braid(2, 3));
    auto sys = build_system(d, {d.crossing_index("alpha1")}, {});
    CHECK(sys.cols() == 0);
    CHECK(only_trivial(sys).kind == FeasibilityVerdict::Kind::OnlyTrivial);
}

TEST_CASE("a doubled target word is a genuine witness") {
    Diagram d = rainbow_closure_diagram(torus_braid(2, 3));
    int alpha1 = d.crossing_index("alpha1");
    auto sys = build_system(d, {alpha1}, {{alpha1, alpha1}});
    auto verdict = only_trivial(sys);
    REQUIRE(verdict.kind == FeasibilityVerdict::Kind::Witness);
    CHECK(verdict.witness[0] == Rational(1, 2));
    CHECK(satisfies_rows(sys, verdict.witness));
    // the corresponding boxed-integer check cannot scale the rational point
    auto boxed = integer_oracle(sys, 10);
    CHECK(boxed.kind == FeasibilityVerdict::Kind::OnlyTrivial);
}

TEST_CASE("zero grading columns are flagged as unbounded witnesses") {
    Diagram d = rainbow_closure_diagram(torus_braid(2, 3));
    auto sys = build_system(d, {d.crossing_index("alpha1")}, {{d.crossing_index("r1,1")}});
    for (auto& row : sys.matrix) row[0] = Rational(0); // hand-built degenerate column
    sys.candidate_names[0] = "(zero)";
    auto verdict = only_trivial(sys);
    REQUIRE(verdict.kind == FeasibilityVerdict::Kind::Witness);
    CHECK_FALSE(verdict.maxima[0].has_value());
    CHECK(verdict.witness[0].sign() > 0);
    CHECK(integer_oracle(sys, 1).kind == FeasibilityVerdict::Kind::Witness);
}

TEST_CASE("rational and integer verdicts agree across the corpus") {
    int systems = 0;
    auto check_agreement = [&](const FeasibilitySystem& sys) {
        auto lp = only_trivial(sys);
        auto box = integer_oracle(sys, 10);
        if (lp.kind == FeasibilityVerdict::Kind::OnlyTrivial)
            CHECK(box.kind == FeasibilityVerdict::Kind::OnlyTrivial);
        ++systems;
    };
    for (auto [p, q] : {std::pair{2, 3}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}) {
        Diagram d = rainbow_closure_diagram(torus_braid(p, q));
        int alpha1 = d.crossing_index("alpha1");
        auto narrow = braid_chord_singletons(d);
        if (narrow.size() <= 12) check_agreement(build_system(d, {alpha1}, narrow));
        auto wide = all_singletons_except(d, alpha1);
        if (wide.size() <= 12) check_agreement(build_system(d, {alpha1}, wide));
    }
    Diagram l = load_fixture("left52.ldg");
    check_agreement(left52_system(l));
    CHECK(systems == 9);
}

TEST_CASE("integer oracle enforces its size limits") {
    Diagram d = rainbow_closure_diagram(torus_braid(4, 5));
    int alpha1 = d.crossing_index("alpha1");
    auto sys = build_system(d, {alpha1}, all_singletons_except(d, alpha1));
    REQUIRE(sys.cols() > 12);
    CHECK_THROWS_AS(integer_oracle(sys, 10), Error);
    auto small = build_system(d, {alpha1}, {{d.crossing_index("r1,1")}});
    CHECK_THROWS_AS(integer_oracle(small, 50), Error);
}

TEST_CASE("column subset sweep matches the a8/a9 pairing structure") {
    // candidates indexed (a8), (a9), (a8^2), (a9^2), (a8 a9): a witness
    // exists exactly when some a8-flavored and some a9-flavored column can
    // pair up to I(a8) + I(a9) = A4 - B6. Monotonicity under column
    // insertion follows from the mask lattice.
    Diagram d = load_fixture("left52.ldg");
    auto full = left52_system(d);
    std::vector<bool> witnessed(1 << 5, false);
    for (int mask = 0; mask < (1 << 5); ++mask) {
        FeasibilitySystem sub = full;
        sub.candidates.clear();
        sub.candidate_names.clear();
        for (auto& row : sub.matrix) row.clear();
        for (int j = 0; j < 5; ++j) {
            if (!(mask & (1 << j))) continue;
            sub.candidates.push_back(full.candidates[j]);
            sub.candidate_names.push_back(full.candidate_names[j]);
            for (int i = 0; i < full.rows(); ++i) sub.matrix[i].push_back(full.matrix[i][j]);
        }
        bool has_a8 = (mask & 0b00101) != 0; // (a8) or (a8^2)
        bool has_a9 = (mask & 0b01010) != 0; // (a9) or (a9^2)
        auto verdict = only_trivial(sub);
        witnessed[mask] = verdict.kind == FeasibilityVerdict::Kind::Witness;
        CHECK(witnessed[mask] == (has_a8 && has_a9));
    }
    for (int mask = 0; mask < (1 << 5); ++mask)
        for (int j = 0; j < 5; ++j)
            if (!(mask & (1 << j)))
                CHECK(witnessed[mask] <= witnessed[mask | (1 << j)]); // monotone
}

TEST_CASE("verdicts and systems serialize deterministically") {
    Diagram d = load_fixture("left52.ldg");
    auto sys = left52_system(d);
    auto v1 = only_trivial(sys);
    auto v2 = only_trivial(sys);
    CHECK(system_to_json(sys).dump() == system_to_json(sys).dump());
    CHECK(verdict_to_json(v1).dump() == verdict_to_json(v2).dump());
}

TEST_CASE("negative rhs is rejected per contract") {
    Diagram d = load_fixture("left52.ldg");
    auto sys = build_system(d, {d.crossing_index("a8")}, {{d.crossing_index("a9")}});
    CHECK_THROWS_AS(only_trivial(sys), Error);
}

TEST_CASE("integer oracle budget trips") {
    Diagram d = load_fixture("left52.ldg");
    auto sys = left52_system(d);
    CHECK_THROWS_AS(integer_oracle(sys, 20, 2), Error);
}
