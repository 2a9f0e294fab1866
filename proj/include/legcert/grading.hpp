// include/legcert/grading.hpp — the rational intersection grading.
//
// For a loop P in the surgered complement, the grading is
//     I(P) = sum_F wind(P, F) F + lk(P, knot) I(mu),
// with I(mu) = -1/(tb+1) sum_F wind(knot, F) F. Everything is exact; the
// module has no tolerance parameters.

#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "legcert/pushout.hpp"
#include "legcert/rational.hpp"

namespace legcert {

// Finitely supported rational vector over the bounded faces of a diagram.
struct GradingVector {
    std::vector<Rational> coef; // indexed by face; unbounded entry stays 0

    GradingVector() = default;
    explicit GradingVector(int faces) : coef(faces) {}

    Rational at(int face) const { return coef[face]; }

    GradingVector& operator+=(const GradingVector& o) {
        for (size_t i = 0; i < coef.size(); ++i) coef[i] += o.coef[i];
        return *this;
    }
    GradingVector& operator-=(const GradingVector& o) {
        for (size_t i = 0; i < coef.size(); ++i) coef[i] -= o.coef[i];
        return *this;
    }
    friend GradingVector operator+(GradingVector a, const GradingVector& b) { return a += b; }
    friend GradingVector operator-(GradingVector a, const GradingVector& b) { return a -= b; }
    friend GradingVector operator*(const Rational& s, GradingVector v) {
        for (auto& c : v.coef) c *= s;
        return v;
    }
    friend bool operator==(const GradingVector&, const GradingVector&) = default;

    bool nonnegative() const {
        for (const auto& c : coef)
            if (c.sign() < 0) return false;
        return true;
    }

    // {face label: "p/q"}, lexicographic keys, zeros omitted.
    nlohmann::json to_json(const Diagram& d) const {
        nlohmann::json j = nlohmann::json::object();
        for (size_t f = 0; f < coef.size(); ++f)
            if (!coef[f].is_zero()) j[d.faces[f].label] = coef[f].to_string();
        return j;
    }
    std::string to_string(const Diagram& d) const { return to_json(d).dump(); }
};

inline GradingVector grading_from_pair(const Diagram& d, const std::vector<int>& wind,
                                       const Rational& mu_multiple) {
    int tb = d.tb();
    if (tb == -1) throw Error(Errc::TbMinusOne, "rational grading needs tb != -1");
    auto knot_wind = d.winding_numbers();
    Rational mu_scale = mu_multiple * Rational(-1, tb + 1);
    GradingVector g(d.num_faces());
    for (int f = 0; f < d.num_faces(); ++f) {
        if (f == d.unbounded_face) continue;
        g.coef[f] = Rational(wind[f]) + mu_scale * Rational(knot_wind[f]);
    }
    return g;
}

// I(mu) = -1/(tb+1) * sum wind(knot, F) F.
inline GradingVector meridian_grading(const Diagram& d) {
    return grading_from_pair(d, std::vector<int>(d.num_faces(), 0), Rational(1));
}

// I of the longitude induced by a Seifert surface: the winding vector itself.
inline GradingVector longitude_grading(const Diagram& d) {
    return grading_from_pair(d, d.winding_numbers(), Rational(0));
}

inline GradingVector loop_grading(const Diagram& d, const PushOutLoop& loop) {
    return grading_from_pair(d, loop_winding(d, loop), Rational(linking_number(d, loop)));
}

// I of the orbit spelled by a cyclic chord word. Independent of the capping
// side; both are exposed for cross-checking.
inline GradingVector word_grading(const Diagram& d, const std::vector<int>& word,
                                  Capping capping = Capping::Positive) {
    return loop_grading(d, pushout_loop(d, word, capping));
}

inline GradingVector chord_grading(const Diagram& d, int crossing,
                                   Capping capping = Capping::Positive) {
    return word_grading(d, {crossing}, capping);
}

// I(target) - sum_j I(output_j), by linearity of the rational grading.
inline GradingVector difference_grading(const Diagram& d, const std::vector<int>& target,
                                        const std::vector<std::vector<int>>& outputs) {
    GradingVector g = word_grading(d, target);
    for (const auto& out : outputs) g -= word_grading(d, out);
    return g;
}

// Grading of a formal disjoint union of loops (used by the d-fold
// well-definedness property: I(d copies) = d * I(loop)).
inline GradingVector loops_grading(const Diagram& d, const std::vector<PushOutLoop>& loops) {
    GradingVector g(d.num_faces());
    for (const auto& loop : loops) g += loop_grading(d, loop);
    return g;
}

} // namespace legcert
