// include/legcert/feasibility.hpp — the positivity inequality systems.
//
// For a certification target t and candidate words w_j, the system is
//     I(t) - sum_j x_j I(w_j) >= 0 componentwise over bounded faces, x >= 0.
// only_trivial maximizes each x_j exactly; the verdict is OnlyTrivial when
// every maximum is zero, each certified by a dual vector y with
//     y >= 0,  (G^T y)_k >= delta_{jk},  <y, rhs> = 0.
// Deciding over rationals instead of integers is sound for OnlyTrivial and
// conservative for Witness; integer_oracle cross-checks on a box.

#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "legcert/grading.hpp"
#include "legcert/simplex.hpp"

namespace legcert {

struct FeasibilitySystem {
    std::vector<int> faces;                    // bounded faces in label order
    std::vector<std::string> face_labels;
    std::vector<int> target;                   // chord indices
    std::vector<std::vector<int>> candidates;  // chord indices per candidate
    std::vector<std::string> candidate_names;  // "(a8 a9)" style
    std::vector<std::vector<Rational>> matrix; // rows = faces, columns = candidates
    std::vector<Rational> rhs;                 // target grading per face

    int rows() const { return static_cast<int>(faces.size()); }
    int cols() const { return static_cast<int>(candidates.size()); }
};

inline std::string word_name(const Diagram& d, const std::vector<int>& word) {
    std::string out = "(";
    for (size_t i = 0; i < word.size(); ++i) {
        if (i) out += " ";
        out += d.crossings[word[i]].label;
    }
    return out + ")";
}

inline FeasibilitySystem build_system(const Diagram& d, const std::vector<int>& target,
                                      const std::vector<std::vector<int>>& candidates) {
    FeasibilitySystem sys;
    sys.faces = d.bounded_faces();
    std::sort(sys.faces.begin(), sys.faces.end(),
              [&](int a, int b) { return d.faces[a].label < d.faces[b].label; });
    for (int f : sys.faces) sys.face_labels.push_back(d.faces[f].label);
    sys.target = target;
    sys.candidates = candidates;
    GradingVector t = word_grading(d, target);
    for (int f : sys.faces) sys.rhs.push_back(t.at(f));
    sys.matrix.assign(sys.rows(), std::vector<Rational>(candidates.size(), Rational(0)));
    for (size_t j = 0; j < candidates.size(); ++j) {
        sys.candidate_names.push_back(word_name(d, candidates[j]));
        GradingVector g = word_grading(d, candidates[j]);
        for (int i = 0; i < sys.rows(); ++i) sys.matrix[i][j] = g.at(sys.faces[i]);
    }
    return sys;
}

struct FeasibilityVerdict {
    enum class Kind { OnlyTrivial, Witness };
    Kind kind = Kind::OnlyTrivial;
    // per candidate: finite maximum, or nullopt when unbounded
    std::vector<std::optional<Rational>> maxima;
    // per candidate with maximum zero: the certifying dual vector
    std::vector<std::vector<Rational>> duals;
    std::vector<Rational> witness; // Witness: nonzero feasible point
    int witness_variable = -1;
    int solved_vars = 0; // prefix of candidates whose maxima were solved
};

// Largest t with t * column_j <= rhs, holding every other variable at zero.
// This is the one-candidate-at-a-time elimination; the joint LP in
// only_trivial is the decision authority, but the solo maxima make useful
// report material (a candidate with solo maximum 0 is individually excluded
// by some face).
inline std::vector<std::optional<Rational>> solo_maxima(const FeasibilitySystem& sys) {
    std::vector<std::optional<Rational>> out(sys.cols());
    for (int j = 0; j < sys.cols(); ++j) {
        bool bounded = false;
        Rational best(0);
        for (int i = 0; i < sys.rows(); ++i) {
            if (sys.matrix[i][j].sign() <= 0) continue;
            Rational t = sys.rhs[i] / sys.matrix[i][j];
            if (!bounded || t < best) best = t;
            bounded = true;
        }
        if (bounded) out[j] = best;
    }
    return out;
}

// Substitutes x into every row; the fundamental soundness check reused by
// the certificate verifier.
inline bool satisfies_rows(const FeasibilitySystem& sys, const std::vector<Rational>& x) {
    if (static_cast<int>(x.size()) != sys.cols()) return false;
    for (const auto& v : x)
        if (v.sign() < 0) return false;
    for (int i = 0; i < sys.rows(); ++i) {
        Rational acc(0);
        for (int j = 0; j < sys.cols(); ++j) acc += sys.matrix[i][j] * x[j];
        if (acc > sys.rhs[i]) return false;
    }
    return true;
}

// Decides the system by maximizing each variable in turn. When
// stop_after_witness is set (the default), the scan ends at the first
// variable with a positive maximum; the remaining maxima stay unsolved,
// which keeps runs with very wide candidate sets affordable.
inline FeasibilityVerdict only_trivial(const FeasibilitySystem& sys, bool stop_after_witness = true) {
    for (const auto& r : sys.rhs)
        if (r.sign() < 0)
            throw Error(Errc::Infeasible,
                        "target grading has a negative face coefficient; x = 0 is not feasible");
    FeasibilityVerdict verdict;
    verdict.maxima.resize(sys.cols());
    verdict.duals.resize(sys.cols());
    for (int j = 0; j < sys.cols(); ++j) {
        if (stop_after_witness && verdict.kind == FeasibilityVerdict::Kind::Witness) break;
        verdict.solved_vars = j + 1;
        std::vector<Rational> c(sys.cols(), Rational(0));
        c[j] = Rational(1);
        LpResult lp = SimplexSolver::maximize(sys.matrix, sys.rhs, c);
        if (lp.status == LpResult::Status::Infeasible)
            throw Error(Errc::Infeasible, "system infeasible despite nonnegative rhs");
        if (lp.status == LpResult::Status::Unbounded) {
            verdict.maxima[j] = std::nullopt;
            if (verdict.kind == FeasibilityVerdict::Kind::OnlyTrivial) {
                verdict.kind = FeasibilityVerdict::Kind::Witness;
                verdict.witness = lp.ray; // 0 + ray is feasible since rhs >= 0
                verdict.witness_variable = j;
            }
            continue;
        }
        verdict.maxima[j] = lp.objective;
        if (lp.objective.sign() > 0) {
            if (verdict.kind == FeasibilityVerdict::Kind::OnlyTrivial) {
                verdict.kind = FeasibilityVerdict::Kind::Witness;
                verdict.witness = lp.x;
                verdict.witness_variable = j;
            }
        } else {
            verdict.duals[j] = lp.dual;
        }
    }
    if (verdict.kind == FeasibilityVerdict::Kind::Witness &&
        !satisfies_rows(sys, verdict.witness))
        throw std::logic_error("feasibility: witness failed re-verification");
    return verdict;
}

// Exhaustive check over nonnegative integer vectors in [0, box]^n, in
// lexicographic order; verdict semantics are restricted to the box. Rows are
// rescaled to 64-bit integers, and a branch is cut as soon as some row can
// no longer come back under its bound even with the most negative completion.
inline FeasibilityVerdict integer_oracle(const FeasibilitySystem& sys, int box,
                                         long long budget = 50'000'000, int max_vars = 12,
                                         int max_box = 20) {
    const int n = sys.cols(), m = sys.rows();
    if (n > max_vars)
        throw Error(Errc::BudgetExceeded, std::to_string(n) + " variables exceed the oracle limit of " +
                                              std::to_string(max_vars));
    if (box > max_box)
        throw Error(Errc::BudgetExceeded, "box " + std::to_string(box) + " exceeds the oracle limit of " +
                                              std::to_string(max_box));
    // integer-scale each row: lcm of denominators is tiny here
    std::vector<std::vector<long long>> M(m, std::vector<long long>(n, 0));
    std::vector<long long> rhs(m, 0);
    for (int i = 0; i < m; ++i) {
        BigInt lcm(1);
        auto fold = [&](const Rational& v) {
            BigInt g = BigInt::gcd(lcm, v.den());
            BigInt q, r;
            BigInt::divmod(v.den(), g, q, r);
            lcm = lcm * q;
        };
        for (int j = 0; j < n; ++j) fold(sys.matrix[i][j]);
        fold(sys.rhs[i]);
        Rational scale{lcm, BigInt(1)};
        auto to_ll = [&](const Rational& v) {
            Rational s = v * scale;
            return std::atoll(s.num().to_string().c_str());
        };
        for (int j = 0; j < n; ++j) M[i][j] = to_ll(sys.matrix[i][j]);
        rhs[i] = to_ll(sys.rhs[i]);
    }
    // most negative completion possible from column j onward
    std::vector<std::vector<long long>> suffix_min(m, std::vector<long long>(n + 1, 0));
    for (int i = 0; i < m; ++i)
        for (int j = n - 1; j >= 0; --j)
            suffix_min[i][j] = suffix_min[i][j + 1] + (M[i][j] < 0 ? M[i][j] * box : 0);

    FeasibilityVerdict verdict;
    verdict.kind = FeasibilityVerdict::Kind::OnlyTrivial;
    verdict.maxima.assign(n, Rational(0));
    verdict.solved_vars = n;
    verdict.duals.resize(n);
    std::vector<int> x(n, 0);
    std::vector<std::vector<long long>> partial(n + 1, std::vector<long long>(m, 0));
    long long nodes = 0;
    std::function<bool(int)> dfs = [&](int depth) -> bool {
        if (++nodes > budget) throw Error(Errc::BudgetExceeded, "integer oracle budget exhausted");
        if (depth == n) {
            bool nonzero = false;
            for (int v : x) nonzero |= v != 0;
            return nonzero;
        }
        for (int v = 0; v <= box; ++v) {
            x[depth] = v;
            bool prune = false;
            for (int i = 0; i < m; ++i) {
                partial[depth + 1][i] = partial[depth][i] + static_cast<long long>(v) * M[i][depth];
                if (partial[depth + 1][i] + suffix_min[i][depth + 1] > rhs[i]) prune = true;
            }
            if (!prune && dfs(depth + 1)) return true;
        }
        x[depth] = 0;
        return false;
    };
    if (dfs(0)) {
        verdict.kind = FeasibilityVerdict::Kind::Witness;
        for (int v : x) verdict.witness.push_back(Rational(v));
        for (int j = 0; j < n; ++j)
            if (x[j] != 0) {
                verdict.witness_variable = j;
                break;
            }
        if (!satisfies_rows(sys, verdict.witness))
            throw std::logic_error("feasibility: integer witness failed re-verification");
    }
    return verdict;
}

// --- serialization -------------------------------------------------------------

inline nlohmann::json system_to_json(const FeasibilitySystem& sys) {
    nlohmann::json j;
    j["faces"] = sys.face_labels;
    j["candidates"] = nlohmann::json::array();
    for (size_t k = 0; k < sys.candidates.size(); ++k) j["candidates"].push_back(sys.candidate_names[k]);
    j["matrix"] = nlohmann::json::array();
    for (const auto& row : sys.matrix) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& v : row) jr.push_back(v.to_string());
        j["matrix"].push_back(jr);
    }
    nlohmann::json rhs = nlohmann::json::array();
    for (const auto& v : sys.rhs) rhs.push_back(v.to_string());
    j["rhs"] = rhs;
    return j;
}

inline nlohmann::json verdict_to_json(const FeasibilityVerdict& v) {
    nlohmann::json j;
    j["kind"] = v.kind == FeasibilityVerdict::Kind::OnlyTrivial ? "OnlyTrivial" : "Witness";
    nlohmann::json maxima = nlohmann::json::array();
    for (int k = 0; k < static_cast<int>(v.maxima.size()); ++k) {
        if (k >= v.solved_vars) maxima.push_back("unsolved");
        else maxima.push_back(v.maxima[k] ? nlohmann::json(v.maxima[k]->to_string())
                                          : nlohmann::json("unbounded"));
    }
    j["maxima"] = maxima;
    nlohmann::json duals = nlohmann::json::array();
    for (const auto& y : v.duals) {
        nlohmann::json jy = nlohmann::json::array();
        for (const auto& val : y) jy.push_back(val.to_string());
        duals.push_back(jy);
    }
    j["duals"] = duals;
    if (v.kind == FeasibilityVerdict::Kind::Witness) {
        nlohmann::json w = nlohmann::json::array();
        for (const auto& val : v.witness) w.push_back(val.to_string());
        j["witness"] = w;
        j["witness_variable"] = v.witness_variable;
    }
    return j;
}

} // namespace legcert
