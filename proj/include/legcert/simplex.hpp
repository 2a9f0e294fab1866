// include/legcert/simplex.hpp — exact rational linear programming.
//
// Dense two-phase simplex over Rational with Bland's rule, for problems
//     maximize c.x  subject to  A x <= b, x >= 0.
// Optimal solves return a verified dual vector, unbounded solves a ray, and
// infeasible solves a Farkas certificate. Sizes in this project stay tiny
// (tens of rows/columns), so clarity wins over pivoting tricks.

#pragma once

#include <vector>

#include "legcert/rational.hpp"

namespace legcert {

struct LpResult {
    enum class Status { Optimal, Unbounded, Infeasible };
    Status status = Status::Optimal;
    std::vector<Rational> x;       // Optimal: an argmax
    Rational objective;            // Optimal: c.x
    std::vector<Rational> dual;    // Optimal: y >= 0, y A >= c, y b = objective
    std::vector<Rational> ray;     // Unbounded: d >= 0, A d <= 0, c d > 0
    std::vector<Rational> farkas;  // Infeasible: y >= 0, y A >= 0, y b < 0
};

class SimplexSolver {
public:
    // A: m x n, b: m, c: n.
    static LpResult maximize(const std::vector<std::vector<Rational>>& A,
                             const std::vector<Rational>& b, const std::vector<Rational>& c) {
        SimplexSolver s(A, b, c);
        return s.run();
    }

private:
    int m_, n_;                 // constraints, structural variables
    int cols_;                  // structurals + slacks (+ artificials)
    int n_art_ = 0;
    std::vector<std::vector<Rational>> T_; // m rows of coefficients
    std::vector<Rational> rhs_;
    std::vector<int> basis_;
    std::vector<bool> negated_; // row was scaled by -1 to make rhs nonnegative
    std::vector<std::vector<Rational>> A_;
    std::vector<Rational> b_, c_;

    SimplexSolver(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                  const std::vector<Rational>& c)
        : m_(static_cast<int>(A.size())), n_(static_cast<int>(c.size())), A_(A), b_(b), c_(c) {
        for (const auto& row : A)
            if (static_cast<int>(row.size()) != n_) throw std::invalid_argument("simplex: ragged matrix");
        negated_.assign(m_, false);
        for (int i = 0; i < m_; ++i)
            if (b_[i].sign() < 0) negated_[i] = true;
        for (int i = 0; i < m_; ++i)
            if (negated_[i]) ++n_art_;
        cols_ = n_ + m_ + n_art_;
        T_.assign(m_, std::vector<Rational>(cols_, Rational(0)));
        rhs_.assign(m_, Rational(0));
        basis_.assign(m_, -1);
        int art = n_ + m_;
        for (int i = 0; i < m_; ++i) {
            Rational flip(negated_[i] ? -1 : 1);
            for (int j = 0; j < n_; ++j) T_[i][j] = flip * A_[i][j];
            T_[i][n_ + i] = flip;
            rhs_[i] = flip * b_[i];
            if (negated_[i]) {
                T_[i][art] = Rational(1);
                basis_[i] = art++;
            } else {
                basis_[i] = n_ + i;
            }
        }
    }

    // objective row for the current cost vector, priced out over the basis
    struct Objective {
        std::vector<Rational> red; // reduced costs (c_j - z_j), enter when > 0
        Rational value;
    };

    Objective price(const std::vector<Rational>& cost) const {
        Objective obj;
        obj.red.assign(cols_, Rational(0));
        obj.value = Rational(0);
        for (int j = 0; j < cols_; ++j) obj.red[j] = j < static_cast<int>(cost.size()) ? cost[j] : Rational(0);
        for (int i = 0; i < m_; ++i) {
            Rational cb = basis_[i] < static_cast<int>(cost.size()) ? cost[basis_[i]] : Rational(0);
            if (cb.is_zero()) continue;
            obj.value += cb * rhs_[i];
            for (int j = 0; j < cols_; ++j) obj.red[j] -= cb * T_[i][j];
        }
        return obj;
    }

    void pivot(int row, int col) {
        Rational piv = T_[row][col];
        for (int j = 0; j < cols_; ++j) T_[row][j] /= piv;
        rhs_[row] /= piv;
        for (int i = 0; i < m_; ++i) {
            if (i == row || T_[i][col].is_zero()) continue;
            Rational f = T_[i][col];
            for (int j = 0; j < cols_; ++j) T_[i][j] -= f * T_[row][j];
            rhs_[i] -= f * rhs_[row];
        }
        basis_[row] = col;
    }

    // Bland: entering = lowest admissible index with positive reduced cost;
    // leaving = min ratio, ties by lowest basis index. Returns false at
    // optimality; -1 row means unbounded in `unbounded_col`.
    bool step(const std::vector<Rational>& cost, int max_col, int& unbounded_col) {
        Objective obj = price(cost);
        int enter = -1;
        for (int j = 0; j < max_col; ++j)
            if (obj.red[j].sign() > 0) {
                enter = j;
                break;
            }
        if (enter < 0) return false;
        int leave = -1;
        Rational best;
        for (int i = 0; i < m_; ++i) {
            if (T_[i][enter].sign() <= 0) continue;
            Rational ratio = rhs_[i] / T_[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) {
            unbounded_col = enter;
            return true;
        }
        pivot(leave, enter);
        unbounded_col = -1;
        return true;
    }

    LpResult run() {
        LpResult res;
        // phase 1
        if (n_art_ > 0) {
            std::vector<Rational> cost(cols_, Rational(0));
            for (int j = n_ + m_; j < cols_; ++j) cost[j] = Rational(-1);
            int ub = -1;
            while (step(cost, cols_, ub)) {
                if (ub >= 0) throw std::logic_error("simplex: phase 1 unbounded");
            }
            Objective obj = price(cost);
            if (obj.value.sign() < 0) {
                res.status = LpResult::Status::Infeasible;
                res.farkas.assign(m_, Rational(0));
                for (int i = 0; i < m_; ++i) res.farkas[i] = -obj.red[n_ + i];
                verify_farkas(res.farkas);
                return res;
            }
            // drive any leftover degenerate artificials out of the basis
            for (int i = 0; i < m_; ++i) {
                if (basis_[i] < n_ + m_) continue;
                int col = -1;
                for (int j = 0; j < n_ + m_; ++j)
                    if (!T_[i][j].is_zero()) {
                        col = j;
                        break;
                    }
                if (col >= 0) pivot(i, col);
            }
        }
        // phase 2 (artificial columns stay out: max_col excludes them)
        std::vector<Rational> cost(cols_, Rational(0));
        for (int j = 0; j < n_; ++j) cost[j] = c_[j];
        int ub = -1;
        while (step(cost, n_ + m_, ub)) {
            if (ub >= 0) {
                res.status = LpResult::Status::Unbounded;
                res.ray.assign(n_, Rational(0));
                if (ub < n_) res.ray[ub] = Rational(1);
                for (int i = 0; i < m_; ++i)
                    if (basis_[i] < n_) res.ray[basis_[i]] = -T_[i][ub];
                verify_ray(res.ray);
                return res;
            }
        }
        Objective obj = price(cost);
        res.status = LpResult::Status::Optimal;
        res.x.assign(n_, Rational(0));
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) res.x[basis_[i]] = rhs_[i];
        res.objective = obj.value;
        res.dual.assign(m_, Rational(0));
        for (int i = 0; i < m_; ++i) res.dual[i] = -obj.red[n_ + i];
        verify_optimal(res);
        return res;
    }

    void verify_farkas(const std::vector<Rational>& y) const {
        Rational yb(0);
        for (int i = 0; i < m_; ++i) {
            if (y[i].sign() < 0) throw std::logic_error("simplex: farkas sign");
            yb += y[i] * b_[i];
        }
        if (yb.sign() >= 0) throw std::logic_error("simplex: farkas value");
        for (int j = 0; j < n_; ++j) {
            Rational col(0);
            for (int i = 0; i < m_; ++i) col += y[i] * A_[i][j];
            if (col.sign() < 0) throw std::logic_error("simplex: farkas column");
        }
    }

    void verify_ray(const std::vector<Rational>& d) const {
        Rational cd(0);
        for (int j = 0; j < n_; ++j) {
            if (d[j].sign() < 0) throw std::logic_error("simplex: ray sign");
            cd += c_[j] * d[j];
        }
        if (cd.sign() <= 0) throw std::logic_error("simplex: ray objective");
        for (int i = 0; i < m_; ++i) {
            Rational row(0);
            for (int j = 0; j < n_; ++j) row += A_[i][j] * d[j];
            if (row.sign() > 0) throw std::logic_error("simplex: ray row");
        }
    }

    void verify_optimal(const LpResult& res) const {
        Rational cx(0);
        for (int j = 0; j < n_; ++j) {
            if (res.x[j].sign() < 0) throw std::logic_error("simplex: primal sign");
            cx += c_[j] * res.x[j];
        }
        for (int i = 0; i < m_; ++i) {
            Rational row(0);
            for (int j = 0; j < n_; ++j) row += A_[i][j] * res.x[j];
            if (row > b_[i]) throw std::logic_error("simplex: primal row");
            if (res.dual[i].sign() < 0) throw std::logic_error("simplex: dual sign");
        }
        Rational yb(0);
        for (int i = 0; i < m_; ++i) yb += res.dual[i] * b_[i];
        for (int j = 0; j < n_; ++j) {
            Rational col(0);
            for (int i = 0; i < m_; ++i) col += res.dual[i] * A_[i][j];
            if (col < c_[j]) throw std::logic_error("simplex: dual column");
        }
        if (!(cx == res.objective) || !(yb == res.objective))
            throw std::logic_error("simplex: duality gap");
    }
};

} // namespace legcert
