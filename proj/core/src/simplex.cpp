#include "hypermatch/simplex.hpp"

#include <stdexcept>

namespace hypermatch {

namespace {

// Dictionary form: for each row i, x[basis[i]] + sum_j row[i][j] x_j = rhs[i],
// and z = z0 + sum_j cost[j] x_j. Columns cover every variable; basic columns
// are unit vectors.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : row_(rows, std::vector<Rational>(cols)), rhs_(rows), cost_(cols), basis_(rows)
    {
    }

    std::vector<std::vector<Rational>> row_;
    std::vector<Rational> rhs_;
    std::vector<Rational> cost_;
    Rational z0_ = 0;
    std::vector<std::size_t> basis_;
    int pivots_ = 0;

    std::size_t rows() const { return row_.size(); }
    std::size_t cols() const { return cost_.size(); }

    void pivot(std::size_t r, std::size_t col)
    {
        ++pivots_;
        const Rational p = row_[r][col];
        std::vector<Rational>& pr = row_[r];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < cols(); ++j) {
            if (pr[j] != 0) {
                pr[j] /= p;
                nz.push_back(j);
            }
        }
        rhs_[r] /= p;
        for (std::size_t i = 0; i < rows(); ++i) {
            if (i == r || row_[i][col] == 0) continue;
            const Rational f = row_[i][col];
            for (std::size_t j : nz) row_[i][j] -= f * pr[j];
            rhs_[i] -= f * rhs_[r];
        }
        if (cost_[col] != 0) {
            const Rational f = cost_[col];
            for (std::size_t j : nz) cost_[j] -= f * pr[j];
            z0_ += f * rhs_[r];
        }
        basis_[r] = col;
    }

    // Returns false if unbounded.
    bool optimize(std::size_t usable_cols)
    {
        while (true) {
            std::size_t enter = usable_cols;
            for (std::size_t j = 0; j < usable_cols; ++j)
                if (cost_[j] > 0) {
                    enter = j;
                    break;
                }
            if (enter == usable_cols) return true;
            std::size_t leave = rows();
            Rational best;
            for (std::size_t i = 0; i < rows(); ++i) {
                if (row_[i][enter] <= 0) continue;
                Rational ratio = rhs_[i] / row_[i][enter];
                if (leave == rows() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (leave == rows()) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp)
{
    const std::size_t m = lp.b.size();
    const std::size_t n = lp.c.size();
    if (lp.a.size() != m) throw std::invalid_argument("LP: row count mismatch");
    for (const auto& r : lp.a)
        if (r.size() != n) throw std::invalid_argument("LP: column count mismatch");

    // Columns: [0, n) originals, [n, n+m) slacks, n+m auxiliary.
    const std::size_t aux = n + m;
    Tableau t(m, n + m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t.row_[i][j] = lp.a[i][j];
        t.row_[i][n + i] = 1;
        t.row_[i][aux] = -1;
        t.rhs_[i] = lp.b[i];
        t.basis_[i] = n + i;
    }

    std::size_t most_negative = m;
    for (std::size_t i = 0; i < m; ++i)
        if (lp.b[i] < 0 && (most_negative == m || lp.b[i] < lp.b[most_negative])) most_negative = i;

    if (most_negative != m) {
        // Phase one: maximize -x_aux.
        t.cost_[aux] = -1;
        t.pivot(most_negative, aux);
        t.optimize(aux + 1);
        if (t.z0_ != 0) return {LpStatus::infeasible, 0, {}, t.pivots_};
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis_[i] != aux) continue;
            for (std::size_t j = 0; j < aux; ++j)
                if (t.row_[i][j] != 0) {
                    t.pivot(i, j);
                    break;
                }
        }
    }

    // Phase two objective, rewritten over the nonbasic columns.
    std::fill(t.cost_.begin(), t.cost_.end(), Rational(0));
    t.z0_ = 0;
    for (std::size_t j = 0; j < n; ++j) t.cost_[j] = lp.c[j];
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t bj = t.basis_[i];
        if (bj == aux || t.cost_[bj] == 0) continue;
        const Rational f = t.cost_[bj];
        for (std::size_t j = 0; j < t.cols(); ++j) t.cost_[j] -= f * t.row_[i][j];
        t.z0_ += f * t.rhs_[i];
    }
    t.cost_[aux] = 0;

    if (!t.optimize(aux)) return {LpStatus::unbounded, 0, {}, t.pivots_};

    LpSolution sol;
    sol.status = LpStatus::optimal;
    sol.value = t.z0_;
    sol.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis_[i] < n) sol.x[t.basis_[i]] = t.rhs_[i];
    sol.pivots = t.pivots_;
    return sol;
}

}  // namespace hypermatch
