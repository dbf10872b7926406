#include "infodesign/lp.hpp"

#include "infodesign/error.hpp"
#include "infodesign/linalg.hpp"

namespace infodesign {

std::string to_string(LpStatus s) {
    switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

LinearProgram LinearProgram::nonnegative(std::size_t n, Sense sense) {
    LinearProgram p;
    p.sense = sense;
    p.objective.assign(n, Scalar(0));
    p.eq = Matrix(0, n);
    p.le = Matrix(0, n);
    p.lower.assign(n, Scalar(0));
    return p;
}

LinearProgram LinearProgram::free(std::size_t n, Sense sense) {
    LinearProgram p = nonnegative(n, sense);
    p.lower.assign(n, std::nullopt);
    return p;
}

void LinearProgram::add_equality(std::span<const Scalar> row, const Scalar& rhs) {
    if (row.size() != num_vars()) throw DimensionMismatch("equality row length differs from variable count");
    if (eq.rows() == 0) eq = Matrix(0, num_vars());
    eq.append_row(row);
    eq_rhs.push_back(rhs);
}

void LinearProgram::add_inequality(std::span<const Scalar> row, const Scalar& rhs) {
    if (row.size() != num_vars()) throw DimensionMismatch("inequality row length differs from variable count");
    if (le.rows() == 0) le = Matrix(0, num_vars());
    le.append_row(row);
    le_rhs.push_back(rhs);
}

void LinearProgram::validate() const {
    const std::size_t n = num_vars();
    if (objective.size() != n) throw DimensionMismatch("objective length differs from variable count");
    if (eq.rows() > 0 && eq.cols() != n) throw DimensionMismatch("equality matrix width differs from variable count");
    if (le.rows() > 0 && le.cols() != n) throw DimensionMismatch("inequality matrix width differs from variable count");
    if (eq.rows() != eq_rhs.size()) throw DimensionMismatch("equality rhs length differs from row count");
    if (le.rows() != le_rhs.size()) throw DimensionMismatch("inequality rhs length differs from row count");
}

Vector LpOutcome::multipliers() const {
    Vector v = eq_duals;
    v.insert(v.end(), le_duals.begin(), le_duals.end());
    return v;
}

namespace {

// Standard form: min cᵀx  s.t.  A x = b,  x ≥ 0,  b ≥ 0.
// Column layout: structural columns, then one slack per ≤ row, then one artificial per row.
struct StandardForm {
    std::size_t rows = 0;
    std::size_t structural = 0;  // structural + slack columns
    Matrix a;                    // rows × (structural + rows), artificials included
    Vector b;
    Vector cost;                 // phase-2 cost, length structural
    std::vector<int> flip;       // +1 / -1 applied to each original row
    Scalar offset;               // c·l from shifting bounded variables

    // Original variable j maps to column pos[j]; free variables also own neg[j] = pos[j] + 1.
    std::vector<std::size_t> pos;
    std::vector<bool> split;
};

StandardForm standardize(const LinearProgram& p, bool zero_objective) {
    const std::size_t n = p.num_vars();
    const std::size_t meq = p.eq.rows();
    const std::size_t mle = p.le.rows();
    StandardForm sf;
    sf.rows = meq + mle;

    std::size_t col = 0;
    sf.pos.resize(n);
    sf.split.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        sf.pos[j] = col;
        sf.split[j] = !p.lower[j].has_value();
        col += sf.split[j] ? 2 : 1;
    }
    const std::size_t first_slack = col;
    sf.structural = col + mle;

    Vector c(n, Scalar(0));
    if (!zero_objective) {
        c = p.objective;
        if (p.sense == Sense::Maximize)
            for (auto& x : c) x = -x;
    }

    sf.cost.assign(sf.structural, Scalar(0));
    sf.offset = 0;
    for (std::size_t j = 0; j < n; ++j) {
        sf.cost[sf.pos[j]] = c[j];
        if (sf.split[j]) sf.cost[sf.pos[j] + 1] = -c[j];
        else sf.offset += c[j] * *p.lower[j];
    }

    sf.a = Matrix(sf.rows, sf.structural + sf.rows);
    sf.b.assign(sf.rows, Scalar(0));
    sf.flip.assign(sf.rows, 1);
    for (std::size_t i = 0; i < sf.rows; ++i) {
        const bool is_eq = i < meq;
        auto src = is_eq ? p.eq.row(i) : p.le.row(i - meq);
        Scalar rhs = is_eq ? p.eq_rhs[i] : p.le_rhs[i - meq];
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(src[j]) == 0) continue;
            sf.a(i, sf.pos[j]) = src[j];
            if (sf.split[j]) sf.a(i, sf.pos[j] + 1) = -src[j];
            else rhs -= src[j] * *p.lower[j];
        }
        if (!is_eq) sf.a(i, first_slack + (i - meq)) = 1;
        if (sgn(rhs) < 0) {
            sf.flip[i] = -1;
            rhs = -rhs;
            for (std::size_t j = 0; j < sf.structural; ++j) sf.a(i, j) = -sf.a(i, j);
        }
        sf.b[i] = rhs;
        sf.a(i, sf.structural + i) = 1;
    }
    return sf;
}

class Tableau {
public:
    explicit Tableau(const StandardForm& sf)
        : rows_(sf.rows), cols_(sf.a.cols()), t_(sf.a), rhs_(sf.b), basis_(sf.rows) {
        for (std::size_t i = 0; i < rows_; ++i) basis_[i] = sf.structural + i;
    }

    // Loads reduced costs for `cost` (one entry per column) relative to the current basis.
    void set_cost(const Vector& cost) {
        cost_ = cost;
        reduced_ = cost;
        objective_ = 0;
        for (std::size_t i = 0; i < rows_; ++i) {
            const Scalar& cb = cost[basis_[i]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j < cols_; ++j)
                if (sgn(t_(i, j)) != 0) reduced_[j] -= cb * t_(i, j);
            objective_ += cb * rhs_[i];
        }
    }

    // Runs Bland's rule over columns [0, allowed). Returns the unbounded column, if any.
    std::optional<std::size_t> optimize(std::size_t allowed) {
        for (;;) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < allowed; ++j) {
                if (sgn(reduced_[j]) < 0) {
                    entering = j;
                    break;
                }
            }
            if (!entering) return std::nullopt;
            const std::size_t q = *entering;

            std::optional<std::size_t> leaving;
            Scalar best;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (sgn(t_(i, q)) <= 0) continue;
                Scalar ratio = rhs_[i] / t_(i, q);
                if (!leaving || ratio < best || (ratio == best && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best = ratio;
                }
            }
            if (!leaving) return q;
            pivot(*leaving, q);
        }
    }

    void pivot(std::size_t r, std::size_t q) {
        Scalar inv = 1 / t_(r, q);
        auto prow = t_.row(r);
        for (auto& x : prow)
            if (sgn(x) != 0) x *= inv;
        rhs_[r] *= inv;

        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < cols_; ++j)
            if (sgn(prow[j]) != 0) nz.push_back(j);

        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || sgn(t_(i, q)) == 0) continue;
            Scalar f = t_(i, q);
            auto row = t_.row(i);
            for (auto j : nz) row[j] -= f * prow[j];
            rhs_[i] -= f * rhs_[r];
        }
        if (sgn(reduced_[q]) != 0) {
            Scalar f = reduced_[q];
            for (auto j : nz) reduced_[j] -= f * prow[j];
            objective_ += f * rhs_[r];
        }
        basis_[r] = q;
    }

    // Pivots basic artificials (column ≥ first_art) out of the basis where a structural
    // column can replace them. Rows with no such column are redundant and keep their
    // artificial basic at level zero.
    void expel_artificials(std::size_t first_art) {
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < first_art) continue;
            for (std::size_t j = 0; j < first_art; ++j) {
                if (sgn(t_(i, j)) != 0) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    Vector solution() const {
        Vector x(cols_, Scalar(0));
        for (std::size_t i = 0; i < rows_; ++i) x[basis_[i]] = rhs_[i];
        return x;
    }

    Vector ray(std::size_t q) const {
        Vector d(cols_, Scalar(0));
        d[q] = 1;
        for (std::size_t i = 0; i < rows_; ++i) d[basis_[i]] = -t_(i, q);
        return d;
    }

    // Simplex multipliers y solving Bᵀy = c_B against the untouched standard-form matrix.
    Vector duals(const Matrix& a) const {
        Matrix bt(rows_, rows_);
        Vector cb(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            cb[i] = cost_[basis_[i]];
            for (std::size_t k = 0; k < rows_; ++k) bt(i, k) = a(k, basis_[i]);
        }
        auto y = solve_linear(bt, cb);
        if (!y) throw Error("simplex basis is singular");
        return *y;
    }

    const Scalar& objective() const { return objective_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    Matrix t_;
    Vector rhs_;
    std::vector<std::size_t> basis_;
    Vector cost_;
    Vector reduced_;
    Scalar objective_;
};

Vector recover_point(const LinearProgram& p, const StandardForm& sf, const Vector& x_std) {
    Vector x(p.num_vars());
    for (std::size_t j = 0; j < p.num_vars(); ++j) {
        if (sf.split[j]) x[j] = x_std[sf.pos[j]] - x_std[sf.pos[j] + 1];
        else x[j] = *p.lower[j] + x_std[sf.pos[j]];
    }
    return x;
}

void recover_multipliers(const LinearProgram& p, const StandardForm& sf, const Vector& y, int sign, LpOutcome& out) {
    const std::size_t meq = p.eq.rows();
    out.eq_duals.resize(meq);
    out.le_duals.resize(p.le.rows());
    for (std::size_t i = 0; i < sf.rows; ++i) {
        Scalar v = y[i] * sf.flip[i] * sign;
        if (i < meq) out.eq_duals[i] = v;
        else out.le_duals[i - meq] = v;
    }
}

LpOutcome run(const LinearProgram& p, bool zero_objective) {
    p.validate();
    StandardForm sf = standardize(p, zero_objective);
    Tableau tab(sf);
    const std::size_t first_art = sf.structural;

    Vector phase1(sf.a.cols(), Scalar(0));
    for (std::size_t i = 0; i < sf.rows; ++i) phase1[first_art + i] = 1;
    tab.set_cost(phase1);
    tab.optimize(first_art);

    LpOutcome out;
    if (sgn(tab.objective()) > 0) {
        out.status = LpStatus::Infeasible;
        recover_multipliers(p, sf, tab.duals(sf.a), 1, out);
        return out;
    }

    tab.expel_artificials(first_art);
    Vector phase2(sf.a.cols(), Scalar(0));
    for (std::size_t j = 0; j < sf.structural; ++j) phase2[j] = sf.cost[j];
    tab.set_cost(phase2);
    auto unbounded_col = tab.optimize(first_art);

    out.point = recover_point(p, sf, tab.solution());
    if (unbounded_col) {
        out.status = LpStatus::Unbounded;
        Vector d = tab.ray(*unbounded_col);
        out.ray.resize(p.num_vars());
        for (std::size_t j = 0; j < p.num_vars(); ++j)
            out.ray[j] = sf.split[j] ? Scalar(d[sf.pos[j]] - d[sf.pos[j] + 1]) : d[sf.pos[j]];
        return out;
    }

    out.status = LpStatus::Optimal;
    out.value = zero_objective ? Scalar(0) : dot(p.objective, out.point);
    const int sign = (!zero_objective && p.sense == Sense::Maximize) ? -1 : 1;
    recover_multipliers(p, sf, tab.duals(sf.a), sign, out);
    return out;
}

}  // namespace

LpOutcome solve_lp(const LinearProgram& p) { return run(p, false); }

LpOutcome feasible_point(const LinearProgram& p) { return run(p, true); }

bool is_feasible(const LinearProgram& p, std::span<const Scalar> x) {
    if (x.size() != p.num_vars()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (p.lower[j] && x[j] < *p.lower[j]) return false;
    for (std::size_t i = 0; i < p.eq.rows(); ++i)
        if (dot(p.eq.row(i), x) != p.eq_rhs[i]) return false;
    for (std::size_t i = 0; i < p.le.rows(); ++i)
        if (dot(p.le.row(i), x) > p.le_rhs[i]) return false;
    return true;
}

namespace {

// Checks multiplier signs for a "min"-oriented certificate against costs c and
// returns the dual objective, or nullopt on a sign violation.
std::optional<Scalar> dual_objective(const LinearProgram& p, const Vector& c, const Vector& y, const Vector& z,
                                     int orientation) {
    if (y.size() != p.eq.rows() || z.size() != p.le.rows()) return std::nullopt;
    Vector r = c;
    const std::size_t n = p.num_vars();
    if (p.eq.rows() > 0) {
        auto t = p.eq.apply_transpose(y);
        for (std::size_t j = 0; j < n; ++j) r[j] -= t[j];
    }
    if (p.le.rows() > 0) {
        auto t = p.le.apply_transpose(z);
        for (std::size_t j = 0; j < n; ++j) r[j] -= t[j];
    }
    for (const auto& zi : z)
        if (sgn(zi) * orientation > 0) return std::nullopt;
    Scalar value = dot(p.eq_rhs, y) + dot(p.le_rhs, z);
    for (std::size_t j = 0; j < n; ++j) {
        if (!p.lower[j]) {
            if (sgn(r[j]) != 0) return std::nullopt;
        } else {
            if (sgn(r[j]) * orientation < 0) return std::nullopt;
            value += *p.lower[j] * r[j];
        }
    }
    return value;
}

}  // namespace

bool verify_outcome(const LinearProgram& p, const LpOutcome& out) {
    p.validate();
    switch (out.status) {
    case LpStatus::Optimal: {
        if (!is_feasible(p, out.point) || dot(p.objective, out.point) != out.value) return false;
        const int orientation = p.sense == Sense::Minimize ? 1 : -1;
        auto dv = dual_objective(p, p.objective, out.eq_duals, out.le_duals, orientation);
        return dv && *dv == out.value;
    }
    case LpStatus::Infeasible: {
        Vector zero(p.num_vars(), Scalar(0));
        auto dv = dual_objective(p, zero, out.eq_duals, out.le_duals, 1);
        return dv && sgn(*dv) > 0;
    }
    case LpStatus::Unbounded: {
        const auto& d = out.ray;
        if (!is_feasible(p, out.point) || d.size() != p.num_vars()) return false;
        for (std::size_t j = 0; j < d.size(); ++j)
            if (p.lower[j] && sgn(d[j]) < 0) return false;
        for (std::size_t i = 0; i < p.eq.rows(); ++i)
            if (sgn(dot(p.eq.row(i), d)) != 0) return false;
        for (std::size_t i = 0; i < p.le.rows(); ++i)
            if (sgn(dot(p.le.row(i), d)) > 0) return false;
        const int improve = sgn(dot(p.objective, d));
        return p.sense == Sense::Minimize ? improve < 0 : improve > 0;
    }
    }
    return false;
}

}  // namespace infodesign
