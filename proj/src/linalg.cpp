#include "infodesign/linalg.hpp"

#include "infodesign/error.hpp"

namespace infodesign {

namespace {

using IntRow = std::vector<mpz_class>;

// Divides a row by the gcd of its entries.
void normalize(IntRow& row) {
    mpz_class g = 0;
    for (const auto& x : row)
        if (sgn(x) != 0) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
            if (g == 1) return;
        }
    if (sgn(g) == 0 || g == 1) return;
    for (auto& x : row)
        if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// row ← a·row − b·pivot_row, restricted to columns ≥ from.
void eliminate(IntRow& row, const IntRow& pivot_row, std::size_t from, const mpz_class& a, const mpz_class& b) {
    for (std::size_t j = from; j < row.size(); ++j) {
        if (sgn(pivot_row[j]) == 0) {
            if (sgn(row[j]) != 0) row[j] *= a;
            continue;
        }
        row[j] *= a;
        mpz_submul(row[j].get_mpz_t(), b.get_mpz_t(), pivot_row[j].get_mpz_t());
    }
}

}  // namespace

// Fraction-free elimination on integer-scaled rows, then one division per entry.
Echelon rref(Matrix m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<IntRow> a(rows, IntRow(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < cols; ++j)
            if (sgn(m(r, j)) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, j).get_den_mpz_t());
        for (std::size_t j = 0; j < cols; ++j)
            if (sgn(m(r, j)) != 0) a[r][j] = m(r, j).get_num() * (l / m(r, j).get_den());
        normalize(a[r]);
    }

    Echelon out;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols && lead < rows; ++c) {
        std::size_t pivot = lead;
        while (pivot < rows && sgn(a[pivot][c]) == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[lead]);
        for (std::size_t r = lead + 1; r < rows; ++r) {
            if (sgn(a[r][c]) == 0) continue;
            mpz_class g = gcd(a[lead][c], a[r][c]);
            mpz_class ap = a[lead][c] / g;
            mpz_class ar = a[r][c] / g;
            eliminate(a[r], a[lead], c, ap, ar);
            normalize(a[r]);
        }
        out.pivots.push_back(c);
        ++lead;
    }
    for (std::size_t k = out.pivots.size(); k-- > 0;) {
        const std::size_t c = out.pivots[k];
        for (std::size_t r = 0; r < k; ++r) {
            if (sgn(a[r][c]) == 0) continue;
            mpz_class g = gcd(a[k][c], a[r][c]);
            mpz_class ak = a[k][c] / g;
            mpz_class ar = a[r][c] / g;
            eliminate(a[r], a[k], out.pivots[r], ak, ar);
            normalize(a[r]);
        }
    }

    Matrix reduced(rows, cols);
    for (std::size_t k = 0; k < out.pivots.size(); ++k) {
        const mpz_class& piv = a[k][out.pivots[k]];
        for (std::size_t j = 0; j < cols; ++j) {
            if (sgn(a[k][j]) == 0) continue;
            Scalar& x = reduced(k, j);
            x = Scalar(a[k][j], piv);
            x.canonicalize();
        }
    }
    out.reduced = std::move(reduced);
    return out;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::optional<Vector> solve_linear(const Matrix& m, const Vector& b) {
    if (b.size() != m.rows()) throw DimensionMismatch("solve_linear: rhs length mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    auto e = rref(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    Vector x(m.cols(), Scalar(0));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, m.cols());
    return x;
}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
    Subspace s(ambient_dim);
    if (vectors.empty()) return s;
    auto e = rref(Matrix::from_rows(vectors, ambient_dim));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) s.basis_.push_back(e.reduced.row_vector(i));
    return s;
}

Subspace Subspace::whole(std::size_t ambient_dim) {
    Subspace s(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) s.basis_.push_back(unit_vector(ambient_dim, i));
    return s;
}

bool Subspace::contains(const Vector& v) const {
    if (v.size() != ambient_dim_) throw DimensionMismatch("subspace membership: length mismatch");
    // Reduce v against the RREF basis; each basis row owns a distinct pivot column.
    Vector r = v;
    for (const auto& b : basis_) {
        std::size_t p = 0;
        while (sgn(b[p]) == 0) ++p;
        if (sgn(r[p]) == 0) continue;
        Scalar f = r[p];
        for (std::size_t j = 0; j < ambient_dim_; ++j) r[j] -= f * b[j];
    }
    for (const auto& x : r)
        if (sgn(x) != 0) return false;
    return true;
}

Matrix Subspace::as_rows() const { return Matrix::from_rows(basis_, ambient_dim_); }

Subspace nullspace(const Matrix& m) {
    const std::size_t n = m.cols();
    auto e = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots) is_pivot[p] = true;

    std::vector<Vector> vectors;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vector v(n, Scalar(0));
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
        vectors.push_back(std::move(v));
    }
    return Subspace::span(n, vectors);
}

Subspace orthogonal_complement(const Subspace& s) {
    if (s.is_zero()) return Subspace::whole(s.ambient_dim());
    return nullspace(s.as_rows());
}

bool subspace_contains(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("subspace_contains: ambient dimensions differ");
    for (const auto& v : b.basis())
        if (!a.contains(v)) return false;
    return true;
}

}  // namespace infodesign
