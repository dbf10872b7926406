#include "infodesign/matrix.hpp"

#include "infodesign/error.hpp"

namespace infodesign {

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw DimensionMismatch("matrix row " + std::to_string(r) + " has wrong length");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
    return from_rows(rows, rows.empty() ? 0 : rows.front().size());
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Vector Matrix::row_vector(std::size_t r) const {
    auto s = row(r);
    return {s.begin(), s.end()};
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Vector Matrix::apply(std::span<const Scalar> v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector product: length mismatch");
    Vector out(rows_, Scalar(0));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (sgn((*this)(r, c)) != 0) out[r] += (*this)(r, c) * v[c];
    return out;
}

Vector Matrix::apply_transpose(std::span<const Scalar> v) const {
    if (v.size() != rows_) throw DimensionMismatch("vector-matrix product: length mismatch");
    Vector out(cols_, Scalar(0));
    for (std::size_t r = 0; r < rows_; ++r) {
        if (sgn(v[r]) == 0) continue;
        for (std::size_t c = 0; c < cols_; ++c) out[c] += v[r] * (*this)(r, c);
    }
    return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
        }
    return out;
}

void Matrix::append_row(std::span<const Scalar> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw DimensionMismatch("append_row: length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
}

}  // namespace infodesign
