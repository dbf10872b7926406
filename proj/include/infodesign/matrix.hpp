#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "infodesign/scalar.hpp"

namespace infodesign {

/// Dense row-major matrix of exact rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

    /// Builds from explicit rows; all rows must have `cols` entries.
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
    static Matrix from_rows(const std::vector<Vector>& rows);
    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    Vector row_vector(std::size_t r) const;
    Vector column(std::size_t c) const;

    Matrix transpose() const;
    /// m·v
    Vector apply(std::span<const Scalar> v) const;
    /// vᵀ·m
    Vector apply_transpose(std::span<const Scalar> v) const;
    Matrix operator*(const Matrix& other) const;

    void append_row(std::span<const Scalar> r);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

}  // namespace infodesign
