#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "infodesign/matrix.hpp"

namespace infodesign {

/// Result of exact Gauss-Jordan elimination.
struct Echelon {
    Matrix reduced;                  // reduced row echelon form, zero rows kept at the bottom
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

Echelon rref(Matrix m);
std::size_t rank(const Matrix& m);

/// Solves m·x = b exactly. Returns one solution (free variables set to zero) or
/// nullopt when the system is inconsistent.
std::optional<Vector> solve_linear(const Matrix& m, const Vector& b);

/// A linear subspace of Qⁿ held by its canonical basis: the nonzero rows of the
/// reduced row echelon form of any spanning set. Two subspaces are equal iff
/// their canonical bases are identical entrywise.
class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}
    /// Span of the given vectors (need not be independent).
    static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors);
    static Subspace whole(std::size_t ambient_dim);

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<Vector>& basis() const noexcept { return basis_; }
    bool is_zero() const noexcept { return basis_.empty(); }

    /// Exact membership test.
    bool contains(const Vector& v) const;
    /// Basis vectors stacked as rows (dim × ambient_dim).
    Matrix as_rows() const;

    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    std::size_t ambient_dim_;
    std::vector<Vector> basis_;
};

Subspace nullspace(const Matrix& m);
Subspace orthogonal_complement(const Subspace& s);
/// True iff b ⊆ a. Throws DimensionMismatch when ambient dimensions differ.
bool subspace_contains(const Subspace& a, const Subspace& b);

}  // namespace infodesign
