#pragma once

#include <vector>

#include "braidforge/scalar.hpp"

namespace braidforge {

/// Small dense matrices and vectors for algebra-side bookkeeping.
using Vector = std::vector<Scalar>;
using DenseMatrix = std::vector<Vector>;  // row-major

Vector zero_vector(std::size_t d, ScalarMode mode = ScalarMode::exact);
Vector basis_vector(std::size_t d, std::size_t i, ScalarMode mode = ScalarMode::exact);
bool is_zero_vector(const Vector& v);
bool equal_vectors(const Vector& a, const Vector& b);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(DenseMatrix& m, std::size_t cols);
std::size_t rank(DenseMatrix m, std::size_t cols);
/// Basis of {x : M x = 0}.
std::vector<Vector> null_space(DenseMatrix m, std::size_t cols);

}  // namespace braidforge
