#pragma once

#include <optional>
#include <vector>

#include "mukai/rational.hpp"

namespace mukai {

using QMatrix = std::vector<std::vector<Rational>>;  // row-major
using QVector = std::vector<Rational>;

// Solves cols * x = b where `cols` lists the columns. Returns some solution
// (free variables set to zero) or nullopt when inconsistent.
std::optional<QVector> solve_columns(const std::vector<QVector>& cols, const QVector& b);
size_t matrix_rank(const std::vector<QVector>& vectors);
QMatrix mat_mul(const QMatrix& a, const QMatrix& b);
QVector mat_vec(const QMatrix& a, const QVector& x);
QMatrix transpose(const QMatrix& a);
QMatrix identity_matrix(size_t n);

}  // namespace mukai
