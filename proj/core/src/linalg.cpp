#include "mukai/linalg.hpp"

namespace mukai {

namespace {

// Row-reduces `a` in place; returns pivot columns.
std::vector<size_t> row_reduce(QMatrix& a, size_t ncols) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < ncols && row < a.size(); ++col) {
    size_t p = row;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rational inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (size_t j = col; j < a[i].size(); ++j) a[i][j] -= f * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<QVector> solve_columns(const std::vector<QVector>& cols, const QVector& b) {
  size_t n = cols.size(), m = b.size();
  QMatrix a(m, QVector(n + 1));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) a[i][j] = cols[j][i];
    a[i][n] = b[i];
  }
  auto pivots = row_reduce(a, n + 1);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  QVector x(n, Rational(0));
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][n];
  return x;
}

size_t matrix_rank(const std::vector<QVector>& vectors) {
  if (vectors.empty()) return 0;
  QMatrix a = vectors;
  return row_reduce(a, a[0].size()).size();
}

QMatrix mat_mul(const QMatrix& a, const QMatrix& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMatrix c(n, QVector(m, Rational(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

QVector mat_vec(const QMatrix& a, const QVector& x) {
  QVector y(a.size(), Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

QMatrix transpose(const QMatrix& a) {
  if (a.empty()) return {};
  QMatrix t(a[0].size(), QVector(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

QMatrix identity_matrix(size_t n) {
  QMatrix id(n, QVector(n, Rational(0)));
  for (size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

}  // namespace mukai
