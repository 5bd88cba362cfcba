#include "wick/rational.hpp"

#include <cctype>

#include "wick/error.hpp"

namespace wick {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw InputError("empty rational literal");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::string frac = s.substr(dot + 1);
    for (char ch : frac)
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw InputError("bad decimal literal '" + s + "'");
    mpz_class den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw InputError("bad decimal literal '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw InputError("bad rational literal '" + s + "'");
  if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

std::vector<double> to_double(const QVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.get_d());
  return out;
}

std::vector<int> rref(QMatrix& m, int ncols) {
  std::vector<int> pivots;
  int row = 0;
  const int nrows = static_cast<int>(m.size());
  for (int col = 0; col < ncols && row < nrows; ++col) {
    int p = -1;
    for (int r = row; r < nrows; ++r)
      if (m[r][col] != 0) { p = r; break; }
    if (p < 0) continue;
    std::swap(m[row], m[p]);
    Rational inv = 1 / m[row][col];
    for (int c = col; c < ncols; ++c) m[row][c] *= inv;
    for (int r = 0; r < nrows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (int c = col; c < ncols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

QMatrix kernel_basis(const QMatrix& m_in, int ncols) {
  QMatrix m = m_in;
  for (auto& r : m)
    if (static_cast<int>(r.size()) != ncols) throw InputError("kernel_basis: ragged matrix");
  auto pivots = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivots) is_pivot[c] = true;
  QMatrix basis;
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    QVector v(ncols, Rational(0));
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool solve_in_span(const QMatrix& basis, const QVector& v, QVector& coeffs) {
  const int k = static_cast<int>(basis.size());
  const int n = static_cast<int>(v.size());
  // Augmented system: columns are basis vectors, last column is v.
  QMatrix a(n, QVector(k + 1, Rational(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) a[i][j] = basis[j][i];
    a[i][k] = v[i];
  }
  auto pivots = rref(a, k + 1);
  if (!pivots.empty() && pivots.back() == k) return false;
  coeffs.assign(k, Rational(0));
  for (size_t r = 0; r < pivots.size(); ++r) coeffs[pivots[r]] = a[r][k];
  return true;
}

}  // namespace wick
