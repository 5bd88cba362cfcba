// Exact rationals (GMP) and the "numerator/denominator" text form.
#pragma once
#include <gmpxx.h>
#include <string>
#include <vector>

namespace wick {

using Rational = mpq_class;
using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

// Accepts "p", "p/q", or a finite decimal such as "-1.25".
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
double to_double(const Rational& q);
std::vector<double> to_double(const QVector& v);

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMatrix& m, int ncols);
// Basis of {x : m x = 0}.
QMatrix kernel_basis(const QMatrix& m, int ncols);
// Solves sum_i c_i basis[i] = v exactly; false when v is not in the span.
bool solve_in_span(const QMatrix& basis, const QVector& v, QVector& coeffs);

}  // namespace wick
