#pragma once

#include "qhfib/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace qhfib {

using Vec = std::vector<Rational>;

// Dense row-major matrix over the rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec column(std::size_t j) const;
    Vec row(std::size_t i) const;
    void set_column(std::size_t j, const Vec& v);

    Matrix transpose() const;
    Matrix operator*(const Matrix& other) const;
    Vec operator*(const Vec& v) const;
    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
bool is_zero(const Vec& v);
Rational dot(const Vec& a, const Vec& b);
void axpy(Vec& y, const Rational& a, const Vec& x);

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(Matrix& m);
std::size_t rank(Matrix m);
std::optional<Matrix> inverse(const Matrix& m);

// Solves A x = b. Free variables are set to zero, which yields the
// solution supported on the earliest pivot columns.
std::optional<Vec> solve(const Matrix& a, const Vec& b);

// Basis of the null space of A, one vector per free column.
std::vector<Vec> null_space(const Matrix& a);

} // namespace qhfib
