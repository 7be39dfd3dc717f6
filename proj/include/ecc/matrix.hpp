/**
 * @file matrix.hpp
 * @brief Dense rational matrices acting on [0,∞]^n and on rational vectors.
 */
#pragma once

#include "ecc/xreal.hpp"

#include <vector>

namespace ecc {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    static Matrix identity(std::size_t n);
    /// Builds from row lists; all rows must have equal length.
    static Matrix from_rows(const std::vector<RatVector>& rows, std::size_t cols);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    [[nodiscard]] const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    [[nodiscard]] RatVector row(std::size_t i) const;

    [[nodiscard]] Matrix transpose() const;
    [[nodiscard]] bool is_integral() const;
    [[nodiscard]] bool is_nonnegative() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RatVector apply(const Matrix& m, const RatVector& v);
std::string to_string(const Matrix& m);

}  // namespace ecc
