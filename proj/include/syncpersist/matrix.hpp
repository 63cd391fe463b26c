#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace syncpersist {

/// Dense row-major real matrix. Sizes here stay small (nq <= a few thousand),
/// so a flat std::vector is all the storage we need.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    Matrix transposed() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s) noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

/// Induced infinity norm: max_i sum_j |a_ij|. This is the norm used for every
/// matrix bound in the library.
double max_row_sum_norm(const Matrix& a) noexcept;

/// Max-norm of a vector, max_i |x_i|.
double max_abs(std::span<const double> x) noexcept;

double frobenius_norm(const Matrix& a) noexcept;

/// Largest |a_ij - a_ji|; zero for an exactly symmetric matrix.
double asymmetry(const Matrix& a) noexcept;

Matrix kron(const Matrix& a, const Matrix& b);

} // namespace syncpersist
