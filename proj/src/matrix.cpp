#include "syncpersist/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace syncpersist {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw std::invalid_argument("Matrix: ragged initializer");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("Matrix: dimension mismatch in +=");
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += other.data_[k];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("Matrix: dimension mismatch in -=");
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

Matrix& Matrix::operator*=(double s) noexcept {
    for (double& v : data_) {
        v *= s;
    }
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("Matrix: dimension mismatch in product");
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) {
        throw std::invalid_argument("Matrix: dimension mismatch in matvec");
    }
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            acc += a(i, j) * x[j];
        }
        y[i] = acc;
    }
    return y;
}

double max_row_sum_norm(const Matrix& a) noexcept {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (double v : a.row(i)) {
            s += std::abs(v);
        }
        best = std::max(best, s);
    }
    return best;
}

double max_abs(std::span<const double> x) noexcept {
    double best = 0.0;
    for (double v : x) {
        best = std::max(best, std::abs(v));
    }
    return best;
}

double frobenius_norm(const Matrix& a) noexcept {
    double s = 0.0;
    for (double v : a.data()) {
        s += v * v;
    }
    return std::sqrt(s);
}

double asymmetry(const Matrix& a) noexcept {
    if (!a.square()) {
        return INFINITY;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
        }
    }
    return worst;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            if (aij == 0.0) {
                continue;
            }
            for (std::size_t r = 0; r < b.rows(); ++r) {
                for (std::size_t c = 0; c < b.cols(); ++c) {
                    k(i * b.rows() + r, j * b.cols() + c) = aij * b(r, c);
                }
            }
        }
    }
    return k;
}

} // namespace syncpersist
