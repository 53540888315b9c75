#ifndef SINCERT_MATRIX_HPP
#define SINCERT_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sincert {

template <class S>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, S fill = S(0))
        : rows_(rows), cols_(cols), d_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    S& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

    std::vector<S> row(std::size_t i) const {
        return std::vector<S>(d_.begin() + i * cols_, d_.begin() + (i + 1) * cols_);
    }
    std::vector<S> col(std::size_t j) const {
        std::vector<S> c(rows_, S(0));
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    Matrix select_rows(const std::vector<std::size_t>& idx) const {
        Matrix r(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
        return r;
    }
    Matrix select_cols(const std::vector<std::size_t>& idx) const {
        Matrix r(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const S& aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
        Matrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.d_.size(); ++i) r.d_[i] = a.d_[i] - b.d_[i];
        return r;
    }

    std::vector<S> apply(const std::vector<S>& x) const {
        if (x.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
        std::vector<S> y(rows_, S(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

private:
    std::size_t rows_, cols_;
    std::vector<S> d_;
};

} // namespace sincert

#endif
