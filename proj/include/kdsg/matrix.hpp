#pragma once

#include "kdsg/field.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace kdsg {

struct Entry {
    std::size_t col;
    Scalar val;
};
using SparseRow = std::vector<Entry>;  // sorted by column, no zero entries

// Row-sparse matrix.  Elimination switches to a dense kernel when the fill
// reaches the density threshold.
inline constexpr double kDenseThreshold = 0.3;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
    static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Scalar& v);
    void add_to(std::size_t r, std::size_t c, const Scalar& v, const Field& f);
    const SparseRow& row(std::size_t r) const { return data_.at(r); }
    void set_row(std::size_t r, SparseRow row);

    std::size_t nnz() const;
    double density() const;
    bool is_zero() const { return nnz() == 0; }

    Vec apply(const Vec& x, const Field& f) const;
    Vec column(std::size_t c) const;
    std::vector<Vec> dense_rows() const;
    Matrix transpose() const;

    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<SparseRow> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b, const Field& f);
Matrix add(const Matrix& a, const Matrix& b, const Field& f);
Matrix scale(const Matrix& a, const Scalar& c, const Field& f);

// Reduced row echelon form.  Pivots are leftmost, so the result is canonical.
struct Echelon {
    std::size_t cols = 0;
    std::vector<std::size_t> pivots;
    std::vector<Vec> rows;  // rows[i][pivots[i]] == 1
};

Echelon rref(const Matrix& m, const Field& f, double dense_threshold = kDenseThreshold);
Echelon rref_sparse(const Matrix& m, const Field& f);
Echelon rref_dense(const Matrix& m, const Field& f);

std::size_t rank(const Matrix& m, const Field& f);
std::vector<Vec> kernel_basis(const Matrix& m, const Field& f);
std::optional<Vec> solve(const Matrix& m, const Vec& b, const Field& f);

// Factor once, solve many right-hand sides.
class LinearSolver {
public:
    LinearSolver() = default;
    LinearSolver(const Matrix& m, const Field& f);

    std::size_t rank() const { return pivots_.size(); }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::optional<Vec> solve(const Vec& b) const;
    bool in_image(const Vec& b) const;
    std::vector<Vec> kernel() const;
    const std::vector<std::size_t>& pivots() const { return pivots_; }

private:
    Field field_ = Field::rationals();
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::size_t> pivots_;
    std::vector<Vec> reduced_;    // RREF rows of m (length cols_)
    std::vector<Vec> transform_;  // matching rows of T with T*m = RREF (length rows_)
    std::vector<Vec> left_null_;  // y with y*m = 0 spanning the left kernel
};

// Incrementally grown subspace of F^dim.
class Span {
public:
    Span(std::size_t dim, const Field& f) : dim_(dim), field_(f) {}

    bool add(const Vec& v);  // true when v was independent
    Vec reduce(const Vec& v) const;
    bool contains(const Vec& v) const { return is_zero(reduce(v)); }
    std::size_t rank() const { return basis_.size(); }
    std::size_t dim() const { return dim_; }

private:
    std::size_t dim_;
    Field field_;
    std::vector<Vec> basis_;
    std::vector<std::size_t> piv_;
};

// Representatives for sup/sub, where sub is contained in span(sup), with
// coordinates of elements of span(sup) modulo sub.
class Quotient {
public:
    Quotient(std::size_t dim, const std::vector<Vec>& sub, const std::vector<Vec>& sup, const Field& f);

    const std::vector<Vec>& reps() const { return reps_; }
    std::size_t size() const { return reps_.size(); }
    std::optional<Vec> coords(const Vec& v) const;  // nullopt if v is outside span(sup)

private:
    std::vector<Vec> reps_;
    std::size_t nsub_ = 0;
    LinearSolver solver_;
};

}  // namespace kdsg
