#include "kdsg/matrix.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace kdsg {

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({i, Scalar(1)});
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols)
{
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
        for (std::size_t c = 0; c < cols; ++c)
            if (!kdsg::is_zero(rows[r][c])) m.data_[r].push_back({c, rows[r][c]});
    }
    return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols)
{
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw std::invalid_argument("column length mismatch");
        for (std::size_t r = 0; r < rows; ++r)
            if (!kdsg::is_zero(cols[c][r])) m.data_[r].push_back({c, cols[c][r]});
    }
    return m;
}

Scalar Matrix::at(std::size_t r, std::size_t c) const
{
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index");
    const auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t k) { return e.col < k; });
    if (it != row.end() && it->col == c) return it->val;
    return Scalar(0);
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& v)
{
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index");
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t k) { return e.col < k; });
    if (it != row.end() && it->col == c) {
        if (kdsg::is_zero(v))
            row.erase(it);
        else
            it->val = v;
    } else if (!kdsg::is_zero(v)) {
        row.insert(it, Entry{c, v});
    }
}

void Matrix::add_to(std::size_t r, std::size_t c, const Scalar& v, const Field& f)
{
    if (kdsg::is_zero(v)) return;
    set(r, c, f.add(at(r, c), v));
}

void Matrix::set_row(std::size_t r, SparseRow row)
{
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i].col >= cols_ || (i > 0 && row[i].col <= row[i - 1].col) || kdsg::is_zero(row[i].val))
            throw std::invalid_argument("malformed sparse row");
    }
    data_.at(r) = std::move(row);
}

std::size_t Matrix::nnz() const
{
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
}

double Matrix::density() const
{
    if (rows_ == 0 || cols_ == 0) return 0.0;
    return static_cast<double>(nnz()) / (static_cast<double>(rows_) * static_cast<double>(cols_));
}

Vec Matrix::apply(const Vec& x, const Field& f) const
{
    if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
    Vec y = zero_vec(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& e : data_[r])
            if (!kdsg::is_zero(x[e.col])) f.axpy(y[r], e.val, x[e.col]);
    return y;
}

Vec Matrix::column(std::size_t c) const
{
    Vec v = zero_vec(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

std::vector<Vec> Matrix::dense_rows() const
{
    std::vector<Vec> out(rows_, zero_vec(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& e : data_[r]) out[r][e.col] = e.val;
    return out;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& e : data_[r]) t.data_[e.col].push_back({r, e.val});
    return t;
}

bool operator==(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t r = 0; r < a.rows_; ++r) {
        if (a.data_[r].size() != b.data_[r].size()) return false;
        for (std::size_t i = 0; i < a.data_[r].size(); ++i)
            if (a.data_[r][i].col != b.data_[r][i].col || a.data_[r][i].val != b.data_[r][i].val) return false;
    }
    return true;
}

Matrix multiply(const Matrix& a, const Matrix& b, const Field& f)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::map<std::size_t, Scalar> acc;
        for (const auto& e : a.row(r))
            for (const auto& g : b.row(e.col)) {
                auto [it, fresh] = acc.try_emplace(g.col, Scalar(0));
                f.axpy(it->second, e.val, g.val);
            }
        SparseRow row;
        for (auto& [col, v] : acc)
            if (!kdsg::is_zero(v)) row.push_back({col, v});
        c.set_row(r, std::move(row));
    }
    return c;
}

Matrix add(const Matrix& a, const Matrix& b, const Field& f)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: dimension mismatch");
    Matrix c = a;
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (const auto& e : b.row(r)) c.add_to(r, e.col, e.val, f);
    return c;
}

Matrix scale(const Matrix& a, const Scalar& s, const Field& f)
{
    Matrix c(a.rows(), a.cols());
    if (kdsg::is_zero(s)) return c;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        SparseRow row;
        for (const auto& e : a.row(r)) row.push_back({e.col, f.mul(s, e.val)});
        c.set_row(r, std::move(row));
    }
    return c;
}

namespace {

// y -= c * x on sorted sparse rows
SparseRow sparse_axpy(const SparseRow& y, const Scalar& c, const SparseRow& x, const Field& f)
{
    SparseRow out;
    out.reserve(y.size() + x.size());
    std::size_t i = 0, j = 0;
    Scalar nc = f.neg(c);
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].col < x[j].col)) {
            out.push_back(y[i++]);
        } else if (i == y.size() || x[j].col < y[i].col) {
            out.push_back({x[j].col, f.mul(nc, x[j].val)});
            ++j;
        } else {
            Scalar v = y[i].val;
            f.axpy(v, nc, x[j].val);
            if (!kdsg::is_zero(v)) out.push_back({y[i].col, v});
            ++i;
            ++j;
        }
    }
    return out;
}

Scalar sparse_get(const SparseRow& r, std::size_t c)
{
    auto it = std::lower_bound(r.begin(), r.end(), c, [](const Entry& e, std::size_t k) { return e.col < k; });
    if (it != r.end() && it->col == c) return it->val;
    return Scalar(0);
}

}  // namespace

Echelon rref_sparse(const Matrix& m, const Field& f)
{
    std::vector<SparseRow> basis;
    std::vector<std::size_t> piv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseRow v = m.row(r);
        // basis rows vanish on each other's pivots, so coefficients come from v directly
        std::vector<std::pair<std::size_t, Scalar>> coeffs;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            Scalar c = sparse_get(v, piv[k]);
            if (!kdsg::is_zero(c)) coeffs.emplace_back(k, c);
        }
        for (const auto& [k, c] : coeffs) v = sparse_axpy(v, c, basis[k], f);
        if (v.empty()) continue;
        Scalar lead_inv = f.inv(v.front().val);
        for (auto& e : v) e.val = f.mul(e.val, lead_inv);
        std::size_t q = v.front().col;
        for (auto& b : basis) {
            Scalar c = sparse_get(b, q);
            if (!kdsg::is_zero(c)) b = sparse_axpy(b, c, v, f);
        }
        basis.push_back(std::move(v));
        piv.push_back(q);
    }
    std::vector<std::size_t> order(basis.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return piv[a] < piv[b]; });
    Echelon e;
    e.cols = m.cols();
    for (std::size_t i : order) {
        e.pivots.push_back(piv[i]);
        Vec row = zero_vec(m.cols());
        for (const auto& x : basis[i]) row[x.col] = x.val;
        e.rows.push_back(std::move(row));
    }
    return e;
}

Echelon rref_dense(const Matrix& m, const Field& f)
{
    std::vector<Vec> a = m.dense_rows();
    Echelon e;
    e.cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && kdsg::is_zero(a[p][c])) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        Scalar inv = f.inv(a[r][c]);
        for (std::size_t k = c; k < m.cols(); ++k) a[r][k] = f.mul(a[r][k], inv);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || kdsg::is_zero(a[i][c])) continue;
            Scalar factor = f.neg(a[i][c]);
            for (std::size_t k = c; k < m.cols(); ++k)
                if (!kdsg::is_zero(a[r][k])) f.axpy(a[i][k], factor, a[r][k]);
        }
        e.pivots.push_back(c);
        ++r;
    }
    a.resize(r);
    e.rows = std::move(a);
    return e;
}

Echelon rref(const Matrix& m, const Field& f, double dense_threshold)
{
    if (m.density() >= dense_threshold) return rref_dense(m, f);
    return rref_sparse(m, f);
}

std::size_t rank(const Matrix& m, const Field& f) { return rref(m, f).pivots.size(); }

std::vector<Vec> kernel_basis(const Matrix& m, const Field& f)
{
    Echelon e = rref(m, f);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vec> out;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v = zero_vec(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = f.neg(e.rows[i][free]);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b, const Field& f) { return LinearSolver(m, f).solve(b); }

LinearSolver::LinearSolver(const Matrix& m, const Field& f) : field_(f), rows_(m.rows()), cols_(m.cols())
{
    Matrix aug(m.rows(), m.cols() + m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseRow row = m.row(r);
        row.push_back({m.cols() + r, Scalar(1)});
        aug.set_row(r, std::move(row));
    }
    Echelon e = rref(aug, f);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        Vec left(e.rows[i].begin(), e.rows[i].begin() + static_cast<std::ptrdiff_t>(cols_));
        Vec right(e.rows[i].begin() + static_cast<std::ptrdiff_t>(cols_), e.rows[i].end());
        if (e.pivots[i] < cols_) {
            pivots_.push_back(e.pivots[i]);
            reduced_.push_back(std::move(left));
            transform_.push_back(std::move(right));
        } else {
            left_null_.push_back(std::move(right));
        }
    }
}

static Scalar dot(const Vec& a, const Vec& b, const Field& f)
{
    Scalar s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!kdsg::is_zero(a[i]) && !kdsg::is_zero(b[i])) f.axpy(s, a[i], b[i]);
    return s;
}

bool LinearSolver::in_image(const Vec& b) const
{
    if (b.size() != rows_) throw std::invalid_argument("solve: dimension mismatch");
    for (const auto& y : left_null_)
        if (!kdsg::is_zero(dot(y, b, field_))) return false;
    return true;
}

std::optional<Vec> LinearSolver::solve(const Vec& b) const
{
    if (!in_image(b)) return std::nullopt;
    Vec x = zero_vec(cols_);
    for (std::size_t i = 0; i < pivots_.size(); ++i) x[pivots_[i]] = dot(transform_[i], b, field_);
    return x;
}

std::vector<Vec> LinearSolver::kernel() const
{
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots_) is_pivot[p] = true;
    std::vector<Vec> out;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        Vec v = zero_vec(cols_);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots_.size(); ++i) v[pivots_[i]] = field_.neg(reduced_[i][free]);
        out.push_back(std::move(v));
    }
    return out;
}

Vec Span::reduce(const Vec& v) const
{
    if (v.size() != dim_) throw std::invalid_argument("span: dimension mismatch");
    Vec r = v;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (kdsg::is_zero(r[piv_[k]])) continue;
        Scalar c = field_.neg(r[piv_[k]]);
        for (std::size_t i = 0; i < dim_; ++i)
            if (!kdsg::is_zero(basis_[k][i])) field_.axpy(r[i], c, basis_[k][i]);
    }
    return r;
}

bool Span::add(const Vec& v)
{
    Vec r = reduce(v);
    std::size_t p = 0;
    while (p < dim_ && kdsg::is_zero(r[p])) ++p;
    if (p == dim_) return false;
    Scalar inv = field_.inv(r[p]);
    for (auto& x : r) x = field_.mul(x, inv);
    basis_.push_back(std::move(r));
    piv_.push_back(p);
    return true;
}

Quotient::Quotient(std::size_t dim, const std::vector<Vec>& sub, const std::vector<Vec>& sup, const Field& f)
{
    Span span(dim, f);
    std::vector<Vec> sub_basis;
    for (const auto& v : sub)
        if (span.add(v)) sub_basis.push_back(v);
    for (const auto& v : sup)
        if (span.add(v)) reps_.push_back(v);
    nsub_ = sub_basis.size();
    std::vector<Vec> cols = reps_;
    cols.insert(cols.end(), sub_basis.begin(), sub_basis.end());
    solver_ = LinearSolver(Matrix::from_columns(dim, cols), f);
}

std::optional<Vec> Quotient::coords(const Vec& v) const
{
    auto x = solver_.solve(v);
    if (!x) return std::nullopt;
    x->resize(reps_.size());
    return x;
}

}  // namespace kdsg
