#include "kdsg/module.hpp"

#include "kdsg/errors.hpp"

#include <algorithm>

namespace kdsg {

namespace {

Matrix zero_matrix(std::size_t r, std::size_t c) { return Matrix(r, c); }

std::size_t idx(int l, int lo) { return static_cast<std::size_t>(l - lo); }

}  // namespace

GradedModule GradedModule::from_generator_actions(Data d)
{
    GradedModule m;
    m.alg_ = d.alg;
    m.name_ = d.name;
    m.offset_ = d.alg->line().offset(d.offset);
    int shift = d.alg->line().ell(d.offset);
    m.lo_ = d.lo + shift;
    m.hi_ = d.hi + shift;
    m.exact_ = d.exact;
    if (d.gen_bound) m.gen_bound_ = *d.gen_bound + shift;
    m.dims_ = d.dims;
    m.gen_ = std::move(d.gen_actions);
    const auto& A = *m.alg_;
    if (m.hi_ < m.lo_) {
        m.hi_ = m.lo_ - 1;
        m.dims_.clear();
    }
    if (m.dims_.size() != static_cast<std::size_t>(m.hi_ - m.lo_ + 1)) throw PreconditionFailed("module dims do not match its range");
    if (m.gen_.size() != A.generators().size()) throw PreconditionFailed("module needs one action per algebra generator");
    for (std::size_t g = 0; g < m.gen_.size(); ++g) {
        int eg = A.generators()[g].ell;
        std::size_t need = m.hi_ - eg >= m.lo_ ? static_cast<std::size_t>(m.hi_ - eg - m.lo_ + 1) : 0;
        if (m.gen_[g].size() < need) throw PreconditionFailed("missing generator action matrices");
        m.gen_[g].resize(need);
        for (int l = m.lo_; l + eg <= m.hi_; ++l) {
            const Matrix& a = m.gen_[g][idx(l, m.lo_)];
            if (a.rows() != m.dim(l + eg) || a.cols() != m.dim(l)) throw PreconditionFailed("generator action has the wrong shape");
        }
    }
    int span = m.hi_ - m.lo_;
    m.act_limit_ = A.exact() ? span : std::min(span, A.bound());
    if (m.act_limit_ < 0) m.act_limit_ = 0;
    m.act_.assign(static_cast<std::size_t>(m.act_limit_) + 1, {});
    const Field& f = A.field();
    for (int la = 0; la <= m.act_limit_; ++la) {
        auto& row = m.act_[static_cast<std::size_t>(la)];
        for (int l = m.lo_; l + la <= m.hi_; ++l) {
            std::vector<Matrix> mats;
            for (std::size_t i = 0; i < A.dim(la); ++i) {
                if (la == 0) {
                    mats.push_back(Matrix::identity(m.dim(l)));
                    continue;
                }
                Matrix acc = zero_matrix(m.dim(l + la), m.dim(l));
                for (const auto& t : A.decomposition(la, i)) {
                    int eg = A.generators()[t.gen].ell;
                    const Matrix& first = m.gen_[t.gen][idx(l, m.lo_)];
                    const Matrix& second = m.act_[static_cast<std::size_t>(la - eg)][idx(l + eg, m.lo_)][t.left];
                    acc = add(acc, scale(multiply(second, first, f), t.coeff, f), f);
                }
                mats.push_back(std::move(acc));
            }
            row.push_back(std::move(mats));
        }
    }
    return m;
}

GradedModule GradedModule::trivial(AlgebraPtr a, Bideg at)
{
    Data d;
    d.alg = a;
    d.name = "k";
    d.offset = at;
    d.lo = 0;
    d.hi = 0;
    d.exact = true;
    d.dims = {1};
    d.gen_actions.assign(a->generators().size(), {});
    return from_generator_actions(std::move(d));
}

GradedModule GradedModule::zero(AlgebraPtr a, Bideg offset)
{
    Data d;
    d.alg = a;
    d.name = "0";
    d.offset = offset;
    d.lo = 0;
    d.hi = -1;
    d.exact = true;
    d.gen_actions.assign(a->generators().size(), {});
    return from_generator_actions(std::move(d));
}

GradedModule GradedModule::regular(AlgebraPtr a)
{
    Data d;
    d.alg = a;
    d.name = a->name();
    d.lo = 0;
    d.gen_bound = 0;
    d.hi = a->exact() ? a->top() : a->bound();
    d.exact = a->exact();
    for (int l = 0; l <= d.hi; ++l) d.dims.push_back(a->dim(l));
    const Field& f = a->field();
    for (const auto& g : a->generators()) {
        std::vector<Matrix> mats;
        for (int l = 0; l + g.ell <= d.hi; ++l) {
            Matrix acc(a->dim(l + g.ell), a->dim(l));
            for (std::size_t k = 0; k < g.vec.size(); ++k)
                if (!kdsg::is_zero(g.vec[k])) acc = add(acc, scale(a->left_mult(g.ell, k, l), g.vec[k], f), f);
            mats.push_back(std::move(acc));
        }
        d.gen_actions.push_back(std::move(mats));
    }
    return from_generator_actions(std::move(d));
}

std::size_t GradedModule::dim(int l) const
{
    if (l < lo_) return 0;
    if (l <= hi_) return dims_[idx(l, lo_)];
    if (exact_) return 0;
    throw BoundExceeded("component " + std::to_string(l) + " of module " + name_ + " is beyond its known range");
}

std::optional<int> GradedModule::ell_of(const Bideg& b) const
{
    const Line& L = alg_->line();
    if (L.offset(b) != offset_) return std::nullopt;
    return L.ell(b);
}

std::size_t GradedModule::total_dim() const
{
    std::size_t t = 0;
    for (auto d : dims_) t += d;
    return t;
}

int GradedModule::top() const
{
    for (int l = hi_; l >= lo_; --l)
        if (dims_[idx(l, lo_)] != 0) return l;
    return lo_ - 1;
}

const Matrix& GradedModule::action(int la, std::size_t i, int l) const
{
    static thread_local Matrix scratch;
    if (l < lo_ || l + la > hi_) {
        if (l < lo_ || exact_) {
            scratch = zero_matrix(dim(l + la), l < lo_ ? 0 : dim(l));
            return scratch;
        }
        throw BoundExceeded("action lands beyond the known range of module " + name_);
    }
    if (la > act_limit_) throw BoundExceeded("action by algebra degree " + std::to_string(la) + " is beyond the algebra's bound");
    return act_[static_cast<std::size_t>(la)][idx(l, lo_)].at(i);
}

const Matrix& GradedModule::generator_action(std::size_t g, int l) const
{
    static thread_local Matrix scratch;
    int eg = alg_->generators().at(g).ell;
    if (l < lo_ || l + eg > hi_) {
        if (l < lo_ || exact_) {
            scratch = zero_matrix(dim(l + eg), l < lo_ ? 0 : dim(l));
            return scratch;
        }
        throw BoundExceeded("generator action lands beyond the known range of module " + name_);
    }
    return gen_[g][idx(l, lo_)];
}

Vec GradedModule::act(int la, const Vec& a, int l, const Vec& m) const
{
    const Field& f = alg_->field();
    Vec out = zero_vec(dim(l + la));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (kdsg::is_zero(a[i])) continue;
        Vec v = action(la, i, l).apply(m, f);
        for (std::size_t k = 0; k < out.size(); ++k) f.axpy(out[k], a[i], v[k]);
    }
    return out;
}

Matrix GradedModule::action_matrix(int la, const Vec& a, int l) const
{
    const Field& f = alg_->field();
    Matrix acc(dim(l + la), dim(l));
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!kdsg::is_zero(a[i])) acc = add(acc, scale(action(la, i, l), a[i], f), f);
    return acc;
}

GradedModule GradedModule::shifted(const Bideg& s) const
{
    GradedModule m = *this;
    const Line& L = alg_->line();
    Bideg b = offset_ + s;
    int dl = L.ell(b);
    m.offset_ = L.offset(b);
    m.lo_ = lo_ + dl;
    m.hi_ = hi_ + dl;
    if (gen_bound_) m.gen_bound_ = *gen_bound_ + dl;
    return m;
}

GradedModule GradedModule::truncated(int h) const
{
    if (h >= hi_) return *this;
    Data d;
    d.alg = alg_;
    d.name = name_;
    d.offset = offset_;
    d.lo = lo_;
    d.hi = std::max(h, lo_ - 1);
    d.gen_bound = gen_bound_;
    bool rest_zero = exact_;
    for (int l = d.hi + 1; l <= hi_; ++l)
        if (dim(l) != 0) rest_zero = false;
    d.exact = rest_zero;
    for (int l = lo_; l <= d.hi; ++l) d.dims.push_back(dim(l));
    for (std::size_t g = 0; g < alg_->generators().size(); ++g) {
        std::vector<Matrix> mats;
        int eg = alg_->generators()[g].ell;
        for (int l = lo_; l + eg <= d.hi; ++l) mats.push_back(gen_[g][idx(l, lo_)]);
        d.gen_actions.push_back(std::move(mats));
    }
    return from_generator_actions(std::move(d));
}

bool GradedModule::check_action(int limit) const
{
    const auto& A = *alg_;
    const Field& f = A.field();
    int lim = std::min(limit, act_limit_);
    for (int la = 0; la <= lim; ++la)
        for (int lb = 0; la + lb <= lim; ++lb)
            for (int l = lo_; l + la + lb <= hi_; ++l)
                for (std::size_t i = 0; i < A.dim(la); ++i)
                    for (std::size_t j = 0; j < A.dim(lb); ++j) {
                        Matrix lhs = multiply(action(la, i, l + lb), action(lb, j, l), f);
                        Matrix rhs = action_matrix(la + lb, A.product(la, i, lb, j), l);
                        if (!(lhs == rhs)) return false;
                    }
    return true;
}

BigradedTable GradedModule::table() const
{
    BigradedTable t;
    t.name = name_;
    for (int l = lo_; l <= hi_; ++l) t.add(bideg(l), dims_[idx(l, lo_)]);
    Coverage c;
    if (!exact_) c.unknown.push_back(Segment{offset_, alg_->line().dir, hi_ + 1, kUnbounded});
    t.coverage.push_back(c);
    return t;
}

ModuleSum ModuleSum::of(GradedModule m)
{
    ModuleSum s;
    s.alg = m.algebra();
    s.parts.push_back(std::move(m));
    return s;
}

bool ModuleSum::certified(const Bideg& b) const
{
    if (complete) return true;
    if (window.empty()) return false;
    for (const auto& c : window)
        if (!c.certified(b)) return false;
    return true;
}

bool ModuleSum::certified_below(const Bideg& b) const
{
    if (complete) return true;
    if (!min_ell || !alg) return false;
    const Line& L = alg->line();
    Bideg o = L.offset(b);
    for (int l = *min_ell; l <= L.ell(b); ++l)
        if (!certified(o + L.at(l))) return false;
    return true;
}

BigradedTable ModuleSum::table(const std::string& name) const
{
    std::vector<BigradedTable> ts;
    for (const auto& p : parts) ts.push_back(p.table());
    BigradedTable t = BigradedTable::direct_sum(ts, name);
    if (!complete) {
        if (window.empty()) t.coverage.push_back(Coverage{false, {}, {}, {}});
        t.coverage.insert(t.coverage.end(), window.begin(), window.end());
    }
    return t;
}

ModuleSum ModuleSum::shifted(const Bideg& s) const
{
    ModuleSum out;
    out.alg = alg;
    out.complete = complete;
    for (const auto& p : parts) out.parts.push_back(p.shifted(s));
    for (const auto& c : window) out.window.push_back(c.shifted(s));
    if (min_ell && alg) out.min_ell = *min_ell + alg->line().ell(s);
    return out;
}

bool ModuleSum::is_zero() const
{
    if (!complete) return false;
    for (const auto& p : parts)
        if (!p.is_zero()) return false;
    return true;
}

FreeModule::FreeModule(AlgebraPtr a, Bideg offset, std::vector<int> gen_ell)
    : alg_(std::move(a)), offset_(alg_->line().offset(offset)), gens_(std::move(gen_ell))
{
    int shift = alg_->line().ell(offset);
    for (auto& g : gens_) g += shift;
}

int FreeModule::min_gen() const
{
    if (gens_.empty()) return 0;
    return *std::min_element(gens_.begin(), gens_.end());
}

int FreeModule::max_gen() const
{
    if (gens_.empty()) return -1;
    return *std::max_element(gens_.begin(), gens_.end());
}

std::size_t FreeModule::dim(int l) const
{
    std::size_t d = 0;
    for (int g : gens_) d += alg_->dim(l - g);
    return d;
}

std::size_t FreeModule::block(int l, std::size_t g) const
{
    std::size_t start = 0;
    for (std::size_t k = 0; k < g; ++k) start += alg_->dim(l - gens_[k]);
    return start;
}

Vec FreeModule::generator(std::size_t g) const
{
    int l = gens_.at(g);
    Vec v = zero_vec(dim(l));
    v[block(l, g)] = 1;
    return v;
}

Vec FreeModule::coefficient(int l, const Vec& v, std::size_t g) const
{
    std::size_t start = block(l, g), n = alg_->dim(l - gens_[g]);
    return Vec(v.begin() + static_cast<std::ptrdiff_t>(start), v.begin() + static_cast<std::ptrdiff_t>(start + n));
}

Vec FreeModule::left_mul(int la, const Vec& a, int l, const Vec& v) const
{
    Vec out = zero_vec(dim(l + la));
    std::size_t pos_in = 0, pos_out = 0;
    for (int g : gens_) {
        std::size_t n_in = alg_->dim(l - g), n_out = alg_->dim(l + la - g);
        if (n_in > 0 && n_out > 0) {
            Vec c(v.begin() + static_cast<std::ptrdiff_t>(pos_in), v.begin() + static_cast<std::ptrdiff_t>(pos_in + n_in));
            if (!kdsg::is_zero(c)) {
                Vec p = alg_->multiply(la, a, l - g, c);
                for (std::size_t k = 0; k < n_out; ++k) out[pos_out + k] = p[k];
            }
        }
        pos_in += n_in;
        pos_out += n_out;
    }
    return out;
}

Matrix FreeModule::left_mul_matrix(int la, std::size_t i, int l) const
{
    Matrix m(dim(l + la), dim(l));
    std::size_t pos_in = 0, pos_out = 0;
    for (int g : gens_) {
        std::size_t n_in = alg_->dim(l - g), n_out = alg_->dim(l + la - g);
        if (n_in > 0 && n_out > 0) {
            for (std::size_t j = 0; j < n_in; ++j) {
                const Vec& p = alg_->product(la, i, l - g, j);
                for (std::size_t k = 0; k < n_out; ++k)
                    if (!kdsg::is_zero(p[k])) m.set(pos_out + k, pos_in + j, p[k]);
            }
        }
        pos_in += n_in;
        pos_out += n_out;
    }
    return m;
}

GradedModule presented_module(const FreeModule& free, const std::vector<std::pair<int, Vec>>& relations, int upto, const std::string& name)
{
    const AlgebraPtr& A = free.algebra();
    const Field& f = A->field();
    GradedModule::Data d;
    d.alg = A;
    d.name = name;
    d.offset = free.offset();
    if (free.rank() == 0) {
        d.lo = 0;
        d.hi = -1;
        d.exact = true;
        d.gen_actions.assign(A->generators().size(), {});
        return GradedModule::from_generator_actions(std::move(d));
    }
    int lo = free.min_gen();
    int hi = upto;
    bool exact = false;
    if (A->exact()) {
        int vanish = free.max_gen() + A->top();
        if (hi >= vanish) {
            hi = vanish;
            exact = true;
        }
    } else {
        hi = std::min(hi, lo + A->bound());
    }
    d.lo = lo;
    d.hi = hi;
    d.exact = exact;
    d.gen_bound = free.max_gen();
    std::vector<Matrix> proj, lift;
    for (int l = lo; l <= hi; ++l) {
        std::size_t n = free.dim(l);
        std::vector<Vec> rows;
        for (const auto& [rl, r] : relations) {
            int la = l - rl;
            if (la < 0) continue;
            for (std::size_t i = 0; i < A->dim(la); ++i) {
                Vec v = free.left_mul(la, unit_vec(A->dim(la), i), rl, r);
                if (!kdsg::is_zero(v)) rows.push_back(std::move(v));
            }
        }
        Echelon e = rref(Matrix::from_rows(rows, n), f);
        std::vector<bool> piv(n, false);
        for (auto p : e.pivots) piv[p] = true;
        std::vector<std::size_t> free_cols, pos(n, 0);
        for (std::size_t c = 0; c < n; ++c)
            if (!piv[c]) {
                pos[c] = free_cols.size();
                free_cols.push_back(c);
            }
        std::size_t m = free_cols.size();
        Matrix P(m, n), L(n, m);
        for (std::size_t b = 0; b < m; ++b) {
            P.set(b, free_cols[b], Scalar(1));
            L.set(free_cols[b], b, Scalar(1));
        }
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            for (auto fc : free_cols)
                if (!kdsg::is_zero(e.rows[i][fc])) P.set(pos[fc], e.pivots[i], f.neg(e.rows[i][fc]));
        d.dims.push_back(m);
        proj.push_back(std::move(P));
        lift.push_back(std::move(L));
    }
    if (!exact) {
        // zero on a window as wide as the largest algebra generator, above all
        // module generators, stays zero
        int w = std::max(1, A->max_generator_ell());
        for (int L = free.max_gen(); L + w <= hi; ++L) {
            bool zero = true;
            for (int l = L + 1; l <= L + w && zero; ++l) zero = d.dims[static_cast<std::size_t>(l - lo)] == 0;
            if (!zero) continue;
            hi = d.hi = L;
            d.exact = true;
            d.dims.resize(static_cast<std::size_t>(L - lo + 1));
            break;
        }
    }
    for (const auto& g : A->generators()) {
        std::vector<Matrix> mats;
        for (int l = lo; l + g.ell <= hi; ++l) {
            Matrix mul(free.dim(l + g.ell), free.dim(l));
            for (std::size_t k = 0; k < g.vec.size(); ++k)
                if (!kdsg::is_zero(g.vec[k])) mul = add(mul, scale(free.left_mul_matrix(g.ell, k, l), g.vec[k], f), f);
            mats.push_back(multiply(proj[static_cast<std::size_t>(l + g.ell - lo)], multiply(mul, lift[static_cast<std::size_t>(l - lo)], f), f));
        }
        d.gen_actions.push_back(std::move(mats));
    }
    return GradedModule::from_generator_actions(std::move(d));
}

GradedModule cyclic_module(AlgebraPtr a, const std::vector<std::pair<int, Vec>>& relations, int upto, const std::string& name)
{
    FreeModule free(a, {}, {0});
    return presented_module(free, relations, upto, name);
}

ModuleSum restrict_module(const AlgebraMorphism& f, const GradedModule& m)
{
    const AlgebraPtr& B = f.source();
    const AlgebraPtr& A = f.target();
    if (m.algebra() != A) throw PreconditionFailed("restriction: module is not over the morphism's target");
    ModuleSum out;
    out.alg = B;
    if (B->line() == A->line()) {
        GradedModule::Data d;
        d.alg = B;
        d.name = m.name();
        d.offset = m.offset();
        d.lo = m.lo();
        d.hi = m.hi();
        d.exact = m.exact();
        for (int l = m.lo(); l <= m.hi(); ++l) d.dims.push_back(m.dim(l));
        for (std::size_t x = 0; x < B->generators().size(); ++x) {
            int ex = B->generators()[x].ell;
            const Vec& img = f.generator_images()[x];
            std::vector<Matrix> mats;
            for (int l = m.lo(); l + ex <= m.hi(); ++l) mats.push_back(m.action_matrix(ex, img, l));
            d.gen_actions.push_back(std::move(mats));
        }
        out.parts.push_back(GradedModule::from_generator_actions(std::move(d)));
        return out;
    }
    // lines differ: positive degrees of B act by zero and each component is its own summand
    out.complete = m.exact();
    if (!m.exact()) out.window = m.table().coverage;
    for (int l = m.lo(); l <= m.hi(); ++l) {
        std::size_t n = m.dim(l);
        if (n == 0 && m.exact()) continue;
        GradedModule::Data d;
        d.alg = B;
        d.name = m.name();
        Bideg b = m.bideg(l);
        d.offset = B->line().offset(b);
        d.lo = B->line().ell(b);
        d.hi = d.lo;
        d.exact = true;
        d.dims = {n};
        d.gen_actions.assign(B->generators().size(), {});
        out.parts.push_back(GradedModule::from_generator_actions(std::move(d)));
    }
    return out;
}

ModuleSum restrict_module(const AlgebraMorphism& f, const ModuleSum& m)
{
    ModuleSum out;
    out.alg = f.source();
    out.complete = m.complete;
    out.window = m.window;
    if (!m.complete && m.window.empty()) out.window.push_back(Coverage{false, {}, {}, {}});
    if (f.source()->line() == f.target()->line()) out.min_ell = m.min_ell;
    for (const auto& p : m.parts) {
        ModuleSum r = restrict_module(f, p);
        if (!r.complete) {
            out.complete = false;
            out.window.insert(out.window.end(), r.window.begin(), r.window.end());
        }
        for (auto& q : r.parts) out.parts.push_back(std::move(q));
    }
    return out;
}

std::vector<std::size_t> hilbert_series(const GradedModule& m, int dmax)
{
    std::vector<std::size_t> out;
    for (int d = 0; d <= dmax; ++d) out.push_back(m.dim(d));
    return out;
}

}  // namespace kdsg
