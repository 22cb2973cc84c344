#include "kdsg/resolution.hpp"

#include "kdsg/errors.hpp"

#include <algorithm>

namespace kdsg {

namespace {

std::size_t at(int l, int lo) { return static_cast<std::size_t>(l - lo); }

// e_i * v for v in component l of a free module
Vec basis_times(const FreeModule& F, int la, std::size_t i, int l, const Vec& v)
{
    return F.left_mul(la, unit_vec(F.algebra()->dim(la), i), l, v);
}

int max_gen(const FreeResolution& F, int s) { return s >= 0 && s < F.stages() ? F.stage(s).max_gen() : -kUnbounded; }

}  // namespace

int completeness_margin(const GradedAlgebra& a) { return a.relation_degree() + 2 * std::max(1, a.max_generator_ell()); }

FreeResolution::FreeResolution(GradedModule m, int hmax, int dmax) : m_(std::move(m)), hmax_(hmax), dmax_(dmax)
{
    if (hmax < 0 || dmax < 0) throw PreconditionFailed("resolution bounds must be nonnegative");
    const GradedAlgebra& A = *algebra();
    const Field& f = A.field();
    lo_ = m_.lo();
    top_ = lo_ + dmax;
    if (!A.exact()) top_ = std::min(top_, lo_ + A.bound());
    if (!m_.exact()) top_ = std::min(top_, m_.hi());
    const int margin = completeness_margin(A);
    const int nst = hmax + 2;
    for (int s = 0; s < nst; ++s) {
        FreeModule F(algebra(), m_.offset(), {});
        std::vector<Vec> bnd;
        std::vector<Matrix> diffs;
        bool skip = length_.has_value();
        for (int l = lo_; l <= top_; ++l) {
            std::size_t tdim = s == 0 ? m_.dim(l) : stages_[static_cast<std::size_t>(s - 1)].dim(l);
            std::vector<Vec> cols;
            for (std::size_t g = 0; g < F.rank(); ++g) {
                int lg = F.gen_ell(g);
                int la = l - lg;
                for (std::size_t i = 0; i < A.dim(la); ++i) {
                    if (s == 0)
                        cols.push_back(m_.action(la, i, lg).apply(bnd[g], f));
                    else
                        cols.push_back(basis_times(stages_[static_cast<std::size_t>(s - 1)], la, i, lg, bnd[g]));
                }
            }
            if (!skip) {
                std::vector<Vec> need;
                if (s == 0) {
                    for (std::size_t i = 0; i < tdim; ++i) need.push_back(unit_vec(tdim, i));
                } else {
                    need = kernel_basis(diff_[static_cast<std::size_t>(s - 1)][at(l, lo_)], f);
                }
                if (!need.empty()) {
                    Span span(tdim, f);
                    for (const auto& c : cols) span.add(c);
                    for (auto& v : need) {
                        if (span.add(v)) {
                            F.add_generator(l);
                            cols.push_back(v);
                            bnd.push_back(std::move(v));
                        }
                    }
                }
            }
            diffs.push_back(Matrix::from_columns(tdim, cols));
        }
        // completeness of this stage
        bool comp = false, heur = false;
        if (skip) {
            comp = true;
        } else if (s == 0) {
            if (m_.exact() && top_ >= m_.top()) {
                comp = true;
            } else if (m_.gen_bound() && top_ >= *m_.gen_bound()) {
                comp = true;
            } else {
                int last = F.rank() ? F.max_gen() : lo_;
                comp = top_ >= last + margin;
                heur = comp;
            }
        } else if (complete_[static_cast<std::size_t>(s - 1)]) {
            const FreeModule& prev = stages_[static_cast<std::size_t>(s - 1)];
            // for the residue field, stage 1 is the generators and stage 2 the relations of A
            bool residue = m_.exact() && m_.total_dim() == 1;
            if (prev.rank() == 0) {
                comp = true;
            } else if (residue && s == 1 && top_ >= lo_ + A.max_generator_ell()) {
                comp = true;
            } else if (residue && s == 2 && top_ >= lo_ + A.relation_degree()) {
                comp = true;
            } else if (A.exact()) {
                comp = top_ >= prev.max_gen() + A.top();
            } else {
                comp = top_ >= prev.max_gen() + margin;
                heur = comp;
            }
        }
        stages_.push_back(std::move(F));
        bnd_.push_back(std::move(bnd));
        diff_.push_back(std::move(diffs));
        complete_.push_back(comp);
        heuristic_.push_back(heur);
        if (!length_ && comp && stages_.back().rank() == 0) length_ = std::max(0, s - 1);
    }
}

bool FreeResolution::heuristic(int s) const
{
    for (int i = 0; i <= s && i < stages(); ++i)
        if (heuristic_[static_cast<std::size_t>(i)]) return true;
    return false;
}

const Vec& FreeResolution::boundary(int s, std::size_t g) const { return bnd_.at(static_cast<std::size_t>(s)).at(g); }

const Matrix& FreeResolution::differential(int s, int l) const
{
    if (l < lo_ || l > top_) throw BoundExceeded("differential requested outside the resolved range");
    return diff_.at(static_cast<std::size_t>(s)).at(at(l, lo_));
}

const LinearSolver& FreeResolution::solver(int s, int l) const
{
    auto key = std::make_pair(s, l);
    auto it = solvers_.find(key);
    if (it == solvers_.end()) it = solvers_.emplace(key, LinearSolver(differential(s, l), algebra()->field())).first;
    return it->second;
}

std::size_t FreeResolution::dim(int s, int l) const { return s < 0 ? m_.dim(l) : stage(s).dim(l); }

bool FreeResolution::minimal() const
{
    for (int s = 1; s < stages(); ++s) {
        const FreeModule& prev = stage(s - 1);
        for (std::size_t g = 0; g < rank(s); ++g) {
            int lg = stage(s).gen_ell(g);
            for (std::size_t h = 0; h < prev.rank(); ++h)
                if (prev.gen_ell(h) == lg && !kdsg::is_zero(prev.coefficient(lg, boundary(s, g), h))) return false;
        }
    }
    return true;
}

bool FreeResolution::euler_identity() const
{
    int last = std::min(top_, lo_ + stages() - 1);
    for (int l = lo_; l <= last; ++l) {
        long sum = 0;
        for (int s = 0; s < stages(); ++s) sum += (s % 2 ? -1L : 1L) * static_cast<long>(stage(s).dim(l));
        if (sum != static_cast<long>(m_.dim(l))) return false;
    }
    return true;
}

std::optional<FreeResolution::Period> FreeResolution::periodicity() const
{
    auto same_shape = [&](int a, int b, int& shift, bool& have) {
        if (rank(a) != rank(b)) return false;
        for (std::size_t g = 0; g < rank(a); ++g) {
            int d = stage(b).gen_ell(g) - stage(a).gen_ell(g);
            if (!have) {
                shift = d;
                have = true;
            } else if (d != shift) {
                return false;
            }
        }
        return true;
    };
    for (int a = 1; a < stages(); ++a) {
        for (int p = 1; a + p < stages(); ++p) {
            int b = a + p;
            if (!complete(b) || rank(b) == 0) continue;
            int shift = 0;
            bool have = false;
            if (!same_shape(a, b, shift, have) || !same_shape(a - 1, b - 1, shift, have)) continue;
            bool equal = true;
            for (std::size_t g = 0; g < rank(a) && equal; ++g) equal = boundary(a, g) == boundary(b, g);
            if (equal) return Period{a, p, shift};
        }
    }
    return std::nullopt;
}

std::vector<std::vector<int>> FreeResolution::betti() const
{
    std::vector<std::vector<int>> out;
    for (const auto& F : stages_) out.push_back(F.gen_ells());
    return out;
}

ResolutionPtr resolve(const GradedModule& m, const Bounds& b) { return std::make_shared<const FreeResolution>(m, b.hmax, b.dmax); }

ChainMap lift_chain_map(const FreeResolution& F, const FreeResolution& G, const AlgebraMorphism* f, int degree, Bideg shift,
                        const std::vector<Vec>& initial, int nmax)
{
    const GradedAlgebra& B = *F.algebra();
    const GradedAlgebra& A = *G.algebra();
    const Field& fld = A.field();
    if (!f && F.algebra() != G.algebra()) throw PreconditionFailed("chain map between different algebras needs a morphism");
    ChainMap cm;
    cm.degree = degree;
    cm.shift = shift;
    const Line& LB = B.line();
    const Line& LA = A.line();
    Bideg fo = F.module().offset(), go = G.module().offset();
    auto target_of = [&](int l) -> std::optional<int> {
        Bideg x = fo + LB.at(l) + shift - go;
        return LA.ell_on_line(x);
    };
    for (int n = 0; n <= nmax && degree + n < F.stages() && n < G.stages(); ++n) {
        const FreeModule& src = F.stage(degree + n);
        std::vector<std::optional<int>> ells;
        std::vector<Vec> imgs;
        bool ok = true;
        for (std::size_t g = 0; g < src.rank(); ++g) {
            auto lam = target_of(src.gen_ell(g));
            ells.push_back(lam);
            if (n == 0) {
                imgs.push_back(initial.at(g));
                continue;
            }
            if (!lam || *lam < G.lo()) {
                imgs.emplace_back();
                continue;
            }
            if (*lam > G.top()) {
                ok = false;
                break;
            }
            // image of d(g) under the previous component
            int lg = src.gen_ell(g);
            const FreeModule& prevsrc = F.stage(degree + n - 1);
            const FreeModule& tgtprev = G.stage(n - 1);
            Vec y = zero_vec(tgtprev.dim(*lam));
            const Vec& dg = F.boundary(degree + n, g);
            for (std::size_t h = 0; h < prevsrc.rank(); ++h) {
                const Vec& ph = cm.images[static_cast<std::size_t>(n - 1)][h];
                const auto& from_ell = cm.ell[static_cast<std::size_t>(n - 1)][h];
                if (ph.empty() || !from_ell) continue;
                int lb = lg - prevsrc.gen_ell(h);
                Vec b = prevsrc.coefficient(lg, dg, h);
                if (kdsg::is_zero(b)) continue;
                int la;
                Vec a;
                if (f) {
                    auto tl = f->target_ell(lb);
                    if (!tl) continue;
                    la = *tl;
                    a = f->apply(lb, b);
                } else {
                    la = lb;
                    a = std::move(b);
                }
                if (kdsg::is_zero(a)) continue;
                Vec part = tgtprev.left_mul(la, a, *from_ell, ph);
                for (std::size_t k = 0; k < y.size(); ++k) fld.axpy(y[k], Scalar(1), part[k]);
            }
            if (kdsg::is_zero(y)) {
                imgs.push_back(zero_vec(G.stage(n).dim(*lam)));
                continue;
            }
            auto x = G.solver(n, *lam).solve(y);
            if (!x) throw Error("chain map lift failed at stage " + std::to_string(n) + "; the initial map is not a cocycle");
            imgs.push_back(std::move(*x));
        }
        if (!ok) break;
        cm.ell.push_back(std::move(ells));
        cm.images.push_back(std::move(imgs));
        cm.length = n;
    }
    return cm;
}

// ---------------------------------------------------------------- Ext

ExtGroups::ExtGroups(ResolutionPtr F, GradedModule N, int hmax) : F_(std::move(F)), N_(std::move(N)), hmax_(hmax)
{
    if (N_.algebra() != F_->algebra()) throw PreconditionFailed("Ext: modules over different algebras");
    if (hmax_ > F_->hmax()) throw PreconditionFailed("Ext: resolution is too short");
    base_ = N_.offset() - F_->module().offset();
    const Field& f = F_->algebra()->field();
    int ntop = N_.exact() ? N_.top() : N_.hi();
    if (ntop < N_.lo()) return;
    for (int s = 0; s <= hmax_; ++s) {
        const FreeModule& Fs = F_->stage(s);
        if (Fs.rank() == 0) continue;
        int cmin = N_.lo() - Fs.max_gen();
        int cmax = ntop - Fs.min_gen();
        for (int c = cmin; c <= cmax; ++c) {
            if (!hom_known(s, c) || !hom_known(s + 1, c) || (s > 0 && !hom_known(s - 1, c))) continue;
            std::size_t hd = hom_dim(s, c);
            if (hd == 0) continue;
            Group g;
            g.s = s;
            g.c = c;
            g.hom_dim = hd;
            std::size_t pos = 0;
            for (std::size_t k = 0; k < Fs.rank(); ++k) {
                g.starts.push_back(pos);
                pos += N_.dim(Fs.gen_ell(k) + c);
            }
            std::vector<Vec> kernel = kernel_basis(coboundary(s + 1, c), f);
            std::vector<Vec> image;
            if (s > 0) {
                Matrix d = coboundary(s, c);
                for (std::size_t j = 0; j < d.cols(); ++j) {
                    Vec col = d.column(j);
                    if (!kdsg::is_zero(col)) image.push_back(std::move(col));
                }
            }
            g.quotient = std::make_shared<Quotient>(hd, image, kernel, f);
            g.reps = g.quotient->reps();
            auto [lo, hi] = valid_range(s);
            g.certified = c >= lo && c <= hi;
            groups_.emplace(std::make_pair(s, c), std::move(g));
        }
    }
}

bool ExtGroups::hom_known(int s, int c) const
{
    if (N_.exact()) return true;
    const FreeModule& Fs = F_->stage(s);
    for (std::size_t g = 0; g < Fs.rank(); ++g)
        if (Fs.gen_ell(g) + c > N_.hi()) return false;
    return true;
}

std::size_t ExtGroups::hom_dim(int s, int c) const
{
    const FreeModule& Fs = F_->stage(s);
    std::size_t d = 0;
    for (std::size_t g = 0; g < Fs.rank(); ++g) d += N_.dim(Fs.gen_ell(g) + c);
    return d;
}

Matrix ExtGroups::coboundary(int s, int c) const
{
    const FreeModule& Fs = F_->stage(s);
    const FreeModule& Fp = F_->stage(s - 1);
    std::vector<std::size_t> rstart, cstart;
    std::size_t rows = 0, cols = 0;
    for (std::size_t g = 0; g < Fs.rank(); ++g) {
        rstart.push_back(rows);
        rows += N_.dim(Fs.gen_ell(g) + c);
    }
    for (std::size_t h = 0; h < Fp.rank(); ++h) {
        cstart.push_back(cols);
        cols += N_.dim(Fp.gen_ell(h) + c);
    }
    Matrix out(rows, cols);
    for (std::size_t g = 0; g < Fs.rank(); ++g) {
        int lg = Fs.gen_ell(g);
        const Vec& dg = F_->boundary(s, g);
        for (std::size_t h = 0; h < Fp.rank(); ++h) {
            int lh = Fp.gen_ell(h);
            if (N_.dim(lh + c) == 0 || N_.dim(lg + c) == 0) continue;
            Vec a = Fp.coefficient(lg, dg, h);
            if (kdsg::is_zero(a)) continue;
            Matrix blk = N_.action_matrix(lg - lh, a, lh + c);
            for (std::size_t r = 0; r < blk.rows(); ++r)
                for (const auto& e : blk.row(r)) out.set(rstart[g] + r, cstart[h] + e.col, e.val);
        }
    }
    return out;
}

std::pair<int, int> ExtGroups::valid_range(int s) const
{
    const FreeResolution& F = *F_;
    bool all_complete = true;
    int mg = -kUnbounded;
    for (int t = std::max(0, s - 1); t <= s + 1; ++t) {
        if (!F.complete(t)) all_complete = false;
        mg = std::max(mg, max_gen(F, t));
    }
    if (N_.exact()) {
        if (all_complete || N_.top() < N_.lo()) return {-kUnbounded, kUnbounded};
        return {N_.top() - F.top(), kUnbounded};
    }
    if (!all_complete) return {1, 0};
    return {-kUnbounded, mg == -kUnbounded ? kUnbounded : N_.hi() - mg};
}

const ExtGroups::Group* ExtGroups::group(int s, int c) const
{
    auto it = groups_.find({s, c});
    return it == groups_.end() ? nullptr : &it->second;
}

std::size_t ExtGroups::dim(int s, int c) const
{
    const Group* g = group(s, c);
    return g ? g->reps.size() : 0;
}

Bideg ExtGroups::bideg(int s, int c) const { return base_ + F_->algebra()->line().at(c) + Bideg{-s, 0}; }

std::optional<std::pair<int, int>> ExtGroups::locate(const Bideg& b) const
{
    Bideg d = b - base_;
    Bideg dir = F_->algebra()->line().dir;
    if (dir.w == 0 || d.w % dir.w != 0) return std::nullopt;
    int c = d.w / dir.w;
    int s = c * dir.h - d.h;
    if (s < 0) return std::nullopt;
    return std::make_pair(s, c);
}

bool ExtGroups::certified(int s, int c) const
{
    if (s < 0) return true;
    if (s > hmax_) {
        auto len = F_->terminated();
        return len && *len < s;
    }
    auto [lo, hi] = valid_range(s);
    return c >= lo && c <= hi;
}

BigradedTable ExtGroups::table(const std::string& name) const
{
    BigradedTable t;
    t.name = name;
    for (const auto& [key, g] : groups_)
        if (g.certified) t.add(bideg(g.s, g.c), g.reps.size());
    Coverage cov;
    Bideg dir = F_->algebra()->line().dir;
    for (int s = 0; s <= hmax_; ++s) {
        auto [lo, hi] = valid_range(s);
        Bideg origin = base_ + Bideg{-s, 0};
        if (lo > hi) {
            cov.unknown.push_back(Segment{origin, dir});
            continue;
        }
        if (lo > -kUnbounded) cov.unknown.push_back(Segment{origin, dir, -kUnbounded, lo - 1});
        if (hi < kUnbounded) cov.unknown.push_back(Segment{origin, dir, hi + 1, kUnbounded});
    }
    auto len = F_->terminated();
    if (!len || *len > hmax_) cov.unknown.push_back(Segment{base_, dir, -kUnbounded, kUnbounded, Bideg{-1, 0}, hmax_ + 1, kUnbounded});
    t.coverage.push_back(cov);
    t.heuristic = F_->heuristic(hmax_ + 1);
    return t;
}

Vec ExtGroups::class_coords(int s, int c, const Vec& cocycle) const
{
    const Group* g = group(s, c);
    if (!g) return {};
    auto v = g->quotient->coords(cocycle);
    if (!v) throw Error("Ext: element is not a cocycle");
    return *v;
}

Vec ExtGroups::hom_block(int s, int c, const Vec& phi, std::size_t g) const
{
    const FreeModule& Fs = F_->stage(s);
    std::size_t start = 0;
    for (std::size_t k = 0; k < g; ++k) start += N_.dim(Fs.gen_ell(k) + c);
    std::size_t n = N_.dim(Fs.gen_ell(g) + c);
    return Vec(phi.begin() + static_cast<std::ptrdiff_t>(start), phi.begin() + static_cast<std::ptrdiff_t>(start + n));
}

BigradedTable ext_table(const GradedModule& m, const GradedModule& n, const Bounds& b, const std::string& name)
{
    ExtGroups e(resolve(m, b), n, b.hmax);
    return e.table(name);
}

BigradedTable ext_table(const GradedModule& m, const ModuleSum& n, const Bounds& b, const std::string& name)
{
    auto F = resolve(m, b);
    std::vector<BigradedTable> parts;
    for (const auto& p : n.parts) parts.push_back(ExtGroups(F, p, b.hmax).table());
    BigradedTable t = BigradedTable::direct_sum(parts, name);
    if (!n.complete) {
        // Ext^s at b reads N at b + (s,0) + bideg(g) for generators of stages s-1..s+1
        Coverage cov;
        Bideg moff = m.offset();
        const Line& L = m.algebra()->line();
        int hmax = b.hmax;
        cov.test = [F, n, moff, L, hmax](const Bideg& x) {
            for (int s = 0; s <= hmax; ++s) {
                Bideg mapdeg = x + Bideg{s, 0};
                for (int t = std::max(0, s - 1); t <= s + 1; ++t) {
                    if (!F->complete(t)) return false;
                    const FreeModule& Ft = F->stage(t);
                    for (std::size_t g = 0; g < Ft.rank(); ++g)
                        if (!n.certified(mapdeg + moff + L.at(Ft.gen_ell(g)))) return false;
                }
            }
            return true;
        };
        t.coverage.push_back(cov);
    }
    return t;
}

// ---------------------------------------------------------------- Tor

namespace {

BigradedTable tor_single(const AlgebraMorphism& q, const GradedModule& n, const Bounds& bd, const std::string& name)
{
    const GradedAlgebra& S = *q.source();
    const GradedAlgebra& X = *q.target();
    const Field& f = S.field();
    if (n.algebra() != q.source()) throw PreconditionFailed("Tor: module is not over the morphism's source");
    if (!(S.line() == X.line())) throw Unsupported("Tor across algebras on different lines");
    auto F = resolve(n, bd);
    const Line& L = S.line();
    Bideg off = n.offset();
    int xtop = X.exact() ? X.top() : X.bound();
    BigradedTable t;
    t.name = name;
    Coverage cov;
    auto chain_dim = [&](int s, int lam, std::vector<std::size_t>* starts) {
        std::size_t d = 0;
        if (s < 0 || s >= F->stages()) return d;
        const FreeModule& Fs = F->stage(s);
        for (std::size_t g = 0; g < Fs.rank(); ++g) {
            if (starts) starts->push_back(d);
            int m = lam - Fs.gen_ell(g);
            if (m >= 0 && m <= xtop) d += X.dim(m);
        }
        return d;
    };
    // X (x) F_s -> X (x) F_{s-1} in chain degree lam
    auto boundary = [&](int s, int lam) {
        std::vector<std::size_t> rs, cs;
        std::size_t cols = chain_dim(s, lam, &cs), rows = chain_dim(s - 1, lam, &rs);
        Matrix out(rows, cols);
        if (s <= 0) return out;
        const FreeModule& Fs = F->stage(s);
        const FreeModule& Fp = F->stage(s - 1);
        for (std::size_t g = 0; g < Fs.rank(); ++g) {
            int lg = Fs.gen_ell(g);
            int m = lam - lg;
            if (m < 0 || m > xtop || X.dim(m) == 0) continue;
            const Vec& dg = F->boundary(s, g);
            for (std::size_t h = 0; h < Fp.rank(); ++h) {
                int lb = lg - Fp.gen_ell(h);
                Vec a = Fp.coefficient(lg, dg, h);
                if (kdsg::is_zero(a)) continue;
                auto tl = q.target_ell(lb);
                if (!tl) continue;
                Vec qa = q.apply(lb, a);
                if (kdsg::is_zero(qa)) continue;
                int mt = m + *tl;
                if (mt > xtop) continue;
                Matrix acc(X.dim(mt), X.dim(m));
                for (std::size_t i = 0; i < qa.size(); ++i)
                    if (!kdsg::is_zero(qa[i])) acc = add(acc, scale(X.right_mult(*tl, i, m), qa[i], f), f);
                for (std::size_t r = 0; r < acc.rows(); ++r)
                    for (const auto& e : acc.row(r)) out.set(rs[h] + r, cs[g] + e.col, e.val);
            }
        }
        return out;
    };
    for (int s = 0; s <= bd.hmax; ++s) {
        bool all_complete = true;
        int mingen = kUnbounded;
        for (int u = std::max(0, s - 1); u <= s + 1; ++u) {
            if (!F->complete(u)) all_complete = false;
            if (F->rank(u)) mingen = std::min(mingen, F->stage(u).min_gen());
        }
        int U = kUnbounded;
        if (!all_complete) U = std::min(U, F->top());
        if (!X.exact() && mingen < kUnbounded) U = std::min(U, mingen + X.bound());
        Bideg origin = off + Bideg{s, 0};
        if (U < kUnbounded) cov.unknown.push_back(Segment{origin, L.dir, U + 1, kUnbounded});
        if (F->rank(s) == 0) continue;
        int lam_lo = F->stage(s).min_gen();
        int lam_hi = std::min(U, F->stage(s).max_gen() + xtop);
        for (int lam = lam_lo; lam <= lam_hi; ++lam) {
            std::size_t d = chain_dim(s, lam, nullptr);
            if (d == 0) continue;
            std::size_t r1 = rank(boundary(s, lam), f);
            std::size_t r2 = rank(boundary(s + 1, lam), f);
            t.add(origin + L.at(lam), d - r1 - r2);
        }
    }
    auto len = F->terminated();
    if (!len || *len > bd.hmax) cov.unknown.push_back(Segment{off, L.dir, -kUnbounded, kUnbounded, Bideg{1, 0}, bd.hmax + 1, kUnbounded});
    t.coverage.push_back(cov);
    t.heuristic = F->heuristic(bd.hmax + 1);
    return t;
}

}  // namespace

BigradedTable tor_table(const AlgebraMorphism& q, const GradedModule& n, const Bounds& b, const std::string& name)
{
    return tor_single(q, n, b, name);
}

BigradedTable tor_table(const AlgebraMorphism& q, const ModuleSum& n, const Bounds& b, const std::string& name)
{
    std::vector<BigradedTable> parts;
    for (const auto& p : n.parts) parts.push_back(tor_single(q, p, b, name));
    BigradedTable t = BigradedTable::direct_sum(parts, name);
    if (!n.complete) {
        // Tor_s at x only sees N at x - (s,0) - l*dir with l >= s: generators
        // climb at least one step per stage of a minimal resolution
        Coverage cov;
        int hmax = b.hmax;
        Line L = q.source()->line();
        cov.test = [n, hmax, L](const Bideg& x) {
            for (int s = 0; s <= hmax; ++s)
                if (!n.certified_below(x - Bideg{s, 0} - L.at(s))) return false;
            return true;
        };
        t.coverage.push_back(cov);
    }
    return t;
}

std::optional<Bideg> flatness_witness(const AlgebraMorphism& q, const Bounds& b)
{
    BigradedTable t = tor_table(q, GradedModule::trivial(q.source()), b);
    // Tor_s sits at (s,0) + lam*dir
    Bideg dir = q.source()->line().dir;
    for (const auto& [x, d] : t.dims) {
        int s = dir.w != 0 ? x.h - (x.w / dir.w) * dir.h : x.h;
        if (s > 0 && d > 0) return x;
    }
    return std::nullopt;
}

GradedModule induce_module(const AlgebraMorphism& q, const GradedModule& n, const Bounds& b)
{
    const AlgebraPtr& S = q.source();
    const AlgebraPtr& R = q.target();
    if (n.algebra() != S) throw PreconditionFailed("induction: module is not over the morphism's source");
    if (!(S->line() == R->line())) throw Unsupported("induction across algebras on different lines");
    if (auto w = flatness_witness(q, b)) throw NotFlat("target is not free over the source", w->h, w->w);
    Bounds b1{1, b.dmax};
    FreeResolution F(n, b1.hmax, b1.dmax);
    const FreeModule& F0 = F.stage(0);
    const FreeModule& F1 = F.stage(1);
    FreeModule G(R, n.offset(), F0.gen_ells());
    const Field& f = R->field();
    std::vector<std::pair<int, Vec>> rels;
    for (std::size_t g = 0; g < F1.rank(); ++g) {
        int lg = F1.gen_ell(g);
        Vec v = zero_vec(G.dim(lg));
        const Vec& dg = F.boundary(1, g);
        for (std::size_t h = 0; h < F0.rank(); ++h) {
            int lb = lg - F0.gen_ell(h);
            Vec a = F0.coefficient(lg, dg, h);
            if (kdsg::is_zero(a)) continue;
            Vec qa = q.apply(lb, a);
            std::size_t st = G.block(lg, h);
            for (std::size_t k = 0; k < qa.size(); ++k) f.axpy(v[st + k], Scalar(1), qa[k]);
        }
        rels.emplace_back(lg, std::move(v));
    }
    int upto = F.top();
    if (!R->exact()) upto = std::min(upto, n.lo() + R->bound());
    bool gens_known = F.complete(0) && F.complete(1);
    GradedModule out = presented_module(G, rels, upto, "q_*" + n.name());
    if (!gens_known) out = out.inexact();
    return out;
}

ModuleSum induce_module(const AlgebraMorphism& q, const ModuleSum& n, const Bounds& b)
{
    ModuleSum out;
    out.alg = q.target();
    out.complete = n.complete;
    for (const auto& p : n.parts) out.parts.push_back(induce_module(q, p, b));
    if (!n.complete) {
        Coverage cov;
        cov.test = [n](const Bideg& x) { return n.certified_below(x); };
        out.window.push_back(cov);
        if (n.min_ell) out.min_ell = n.min_ell;
    }
    return out;
}

}  // namespace kdsg
