#include "kdsg/yoneda.hpp"

#include "kdsg/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace kdsg {

ExtAlgebra::ExtAlgebra(AlgebraPtr a, const Bounds& b) : alg_(std::move(a)), hmax_(b.hmax)
{
    F_ = resolve(GradedModule::trivial(alg_), b);
}

Bideg ExtAlgebra::bideg(int s, std::size_t g) const { return Bideg{-s, 0} - alg_->line().at(ell(s, g)); }

BigradedTable ExtAlgebra::table(const std::string& name) const
{
    return ExtGroups(F_, GradedModule::trivial(alg_), hmax_).table(name);
}

const ChainMap& ExtAlgebra::lift(int s, std::size_t a) const
{
    auto key = std::make_pair(s, a);
    auto it = lifts_.find(key);
    if (it != lifts_.end()) return it->second;
    const FreeModule& Fs = F_->stage(s);
    const FreeModule& F0 = F_->stage(0);
    int la = Fs.gen_ell(a);
    std::vector<Vec> initial;
    for (std::size_t g = 0; g < Fs.rank(); ++g) {
        int lam = Fs.gen_ell(g) - la;
        if (lam < 0)
            initial.emplace_back();
        else if (g == a)
            initial.push_back(Vec{1});
        else
            initial.push_back(zero_vec(F0.dim(lam)));
    }
    ChainMap cm = lift_chain_map(*F_, *F_, nullptr, s, -alg_->line().at(la), initial, hmax_ - s);
    return lifts_.emplace(key, std::move(cm)).first->second;
}

Vec ExtAlgebra::product(int s, std::size_t a, int t, std::size_t b) const
{
    if (s + t > hmax_) throw BoundExceeded("Yoneda product beyond the homological bound");
    const ChainMap& cm = lift(s, a);
    if (t > cm.length) throw BoundExceeded("Yoneda product needs a longer lift");
    const FreeModule& Ft = F_->stage(t);
    Vec out = zero_vec(rank(s + t));
    const auto& ells = cm.ell[static_cast<std::size_t>(t)];
    const auto& imgs = cm.images[static_cast<std::size_t>(t)];
    for (std::size_t g = 0; g < out.size(); ++g) {
        if (!ells[g] || imgs[g].empty() || *ells[g] != Ft.gen_ell(b)) continue;
        out[g] = Ft.coefficient(*ells[g], imgs[g], b).at(0);
    }
    return out;
}

Vec ExtAlgebra::multiply(int s, const Vec& x, int t, const Vec& y) const
{
    const Field& f = alg_->field();
    Vec out = zero_vec(rank(s + t));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (kdsg::is_zero(x[i])) continue;
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (kdsg::is_zero(y[j])) continue;
            Scalar c = f.mul(x[i], y[j]);
            Vec p = product(s, i, t, j);
            for (std::size_t k = 0; k < out.size(); ++k) f.axpy(out[k], c, p[k]);
        }
    }
    return out;
}

bool ExtAlgebra::check_associativity() const
{
    for (int s1 = 0; s1 <= hmax_; ++s1)
        for (int s2 = 0; s1 + s2 <= hmax_; ++s2)
            for (int s3 = 0; s1 + s2 + s3 <= hmax_; ++s3)
                for (std::size_t a = 0; a < rank(s1); ++a)
                    for (std::size_t b = 0; b < rank(s2); ++b) {
                        Vec ab = product(s1, a, s2, b);
                        for (std::size_t c = 0; c < rank(s3); ++c) {
                            Vec lhs = multiply(s1 + s2, ab, s3, unit_vec(rank(s3), c));
                            Vec rhs = multiply(s1, unit_vec(rank(s1), a), s2 + s3, product(s2, b, s3, c));
                            if (lhs != rhs) return false;
                        }
                    }
    return true;
}

bool ExtAlgebra::check_unit() const
{
    if (rank(0) != 1) return false;
    for (int s = 0; s <= hmax_; ++s)
        for (std::size_t a = 0; a < rank(s); ++a) {
            Vec e = unit_vec(rank(s), a);
            if (product(0, 0, s, a) != e || product(s, a, 0, 0) != e) return false;
        }
    return true;
}

int ExtAlgebra::diagonal_weight() const { return rank(1) ? ell(1, 0) : 1; }

std::optional<Bideg> ExtAlgebra::off_diagonal() const
{
    int w = diagonal_weight();
    for (int s = 0; s <= hmax_; ++s)
        for (std::size_t g = 0; g < rank(s); ++g)
            if (ell(s, g) != w * s) return bideg(s, g);
    return std::nullopt;
}

Line ext_line(const Line& L, int c)
{
    Bideg d = Bideg{-1, 0} - L.dir * c;
    if (std::gcd(d.h, d.w) != 1) throw NotFormalizable("Ext classes do not lie on a primitive line");
    return Line{d};
}

AlgebraPtr ExtAlgebra::realize(const std::string& name) const
{
    if (realized_) return realized_;
    if (auto b = off_diagonal()) throw NotFormalizable("Ext algebra of " + alg_->name() + " has a class off the diagonal at " + b->str());
    int bound = -1;
    while (bound < hmax_ && F_->complete(bound + 1)) ++bound;
    if (bound < 0) throw BoundExceeded("Ext algebra: no complete stage");
    GradedAlgebra::Data d;
    d.field = alg_->field();
    d.line = ext_line(alg_->line(), diagonal_weight());
    d.name = name;
    auto len = F_->terminated();
    d.exact = len && *len <= bound;
    d.bound = d.exact ? *len : bound;
    // diagonal Ext is Koszul, hence quadratic
    d.relation_degree = 2;
    for (int s = 0; s <= d.bound; ++s) {
        d.dims.push_back(rank(s));
        std::vector<std::string> ls;
        for (std::size_t g = 0; g < rank(s); ++g) ls.push_back(name + std::to_string(s) + "_" + std::to_string(g));
        d.labels.push_back(std::move(ls));
    }
    d.products.resize(static_cast<std::size_t>(d.bound) + 1);
    for (int s = 0; s <= d.bound; ++s) {
        d.products[static_cast<std::size_t>(s)].resize(static_cast<std::size_t>(d.bound - s) + 1);
        for (int t = 0; s + t <= d.bound; ++t) {
            auto& cell = d.products[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
            for (std::size_t a = 0; a < rank(s); ++a)
                for (std::size_t b = 0; b < rank(t); ++b) cell.push_back(product(s, a, t, b));
        }
    }
    realized_ = GradedAlgebra::from_data(std::move(d));
    return realized_;
}

AlgebraPtr ExtAlgebra::realize_total(const std::string& name) const
{
    if (regraded_) return regraded_;
    int bound = -1;
    while (bound < hmax_ && F_->complete(bound + 1)) ++bound;
    if (bound < 0) throw BoundExceeded("Ext algebra: no complete stage");
    auto total = [&](int s, std::size_t g) { return ell(s, g) - s; };
    for (int s = 1; s <= bound; ++s)
        for (std::size_t g = 0; g < rank(s); ++g)
            if (total(s, g) <= 0)
                throw NotFormalizable("Ext algebra of " + alg_->name() + " has a class of total degree " +
                                      std::to_string(total(s, g)) + " at " + bideg(s, g).str());
    // total degree does not decrease along a minimal resolution, so degrees
    // below the lowest total degree of the last stage are complete
    auto len = F_->terminated();
    bool exact = len && *len <= bound;
    int top = 0;
    for (int s = 0; s <= bound; ++s)
        for (std::size_t g = 0; g < rank(s); ++g) top = std::max(top, total(s, g));
    int complete = top;
    if (!exact) {
        complete = std::numeric_limits<int>::max();
        for (std::size_t g = 0; g < rank(bound); ++g) complete = std::min(complete, total(bound, g) - 1);
        if (complete == std::numeric_limits<int>::max()) complete = top;
        complete = std::min(complete, top);
    }
    if (complete < 0) throw BoundExceeded("Ext algebra: no complete total degree");

    // basis of total degree n: the classes (s, g) with ell - s = n, by stage
    std::vector<std::vector<std::pair<int, std::size_t>>> basis(static_cast<std::size_t>(complete) + 1);
    std::map<std::pair<int, std::size_t>, std::size_t> slot;
    for (int s = 0; s <= bound; ++s)
        for (std::size_t g = 0; g < rank(s); ++g) {
            int n = total(s, g);
            if (n > complete) continue;
            slot[{s, g}] = basis[static_cast<std::size_t>(n)].size();
            basis[static_cast<std::size_t>(n)].emplace_back(s, g);
        }

    GradedAlgebra::Data d;
    d.field = alg_->field();
    d.line = Line{};
    d.name = name;
    d.exact = exact;
    d.bound = complete;
    d.relation_degree = std::max(2, complete);
    for (const auto& cls : basis) {
        d.dims.push_back(cls.size());
        std::vector<std::string> ls;
        for (const auto& [s, g] : cls) ls.push_back(name + std::to_string(s) + "_" + std::to_string(g));
        d.labels.push_back(std::move(ls));
    }
    d.products.resize(basis.size());
    for (std::size_t n1 = 0; n1 < basis.size(); ++n1) {
        d.products[n1].resize(basis.size() - n1);
        for (std::size_t n2 = 0; n1 + n2 < basis.size(); ++n2) {
            auto& cell = d.products[n1][n2];
            const auto& out = basis[n1 + n2];
            for (const auto& [s, a] : basis[n1])
                for (const auto& [t, b] : basis[n2]) {
                    Vec v(out.size(), Scalar(0));
                    if (s + t <= bound) {
                        Vec p = product(s, a, t, b);
                        for (std::size_t c = 0; c < p.size(); ++c)
                            if (p[c] != 0) v[slot.at({s + t, c})] = p[c];
                    }
                    cell.push_back(std::move(v));
                }
        }
    }
    regraded_ = GradedAlgebra::from_data(std::move(d));
    return regraded_;
}

ExtAlgebraPtr ext_algebra(const AlgebraPtr& a, const Bounds& b) { return std::make_shared<const ExtAlgebra>(a, b); }

// ---------------------------------------------------------------- modules

ExtModule::ExtModule(ExtAlgebraPtr E, GradedModule M) : E_(std::move(E)), M_(std::move(M)), groups_(E_->resolution(), M_, E_->hmax()) {}

Vec ExtModule::act(int s, std::size_t a, int t, int c, const Vec& gamma) const
{
    const ExtGroups::Group* src = groups_.group(t, c);
    if (!src) return {};
    const Field& f = M_.algebra()->field();
    const FreeResolution& F = *E_->resolution();
    int la = E_->ell(s, a);
    int u = t + s, c2 = c - la;
    if (u > groups_.hmax()) throw BoundExceeded("Ext action beyond the homological bound");
    const ExtGroups::Group* tgt = groups_.group(u, c2);
    if (!tgt) {
        if (groups_.certified(u, c2)) return {};
        throw BoundExceeded("Ext action lands outside the computed range");
    }
    const ChainMap& cm = E_->lift(s, a);
    if (t > cm.length) throw BoundExceeded("Ext action needs a longer lift");
    Vec cocycle = zero_vec(src->hom_dim);
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        if (kdsg::is_zero(gamma[i])) continue;
        for (std::size_t k = 0; k < cocycle.size(); ++k) f.axpy(cocycle[k], gamma[i], src->reps[i][k]);
    }
    const FreeModule& Ft = F.stage(t);
    const FreeModule& Fu = F.stage(u);
    Vec out = zero_vec(tgt->hom_dim);
    for (std::size_t g = 0; g < Fu.rank(); ++g) {
        const auto& lam = cm.ell[static_cast<std::size_t>(t)][g];
        const Vec& img = cm.images[static_cast<std::size_t>(t)][g];
        if (!lam || img.empty()) continue;
        std::size_t st = tgt->starts[g];
        for (std::size_t b = 0; b < Ft.rank(); ++b) {
            int lb = Ft.gen_ell(b);
            if (lb > *lam || M_.dim(lb + c) == 0) continue;
            Vec coef = Ft.coefficient(*lam, img, b);
            if (kdsg::is_zero(coef)) continue;
            Vec gb = groups_.hom_block(t, c, cocycle, b);
            Vec v = M_.act(*lam - lb, coef, lb + c, gb);
            for (std::size_t k = 0; k < v.size(); ++k) f.axpy(out[st + k], Scalar(1), v[k]);
        }
    }
    return groups_.class_coords(u, c2, out);
}

namespace {

Vec combine_action(const ExtModule& m, int s, const Vec& x, int t, int c, const Vec& gamma, std::size_t out_dim)
{
    const Field& f = m.ext_algebra()->algebra()->field();
    Vec out = zero_vec(out_dim);
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (kdsg::is_zero(x[a])) continue;
        Vec v = m.act(s, a, t, c, gamma);
        for (std::size_t k = 0; k < v.size(); ++k) f.axpy(out[k], x[a], v[k]);
    }
    return out;
}

}  // namespace

bool ExtModule::check_associativity() const
{
    const ExtAlgebra& E = *E_;
    int hmax = groups_.hmax();
    for (const auto& [key, grp] : groups_.groups()) {
        auto [t, c] = key;
        if (!grp.certified) continue;
        for (int s1 = 0; s1 + t <= hmax; ++s1)
            for (int s2 = 0; s1 + s2 + t <= hmax; ++s2)
                for (std::size_t a = 0; a < E.rank(s1); ++a)
                    for (std::size_t b = 0; b < E.rank(s2); ++b) {
                        int la = E.ell(s1, a), lb = E.ell(s2, b);
                        int u = t + s1 + s2, cu = c - la - lb;
                        if (!groups_.certified(u, cu) || !groups_.certified(t + s2, c - lb)) continue;
                        std::size_t dout = groups_.dim(u, cu);
                        Vec ab = E.product(s1, a, s2, b);
                        for (std::size_t i = 0; i < grp.reps.size(); ++i) {
                            Vec gamma = unit_vec(grp.reps.size(), i);
                            Vec lhs = combine_action(*this, s1 + s2, ab, t, c, gamma, dout);
                            Vec inner = act(s2, b, t, c, gamma);
                            Vec rhs = inner.empty() ? zero_vec(dout) : act(s1, a, t + s2, c - lb, inner);
                            if (rhs.empty()) rhs = zero_vec(dout);
                            if (lhs != rhs) return false;
                        }
                    }
    }
    return true;
}

bool ExtModule::check_unit() const
{
    for (const auto& [key, grp] : groups_.groups())
        for (std::size_t i = 0; i < grp.reps.size(); ++i) {
            Vec e = unit_vec(grp.reps.size(), i);
            if (act(0, 0, key.first, key.second, e) != e) return false;
        }
    return true;
}

ModuleSum ExtModule::over(const AlgebraPtr& realized) const
{
    if (E_->is_total_realization(realized)) throw NotFormalizable("modules over a regraded Ext algebra are not supported");
    const GradedAlgebra& Er = *realized;
    const Line& LE = Er.line();
    const Line& LA = E_->algebra()->line();
    ModuleSum out;
    out.alg = realized;
    BigradedTable t = table();
    out.complete = t.fully_certified();
    if (!out.complete) {
        out.window = t.coverage;
        if (LE.dir.h == -1 && LA.dir.h == 0) out.min_ell = -M_.offset().h;
    }
    std::map<Bideg, std::pair<int, int>> spans;  // offset -> (lowest, highest) nonzero ell
    for (const auto& [key, g] : groups_.groups()) {
        if (!g.certified || g.reps.empty()) continue;
        Bideg b = groups_.bideg(key.first, key.second);
        Bideg o = LE.offset(b);
        int l = LE.ell(b);
        auto it = spans.find(o);
        if (it == spans.end())
            spans.emplace(o, std::make_pair(l, l));
        else
            it->second = {std::min(it->second.first, l), std::max(it->second.second, l)};
    }
    for (const auto& [o, range] : spans) {
        GradedModule::Data d;
        d.alg = realized;
        d.name = "E(" + M_.name() + ")";
        d.offset = o;
        d.lo = range.first;
        d.exact = out.complete;
        std::vector<std::pair<int, int>> where;
        for (int l = range.first; l <= range.second; ++l) {
            Bideg b = o + LE.at(l);
            auto loc = groups_.locate(b);
            if (!loc || loc->first > groups_.hmax() || !t.certified(b)) break;
            where.push_back(*loc);
            d.dims.push_back(groups_.dim(loc->first, loc->second));
        }
        // certified zeros above the top class keep Hom into this part computable
        if (!d.exact && static_cast<int>(where.size()) == range.second - range.first + 1) {
            for (int l = range.second + 1; l <= range.second + Er.bound(); ++l) {
                Bideg b = o + LE.at(l);
                auto loc = groups_.locate(b);
                if (!loc || loc->first > groups_.hmax() || !t.certified(b)) break;
                where.push_back(*loc);
                d.dims.push_back(groups_.dim(loc->first, loc->second));
            }
        }
        d.hi = d.lo + static_cast<int>(d.dims.size()) - 1;
        for (const auto& gen : Er.generators()) {
            std::vector<Matrix> acts;
            for (int l = d.lo; l + gen.ell <= d.hi; ++l) {
                auto [s0, c0] = where[static_cast<std::size_t>(l - d.lo)];
                std::size_t din = d.dims[static_cast<std::size_t>(l - d.lo)];
                std::size_t dout = d.dims[static_cast<std::size_t>(l + gen.ell - d.lo)];
                std::vector<Vec> cols;
                for (std::size_t i = 0; i < din; ++i) cols.push_back(combine_action(*this, gen.ell, gen.vec, s0, c0, unit_vec(din, i), dout));
                acts.push_back(Matrix::from_columns(dout, cols));
            }
            d.gen_actions.push_back(std::move(acts));
        }
        out.parts.push_back(GradedModule::from_generator_actions(std::move(d)));
    }
    return out;
}

ModuleSum ext_module(const ExtAlgebraPtr& E, const AlgebraPtr& realized, const ModuleSum& n)
{
    ModuleSum out;
    out.alg = realized;
    out.complete = n.complete;
    std::optional<int> lowest;
    for (const auto& p : n.parts) {
        ModuleSum e = ExtModule(E, p).over(realized);
        out.parts.insert(out.parts.end(), e.parts.begin(), e.parts.end());
        if (!e.complete) {
            out.complete = false;
            out.window.insert(out.window.end(), e.window.begin(), e.window.end());
        }
        int m = -p.offset().h;
        lowest = lowest ? std::min(*lowest, m) : m;
    }
    if (!n.complete) {
        Coverage cov;
        auto F = E->resolution();
        const Line& L = E->algebra()->line();
        int hmax = E->hmax();
        cov.test = [F, n, L, hmax](const Bideg& x) {
            for (int s = 0; s <= hmax; ++s)
                for (int t = std::max(0, s - 1); t <= s + 1; ++t) {
                    if (!F->complete(t)) return false;
                    const FreeModule& Ft = F->stage(t);
                    for (std::size_t g = 0; g < Ft.rank(); ++g)
                        if (!n.certified(x + Bideg{s, 0} + L.at(Ft.gen_ell(g)))) return false;
                }
            return true;
        };
        out.window.push_back(cov);
    }
    if (!out.complete && n.complete && lowest && realized->line().dir.h == -1 && E->algebra()->line().dir.h == 0) out.min_ell = *lowest;
    // back on a weight line: a class of Ext^s maps generators of degree >= s
    // into degrees <= top, so its weight stays above the top of N
    const Line& LA = E->algebra()->line();
    if (!out.complete && n.complete && realized->line().dir == Bideg{0, 1} && LA.dir.w < 0) {
        std::optional<int> w;
        bool bounded = true;
        for (const auto& p : n.parts) {
            if (!p.exact()) bounded = false;
            int top = std::max(p.top(), p.lo());
            int pw = (p.offset() + LA.at(top)).w;
            w = w ? std::min(*w, pw) : pw;
        }
        if (bounded && w) out.min_ell = *w;
    }
    return out;
}

// ---------------------------------------------------------------- comparison maps

Vec ComparisonMap::apply(int s, const Vec& x) const
{
    if (s > length) throw BoundExceeded("comparison map " + name + " beyond its length");
    return stages.at(static_cast<std::size_t>(s)).apply(x, field);
}

ComparisonMap comparison_map(const AlgebraMorphism& f, const ExtAlgebra& source_ext, const ExtAlgebra& target_ext, std::string name)
{
    if (source_ext.algebra() != f.source() || target_ext.algebra() != f.target())
        throw PreconditionFailed("comparison map: Ext algebras do not match the morphism");
    const FreeResolution& F = *source_ext.resolution();
    const FreeResolution& G = *target_ext.resolution();
    int n = std::min(source_ext.hmax(), target_ext.hmax());
    ChainMap cm = lift_chain_map(F, G, &f, 0, Bideg{}, {Vec{1}}, n);
    ComparisonMap out;
    out.name = std::move(name);
    out.length = cm.length;
    out.field = f.source()->field();
    const Field& fld = f.source()->field();
    for (int s = 0; s <= cm.length; ++s) {
        const FreeModule& Fs = F.stage(s);
        const FreeModule& Gs = G.stage(s);
        Matrix m(Fs.rank(), Gs.rank());
        for (std::size_t g = 0; g < Fs.rank(); ++g) {
            const auto& lam = cm.ell[static_cast<std::size_t>(s)][g];
            const Vec& img = cm.images[static_cast<std::size_t>(s)][g];
            if (!lam || img.empty()) continue;
            for (std::size_t b = 0; b < Gs.rank(); ++b)
                if (Gs.gen_ell(b) == *lam) m.set(g, b, fld.reduce(Gs.coefficient(*lam, img, b).at(0)));
        }
        out.stages.push_back(std::move(m));
    }
    return out;
}

MorphismPtr realize_comparison(const ComparisonMap& m, const AlgebraPtr& from, const AlgebraPtr& to)
{
    std::vector<Vec> imgs;
    for (const auto& g : from->generators()) {
        auto tl = to->line().ell_on_line(from->bideg(g.ell));
        if (!tl) {
            imgs.emplace_back();
            continue;
        }
        Vec v = m.apply(g.ell, g.vec);
        if (!to->known(*tl)) throw BoundExceeded("comparison map target beyond its bound");
        imgs.push_back(v);
    }
    return AlgebraMorphism::from_images(m.name, from, to, imgs);
}

}  // namespace kdsg
