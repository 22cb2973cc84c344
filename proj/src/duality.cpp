#include "kdsg/duality.hpp"

#include "kdsg/errors.hpp"
#include "kdsg/gorenstein.hpp"

#include <future>
#include <map>

namespace kdsg {

// ---------------------------------------------------------------- quadratic duals

Presentation quadratic_dual(const Presentation& p, const Field& f)
{
    std::size_t n = p.generators.size();
    for (const auto& g : p.generators)
        if (g.degree != 1) throw PreconditionFailed("quadratic dual: generator " + g.name + " is not in degree 1");
    std::vector<Polynomial> rels = p.relations;
    for (auto& r : commutator_relations(p, f)) rels.push_back(std::move(r));
    std::vector<Vec> rows;
    for (const auto& r : rels) {
        Vec v = zero_vec(n * n);
        for (const auto& t : r.terms) {
            if (t.mono.word.size() != 2) throw PreconditionFailed("quadratic dual: relation is not quadratic");
            std::size_t k = static_cast<std::size_t>(t.mono.word[0]) * n + static_cast<std::size_t>(t.mono.word[1]);
            f.axpy(v[k], Scalar(1), f.reduce(t.coeff));
        }
        rows.push_back(std::move(v));
    }
    Presentation out;
    out.name = p.name + "_dual";
    for (std::size_t i = 0; i < n; ++i) out.generators.push_back({"x" + std::to_string(i + 1), 1});
    for (Vec v : kernel_basis(Matrix::from_rows(rows, n * n), f)) {
        std::size_t first = 0;
        while (kdsg::is_zero(v[first])) ++first;
        Scalar c = f.inv(v[first]);
        Polynomial poly;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (kdsg::is_zero(v[k])) continue;
            int i = static_cast<int>(k / n), j = static_cast<int>(k % n);
            poly.terms.push_back(Term{f.mul(v[k], c), Monomial{{i, j}, i == j}});
        }
        out.relations.push_back(std::move(poly));
    }
    return out;
}

Verdict KoszulVerdict::verdict(const std::string& name) const
{
    Verdict v;
    v.name = name;
    v.heuristic = heuristic;
    if (koszul) {
        v.status = Status::Pass;
        v.detail = "Ext on the diagonal through stage " + std::to_string(stages);
    } else {
        v.status = Status::Fail;
        v.witness = Bideg{witness->first, witness->second};
        v.detail = "Ext class off the diagonal at (s,t) = (" + std::to_string(witness->first) + "," +
                   std::to_string(witness->second) + ")";
    }
    return v;
}

KoszulVerdict koszulness_check(const AlgebraPtr& a, const Bounds& b)
{
    for (const auto& g : a->generators())
        if (g.ell != 1) throw PreconditionFailed("koszulness: generator " + g.name + " is not in degree 1");
    auto F = resolve(GradedModule::trivial(a), b);
    KoszulVerdict out;
    out.koszul = true;
    for (int s = 0; s <= b.hmax; ++s) {
        if (!F->complete(s)) break;
        out.stages = s;
        for (int l : F->stage(s).gen_ells())
            if (l != s && (!out.witness || l < out.witness->second)) out.witness = std::make_pair(s, l);
        if (out.witness) {
            out.koszul = false;
            break;
        }
    }
    out.heuristic = F->heuristic(out.stages);
    return out;
}

std::optional<int> koszul_reciprocity_failure(const GradedAlgebra& a, const GradedAlgebra& b, int dmax)
{
    auto ha = hilbert_series(a, dmax);
    auto hb = hilbert_series(b, dmax);
    for (int d = 0; d <= dmax; ++d) {
        long long c = 0;
        for (int i = 0; i <= d; ++i) {
            long long term = static_cast<long long>(ha[static_cast<std::size_t>(i)]) * static_cast<long long>(hb[static_cast<std::size_t>(d - i)]);
            c += (d - i) % 2 ? -term : term;
        }
        if (c != (d == 0 ? 1 : 0)) return d;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- cofibre

namespace {

// basis element (l, i) of a realized algebra as a polynomial in its generators
class Expander {
public:
    Expander(const GradedAlgebra& a, const Field& f) : a_(a), f_(f) {}

    const Polynomial& operator()(int l, std::size_t i)
    {
        auto key = std::make_pair(l, i);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Polynomial p;
        if (l == 0) {
            p.terms.push_back(Term{Scalar(1), Monomial{}});
        } else {
            for (const auto& d : a_.decomposition(l, i)) {
                int x = static_cast<int>(d.gen);
                const Polynomial& left = (*this)(l - a_.generators()[d.gen].ell, d.left);
                for (const auto& t : left.terms) {
                    Monomial m = t.mono;
                    m.word.push_back(x);
                    m.power = false;
                    p.terms.push_back(Term{f_.mul(t.coeff, d.coeff), std::move(m)});
                }
            }
        }
        return memo_.emplace(key, std::move(p)).first->second;
    }

private:
    const GradedAlgebra& a_;
    const Field& f_;
    std::map<std::pair<int, std::size_t>, Polynomial> memo_;
};

}  // namespace

Cofibre cofibre_algebra(const AlgebraMorphism& q, const Bounds& b, const std::string& name)
{
    if (auto w = flatness_witness(q, b))
        throw NotFlat("cofibre: R is not free over S; Tor class at " + w->str(), w->h, w->w);
    const AlgebraPtr& S = q.source();
    const AlgebraPtr& R = q.target();
    if (!R->presentation()) throw Unsupported("cofibre: " + R->name() + " has no presentation");
    const Field& f = R->field();
    Presentation qp = *R->presentation();
    qp.name = name;
    Expander expand(*R, f);
    for (std::size_t x = 0; x < S->generators().size(); ++x) {
        auto tl = q.target_ell(S->generators()[x].ell);
        const Vec& img = q.generator_images()[x];
        if (!tl || img.empty() || kdsg::is_zero(img)) continue;
        Polynomial rel;
        for (std::size_t j = 0; j < img.size(); ++j) {
            if (kdsg::is_zero(img[j])) continue;
            for (const auto& t : expand(*tl, j).terms) rel.terms.push_back(Term{f.mul(img[j], t.coeff), t.mono});
        }
        qp.relations.push_back(std::move(rel));
    }
    Cofibre out;
    out.Q = GradedAlgebra::realize(qp, f, R->bound());

    GradedModule induced = induce_module(q, GradedModule::trivial(S), b);
    for (int l = induced.lo(); l <= induced.hi() && l <= out.Q->bound(); ++l)
        if (induced.dim(l) != out.Q->dim(l))
            throw Error("cofibre: quotient differs from R (x)_S k in degree " + std::to_string(l));

    std::vector<Vec> imgs;
    for (const auto& g : out.Q->generators()) imgs.push_back(g.vec);
    out.p = AlgebraMorphism::from_images("p", R, out.Q, imgs);

    ModuleSum qr = restrict_module(*out.p, GradedModule::regular(out.Q));
    out.built_from_k = is_torsion(qr, b).verdict("Q finite over R");
    out.small_over_R = is_small(qr, b).verdict("Q small over R");
    return out;
}

NormalizationContext normalization_context(const MorphismPtr& q, const Bounds& b, std::string name)
{
    NormalizationVerdict v = validate_normalization(*q, b);
    if (!v.valid()) throw NotANormalization(q->name() + " is not a normalization: " + v.verdict("").detail);
    NormalizationContext ctx;
    ctx.name = name.empty() ? q->name() : std::move(name);
    ctx.S = q->source();
    ctx.R = q->target();
    ctx.q = q;
    try {
        Cofibre c = cofibre_algebra(*q, b);
        ctx.Q = c.Q;
        ctx.p = c.p;
    } catch (const NotFlat& e) {
        ctx.note = e.what();
    } catch (const Unsupported& e) {
        ctx.note = e.what();
    }
    return ctx;
}

// ---------------------------------------------------------------- F <- E <- D

namespace {

AlgebraPtr try_realize(const ExtAlgebra& e, const std::string& name, std::string& why, Formality policy)
{
    try {
        return e.realize(name);
    } catch (const NotFormalizable& ex) {
        if (policy == Formality::TotalDegree) {
            try {
                return e.realize_total(name);
            } catch (const Error& ex2) {
                why += std::string(why.empty() ? "" : "; ") + ex2.what();
                return nullptr;
            }
        }
        why += std::string(why.empty() ? "" : "; ") + ex.what();
    } catch (const BoundExceeded& ex) {
        why += std::string(why.empty() ? "" : "; ") + ex.what();
    }
    return nullptr;
}

Verdict multiplicative(const std::string& name, const MorphismPtr& m)
{
    if (!m) return make_verdict(name, Status::Unsupported, "map not realized");
    if (auto bad = m->check_multiplicative())
        return make_verdict(name, Status::Fail, "fails on degrees " + std::to_string(bad->first) + "," + std::to_string(bad->second));
    return make_verdict(name, Status::Pass, "through degree " + std::to_string(m->bound()));
}

}  // namespace

SixRingContext dual_cofibre_sequence(const NormalizationContext& ctx, const Bounds& b, const SixRingOptions& opt)
{
    if (!ctx.Q || !ctx.p) throw PreconditionFailed("context " + ctx.name + " has no cofibre: " + ctx.note);
    SixRingContext six;
    six.base = ctx;
    six.bounds = b;
    if (opt.threads > 1) {
        auto f = std::async(std::launch::async, [&] { return ext_algebra(ctx.S, b); });
        auto e = std::async(std::launch::async, [&] { return ext_algebra(ctx.R, b); });
        six.D = ext_algebra(ctx.Q, b);
        six.F = f.get();
        six.E = e.get();
    } else {
        six.F = ext_algebra(ctx.S, b);
        six.E = ext_algebra(ctx.R, b);
        six.D = ext_algebra(ctx.Q, b);
    }
    const Formality policy = opt.formality;
    six.Fr = try_realize(*six.F, "F", six.formality, policy);
    six.Er = try_realize(*six.E, "E", six.formality, policy);
    six.Dr = try_realize(*six.D, "D", six.formality, policy);
    six.j = comparison_map(*ctx.q, *six.F, *six.E, "j");
    six.i = comparison_map(*ctx.p, *six.E, *six.D, "i");
    try {
        auto diagonal = [](const ExtAlgebraPtr& e, const AlgebraPtr& r) { return r && !e->is_total_realization(r); };
        if (diagonal(six.E, six.Er) && diagonal(six.F, six.Fr)) six.jm = realize_comparison(*six.j, six.Er, six.Fr);
        if (diagonal(six.D, six.Dr) && diagonal(six.E, six.Er)) six.im = realize_comparison(*six.i, six.Dr, six.Er);
    } catch (const BoundExceeded& e) {
        six.formality += std::string(six.formality.empty() ? "" : "; ") + e.what();
    }
    six.checks.push_back(multiplicative("i multiplicative", six.im));
    six.checks.push_back(multiplicative("j multiplicative", six.jm));

    if (six.im) {
        try {
            BigradedTable tor = tor_table(*six.im, GradedModule::trivial(six.Dr), b, "Tor^D(E,k)");
            six.checks.push_back(table_agreement("F = E (x)_D k", six.F->table("F"), tor));
        } catch (const Unsupported& e) {
            six.checks.push_back(make_verdict("F = E (x)_D k", Status::Unsupported, e.what()));
        }
    } else {
        six.checks.push_back(make_verdict("F = E (x)_D k", Status::Unsupported, six.formality));
    }

    SmallVerdict ks = is_small(GradedModule::trivial(ctx.S), b);
    if (!ks.small()) {
        six.checks.push_back(make_verdict("F finite", Status::Unsupported, "S is not g-regular"));
    } else {
        auto len = six.F->resolution()->terminated();
        Verdict v = make_verdict("F finite", len ? Status::Pass : Status::Unknown,
                                 len ? "total dimension " + std::to_string(six.F->table().total()) : "resolution of k did not terminate");
        v.heuristic = ks.heuristic;
        six.checks.push_back(v);
    }

    if (!six.jm) {
        six.checks.push_back(make_verdict("F small over E", Status::Unsupported, six.formality));
    } else if (!(six.Er->line() == six.Fr->line())) {
        six.checks.push_back(make_verdict("F small over E", Status::Unsupported,
                                          "j changes the grading line, so the graded model loses the module structure"));
    } else {
        six.checks.push_back(is_small(restrict_module(*six.jm, GradedModule::regular(six.Fr)), b).verdict("F small over E"));
    }
    return six;
}

// ---------------------------------------------------------------- double centralizer

Verdict double_centralizer_check(const AlgebraPtr& a, const Bounds& b)
{
    auto E = ext_algebra(a, b);
    AlgebraPtr Er = E->realize("E");
    auto E2 = ext_algebra(Er, b);
    AlgebraPtr back = E2->realize(a->name());
    Verdict v;
    v.name = "double centralizer " + a->name();
    v.heuristic = E->resolution()->heuristic(E->hmax()) || E2->resolution()->heuristic(E2->hmax());
    if (!(back->line() == a->line())) {
        v.status = Status::Fail;
        v.detail = "Ext of the Ext algebra lies on the wrong line";
        return v;
    }
    int top = -1;
    if (a->exact() && back->exact()) top = std::max(a->top(), back->top());
    else if (a->exact()) top = back->bound();
    else if (back->exact()) top = a->bound();
    else top = std::min(a->bound(), back->bound());
    for (int l = 0; l <= top; ++l) {
        std::size_t x = a->dim(l), y = back->dim(l);
        if (x != y) {
            v.status = Status::Fail;
            v.witness = a->bideg(l);
            v.detail = "degree " + std::to_string(l) + ": " + std::to_string(x) + " vs " + std::to_string(y);
            return v;
        }
    }
    v.status = Status::Pass;
    v.detail = "dimensions agree through degree " + std::to_string(top);
    return v;
}

// ---------------------------------------------------------------- E and the round trip

ModuleSum E_functor(const ExtAlgebraPtr& E, const AlgebraPtr& realized, const ModuleSum& m) { return ext_module(E, realized, m); }

ModuleSum E_functor(const SixRingContext& ctx, const GradedModule& m)
{
    if (!ctx.Er) throw NotFormalizable(ctx.formality);
    return ext_module(ctx.E, ctx.Er, ModuleSum::of(m));
}

Verdict roundtrip_check(const SixRingContext& ctx, const GradedModule& m, const Bounds& b)
{
    SmallVerdict fg = is_qfg(*ctx.base.q, m, b);
    if (!fg.small()) throw PreconditionFailed(m.name() + " is not finitely generated over " + ctx.base.S->name());
    GorensteinCertificate g = gorenstein_test(ctx.base.R, b);
    if (!g.gorenstein()) throw PreconditionFailed(ctx.base.R->name() + " is not certified Gorenstein");
    ModuleSum em = E_functor(ctx, m);
    BigradedTable lhs = ext_table(GradedModule::trivial(ctx.Er), em, b, "Ext_E(k,E(" + m.name() + "))");
    Verdict v = table_agreement("roundtrip " + m.name(), lhs, m.table(), g.shift);
    v.shift = g.shift;
    v.heuristic = v.heuristic || g.heuristic || fg.heuristic;
    return v;
}

}  // namespace kdsg
