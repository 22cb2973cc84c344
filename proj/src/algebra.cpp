#include "kdsg/algebra.hpp"

#include "kdsg/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace kdsg {

namespace {

using Word = std::vector<int>;

struct WordRelation {
    int degree = 0;
    std::vector<std::pair<Scalar, Word>> terms;
};

std::string word_label(const Word& w, const std::vector<std::string>& names)
{
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!s.empty()) s += "*";
        s += names[static_cast<std::size_t>(w[i])];
        if (j - i > 1) s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

}  // namespace

std::vector<Polynomial> commutator_relations(const Presentation& p, const Field& f)
{
    std::vector<Polynomial> out;
    if (p.commutativity != Commutativity::Graded) return out;
    bool char2 = f.characteristic() == 2;
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
        for (std::size_t j = i; j < p.generators.size(); ++j) {
            bool odd = (p.generators[i].degree * p.generators[j].degree) % 2 != 0;
            int a = static_cast<int>(i), b = static_cast<int>(j);
            Polynomial r;
            if (i == j) {
                if (!odd || char2) continue;
                r.terms.push_back({Scalar(1), Monomial{{a, a}, false}});
            } else {
                r.terms.push_back({Scalar(1), Monomial{{a, b}, false}});
                r.terms.push_back({Scalar(odd && !char2 ? 1 : -1), Monomial{{b, a}, false}});
            }
            out.push_back(r);
        }
    }
    return out;
}

AlgebraPtr GradedAlgebra::realize(const Presentation& p, const Field& f, int dmax)
{
    int maxgen = p.max_generator_degree();
    if (dmax < maxgen) throw PreconditionFailed("dmax " + std::to_string(dmax) + " is below the largest generator degree");
    std::size_t ngen = p.generators.size();
    std::vector<std::string> names;
    for (const auto& g : p.generators) names.push_back(g.name);

    std::vector<WordRelation> rels;
    auto add_rel = [&](const Polynomial& poly) {
        WordRelation r;
        for (const auto& t : poly.terms) {
            Scalar c = f.reduce(t.coeff);
            if (is_zero(c)) continue;
            r.degree = p.degree(t.mono);
            r.terms.emplace_back(c, t.mono.word);
        }
        if (!r.terms.empty()) rels.push_back(std::move(r));
    };
    for (const auto& r : p.relations) add_rel(r);
    for (const auto& r : commutator_relations(p, f)) add_rel(r);

    std::vector<std::vector<Word>> words(static_cast<std::size_t>(dmax) + 1);
    std::vector<std::vector<std::size_t>> parent(static_cast<std::size_t>(dmax) + 1), lastgen(static_cast<std::size_t>(dmax) + 1);
    words[0].push_back({});
    parent[0].push_back(0);
    lastgen[0].push_back(0);
    std::map<std::pair<std::size_t, int>, Matrix> rmul;  // (gen, e): A_e -> A_{e + deg}

    auto deg = [&](std::size_t x) { return p.generators[x].degree; };
    auto apply_word = [&](Vec y, int e, const Word& w, std::size_t upto) {
        for (std::size_t k = 0; k < upto; ++k) {
            std::size_t x = static_cast<std::size_t>(w[k]);
            y = rmul.at({x, e}).apply(y, f);
            e += deg(x);
        }
        return y;
    };

    for (int d = 1; d <= dmax; ++d) {
        struct Cand {
            std::size_t gen, left;
            Word word;
        };
        std::vector<Cand> cands;
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> cand_index;
        for (std::size_t x = 0; x < ngen; ++x) {
            int e = d - deg(x);
            if (e < 0) continue;
            for (std::size_t j = 0; j < words[static_cast<std::size_t>(e)].size(); ++j) {
                Word w = words[static_cast<std::size_t>(e)][j];
                w.push_back(static_cast<int>(x));
                cand_index[{x, j}] = cands.size();
                cands.push_back({x, j, std::move(w)});
            }
        }
        // columns in decreasing word order: leading terms are the largest words
        std::vector<std::size_t> order(cands.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cands[a].word > cands[b].word; });
        std::vector<std::size_t> col_of(cands.size());
        for (std::size_t c = 0; c < order.size(); ++c) col_of[order[c]] = c;

        std::vector<Vec> rows;
        for (const auto& r : rels) {
            int e = d - r.degree;
            if (e < 0) continue;
            for (std::size_t u = 0; u < words[static_cast<std::size_t>(e)].size(); ++u) {
                Vec row = zero_vec(cands.size());
                for (const auto& [c, w] : r.terms) {
                    std::size_t last = static_cast<std::size_t>(w.back());
                    Vec y = apply_word(unit_vec(words[static_cast<std::size_t>(e)].size(), u), e, w, w.size() - 1);
                    for (std::size_t j = 0; j < y.size(); ++j)
                        if (!is_zero(y[j])) f.axpy(row[col_of[cand_index.at({last, j})]], c, y[j]);
                }
                if (!is_zero(row)) rows.push_back(std::move(row));
            }
        }
        Echelon ech = rref(Matrix::from_rows(rows, cands.size()), f);
        std::vector<bool> is_pivot(cands.size(), false);
        for (auto pc : ech.pivots) is_pivot[pc] = true;
        // basis: non-pivot columns, listed in increasing word order
        std::vector<std::size_t> free_cols;
        for (std::size_t c = cands.size(); c-- > 0;)
            if (!is_pivot[c]) free_cols.push_back(c);
        std::vector<std::size_t> basis_of_col(cands.size(), 0);
        for (std::size_t b = 0; b < free_cols.size(); ++b) {
            const Cand& cd = cands[order[free_cols[b]]];
            basis_of_col[free_cols[b]] = b;
            words[static_cast<std::size_t>(d)].push_back(cd.word);
            parent[static_cast<std::size_t>(d)].push_back(cd.left);
            lastgen[static_cast<std::size_t>(d)].push_back(cd.gen);
        }
        std::size_t dim = free_cols.size();
        // projection of each candidate to the basis
        std::vector<Vec> proj(cands.size(), zero_vec(dim));
        for (std::size_t c = 0; c < cands.size(); ++c)
            if (!is_pivot[c]) proj[order[c]][basis_of_col[c]] = 1;
        for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
            Vec& v = proj[order[ech.pivots[i]]];
            for (auto fc : free_cols)
                if (!is_zero(ech.rows[i][fc])) v[basis_of_col[fc]] = f.neg(ech.rows[i][fc]);
        }
        for (std::size_t x = 0; x < ngen; ++x) {
            int e = d - deg(x);
            if (e < 0) continue;
            std::vector<Vec> cols;
            for (std::size_t j = 0; j < words[static_cast<std::size_t>(e)].size(); ++j) cols.push_back(proj[cand_index.at({x, j})]);
            rmul[{x, e}] = Matrix::from_columns(dim, cols);
        }
    }

    Data data;
    data.field = f;
    data.line = Line{};
    data.name = p.name;
    data.bound = dmax;
    data.relation_degree = std::max(2, p.max_relation_degree());
    if (p.commutativity == Commutativity::Graded) data.relation_degree = std::max(data.relation_degree, 2 * p.max_generator_degree());
    for (int d = 0; d <= dmax; ++d) {
        data.dims.push_back(words[static_cast<std::size_t>(d)].size());
        std::vector<std::string> ls;
        for (const auto& w : words[static_cast<std::size_t>(d)]) ls.push_back(word_label(w, names));
        data.labels.push_back(std::move(ls));
    }
    // vanishing on a window as wide as the largest generator degree propagates upward
    int zeros = 0;
    for (int d = dmax; d >= 1 && data.dims[static_cast<std::size_t>(d)] == 0; --d) ++zeros;
    data.exact = ngen == 0 || zeros >= maxgen;
    for (std::size_t x = 0; x < ngen; ++x) {
        Generator g;
        g.name = names[x];
        g.ell = deg(x);
        g.vec = rmul.at({x, 0}).column(0);
        data.generators.push_back(std::move(g));
    }
    data.products.assign(static_cast<std::size_t>(dmax) + 1, {});
    for (int l1 = 0; l1 <= dmax; ++l1) {
        auto& row = data.products[static_cast<std::size_t>(l1)];
        row.assign(static_cast<std::size_t>(dmax - l1) + 1, {});
        std::size_t d1 = data.dims[static_cast<std::size_t>(l1)];
        for (int l2 = 0; l1 + l2 <= dmax; ++l2) {
            std::size_t d2 = data.dims[static_cast<std::size_t>(l2)];
            auto& tab = row[static_cast<std::size_t>(l2)];
            tab.resize(d1 * d2);
            for (std::size_t i = 0; i < d1; ++i) {
                for (std::size_t j = 0; j < d2; ++j) {
                    if (l2 == 0) {
                        tab[i * d2 + j] = unit_vec(d1, i);
                        continue;
                    }
                    std::size_t x = lastgen[static_cast<std::size_t>(l2)][j];
                    std::size_t par = parent[static_cast<std::size_t>(l2)][j];
                    int pl = l2 - deg(x);
                    std::size_t pd = data.dims[static_cast<std::size_t>(pl)];
                    const Vec& prev = row[static_cast<std::size_t>(pl)][i * pd + par];
                    tab[i * d2 + j] = rmul.at({x, l1 + pl}).apply(prev, f);
                }
            }
        }
    }
    auto* a = new GradedAlgebra(std::move(data));
    a->decomp_.assign(static_cast<std::size_t>(dmax) + 1, {});
    for (int d = 1; d <= dmax; ++d)
        for (std::size_t j = 0; j < words[static_cast<std::size_t>(d)].size(); ++j)
            a->decomp_[static_cast<std::size_t>(d)].push_back(
                {DecompTerm{Scalar(1), parent[static_cast<std::size_t>(d)][j], lastgen[static_cast<std::size_t>(d)][j]}});
    a->presentation_ = p;
    return AlgebraPtr(a);
}

AlgebraPtr GradedAlgebra::from_data(Data d)
{
    if (d.dims.empty() || d.dims[0] != 1) throw PreconditionFailed("algebra must be connected");
    if (static_cast<int>(d.dims.size()) != d.bound + 1) throw PreconditionFailed("dims do not match bound");
    if (d.labels.empty()) {
        for (int l = 0; l <= d.bound; ++l) {
            std::vector<std::string> ls;
            for (std::size_t i = 0; i < d.dims[static_cast<std::size_t>(l)]; ++i)
                ls.push_back(l == 0 ? "1" : "b" + std::to_string(l) + "_" + std::to_string(i));
            d.labels.push_back(std::move(ls));
        }
    }
    if (d.generators.empty() && d.bound > 0) {
        // minimal generators: a complement of the decomposables in each component
        for (int l = 1; l <= d.bound; ++l) {
            std::size_t dim = d.dims[static_cast<std::size_t>(l)];
            Span dec(dim, d.field);
            for (int e = 1; e < l; ++e) {
                std::size_t d1 = d.dims[static_cast<std::size_t>(e)], d2 = d.dims[static_cast<std::size_t>(l - e)];
                for (std::size_t k = 0; k < d1 * d2; ++k) dec.add(d.products[static_cast<std::size_t>(e)][static_cast<std::size_t>(l - e)][k]);
            }
            for (std::size_t i = 0; i < dim; ++i)
                if (dec.add(unit_vec(dim, i))) d.generators.push_back(Generator{d.labels[static_cast<std::size_t>(l)][i], l, unit_vec(dim, i)});
        }
    }
    auto* a = new GradedAlgebra(std::move(d));
    AlgebraPtr ptr(a);
    a->build_decomposition();
    return ptr;
}

AlgebraPtr GradedAlgebra::ground_field(const Field& f, Line line)
{
    Data d;
    d.field = f;
    d.line = line;
    d.name = "k";
    d.bound = 0;
    d.exact = true;
    d.dims = {1};
    d.labels = {{"1"}};
    d.products = {{{Vec{Scalar(1)}}}};
    return from_data(std::move(d));
}

void GradedAlgebra::build_decomposition()
{
    decomp_.assign(static_cast<std::size_t>(d_.bound) + 1, {});
    const Field& f = d_.field;
    for (int l = 1; l <= d_.bound; ++l) {
        std::size_t dim = d_.dims[static_cast<std::size_t>(l)];
        struct Cand {
            std::size_t left, gen;
            Vec v;
        };
        std::vector<Cand> chosen;
        Span span(dim, f);
        for (std::size_t x = 0; x < d_.generators.size() && span.rank() < dim; ++x) {
            const auto& g = d_.generators[x];
            int e = l - g.ell;
            if (e < 0) continue;
            for (std::size_t b = 0; b < d_.dims[static_cast<std::size_t>(e)] && span.rank() < dim; ++b) {
                Vec v = multiply(e, unit_vec(d_.dims[static_cast<std::size_t>(e)], b), g.ell, g.vec);
                if (span.add(v)) chosen.push_back({b, x, std::move(v)});
            }
        }
        if (span.rank() < dim) throw PreconditionFailed("generators do not generate component " + std::to_string(l) + " of " + d_.name);
        std::vector<Vec> cols;
        for (const auto& c : chosen) cols.push_back(c.v);
        LinearSolver solver(Matrix::from_columns(dim, cols), f);
        auto& out = decomp_[static_cast<std::size_t>(l)];
        for (std::size_t j = 0; j < dim; ++j) {
            Vec coeffs = *solver.solve(unit_vec(dim, j));
            std::vector<DecompTerm> terms;
            for (std::size_t k = 0; k < chosen.size(); ++k)
                if (!is_zero(coeffs[k])) terms.push_back({coeffs[k], chosen[k].left, chosen[k].gen});
            out.push_back(std::move(terms));
        }
    }
}

AlgebraPtr GradedAlgebra::opposite() const
{
    Data d = d_;
    d.name = d_.name + "^op";
    for (int l1 = 0; l1 <= d_.bound; ++l1) {
        for (int l2 = 0; l1 + l2 <= d_.bound; ++l2) {
            std::size_t d1 = d_.dims[static_cast<std::size_t>(l1)], d2 = d_.dims[static_cast<std::size_t>(l2)];
            auto& tab = d.products[static_cast<std::size_t>(l1)][static_cast<std::size_t>(l2)];
            for (std::size_t i = 0; i < d1; ++i)
                for (std::size_t j = 0; j < d2; ++j)
                    tab[i * d2 + j] = d_.products[static_cast<std::size_t>(l2)][static_cast<std::size_t>(l1)][j * d1 + i];
        }
    }
    return from_data(std::move(d));
}

int GradedAlgebra::top() const
{
    for (int l = d_.bound; l > 0; --l)
        if (d_.dims[static_cast<std::size_t>(l)] != 0) return l;
    return 0;
}

int GradedAlgebra::max_generator_ell() const
{
    int m = 0;
    for (const auto& g : d_.generators) m = std::max(m, g.ell);
    return m;
}

std::size_t GradedAlgebra::dim(int l) const
{
    if (l < 0) return 0;
    if (l <= d_.bound) return d_.dims[static_cast<std::size_t>(l)];
    if (d_.exact) return 0;
    throw BoundExceeded("component " + std::to_string(l) + " of " + d_.name + " is beyond the realized bound " + std::to_string(d_.bound));
}

std::string GradedAlgebra::label(int l, std::size_t i) const { return d_.labels.at(static_cast<std::size_t>(l)).at(i); }

const Vec& GradedAlgebra::product(int l1, std::size_t i, int l2, std::size_t j) const
{
    static const Vec empty;
    if (l1 + l2 > d_.bound) {
        if (d_.exact) return empty;
        throw BoundExceeded("product beyond the realized bound of " + d_.name);
    }
    return d_.products[static_cast<std::size_t>(l1)][static_cast<std::size_t>(l2)][i * d_.dims[static_cast<std::size_t>(l2)] + j];
}

Vec GradedAlgebra::multiply(int l1, const Vec& a, int l2, const Vec& b) const
{
    std::size_t dim_out = dim(l1 + l2);
    Vec out = zero_vec(dim_out);
    if (dim_out == 0) return out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (is_zero(b[j])) continue;
            Scalar c = d_.field.mul(a[i], b[j]);
            const Vec& p = product(l1, i, l2, j);
            for (std::size_t k = 0; k < dim_out; ++k)
                if (!is_zero(p[k])) d_.field.axpy(out[k], c, p[k]);
        }
    }
    return out;
}

Matrix GradedAlgebra::left_mult(int l1, std::size_t i, int l2) const
{
    std::size_t rows = dim(l1 + l2), cols = dim(l2);
    std::vector<Vec> cs;
    for (std::size_t j = 0; j < cols; ++j) cs.push_back(rows ? product(l1, i, l2, j) : Vec{});
    return Matrix::from_columns(rows, cs);
}

Matrix GradedAlgebra::right_mult(int l1, std::size_t i, int l2) const
{
    std::size_t rows = dim(l1 + l2), cols = dim(l2);
    std::vector<Vec> cs;
    for (std::size_t j = 0; j < cols; ++j) cs.push_back(rows ? product(l2, j, l1, i) : Vec{});
    return Matrix::from_columns(rows, cs);
}

bool GradedAlgebra::check_associativity(int limit) const
{
    limit = std::min(limit, d_.bound);
    for (int l1 = 0; l1 <= limit; ++l1)
        for (int l2 = 0; l1 + l2 <= limit; ++l2)
            for (int l3 = 0; l1 + l2 + l3 <= limit; ++l3)
                for (std::size_t i = 0; i < dim(l1); ++i)
                    for (std::size_t j = 0; j < dim(l2); ++j) {
                        const Vec& ij = product(l1, i, l2, j);
                        for (std::size_t k = 0; k < dim(l3); ++k) {
                            Vec left = multiply(l1 + l2, ij, l3, unit_vec(dim(l3), k));
                            Vec right = multiply(l1, unit_vec(dim(l1), i), l2 + l3, product(l2, j, l3, k));
                            if (left != right) return false;
                        }
                    }
    return true;
}

Vec evaluate(const GradedAlgebra& a, const Presentation& p, const Polynomial& poly, int* ell_out)
{
    const Field& f = a.field();
    int ell = poly.terms.empty() ? 0 : p.degree(poly.terms.front().mono);
    if (ell_out) *ell_out = ell;
    Vec out = zero_vec(a.dim(ell));
    for (const auto& t : poly.terms) {
        Vec v = a.unit();
        int e = 0;
        for (int g : t.mono.word) {
            const auto& gen = a.generators().at(static_cast<std::size_t>(g));
            v = a.multiply(e, v, gen.ell, gen.vec);
            e += gen.ell;
        }
        Scalar c = f.reduce(t.coeff);
        for (std::size_t k = 0; k < out.size(); ++k) f.axpy(out[k], c, v[k]);
    }
    return out;
}

MorphismPtr AlgebraMorphism::from_images(std::string name, AlgebraPtr src, AlgebraPtr tgt, const std::vector<Vec>& gen_images)
{
    if (src->field() != tgt->field()) throw PreconditionFailed("morphism between algebras over different fields");
    if (gen_images.size() != src->generators().size()) throw PreconditionFailed("wrong number of generator images");
    auto* m = new AlgebraMorphism();
    MorphismPtr ptr(m);
    m->name_ = std::move(name);
    m->src_ = src;
    m->tgt_ = tgt;
    m->gen_images_ = gen_images;
    const Field& f = src->field();
    for (int l = 0; l <= src->bound(); ++l) {
        auto tl = m->target_ell(l);
        if (tl && !tgt->known(*tl)) break;
        m->bound_ = l;
    }
    for (std::size_t x = 0; x < gen_images.size(); ++x) {
        auto tl = m->target_ell(src->generators()[x].ell);
        std::size_t want = tl ? tgt->dim(*tl) : 0;
        if (tl && gen_images[x].empty()) {
            m->gen_images_[x] = zero_vec(want);
        } else if (gen_images[x].size() != want && !(want == 0 && is_zero(gen_images[x]))) {
            throw PreconditionFailed("image of generator " + src->generators()[x].name + " has the wrong size");
        }
        if (!tl && !is_zero(gen_images[x])) throw PreconditionFailed("image of " + src->generators()[x].name + " leaves the target grading");
        if (!tl) m->gen_images_[x].clear();
    }
    m->maps_.push_back(Matrix::identity(1));
    for (int l = 1; l <= m->bound_; ++l) {
        auto tl = m->target_ell(l);
        std::size_t sd = src->dim(l);
        std::size_t td = tl ? tgt->dim(*tl) : 0;
        std::vector<Vec> cols;
        for (std::size_t j = 0; j < sd; ++j) {
            Vec v = zero_vec(td);
            if (tl && td > 0) {
                for (const auto& t : src->decomposition(l, j)) {
                    const auto& g = src->generators()[t.gen];
                    auto gl = m->target_ell(g.ell);
                    int ll = l - g.ell;
                    auto lt = m->target_ell(ll);
                    if (!gl || !lt) continue;
                    Vec left = m->maps_[static_cast<std::size_t>(ll)].apply(unit_vec(src->dim(ll), t.left), f);
                    Vec prod = tgt->multiply(*lt, left, *gl, m->gen_images_[t.gen]);
                    for (std::size_t k = 0; k < td; ++k) f.axpy(v[k], t.coeff, prod[k]);
                }
            }
            cols.push_back(std::move(v));
        }
        m->maps_.push_back(Matrix::from_columns(td, cols));
    }
    if (auto bad = m->check_multiplicative())
        throw PreconditionFailed("morphism " + m->name_ + " does not respect the relations (degrees " + std::to_string(bad->first) + ", " +
                                 std::to_string(bad->second) + ")");
    return ptr;
}

MorphismPtr AlgebraMorphism::from_spec(const MorphismSpec& spec, AlgebraPtr src, AlgebraPtr tgt)
{
    if (!tgt->presentation()) throw PreconditionFailed("morphism target has no presentation");
    const Presentation& tp = *tgt->presentation();
    std::vector<Vec> imgs(src->generators().size());
    for (std::size_t x = 0; x < src->generators().size(); ++x) {
        const auto& g = src->generators()[x];
        auto tl = tgt->line().ell_on_line(src->bideg(g.ell));
        imgs[x] = zero_vec(tl ? tgt->dim(*tl) : 0);
        for (const auto& [name, poly] : spec.images)
            if (name == g.name) imgs[x] = evaluate(*tgt, tp, poly);
    }
    return from_images(spec.name, std::move(src), std::move(tgt), imgs);
}

MorphismPtr AlgebraMorphism::identity(AlgebraPtr a, std::string name)
{
    std::vector<Vec> imgs;
    for (const auto& g : a->generators()) imgs.push_back(g.vec);
    return from_images(std::move(name), a, a, imgs);
}

MorphismPtr AlgebraMorphism::unit_map(AlgebraPtr k, AlgebraPtr a, std::string name)
{
    if (!k->generators().empty()) throw PreconditionFailed("unit map needs the ground field as source");
    return from_images(std::move(name), std::move(k), std::move(a), {});
}

std::optional<int> AlgebraMorphism::target_ell(int l) const { return tgt_->line().ell_on_line(src_->bideg(l)); }

Vec AlgebraMorphism::apply(int l, const Vec& x) const
{
    if (l > bound_) {
        if (src_->exact() && l > src_->bound()) return Vec{};
        throw BoundExceeded("morphism " + name_ + " evaluated beyond its bound");
    }
    return maps_.at(static_cast<std::size_t>(l)).apply(x, src_->field());
}

std::optional<std::pair<int, int>> AlgebraMorphism::check_multiplicative() const
{
    const Field& f = src_->field();
    for (int l1 = 0; l1 <= bound_; ++l1)
        for (int l2 = 0; l1 + l2 <= bound_; ++l2) {
            auto t1 = target_ell(l1), t2 = target_ell(l2), t12 = target_ell(l1 + l2);
            for (std::size_t i = 0; i < src_->dim(l1); ++i)
                for (std::size_t j = 0; j < src_->dim(l2); ++j) {
                    Vec lhs = apply(l1 + l2, src_->product(l1, i, l2, j));
                    if (!t12) {
                        if (!is_zero(lhs)) return std::make_pair(l1, l2);
                        continue;
                    }
                    Vec rhs = zero_vec(tgt_->dim(*t12));
                    if (t1 && t2) rhs = tgt_->multiply(*t1, apply(l1, unit_vec(src_->dim(l1), i)), *t2, apply(l2, unit_vec(src_->dim(l2), j)));
                    if (lhs != rhs) return std::make_pair(l1, l2);
                    (void)f;
                }
        }
    return std::nullopt;
}

bool AlgebraMorphism::is_identity() const
{
    if (src_ != tgt_) return false;
    for (int l = 0; l <= bound_; ++l)
        if (!(maps_[static_cast<std::size_t>(l)] == Matrix::identity(src_->dim(l)))) return false;
    return true;
}

std::vector<std::size_t> hilbert_series(const GradedAlgebra& a, int dmax)
{
    std::vector<std::size_t> out;
    for (int d = 0; d <= dmax; ++d) out.push_back(a.dim(d));
    return out;
}

}  // namespace kdsg
