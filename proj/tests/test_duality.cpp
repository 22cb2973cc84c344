#include "doctest.h"

#include "fixtures.hpp"
#include "kdsg/errors.hpp"
#include "kdsg/gorenstein.hpp"

using namespace kdsg;
using namespace fixtures;

namespace {

// span of the relation vectors in the degree-2 words
std::size_t relation_rank(const std::vector<Polynomial>& rels, std::size_t n)
{
    std::vector<Vec> rows;
    for (const auto& r : rels) {
        Vec v = zero_vec(n * n);
        for (const auto& t : r.terms) v[static_cast<std::size_t>(t.mono.word[0]) * n + static_cast<std::size_t>(t.mono.word[1])] += t.coeff;
        rows.push_back(v);
    }
    return rank(Matrix::from_rows(rows, n * n), Field::rationals());
}

bool same_relation_span(const Presentation& a, const std::string& expected, std::size_t n)
{
    Presentation e = parse_presentation(expected);
    std::vector<Polynomial> both = a.relations;
    both.insert(both.end(), e.relations.begin(), e.relations.end());
    std::size_t r = relation_rank(e.relations, n);
    return relation_rank(a.relations, n) == r && relation_rank(both, n) == r;
}

}  // namespace

TEST_SUITE("duality")
{
    TEST_CASE("quadratic duals")
    {
        auto d = quadratic_dual(parse_presentation(kQuadric));
        CHECK(d.generators.size() == 2);
        CHECK(same_relation_span(d, "generators: x1:1, x2:1; relations: x1*x2, x2*x1, x1^2 - x2^2;", 2));
        CHECK(print_polynomial(d.relations.back(), {"x1", "x2"}) == "x1^2 - x2^2");

        auto p = quadratic_dual(parse_presentation(kPoly2));
        CHECK(same_relation_span(p, "generators: x1:1, x2:1; relations: x1^2, x2^2, x1*x2 + x2*x1;", 2));

        auto free2 = quadratic_dual(parse_presentation("generators: a:1, b:1;"));
        CHECK(free2.relations.size() == 4);

        // graded commutativity contributes its relations
        auto ext = quadratic_dual(parse_presentation(kExt2));
        CHECK(same_relation_span(ext, "generators: x1:1, x2:1; relations: x1*x2 - x2*x1;", 2));

        CHECK_THROWS_AS(quadratic_dual(parse_presentation(kCubic)), PreconditionFailed);
        CHECK_THROWS_AS(quadratic_dual(parse_presentation(kSquareRoot)), PreconditionFailed);
    }

    TEST_CASE("duals realize to the Ext algebra and satisfy reciprocity")
    {
        Bounds b{8, 12};
        for (const char* body : {kQuadric, kPoly2, kExt2, kPoly1}) {
            auto A = alg(body, 12);
            auto D = GradedAlgebra::realize(quadratic_dual(*A->presentation()), A->field(), 12);
            CHECK_FALSE(koszul_reciprocity_failure(*A, *D, 12));
            // involution on dimensions
            auto DD = GradedAlgebra::realize(quadratic_dual(*D->presentation()), A->field(), 12);
            for (int l = 0; l <= 12; ++l) CHECK(DD->dim(l) == A->dim(l));
            // diagonal Ext dims are the dual's dims
            auto E = ext_algebra(A, b);
            for (int s = 0; s <= 8; ++s) CHECK(E->rank(s) == D->dim(s));
        }
        auto Q = GradedAlgebra::realize(quadratic_dual(parse_presentation(kQuadric)), Field::rationals(), 12);
        CHECK(Q->exact());
        CHECK(Q->dims() == std::vector<std::size_t>{1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
        auto C = alg(kCubic, 12);
        auto Cq = alg("generators: t:1;", 12);
        CHECK(koszul_reciprocity_failure(*C, *Cq, 12));
    }

    TEST_CASE("Koszulness")
    {
        Bounds b{6, 12};
        CHECK(koszulness_check(alg(kPoly1), b).koszul);
        CHECK(koszulness_check(alg(kQuadric), b).koszul);
        CHECK(koszulness_check(alg(kExt2), b).koszul);
        auto c = koszulness_check(alg(kCubic), b);
        CHECK_FALSE(c.koszul);
        REQUIRE(c.witness);
        CHECK(*c.witness == std::make_pair(2, 3));
        CHECK(c.verdict("k").status == Status::Fail);
        CHECK_THROWS_AS(koszulness_check(alg(kSquareRoot), b), PreconditionFailed);
    }

    TEST_CASE("cofibre algebras")
    {
        Bounds b{6, 16};
        auto c = cofibre_algebra(*worked_q(), b);
        // oracle: the quotient written down directly
        auto direct = alg(kExt1);
        for (int l = 0; l <= 16; ++l) CHECK(c.Q->dim(l) == direct->dim(l));
        CHECK(c.Q->exact());
        CHECK_FALSE(c.p->check_multiplicative());
        CHECK(c.built_from_k.status == Status::Pass);
        CHECK(c.small_over_R.status == Status::Pass);

        auto id = cofibre_algebra(*koszul_q(), b);
        CHECK(id.Q->is_field());

        auto S = alg(kPoly2, 16, Field::rationals(), "S");
        auto R = alg(kPoly1, 16, Field::rationals(), "R");
        auto bad = AlgebraMorphism::from_images("q", S, R, {Vec{1}, Vec{1}});
        CHECK_THROWS_AS(cofibre_algebra(*bad, b), NotFlat);
    }

    TEST_CASE("dual cofibre sequence of the degree-doubling context")
    {
        Bounds b{6, 16};
        auto ctx = normalization_context(worked_q(), b);
        REQUIRE(ctx.Q);
        auto six = dual_cofibre_sequence(ctx, b);
        REQUIRE(six.formal());
        CHECK(six.F->table().dims == std::map<Bideg, std::size_t>{{{0, 0}, 1}, {{-1, -2}, 1}});
        CHECK(six.E->table().dims == std::map<Bideg, std::size_t>{{{0, 0}, 1}, {{-1, -1}, 1}});
        auto D = six.D->table();
        for (int s = 0; s <= 6; ++s) CHECK(D.at(Bideg{-s, -s}) == 1);
        CHECK(D.total() == 7);
        for (const auto& v : six.checks) {
            INFO(v.name << ": " << v.detail);
            CHECK(v.status != Status::Fail);
        }
        CHECK(six.checks[2].status == Status::Pass);  // cofibre property
        CHECK(six.checks[3].status == Status::Pass);  // F finite
    }

    TEST_CASE("dual cofibre sequence of the Koszul and unit contexts")
    {
        Bounds b{6, 12};
        auto six = dual_cofibre_sequence(normalization_context(koszul_q(12), b), b);
        REQUIRE(six.formal());
        CHECK(six.Dr->is_field());
        CHECK(six.jm->matrix(1) == Matrix::identity(2));
        for (int l = 0; l <= 2; ++l) CHECK(six.Er->dim(l) == six.Fr->dim(l));
        for (const auto& v : six.checks) {
            INFO(v.name << ": " << v.detail);
            CHECK(v.status == Status::Pass);
        }

        auto mirror = dual_cofibre_sequence(normalization_context(unit_q(kExt2, 12), b), b);
        REQUIRE(mirror.formal());
        CHECK(mirror.Fr->is_field());
        for (const auto& v : mirror.checks) {
            INFO(v.name << ": " << v.detail);
            CHECK(v.status == Status::Pass);
        }

        auto C = alg(kCubic);
        CHECK_THROWS_AS(normalization_context(AlgebraMorphism::identity(C, "q"), b), NotANormalization);
    }

    TEST_CASE("double centralizer")
    {
        Bounds b{8, 12};
        for (const char* body : {kExt1, kPoly1, kExt2, kPoly2, kQuadric}) {
            auto v = double_centralizer_check(alg(body, 12), b);
            INFO(body << ": " << v.detail);
            CHECK(v.status == Status::Pass);
        }
        CHECK_THROWS_AS(double_centralizer_check(alg(kCubic), b), NotFormalizable);
    }

    TEST_CASE("E and the round trip")
    {
        Bounds b{6, 12};
        auto mirror = dual_cofibre_sequence(normalization_context(unit_q(kExt2, 12), b), b);
        const auto& R = mirror.base.R;
        auto er = E_functor(mirror, GradedModule::regular(R));
        CHECK(er.table().dims == std::map<Bideg, std::size_t>{{{0, 2}, 1}});
        auto ek = E_functor(mirror, GradedModule::trivial(R));
        REQUIRE(ek.parts.size() == 1);
        for (int l = 0; l <= 4; ++l) CHECK(ek.parts[0].dim(l) == mirror.Er->dim(l));
        // shifting the module shifts E
        auto ks = E_functor(mirror, GradedModule::trivial(R, Bideg{0, 3}));
        CHECK(ks.parts[0].offset() == ek.parts[0].offset() + Bideg{0, 3});

        for (auto* six : {&mirror}) {
            for (auto m : {GradedModule::regular(six->base.R), GradedModule::trivial(six->base.R)}) {
                auto v = roundtrip_check(*six, m, b);
                INFO(v.name << ": " << v.detail);
                CHECK(v.status == Status::Pass);
                CHECK(*v.shift == Bideg{0, 2});
            }
        }
        auto koszul = dual_cofibre_sequence(normalization_context(koszul_q(12), b), b);
        for (auto m : {GradedModule::regular(koszul.base.R), GradedModule::trivial(koszul.base.R)}) {
            auto v = roundtrip_check(koszul, m, b);
            INFO(v.name << ": " << v.detail);
            CHECK(v.status == Status::Pass);
            CHECK(*v.shift == Bideg{-2, -2});
        }
    }
}

TEST_SUITE("gorenstein")
{
    TEST_CASE("absolute Gorenstein certificates")
    {
        Bounds b{6, 16};
        auto P = alg(kPoly1);
        // oracle: Ext^1_c = P_{c+1} / x P_c from the two-term resolution
        for (int c = -2; c <= 6; ++c) {
            std::size_t top = c + 1 >= 0 ? P->dim(c + 1) : 0;
            std::size_t img = c >= 0 ? rank(P->right_mult(1, 0, c), Field::rationals()) : 0;
            CHECK((top - img == 1) == (c == -1));
        }
        auto g = gorenstein_test(P, b);
        CHECK(g.gorenstein());
        CHECK(g.shift == Bideg{-1, -1});
        CHECK(g.raw() == ShiftPair{1, -1});

        auto C = alg(kCubic);
        auto gc = gorenstein_test(C, b);
        CHECK(gc.gorenstein());
        CHECK(gc.shift == Bideg{0, 2});
        // oracle: the socle is t^2 alone
        CHECK(rank(C->left_mult(1, 0, 2), Field::rationals()) == 0);
        CHECK(rank(C->left_mult(1, 0, 1), Field::rationals()) == 1);
        CHECK(gc.evidence.total() == 1);

        auto two = gorenstein_test(alg("generators: x:1, y:1; relations: x^2, x*y, y*x, y^2;"), b);
        CHECK(two.kind == GorensteinCertificate::Kind::NotGorenstein);
        CHECK(two.witnesses.size() == 1);

        CHECK(gorenstein_test(alg(kPoly2), b).shift == Bideg{-2, -2});
        CHECK(gorenstein_test(alg(kExt2), b).shift == Bideg{0, 2});
        CHECK(gorenstein_test(GradedAlgebra::ground_field(Field::rationals()), b).shift == Bideg{0, 0});
    }

    TEST_CASE("relative Gorenstein certificates")
    {
        Bounds b{6, 16};
        auto q = worked_q();
        auto g = relative_gorenstein_test(*q, b);
        CHECK(g.gorenstein());
        CHECK(g.shift == Bideg{0, -1});
        // oracle: Hom_S(S.1 + S.x, S) in degree c is S_c + S_{c+1}
        const auto& S = *q->source();
        for (int c = -3; c <= 8; ++c) {
            std::size_t hom = (c >= 0 ? S.dim(c) : 0) + (c + 1 >= 0 ? S.dim(c + 1) : 0);
            std::size_t shifted = c + 1 >= 0 ? q->target()->dim(c + 1) : 0;
            CHECK(hom == shifted);
        }

        auto id = relative_gorenstein_test(*AlgebraMorphism::identity(alg(kPoly1)), b);
        CHECK(id.gorenstein());
        CHECK(id.shift == Bideg{0, 0});

        auto ctx = normalization_context(q, b);
        auto gp = relative_gorenstein_test(*ctx.p, b);
        CHECK(gp.gorenstein());
        CHECK(gp.shift == Bideg{-1, -2});

        auto Sx = alg("generators: X:1;", 16, Field::rationals(), "S");
        auto Rxy = alg("generators: x:1, y:1; relations: x*y - y*x, y^2, x*y;", 16, Field::rationals(), "R");
        auto bad = AlgebraMorphism::from_images("q", Sx, Rxy, {Rxy->generators()[0].vec});
        CHECK(validate_normalization(*bad, b).valid());
        auto gb = relative_gorenstein_test(*bad, b);
        CHECK(gb.kind == GorensteinCertificate::Kind::NotGorenstein);

        auto mirror = relative_gorenstein_test(*unit_q(kExt2), b);
        CHECK(mirror.shift == Bideg{0, -2});
    }

    TEST_CASE("shift arithmetic")
    {
        auto ok = ascent_descent_check("q", Bideg{-1, -1}, Bideg{0, -1}, Bideg{-1, -2});
        CHECK(ok.status == Status::Pass);
        auto bad = ascent_descent_check("q", Bideg{-1, -1}, Bideg{0, 0}, Bideg{-1, -2});
        CHECK(bad.status == Status::Fail);
        auto derived = ascent_descent_check("q", Bideg{-1, -1}, Bideg{0, -1}, std::nullopt);
        CHECK(derived.origin == "derived");
        CHECK(*derived.shift == Bideg{-1, -2});
        CHECK(ascent_descent_check("id", std::nullopt, Bideg{}, Bideg{2, 3}).shift == Bideg{2, 3});
    }

    TEST_CASE("context report of the degree-doubling context")
    {
        Bounds b{6, 16};
        auto rep = sgc_report(normalization_context(worked_q(), b), b);
        for (const auto& v : rep.rows) {
            INFO(v.name << ": " << to_string(v.status) << " " << v.detail);
            CHECK(v.status != Status::Fail);
        }
        CHECK(rep.shift("a_S") == Bideg{-1, -2});
        CHECK(rep.shift("a_R") == Bideg{-1, -1});
        CHECK(rep.shift("a_Q") == Bideg{0, 1});
        CHECK(rep.shift("a_q") == Bideg{0, -1});
        CHECK(rep.shift("a_p") == Bideg{-1, -2});
        CHECK(rep.shift("a_j") == Bideg{0, 1});
        CHECK(rep.shift("a_i") == Bideg{1, 2});
        CHECK(rep.shift("a_E") == Bideg{-1, -1});
        CHECK(rep.shift("a_F") == Bideg{-1, -2});
        CHECK(rep.shift("a_D") == Bideg{0, 1});
        for (const auto& v : rep.rows)
            if (v.name == "a_j = -a_q" || v.name == "a_i = -a_p" || v.name == "a_R = a_S + a_Q") CHECK(v.status == Status::Pass);
    }

    TEST_CASE("context reports of the Koszul contexts")
    {
        Bounds b{6, 12};
        for (auto q : {koszul_q(12), unit_q(kExt2, 12), AlgebraMorphism::identity(alg(kPoly1), "q")}) {
            auto rep = sgc_report(normalization_context(q, b), b);
            for (const auto& v : rep.rows) {
                INFO(q->target()->name() << " " << v.name << ": " << to_string(v.status) << " " << v.detail);
                CHECK(v.status != Status::Fail);
            }
            CHECK(rep.shift("a_R") == rep.shift("a_E"));
        }
    }

    TEST_CASE("context report with a non-Gorenstein normalization")
    {
        Bounds b{6, 16};
        auto Sx = alg("generators: X:1;", 16, Field::rationals(), "S");
        auto Rxy = alg("generators: x:1, y:1; relations: x*y - y*x, y^2, x*y;", 16, Field::rationals(), "R");
        auto bad = AlgebraMorphism::from_images("q", Sx, Rxy, {Rxy->generators()[0].vec});
        auto ctx = normalization_context(bad, b);
        CHECK_FALSE(ctx.Q);
        auto rep = sgc_report(ctx, b);
        bool q_failed = false;
        for (const auto& v : rep.rows)
            if (v.name == "relatively Gorenstein q") q_failed = v.status == Status::Fail;
        CHECK(q_failed);
    }

    TEST_CASE("invariance and c-finite generation")
    {
        Bounds b{6, 16};
        auto q2 = worked_q();
        const auto& R = q2->target();
        auto q1 = AlgebraMorphism::identity(R, "id");
        auto quotient = cyclic_module(R, {{2, Vec{1}}}, 16, "k[x]/(x^2)");
        std::vector<GradedModule> samples = {GradedModule::regular(R), GradedModule::trivial(R), quotient};
        CHECK(invariance_check(*q1, *q2, samples, b).status == Status::Pass);
        CHECK(invariance_check(*q2, *q2, samples, b).status == Status::Pass);
        CHECK(cfg_equivalence_check(*q2, samples, b).status == Status::Pass);
    }

    TEST_CASE("singularity verdicts")
    {
        Bounds b{6, 12};
        auto poly = singularity_verdict(normalization_context(koszul_q(12), b), b);
        CHECK(poly.sg_trivial.status == Status::Pass);
        CHECK(poly.cosg_trivial.status == Status::Fail);
        auto ext = singularity_verdict(normalization_context(unit_q(kExt2, 12), b), b);
        CHECK(ext.sg_trivial.status == Status::Fail);
        CHECK(ext.cosg_trivial.status == Status::Pass);
        auto cubic = singularity_verdict(normalization_context(unit_q(kCubic, 12), b), b);
        CHECK(cubic.sg_trivial.status == Status::Fail);
        CHECK(cubic.cosg_trivial.status == Status::Pass);
        for (const auto* rep : {&poly, &ext, &cubic})
            for (const auto& v : rep->interchange) {
                INFO(v.name << ": " << v.detail);
                CHECK(v.status == Status::Pass);
            }
    }
}
