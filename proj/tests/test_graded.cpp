#include "doctest.h"

#include "kdsg/algebra.hpp"
#include "kdsg/errors.hpp"
#include "kdsg/module.hpp"
#include "kdsg/presentation.hpp"

#include <random>

using namespace kdsg;

namespace {

AlgebraPtr realize_text(const std::string& body, int dmax, const Field& f = Field::rationals())
{
    return GradedAlgebra::realize(parse_presentation(body), f, dmax);
}

// Brute-force dimension of the degree-d part of k<gens>/(two-sided ideal),
// spanning u*r*v over all words u, v directly in the free algebra.
std::size_t brute_quotient_dim(const Presentation& p, const Field& f, int d)
{
    std::vector<std::vector<std::vector<int>>> by_deg(static_cast<std::size_t>(d) + 1);
    by_deg[0].push_back({});
    for (int e = 1; e <= d; ++e)
        for (std::size_t g = 0; g < p.generators.size(); ++g) {
            int dg = p.generators[g].degree;
            if (dg > e) continue;
            for (const auto& w : by_deg[static_cast<std::size_t>(e - dg)]) {
                auto x = w;
                x.push_back(static_cast<int>(g));
                by_deg[static_cast<std::size_t>(e)].push_back(x);
            }
        }
    const auto& target = by_deg[static_cast<std::size_t>(d)];
    auto index = [&](const std::vector<int>& w) {
        for (std::size_t i = 0; i < target.size(); ++i)
            if (target[i] == w) return i;
        return target.size();
    };
    Span span(target.size(), f);
    for (const auto& r : p.relations) {
        int dr = p.degree(r.terms.front().mono);
        for (int du = 0; du + dr <= d; ++du)
            for (const auto& u : by_deg[static_cast<std::size_t>(du)])
                for (const auto& v : by_deg[static_cast<std::size_t>(d - dr - du)]) {
                    Vec vec = zero_vec(target.size());
                    for (const auto& t : r.terms) {
                        std::vector<int> w = u;
                        w.insert(w.end(), t.mono.word.begin(), t.mono.word.end());
                        w.insert(w.end(), v.begin(), v.end());
                        f.axpy(vec[index(w)], f.reduce(t.coeff), Scalar(1));
                    }
                    span.add(vec);
                }
    }
    return target.size() - span.rank();
}

}  // namespace

TEST_SUITE("graded")
{
    TEST_CASE("parse truncated polynomial ring")
    {
        Presentation p = parse_presentation("generators: t:1; relations: t^3;");
        REQUIRE(p.generators.size() == 1);
        CHECK(p.generators[0] == GeneratorSpec{"t", 1});
        REQUIRE(p.relations.size() == 1);
        CHECK(p.relations[0].terms.size() == 1);
        CHECK(p.relations[0].terms[0].mono.word == std::vector<int>{0, 0, 0});
        auto a = GradedAlgebra::realize(p, Field::rationals(), 6);
        CHECK(hilbert_series(*a, 6) == std::vector<std::size_t>{1, 1, 1, 0, 0, 0, 0});
    }

    TEST_CASE("parse quadric")
    {
        Presentation p = parse_presentation("generators: a:1, b:1; relations: a*a + b*b;");
        CHECK(p.generators.size() == 2);
        REQUIRE(p.relations.size() == 1);
        CHECK(p.relations[0].terms.size() == 2);
        CHECK(p.max_relation_degree() == 2);
    }

    TEST_CASE("parse errors")
    {
        CHECK_THROWS_AS(parse_presentation("generators: a:1, b:1; relations: a*a + b;"), ParseError);
        CHECK_THROWS_AS(parse_presentation("generators: a:1; relations: a*c;"), ParseError);
        CHECK_THROWS_AS(parse_presentation("generators: a:1, a:2;"), ParseError);
        CHECK_THROWS_AS(parse_presentation("generators: a:0;"), ParseError);
        try {
            parse_document("field Q;\nalgebra A {\n  generators: a:1;\n  relations: a * ;\n}\n");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line == 4);
        }
    }

    TEST_CASE("print parse round trip")
    {
        const char* docs[] = {
            "field Q;\nalgebra R {\n  generators: x:1;\n}\n",
            "field F5;\nalgebra A {\n  generators: a:1, b:1;\n  relations: a*a + b*b, 3 a*b - 2 b^2;\n}\n",
            "algebra L {\n  generators: t0:1, t1:1;\n  relations: t0*t0, t1*t1;\n  commutativity: graded;\n}\n"
            "algebra S {\n  generators: X:2;\n}\n"
            "morphism q : S -> L {\n  X -> t0*t1 - t1*t0;\n}\n",
        };
        for (const char* text : docs) {
            Document d = parse_document(text);
            std::string printed = print_document(d);
            Document again = parse_document(printed);
            CHECK(again == d);
            CHECK(print_document(again) == printed);
        }
        Presentation p = parse_presentation("generators: a:1, b:2; relations: a^4 - b*b, -a*b + b*a;");
        CHECK(parse_presentation(print_presentation(p), p.name) == p);
    }

    TEST_CASE("realization examples")
    {
        CHECK(hilbert_series(*realize_text("generators: t:1; relations: t*t;", 6), 6) == std::vector<std::size_t>{1, 1, 0, 0, 0, 0, 0});
        CHECK(hilbert_series(*realize_text("generators: x:1;", 6), 6) == std::vector<std::size_t>(7, 1));
        auto quad = realize_text("generators: a:1, b:1; relations: a*a + b*b;", 6);
        CHECK(hilbert_series(*quad, 6) == std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7});
        CHECK(quad->check_associativity(6));
        auto ext = realize_text("generators: t0:1, t1:1; relations: t0*t0, t1*t1; commutativity: graded;", 4);
        CHECK(hilbert_series(*ext, 4) == std::vector<std::size_t>{1, 2, 1, 0, 0});
        CHECK(ext->exact());
        // odd generators anticommute under the graded flag
        auto odd = realize_text("generators: x0:1, x1:1; commutativity: graded;", 5);
        CHECK(hilbert_series(*odd, 5) == std::vector<std::size_t>{1, 2, 1, 0, 0, 0});
        auto poly = realize_text("generators: x0:1, x1:1; relations: x0*x1 - x1*x0;", 5);
        CHECK(hilbert_series(*poly, 5) == std::vector<std::size_t>{1, 2, 3, 4, 5, 6});
        auto even = realize_text("generators: x0:2, x1:2; commutativity: graded;", 6);
        CHECK(hilbert_series(*even, 6) == std::vector<std::size_t>{1, 0, 2, 0, 3, 0, 4});
    }

    TEST_CASE("graded commutativity in characteristic 2")
    {
        auto a = realize_text("generators: y:1; commutativity: graded;", 4, Field::prime(2));
        CHECK(hilbert_series(*a, 4) == std::vector<std::size_t>{1, 1, 1, 1, 1});
        auto b = realize_text("generators: y:1; commutativity: graded;", 4, Field::rationals());
        CHECK(hilbert_series(*b, 4) == std::vector<std::size_t>{1, 1, 0, 0, 0});
    }

    TEST_CASE("realization agrees with brute-force ideal span")
    {
        const char* bodies[] = {
            "generators: a:1, b:1; relations: a*a + b*b;",
            "generators: a:1, b:1; relations: a*b - b*a, a*a*a;",
            "generators: a:1, b:2; relations: a*b - b*a, a^4 - b*b;",
            "generators: a:1, b:1, c:1; relations: a*b + b*c, c*c - a*a;",
        };
        for (const Field& f : {Field::rationals(), Field::prime(3)}) {
            for (const char* body : bodies) {
                Presentation p = parse_presentation(body);
                auto a = GradedAlgebra::realize(p, f, 5);
                for (int d = 0; d <= 5; ++d) CHECK(a->dim(d) == brute_quotient_dim(p, f, d));
                CHECK(a->check_associativity(5));
            }
        }
    }

    TEST_CASE("truncation is respected")
    {
        auto a = realize_text("generators: x:1;", 3);
        CHECK_FALSE(a->exact());
        CHECK_THROWS_AS(a->dim(4), BoundExceeded);
        auto e = realize_text("generators: t:1; relations: t*t;", 3);
        CHECK(e->dim(10) == 0);
    }

    TEST_CASE("morphisms")
    {
        Document d = parse_document(
            "algebra S { generators: X:2; }\n"
            "algebra R { generators: x:1; }\n"
            "morphism q : S -> R { X -> x^2; }\n");
        auto S = GradedAlgebra::realize(d.algebra("S"), Field::rationals(), 8);
        auto R = GradedAlgebra::realize(d.algebra("R"), Field::rationals(), 8);
        auto q = AlgebraMorphism::from_spec(d.morphism("q"), S, R);
        CHECK_FALSE(q->check_multiplicative().has_value());
        CHECK(q->apply(4, Vec{Scalar(1)}) == Vec{Scalar(1)});
        CHECK_THROWS_AS(parse_document("algebra S { generators: X:2; }\nalgebra R { generators: x:1; }\n"
                                       "morphism bad : S -> R { X -> x; }\n"),
                        ParseError);
        // x -> x^2 is not multiplicative-compatible with x^2 = 0 in the source
        Document e = parse_document(
            "algebra Q { generators: y:1; relations: y*y; }\n"
            "algebra P { generators: z:1; }\n"
            "morphism f : Q -> P { y -> z; }\n");
        auto Q = GradedAlgebra::realize(e.algebra("Q"), Field::rationals(), 4);
        auto P = GradedAlgebra::realize(e.algebra("P"), Field::rationals(), 4);
        CHECK_THROWS(AlgebraMorphism::from_spec(e.morphism("f"), Q, P));
        auto id = AlgebraMorphism::identity(R);
        CHECK(id->is_identity());
    }

    TEST_CASE("trivial and regular modules")
    {
        auto a = realize_text("generators: a:1, b:1; relations: a*a + b*b;", 5);
        auto k = GradedModule::trivial(a);
        CHECK(hilbert_series(k, 3) == std::vector<std::size_t>{1, 0, 0, 0});
        for (std::size_t g = 0; g < a->generators().size(); ++g) CHECK(k.generator_action(g, 0).is_zero());
        CHECK(k.check_action(5));
        auto reg = GradedModule::regular(a);
        CHECK(reg.check_action(5));
        CHECK(hilbert_series(reg, 5) == hilbert_series(*a, 5));
    }

    TEST_CASE("presented modules")
    {
        auto r = realize_text("generators: x:1;", 8);
        // k[x]/(x^2) as a cyclic module
        auto m = cyclic_module(r, {{2, Vec{Scalar(1)}}}, 8, "Q");
        CHECK(hilbert_series(m, 4) == std::vector<std::size_t>{1, 1, 0, 0, 0});
        CHECK(m.check_action(4));
        // free module on generators in degrees 0 and 1 modulo x*e0 - e1
        FreeModule f(r, {}, {0, 1});
        Vec rel = zero_vec(f.dim(1));
        rel[f.block(1, 0)] = 1;
        rel[f.block(1, 1)] = -1;
        auto n = presented_module(f, {{1, rel}}, 6);
        CHECK(hilbert_series(n, 6) == std::vector<std::size_t>(7, 1));
        CHECK(n.check_action(6));
    }

    TEST_CASE("restriction")
    {
        Document d = parse_document(
            "algebra S { generators: X:2; }\n"
            "algebra R { generators: x:1; }\n"
            "morphism q : S -> R { X -> x^2; }\n");
        auto S = GradedAlgebra::realize(d.algebra("S"), Field::rationals(), 10);
        auto R = GradedAlgebra::realize(d.algebra("R"), Field::rationals(), 10);
        auto q = AlgebraMorphism::from_spec(d.morphism("q"), S, R);
        auto reg = GradedModule::regular(R);
        ModuleSum res = restrict_module(*q, reg);
        REQUIRE(res.parts.size() == 1);
        const auto& m = res.parts[0];
        CHECK(m.check_action(10));
        // free of rank two over S on 1 and x: the quotient by S_+ has one class in degrees 0 and 1
        for (int l = 0; l <= 8; ++l) {
            CHECK(m.dim(l) == 1);
            std::size_t image = l >= 2 ? m.generator_action(0, l - 2).nnz() : 0;
            CHECK(m.dim(l) - image == (l <= 1 ? 1u : 0u));
        }
        auto k = GradedModule::trivial(R);
        ModuleSum rk = restrict_module(*q, k);
        REQUIRE(rk.parts.size() == 1);
        CHECK(hilbert_series(rk.parts[0], 3) == std::vector<std::size_t>{1, 0, 0, 0});
        ModuleSum ri = restrict_module(*AlgebraMorphism::identity(R), reg);
        CHECK(hilbert_series(ri.parts[0], 10) == hilbert_series(reg, 10));
    }

    TEST_CASE("shifted modules keep their line")
    {
        auto r = realize_text("generators: x:1;", 4);
        auto k = GradedModule::trivial(r);
        auto s = k.shifted(Bideg{-1, -3});
        CHECK(s.offset() == Bideg{-1, 0});
        CHECK(s.lo() == -3);
        CHECK(s.bideg(-3) == Bideg{-1, -3});
        auto t = s.table();
        CHECK(t.at(Bideg{-1, -3}) == 1);
        CHECK(t.total() == 1);
    }

    TEST_CASE("random presentations are associative")
    {
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> coef(-2, 2);
        for (int trial = 0; trial < 8; ++trial) {
            Presentation p;
            p.generators = {{"a", 1}, {"b", 1}};
            Polynomial r;
            for (std::vector<int> w : {std::vector<int>{0, 0}, {0, 1}, {1, 0}, {1, 1}}) {
                int c = coef(rng);
                if (c != 0) r.terms.push_back(Term{Scalar(c), Monomial{w, false}});
            }
            if (r.terms.empty()) continue;
            p.relations.push_back(r);
            auto a = GradedAlgebra::realize(p, Field::prime(5), 5);
            CHECK(a->check_associativity(5));
            for (int dd = 0; dd <= 4; ++dd) CHECK(a->dim(dd) == brute_quotient_dim(p, Field::prime(5), dd));
        }
    }
}
