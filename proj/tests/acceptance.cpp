// Acceptance run: one line per criterion, nonzero exit if any fails.

#include "kdsg/cli.hpp"
#include "kdsg/commutation.hpp"
#include "kdsg/errors.hpp"
#include "kdsg/gorenstein.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace kdsg;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what)
{
    if (!ok) throw Failure(what);
}

AlgebraPtr alg(const std::string& body, const std::string& name, int dmax)
{
    return GradedAlgebra::realize(parse_presentation(body, name), Field::rationals(), dmax);
}

const char* kExterior = "generators: t0:1, t1:1; relations: t0*t1 + t1*t0; commutativity: graded;";
const char* kPolynomial = "generators: x0:1, x1:1; relations: x0*x1 - x1*x0;";
const char* kQuadric = "generators: a:1, b:1; relations: a^2 + b^2;";
const char* kCubic = "generators: t:1; relations: t^3;";

MorphismPtr identity_context(int dmax) { return AlgebraMorphism::identity(alg(kPolynomial, "R", dmax), "q"); }

MorphismPtr unit_context(const char* body, int dmax)
{
    auto R = alg(body, "R", dmax);
    return AlgebraMorphism::unit_map(GradedAlgebra::ground_field(R->field()), R, "q");
}

MorphismPtr worked(int dmax)
{
    auto S = alg("generators: X:2;", "S", dmax);
    auto R = alg("generators: x:1;", "R", dmax);
    return AlgebraMorphism::from_images("q", S, R, {Vec{1}});
}

// degrees l of a finite algebra where some element is killed by every generator
std::vector<int> socle_degrees(const GradedAlgebra& a)
{
    std::vector<int> out;
    const Field& f = a.field();
    for (int l = 0; l <= a.top(); ++l) {
        std::size_t n = a.dim(l);
        if (!n) continue;
        std::vector<Vec> cols;
        for (std::size_t i = 0; i < n; ++i) {
            Vec e(n, Scalar(0));
            e[i] = 1;
            Vec col;
            for (const auto& g : a.generators()) {
                if (l + g.ell > a.top()) continue;
                Vec img = a.multiply(g.ell, g.vec, l, e);
                col.insert(col.end(), img.begin(), img.end());
            }
            cols.push_back(col);
        }
        std::size_t rows = cols.front().size();
        std::size_t r = rows ? rank(Matrix::from_columns(rows, cols), f) : 0;
        if (r < n) out.push_back(l);
    }
    return out;
}

// coefficients of H_a(t) H_b(-t) through degree n, by direct convolution
std::vector<long long> reciprocity_product(const GradedAlgebra& a, const GradedAlgebra& b, int n)
{
    std::vector<long long> c(static_cast<std::size_t>(n) + 1, 0);
    auto dim = [](const GradedAlgebra& x, int l) -> long long {
        if (x.exact() && l > x.top()) return 0;
        return static_cast<long long>(x.dim(l));
    };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) c[static_cast<std::size_t>(i + j)] += dim(a, i) * dim(b, j) * (j % 2 ? -1 : 1);
    return c;
}

bool unit_series(const std::vector<long long>& c)
{
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != (i == 0 ? 1 : 0)) return false;
    return true;
}

const Verdict* find(const std::vector<Verdict>& vs, const std::string& name)
{
    for (const auto& v : vs)
        if (v.name == name) return &v;
    return nullptr;
}

void bgg_pair()
{
    Bounds b{10, 14};
    auto L = alg(kExterior, "L", 14);
    auto E = ext_algebra(L, b);
    std::map<Bideg, std::size_t> expected;
    for (int s = 0; s <= 10; ++s) expected[{-s, -s}] = static_cast<std::size_t>(s + 1);
    std::map<Bideg, std::size_t> got;
    for (const auto& [at, d] : E->table().dims)
        if (-at.h <= 10) got[at] = d;
    expect(got == expected, "Ext of the exterior algebra is not s+1 on the diagonal");

    auto P = alg(kPolynomial, "P", 14);
    auto F = ext_algebra(P, b);
    std::map<Bideg, std::size_t> lambda = {{{0, 0}, 1}, {{-1, -1}, 2}, {{-2, -2}, 1}};
    expect(F->table().dims == lambda, "Ext of the polynomial ring is not exterior");
    for (const auto& a : {L, P}) {
        Verdict v = double_centralizer_check(a, Bounds{6, 12});
        expect(v.status == Status::Pass, "double centralizer for " + a->name() + ": " + v.detail);
    }
}

void quadric_duality()
{
    Presentation q = parse_presentation(kQuadric, "A");
    Presentation d = quadratic_dual(q, Field::rationals());
    auto A = GradedAlgebra::realize(q, Field::rationals(), 12);
    auto D = GradedAlgebra::realize(d, Field::rationals(), 12);
    expect(D->exact() && D->top() == 2 && D->dim(0) == 1 && D->dim(1) == 2 && D->dim(2) == 1, "dual of the quadric is not [1,2,1]");
    expect(unit_series(reciprocity_product(*A, *D, 12)), "reciprocity fails for the quadric pair (oracle)");
    expect(!koszul_reciprocity_failure(*A, *D, 12), "reciprocity fails for the quadric pair");
    auto L = alg(kExterior, "L", 12);
    auto P = alg(kPolynomial, "P", 12);
    expect(unit_series(reciprocity_product(*P, *L, 12)), "reciprocity fails for the exterior pair (oracle)");
    expect(!koszul_reciprocity_failure(*P, *L, 12), "reciprocity fails for the exterior pair");
}

void cyclic_avatar()
{
    Bounds b{7, 16};
    auto R = alg(kCubic, "R", 16);
    auto F = resolve(GradedModule::trivial(R), b);
    std::vector<int> shifts = {0, 1, 3, 4, 6, 7, 9, 10};
    for (int s = 0; s <= 7; ++s)
        expect(F->betti()[static_cast<std::size_t>(s)] == std::vector<int>{shifts[static_cast<std::size_t>(s)]},
               "stage " + std::to_string(s) + " of the resolution");
    SmallVerdict sv = is_small(GradedModule::trivial(R), b);
    expect(sv.kind == SmallVerdict::Kind::NotSmall && sv.certificate == "periodicity", "k is not certified non-small by periodicity");
    expect(socle_degrees(*R) == std::vector<int>{2}, "socle oracle");
    GorensteinCertificate g = gorenstein_test(R, b);
    expect(g.gorenstein() && g.shift == Bideg{0, 2}, "Gorenstein shift of k[t]/(t^3)");
    SingularityReport s = singularity_verdict(normalization_context(unit_context(kCubic, 16), b), b);
    expect(s.sg_trivial.status == Status::Fail, "D_sg should be nontrivial");
    expect(s.cosg_trivial.status == Status::Pass, "D_cosg should be trivial");
}

void worked_context()
{
    Bounds b{12, 16};
    auto q = worked(16);
    expect(validate_normalization(*q, b).verdict("n").status == Status::Pass, "normalization");
    auto ctx = normalization_context(q, b);
    expect(ctx.Q && ctx.Q->exact() && ctx.Q->top() == 1 && ctx.Q->dim(0) == 1 && ctx.Q->dim(1) == 1, "cofibre is not [1,1]");

    // oracles: a polynomial ring on one generator of degree d has Ext^1(k, S)
    // in internal degree -d; a finite ring is shifted by its socle degree;
    // Hom_S(R, S) is generated by the dual of the top basis element of R over S
    int d = q->source()->generators().front().ell;
    Bideg aS_oracle{-1, -d};
    Bideg aR_oracle{-1, -q->target()->generators().front().ell};
    Bideg aQ_oracle{0, socle_degrees(*ctx.Q).front()};
    Bideg aq_oracle{0, -ctx.Q->top()};

    Bideg aS = gorenstein_test(ctx.S, b).shift, aR = gorenstein_test(ctx.R, b).shift, aQ = gorenstein_test(ctx.Q, b).shift;
    GorensteinCertificate rel = relative_gorenstein_test(*q, b);
    expect(rel.gorenstein(), "q is not relatively Gorenstein");
    expect(aS == aS_oracle && aR == aR_oracle && aQ == aQ_oracle && rel.shift == aq_oracle, "certified shifts disagree with the oracles");
    expect(rel.shift.w == -1, "relative generator degree is not -1");
    expect(aS == Bideg{-1, -2} && aR == Bideg{-1, -1} && aQ == Bideg{0, 1}, "golden shifts");
    expect(aR == aS + aQ, "a_R = a_S + a_Q");
    expect(aR + rel.shift == aS, "a_R + a_q = a_S");
}

void context_reports()
{
    Bounds b{6, 12};
    for (const auto& q : {worked(12), identity_context(12), unit_context(kExterior, 12)}) {
        ContextReport r = sgc_report(normalization_context(q, b), b);
        std::string where = " in the context of " + q->target()->name();
        expect(r.count(Status::Fail) == 0, "Fail rows" + where);
        const Verdict* aj = find(r.rows, "a_j = -a_q");
        expect(aj && aj->status == Status::Pass, "a_j = -a_q" + where);
        // every certified shift agrees with a direct Gorenstein test
        for (const auto& [sym, at] : r.shifts) {
            if (sym == "a_S") expect(gorenstein_test(q->source(), b).shift == at, "a_S" + where);
            if (sym == "a_R") expect(gorenstein_test(q->target(), b).shift == at, "a_R" + where);
        }
    }
}

void commutation_squares()
{
    Bounds b{6, 16};
    CommutationContext worked_ctx(dual_cofibre_sequence(normalization_context(worked(16), b), b));
    Bideg diff = gorenstein_test(worked_ctx.six().base.S, b).shift - gorenstein_test(worked_ctx.six().base.R, b).shift;
    auto t1 = check_square(worked_ctx, *find_square("T1"), worked_ctx.default_samples(Ring::R));
    expect(t1.size() == 3, "T1 samples are R, k and Q");
    for (const auto& v : t1) expect(v.status == Status::Pass, v.name + ": " + v.detail);
    for (const auto& v : check_square(worked_ctx, *find_square("B1"))) {
        expect(v.status == Status::Pass, v.name + ": " + v.detail);
        expect(v.shift && *v.shift == diff, v.name + ": shift is not a_S - a_R");
    }
    Bounds bd{6, 12};
    CommutationContext degenerate(dual_cofibre_sequence(normalization_context(identity_context(12), bd), bd));
    for (const auto& sq : standard_squares())
        for (const auto& v : check_square(degenerate, sq)) expect(v.status == Status::Pass, "degenerate " + v.name + ": " + v.detail);
}

void interchange()
{
    Bounds b{6, 12};
    for (const auto& q : {identity_context(12), unit_context(kExterior, 12)}) {
        SixRingContext six = dual_cofibre_sequence(normalization_context(q, b), b);
        const auto& R = six.base.R;
        std::string where = " over " + R->name() + (R->exact() ? " (exterior)" : " (polynomial)");
        Bideg aR = gorenstein_test(R, b).shift;
        BigradedTable er = E_functor(six, GradedModule::regular(R)).table();
        expect(er.dims == std::map<Bideg, std::size_t>{{aR, 1}}, "E(R) is not k at a_R" + where);
        ModuleSum ek = E_functor(six, GradedModule::trivial(R));
        expect(ek.parts.size() == 1 && ek.parts.front().offset() == Bideg{}, "E(k) is not cyclic on the unit" + where);
        BigradedTable free = GradedModule::regular(six.Er).table();
        TableComparison cmp = compare_tables(ek.table(), free);
        expect(cmp.agree && cmp.compared > 0, "E(k) is not the free module" + where);
        for (const auto& m : {GradedModule::regular(R), GradedModule::trivial(R)}) {
            Verdict v = roundtrip_check(six, m, b);
            expect(v.status == Status::Pass, "roundtrip " + m.name() + where + ": " + v.detail);
        }
    }
}

void invariance()
{
    Bounds b{6, 16};
    auto q2 = worked(16);
    const auto& R = q2->target();
    auto q1 = AlgebraMorphism::identity(R, "id");
    std::vector<GradedModule> samples = {GradedModule::regular(R), GradedModule::trivial(R),
                                         cyclic_module(R, {{2, Vec{1}}}, 16, "k[x]/(x^2)")};
    Verdict v = invariance_check(*q1, *q2, samples, b);
    expect(v.status == Status::Pass, "invariance: " + v.detail);
    for (const auto& q : {q1, q2}) {
        Verdict c = cfg_equivalence_check(*q, samples, b);
        expect(c.status == Status::Pass, "cfg equivalence along " + q->name() + ": " + c.detail);
    }
}

void engine_invariants()
{
    Bounds b{6, 12};
    const char* bodies[] = {kExterior, kPolynomial, kQuadric, kCubic, "generators: x:1; relations: x^2;", "generators: X:2;",
                            "generators: a:1, b:1; relations: a*b - b*a, a^3;"};
    for (const char* body : bodies) {
        auto A = alg(body, "A", 12);
        for (const auto& m : {GradedModule::trivial(A), GradedModule::regular(A)}) {
            auto F = resolve(m, b);
            expect(F->minimal(), std::string("minimality over ") + body);
            expect(F->euler_identity(), std::string("Euler identity over ") + body);
        }
        auto E = ext_algebra(A, Bounds{5, 12});
        expect(E->check_associativity(), std::string("Yoneda associativity over ") + body);
        expect(E->check_unit(), std::string("Yoneda unit over ") + body);
    }
    for (const char* file : {"kX_to_kx", "polynomial2", "exterior2"}) {
        RunConfig c;
        c.command = "context";
        c.inputs = {std::string(KDSG_ALGEBRA_DIR) + "/" + file + ".alg"};
        c.hmax = 6;
        c.dmax = 12;
        c.report = "json";
        std::ostringstream a, bb, t4, err;
        run(c, a, err);
        run(c, bb, err);
        c.threads = 4;
        run(c, t4, err);
        expect(a.str() == bb.str(), std::string("report differs between runs on ") + file);
        expect(a.str() == t4.str(), std::string("report differs across thread counts on ") + file);
    }
}

}  // namespace

int main()
{
    struct Criterion {
        const char* what;
        std::function<void()> run;
    };
    const Criterion criteria[] = {
        {"exterior/polynomial Ext pair and double centralizers", bgg_pair},
        {"quadric dual [1,2,1] and Hilbert reciprocity", quadric_duality},
        {"k[t]/(t^3): resolution, periodicity, socle (0,2), singularity", cyclic_avatar},
        {"k[X] -> k[x]: normalization, cofibre, shifts against oracles", worked_context},
        {"context reports without Fail rows, a_j = -a_q", context_reports},
        {"commutation squares in the worked and degenerate contexts", commutation_squares},
        {"E(R), E(k) and roundtrip on the exterior/polynomial pair", interchange},
        {"invariance across two normalizations of k[x]", invariance},
        {"minimality, Euler identity, associativity, determinism", engine_invariants},
    };
    int failed = 0;
    int n = 0;
    for (const auto& c : criteria) {
        ++n;
        auto start = std::chrono::steady_clock::now();
        std::string why;
        try {
            c.run();
        } catch (const Failure& e) {
            why = e.what();
        } catch (const std::exception& e) {
            why = std::string("error: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char head[64];
        std::snprintf(head, sizeof head, "criterion %d: %s (%.2fs) ", n, why.empty() ? "PASS" : "FAIL", secs);
        std::cout << head << c.what;
        if (!why.empty()) std::cout << ": " << why;
        std::cout << "\n";
        failed += !why.empty();
    }
    return failed ? 1 : 0;
}
