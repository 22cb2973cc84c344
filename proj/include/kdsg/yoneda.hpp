#pragma once

#include "kdsg/resolution.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kdsg {

// Ext_A(k, k) with the Yoneda product.  The classes of stage s are dual to
// the generators of F_s in the minimal resolution of k, and
// mu(alpha, beta) = beta o lift(alpha), so Ext_A(k, M) is a left module
// through gamma -> gamma o lift(alpha).
class ExtAlgebra {
public:
    ExtAlgebra(AlgebraPtr a, const Bounds& b);

    const AlgebraPtr& algebra() const { return alg_; }
    const ResolutionPtr& resolution() const { return F_; }
    int hmax() const { return hmax_; }
    std::size_t rank(int s) const { return F_->rank(s); }
    int ell(int s, std::size_t g) const { return F_->stage(s).gen_ell(g); }
    Bideg bideg(int s, std::size_t g) const;
    BigradedTable table(const std::string& name = "Ext") const;

    // class a of stage s times class b of stage t, in the basis of stage s + t
    Vec product(int s, std::size_t a, int t, std::size_t b) const;
    Vec multiply(int s, const Vec& x, int t, const Vec& y) const;
    // lift(alpha): F_{s+n} -> F_n, images known for n <= length
    const ChainMap& lift(int s, std::size_t a) const;

    bool check_associativity() const;
    bool check_unit() const;

    // first class whose internal degree is not (weight * s)
    std::optional<Bideg> off_diagonal() const;
    int diagonal_weight() const;
    // the diagonal classes as a graded algebra graded by s; NotFormalizable
    // when a class lies off the diagonal
    AlgebraPtr realize(const std::string& name = "E") const;
    // all classes regraded by internal minus homological degree, forgetting
    // the bigrading; NotFormalizable unless every class of positive stage has
    // positive total degree.  Modules over the result are not supported.
    AlgebraPtr realize_total(const std::string& name = "E") const;
    bool is_total_realization(const AlgebraPtr& a) const { return a && a == regraded_; }

private:
    AlgebraPtr alg_;
    int hmax_;
    ResolutionPtr F_;
    mutable std::map<std::pair<int, std::size_t>, ChainMap> lifts_;
    mutable AlgebraPtr realized_;
    mutable AlgebraPtr regraded_;
};

using ExtAlgebraPtr = std::shared_ptr<const ExtAlgebra>;

ExtAlgebraPtr ext_algebra(const AlgebraPtr& a, const Bounds& b);

// Line of the realized Ext algebra of an algebra on line L whose stage-1
// classes have internal degree c.
Line ext_line(const Line& L, int c);

// Ext_A(k, M) as a module over Ext_A(k, k).
class ExtModule {
public:
    ExtModule(ExtAlgebraPtr E, GradedModule M);

    const ExtAlgebraPtr& ext_algebra() const { return E_; }
    const ExtGroups& groups() const { return groups_; }
    BigradedTable table(const std::string& name = "E") const { return groups_.table(name); }

    // alpha . gamma for alpha the class a of stage s and gamma in group (t, c);
    // the result lies in group (t + s, c - ell(alpha))
    Vec act(int s, std::size_t a, int t, int c, const Vec& gamma) const;
    bool check_associativity() const;
    bool check_unit() const;

    // the certified part of the module over the realized Ext algebra
    ModuleSum over(const AlgebraPtr& realized) const;

private:
    ExtAlgebraPtr E_;
    GradedModule M_;
    ExtGroups groups_;
};

// E(N) for every summand of N, over the realized algebra.
ModuleSum ext_module(const ExtAlgebraPtr& E, const AlgebraPtr& realized, const ModuleSum& n);

// Map Ext_T(k, k) -> Ext_U(k, k) induced by f: U -> T, per stage, as a matrix
// from stage-s classes of T to stage-s classes of U.
struct ComparisonMap {
    std::string name;
    Field field = Field::rationals();
    int length = -1;
    std::vector<Matrix> stages;
    Vec apply(int s, const Vec& x) const;
};

ComparisonMap comparison_map(const AlgebraMorphism& f, const ExtAlgebra& source_ext, const ExtAlgebra& target_ext,
                             std::string name);

// The same map as a morphism between realized Ext algebras.
MorphismPtr realize_comparison(const ComparisonMap& m, const AlgebraPtr& from, const AlgebraPtr& to);

}  // namespace kdsg
