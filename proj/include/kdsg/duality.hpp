#pragma once

#include "kdsg/membership.hpp"
#include "kdsg/verdict.hpp"
#include "kdsg/yoneda.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kdsg {

// Relation space orthogonal to the input's inside the degree-2 words of the
// dual generators x1..xn.  Needs degree-1 generators and quadratic relations.
Presentation quadratic_dual(const Presentation& p, const Field& f = Field::rationals());

struct KoszulVerdict {
    bool koszul = false;
    std::optional<std::pair<int, int>> witness;  // first off-diagonal generator, (stage, internal degree)
    int stages = 0;                              // stages inspected
    bool heuristic = false;

    Verdict verdict(const std::string& name) const;
};

KoszulVerdict koszulness_check(const AlgebraPtr& a, const Bounds& b);

// First degree <= dmax where H_a(t) H_b(-t) differs from 1.
std::optional<int> koszul_reciprocity_failure(const GradedAlgebra& a, const GradedAlgebra& b, int dmax);

// S -> R -> Q with Q = R (x)_S k.
struct NormalizationContext {
    std::string name;
    AlgebraPtr S, R, Q;
    MorphismPtr q, p;
    std::string note;  // why Q is missing
};

struct Cofibre {
    AlgebraPtr Q;
    MorphismPtr p;
    Verdict built_from_k;  // Q finite over R
    Verdict small_over_R;
};

// R modulo the ideal generated by the image of S's generators.  Throws NotFlat
// when R is not free over S within bounds.
Cofibre cofibre_algebra(const AlgebraMorphism& q, const Bounds& b, const std::string& name = "Q");

// Validates q (NotANormalization otherwise) and attaches the cofibre.
NormalizationContext normalization_context(const MorphismPtr& q, const Bounds& b, std::string name = {});

// F <- E <- D: Ext algebras of S, R and Q with the maps j: E -> F, i: D -> E.
struct SixRingContext {
    NormalizationContext base;
    Bounds bounds;
    ExtAlgebraPtr F, E, D;
    AlgebraPtr Fr, Er, Dr;  // realized; empty when off the diagonal
    std::string formality;  // why a realization is missing
    std::optional<ComparisonMap> i, j;
    MorphismPtr im, jm;
    std::vector<Verdict> checks;

    bool formal() const { return Fr && Er && Dr; }
};

// Diagonal: realize only Ext concentrated on the Koszul diagonal.
// TotalDegree: otherwise fall back to ExtAlgebra::realize_total.
enum class Formality { Diagonal, TotalDegree };

struct SixRingOptions {
    Formality formality = Formality::Diagonal;
    int threads = 1;  // above 1 the three Ext algebras are computed concurrently
};

SixRingContext dual_cofibre_sequence(const NormalizationContext& ctx, const Bounds& b, const SixRingOptions& opt = {});

// Ext over the realized Ext algebra recovers the algebra.
Verdict double_centralizer_check(const AlgebraPtr& a, const Bounds& b);

// E(m) = Ext_R(k, m) over the realized E.
ModuleSum E_functor(const ExtAlgebraPtr& E, const AlgebraPtr& realized, const ModuleSum& m);
ModuleSum E_functor(const SixRingContext& ctx, const GradedModule& m);

// Ext_E(k, E(m)) against m shifted by the Gorenstein shift of R.
Verdict roundtrip_check(const SixRingContext& ctx, const GradedModule& m, const Bounds& b);

}  // namespace kdsg
