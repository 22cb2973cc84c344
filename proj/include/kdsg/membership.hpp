#pragma once

#include "kdsg/verdict.hpp"
#include "kdsg/yoneda.hpp"

#include <optional>
#include <string>

namespace kdsg {

// Small: finitely built from the algebra, i.e. a finite minimal resolution.
struct SmallVerdict {
    enum class Kind { Small, NotSmall, Unknown };
    Kind kind = Kind::Unknown;
    int length = -1;          // for Small
    std::string certificate;  // termination, periodicity, growth, socle
    bool heuristic = false;
    std::optional<Bideg> witness;  // (stage, internal degree) behind a NotSmall certificate

    bool small() const { return kind == Kind::Small; }
    Verdict verdict(const std::string& name) const;
};

SmallVerdict is_small(const GradedModule& m, const Bounds& b);
SmallVerdict is_small(const ModuleSum& m, const Bounds& b);

// Finite total dimension.
struct TorsionVerdict {
    enum class Kind { FiniteDimensional, Infinite, Unknown };
    Kind kind = Kind::Unknown;
    std::size_t total = 0;
    std::string certificate;  // exact, hilbert-division
    bool heuristic = false;

    bool finite() const { return kind == Kind::FiniteDimensional; }
    Verdict verdict(const std::string& name) const;
};

TorsionVerdict is_torsion(const GradedModule& m, const Bounds& b);
TorsionVerdict is_torsion(const ModuleSum& m, const Bounds& b);

// Finite generation over the module's own algebra.
struct GenerationVerdict {
    enum class Kind { FinitelyGenerated, NotFinitelyGeneratedUpToBound, Unknown };
    Kind kind = Kind::Unknown;
    std::size_t generators = 0;
    int last_generator = 0;
    bool heuristic = false;

    bool positive() const { return kind == Kind::FinitelyGenerated; }
    Verdict verdict(const std::string& name) const;
};

GenerationVerdict is_cfg(const GradedModule& m, const Bounds& b);
GenerationVerdict is_cfg(const ModuleSum& m, const Bounds& b);

// R and k small over S.
struct NormalizationVerdict {
    SmallVerdict target, residue;
    bool valid() const { return target.small() && residue.small(); }
    Verdict verdict(const std::string& name) const;
};

NormalizationVerdict validate_normalization(const AlgebraMorphism& q, const Bounds& b);

// q^*M small over S; throws NotANormalization unless q validates.
SmallVerdict is_qfg(const AlgebraMorphism& q, const GradedModule& m, const Bounds& b);
SmallVerdict is_qfg(const AlgebraMorphism& q, const ModuleSum& m, const Bounds& b);

// Ext_A(k, M) is generated and related in finitely many degrees over the
// realized Ext algebra.
Verdict finite_presentation_check(const ExtAlgebraPtr& E, const ModuleSum& m, const Bounds& b);

}  // namespace kdsg
