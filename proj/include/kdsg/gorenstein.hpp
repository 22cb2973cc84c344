#pragma once

#include "kdsg/duality.hpp"
#include "kdsg/membership.hpp"
#include "kdsg/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kdsg {

// (s, t) as read off a cocycle: s cohomological, t internal.  The derived
// normal form is the bidegree (-s, t).
struct ShiftPair {
    int s = 0, t = 0;
    Bideg derived() const { return {-s, t}; }
    static ShiftPair from_derived(const Bideg& b) { return {-b.h, b.w}; }
    ShiftPair operator+(const ShiftPair& o) const { return {s + o.s, t + o.t}; }
    bool operator==(const ShiftPair&) const = default;
    std::string str() const { return "(" + std::to_string(s) + "," + std::to_string(t) + ")"; }
};

struct GorensteinCertificate {
    enum class Kind { Gorenstein, NotGorenstein, Unknown };
    Kind kind = Kind::Unknown;
    Bideg shift;                  // derived normal form, for Gorenstein
    std::vector<Bideg> witnesses;  // for NotGorenstein
    std::string certificate;      // termination, periodicity, frobenius, dual-basis, ...
    std::string detail;
    bool heuristic = false;
    BigradedTable evidence;

    bool gorenstein() const { return kind == Kind::Gorenstein; }
    ShiftPair raw() const { return ShiftPair::from_derived(shift); }
    Verdict verdict(const std::string& name) const;
};

// Hom_A(k, A) is a shifted copy of k.
GorensteinCertificate gorenstein_test(const AlgebraPtr& a, const Bounds& b);

// Hom_B(A, B) is a shifted copy of A for f: B -> A, checked on dimensions
// and on the A-module structure.
GorensteinCertificate relative_gorenstein_test(const AlgebraMorphism& f, const Bounds& b);

// a_A + a_f = a_B for f: B -> A.  With one endpoint missing the other is
// derived and returned as the verdict's shift.
Verdict ascent_descent_check(const std::string& name, std::optional<Bideg> a_A, const Bideg& a_f, std::optional<Bideg> a_B);

struct ContextReport {
    std::string name;
    std::vector<std::pair<std::string, Bideg>> shifts;  // certified, by symbol
    std::vector<Verdict> rows;

    std::optional<Bideg> shift(const std::string& sym) const;
    std::size_t count(Status s) const;
};

ContextReport sgc_report(const NormalizationContext& ctx, const Bounds& b);
ContextReport sgc_report(const SixRingContext& six, const Bounds& b);

// q1 and q2 normalize the same algebra and agree on which samples are
// finitely generated.
Verdict invariance_check(const AlgebraMorphism& q1, const AlgebraMorphism& q2, const std::vector<GradedModule>& samples,
                         const Bounds& b);

// is_qfg agrees with finite generation over R itself.
Verdict cfg_equivalence_check(const AlgebraMorphism& q, const std::vector<GradedModule>& samples, const Bounds& b);

struct SingularityReport {
    Verdict sg_trivial, cosg_trivial;
    std::vector<Verdict> objects;
    std::vector<Verdict> interchange;
};

SingularityReport singularity_verdict(const NormalizationContext& ctx, const Bounds& b);

// R, k and Q as R-modules (Q only when the context has one).
std::vector<GradedModule> default_samples(const NormalizationContext& ctx);

}  // namespace kdsg
