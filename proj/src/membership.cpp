#include "kdsg/membership.hpp"

#include "kdsg/errors.hpp"

#include <algorithm>
#include <map>

namespace kdsg {

namespace {

using Laurent = std::map<int, long>;

// sum over stages of (-1)^s t^{ell(g)}, defined when the resolution is finite
Laurent betti_polynomial(const FreeResolution& F)
{
    Laurent p;
    for (int s = 0; s < F.stages(); ++s)
        for (int l : F.stage(s).gen_ells()) p[l] += (s % 2) ? -1 : 1;
    for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
    return p;
}

// exact quotient num / den when den divides num
std::optional<Laurent> divide(Laurent num, const Laurent& den)
{
    if (den.empty()) return std::nullopt;
    if (num.empty()) return Laurent{};
    int dlo = den.begin()->first, dhi = den.rbegin()->first;
    long lead = den.begin()->second;
    Laurent q;
    while (!num.empty()) {
        auto [e, c] = *num.begin();
        if (c % lead != 0 || num.rbegin()->first - e < dhi - dlo) return std::nullopt;
        long k = c / lead;
        q[e - dlo] = k;
        for (const auto& [de, dc] : den) {
            long& v = num[e - dlo + de];
            v -= k * dc;
            if (v == 0) num.erase(e - dlo + de);
        }
    }
    return q;
}

}  // namespace

Verdict SmallVerdict::verdict(const std::string& name) const
{
    Verdict v;
    v.name = name;
    v.heuristic = heuristic;
    v.witness = witness;
    switch (kind) {
    case Kind::Small:
        v.status = Status::Pass;
        v.detail = "Small(" + std::to_string(length) + ")";
        break;
    case Kind::NotSmall:
        v.status = Status::Fail;
        v.detail = "NotSmallCertified(" + certificate + ")";
        break;
    case Kind::Unknown:
        v.status = Status::Unknown;
        v.detail = "UnknownUpToBound";
        break;
    }
    return v;
}

SmallVerdict is_small(const GradedModule& m, const Bounds& b)
{
    SmallVerdict v;
    if (m.is_zero()) {
        v.kind = SmallVerdict::Kind::Small;
        v.length = 0;
        v.certificate = "zero";
        return v;
    }
    auto F = resolve(m, b);
    const GradedAlgebra& A = *m.algebra();
    if (auto len = F->terminated()) {
        v.kind = SmallVerdict::Kind::Small;
        v.length = *len;
        v.certificate = "termination";
        v.heuristic = F->terminated_heuristically();
        return v;
    }
    if (auto p = F->periodicity()) {
        int s = p->start + p->period;
        v.kind = SmallVerdict::Kind::NotSmall;
        v.certificate = "periodicity";
        v.witness = Bideg{s, F->stage(s).gen_ell(0)};
        return v;
    }
    // strictly growing Betti numbers over a finite-dimensional algebra
    if (A.exact()) {
        int run = 1;
        for (int s = 1; s < F->stages() && F->complete(s); ++s) {
            run = F->rank(s) > F->rank(s - 1) ? run + 1 : 1;
            if (run >= 5) {
                v.kind = SmallVerdict::Kind::NotSmall;
                v.certificate = "growth";
                v.witness = Bideg{s, F->stage(s).min_gen()};
                return v;
            }
        }
    }
    // over a finite-dimensional A != k the top component kills A_+, so the
    // last differential of a finite minimal resolution could not be injective:
    // only free modules are small
    if (A.exact() && A.top() > 0 && F->rank(1) > 0) {
        v.kind = SmallVerdict::Kind::NotSmall;
        v.certificate = "socle";
        v.witness = Bideg{1, F->stage(1).min_gen()};
        return v;
    }
    return v;
}

SmallVerdict is_small(const ModuleSum& m, const Bounds& b)
{
    SmallVerdict out;
    out.kind = SmallVerdict::Kind::Small;
    out.length = 0;
    out.certificate = "termination";
    for (const auto& p : m.parts) {
        SmallVerdict v = is_small(p, b);
        if (v.kind == SmallVerdict::Kind::NotSmall) return v;
        if (v.kind == SmallVerdict::Kind::Unknown) out.kind = SmallVerdict::Kind::Unknown;
        out.length = std::max(out.length, v.length);
        out.heuristic = out.heuristic || v.heuristic;
    }
    if (!m.complete) out.kind = SmallVerdict::Kind::Unknown;
    if (out.kind != SmallVerdict::Kind::Small) out.length = -1;
    return out;
}

Verdict TorsionVerdict::verdict(const std::string& name) const
{
    Verdict v;
    v.name = name;
    v.heuristic = heuristic;
    switch (kind) {
    case Kind::FiniteDimensional:
        v.status = Status::Pass;
        v.detail = "FiniteDimensional(" + std::to_string(total) + ")";
        break;
    case Kind::Infinite:
        v.status = Status::Fail;
        v.detail = "InfiniteCertified(" + certificate + ")";
        break;
    case Kind::Unknown:
        v.status = Status::Unknown;
        v.detail = "UnknownUpToBound";
        break;
    }
    return v;
}

TorsionVerdict is_torsion(const GradedModule& m, const Bounds& b)
{
    TorsionVerdict v;
    if (m.exact()) {
        v.kind = TorsionVerdict::Kind::FiniteDimensional;
        v.total = m.total_dim();
        v.certificate = "exact";
        return v;
    }
    // H_M = P_M H_A and H_A = 1 / P_k when both resolutions are finite
    auto F = resolve(m, b);
    auto K = resolve(GradedModule::trivial(m.algebra()), b);
    if (!F->terminated() || !K->terminated()) return v;
    v.heuristic = F->terminated_heuristically() || K->terminated_heuristically();
    v.certificate = "hilbert-division";
    Laurent pm = betti_polynomial(*F);
    Laurent pk = betti_polynomial(*K);
    auto q = divide(pm, pk);
    if (!q) {
        v.kind = TorsionVerdict::Kind::Infinite;
        return v;
    }
    long total = 0;
    for (const auto& [e, c] : *q) {
        if (c < 0) return TorsionVerdict{};
        total += c;
    }
    v.kind = TorsionVerdict::Kind::FiniteDimensional;
    v.total = static_cast<std::size_t>(total);
    return v;
}

TorsionVerdict is_torsion(const ModuleSum& m, const Bounds& b)
{
    TorsionVerdict out;
    out.kind = TorsionVerdict::Kind::FiniteDimensional;
    out.certificate = "exact";
    for (const auto& p : m.parts) {
        TorsionVerdict v = is_torsion(p, b);
        if (v.kind == TorsionVerdict::Kind::Infinite) return v;
        if (v.kind == TorsionVerdict::Kind::Unknown) out.kind = TorsionVerdict::Kind::Unknown;
        out.total += v.total;
        out.heuristic = out.heuristic || v.heuristic;
        if (v.certificate != "exact") out.certificate = v.certificate;
    }
    if (!m.complete) out.kind = TorsionVerdict::Kind::Unknown;
    return out;
}

Verdict GenerationVerdict::verdict(const std::string& name) const
{
    Verdict v;
    v.name = name;
    v.heuristic = heuristic;
    switch (kind) {
    case Kind::FinitelyGenerated:
        v.status = Status::Pass;
        v.detail = "FinitelyGenerated(" + std::to_string(generators) + ")";
        break;
    case Kind::NotFinitelyGeneratedUpToBound:
        v.status = Status::Unknown;
        v.detail = "NotFinitelyGeneratedUpToBound(new generator at " + std::to_string(last_generator) + ")";
        break;
    case Kind::Unknown:
        v.status = Status::Unknown;
        v.detail = "UnknownUpToBound";
        break;
    }
    return v;
}

GenerationVerdict is_cfg(const GradedModule& m, const Bounds& b)
{
    GenerationVerdict v;
    FreeResolution F(m, 0, b.dmax);
    const FreeModule& F0 = F.stage(0);
    v.generators = F0.rank();
    v.last_generator = F0.rank() ? F0.max_gen() : m.lo();
    if (F.complete(0)) {
        v.kind = GenerationVerdict::Kind::FinitelyGenerated;
        v.heuristic = F.heuristic(0);
    } else if (F0.rank() > 0) {
        v.kind = GenerationVerdict::Kind::NotFinitelyGeneratedUpToBound;
    }
    return v;
}

GenerationVerdict is_cfg(const ModuleSum& m, const Bounds& b)
{
    GenerationVerdict out;
    out.kind = GenerationVerdict::Kind::FinitelyGenerated;
    for (const auto& p : m.parts) {
        GenerationVerdict v = is_cfg(p, b);
        if (v.kind == GenerationVerdict::Kind::NotFinitelyGeneratedUpToBound) return v;
        if (v.kind == GenerationVerdict::Kind::Unknown) out.kind = GenerationVerdict::Kind::Unknown;
        out.generators += v.generators;
        out.last_generator = std::max(out.last_generator, v.last_generator);
        out.heuristic = out.heuristic || v.heuristic;
    }
    if (!m.complete) out.kind = GenerationVerdict::Kind::Unknown;
    return out;
}

Verdict NormalizationVerdict::verdict(const std::string& name) const
{
    Verdict v;
    v.name = name;
    v.heuristic = target.heuristic || residue.heuristic;
    v.detail = "target " + target.verdict("").detail + ", residue field " + residue.verdict("").detail;
    v.status = combine({target.verdict("").status, residue.verdict("").status});
    return v;
}

NormalizationVerdict validate_normalization(const AlgebraMorphism& q, const Bounds& b)
{
    NormalizationVerdict v;
    v.target = is_small(restrict_module(q, GradedModule::regular(q.target())), b);
    v.residue = is_small(GradedModule::trivial(q.source()), b);
    return v;
}

SmallVerdict is_qfg(const AlgebraMorphism& q, const GradedModule& m, const Bounds& b)
{
    return is_qfg(q, ModuleSum::of(m), b);
}

SmallVerdict is_qfg(const AlgebraMorphism& q, const ModuleSum& m, const Bounds& b)
{
    if (!validate_normalization(q, b).valid()) throw NotANormalization(q.name() + " is not a normalization");
    return is_small(restrict_module(q, m), b);
}

Verdict finite_presentation_check(const ExtAlgebraPtr& E, const ModuleSum& m, const Bounds& b)
{
    Verdict v;
    v.name = "finite-presentation";
    AlgebraPtr Er;
    try {
        Er = E->realize();
    } catch (const NotFormalizable& e) {
        v.status = Status::Unsupported;
        v.detail = e.what();
        return v;
    }
    ModuleSum em = ext_module(E, Er, m);
    v.evidence.push_back(em.table("E"));
    std::size_t gens = 0, rels = 0;
    v.heuristic = !em.complete;
    for (const auto& p : em.parts) {
        FreeResolution F(p, 1, b.dmax);
        if (!F.complete(0) || !F.complete(1)) {
            v.status = Status::Unknown;
            v.detail = "UnknownUpToBound";
            return v;
        }
        gens += F.rank(0);
        rels += F.rank(1);
        v.heuristic = v.heuristic || F.heuristic(1);
    }
    v.status = Status::Pass;
    v.detail = "generators " + std::to_string(gens) + ", relations " + std::to_string(rels);
    return v;
}

}  // namespace kdsg
