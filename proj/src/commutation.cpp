#include "kdsg/commutation.hpp"

#include "kdsg/errors.hpp"

#include <regex>
#include <sstream>

namespace kdsg {

namespace {

struct FunctorInfo {
    Functor f;
    const char* name;
    Ring from, to;
};

constexpr FunctorInfo kFunctors[] = {
    {Functor::q_up, "q^*", Ring::R, Ring::S},     {Functor::q_down, "q_*", Ring::S, Ring::R},
    {Functor::p_up, "p^*", Ring::Q, Ring::R},     {Functor::p_down, "p_*", Ring::R, Ring::Q},
    {Functor::i_up, "i^*", Ring::E, Ring::D},     {Functor::i_down, "i_*", Ring::D, Ring::E},
    {Functor::j_up, "j^*", Ring::F, Ring::E},     {Functor::j_down, "j_*", Ring::E, Ring::F},
    {Functor::qh_up, "qh^*", Ring::Rh, Ring::Sh}, {Functor::qh_down, "qh_*", Ring::Sh, Ring::Rh},
    {Functor::ph_up, "ph^*", Ring::Qh, Ring::Rh}, {Functor::ph_down, "ph_*", Ring::Rh, Ring::Qh},
    {Functor::E, "E", Ring::R, Ring::E},          {Functor::F, "F", Ring::S, Ring::F},
    {Functor::D, "D", Ring::Q, Ring::D},          {Functor::Eh, "Eh", Ring::E, Ring::Rh},
    {Functor::Fh, "Fh", Ring::F, Ring::Sh},       {Functor::Dh, "Dh", Ring::D, Ring::Qh},
};

const FunctorInfo& info(Functor f)
{
    for (const auto& i : kFunctors)
        if (i.f == f) return i;
    throw PreconditionFailed("unknown functor");
}

std::string step_tag(std::size_t n, Functor f) { return "step " + std::to_string(n + 1) + " (" + functor_name(f) + "): "; }

// Tor^A(k, m), read off minimal resolutions
BigradedTable tor_with_k(const AlgebraPtr& a, const ModuleSum& m, const Bounds& b)
{
    auto k = GradedAlgebra::ground_field(a->field(), a->line());
    auto aug = AlgebraMorphism::from_images("augmentation", a, k, std::vector<Vec>(a->generators().size()));
    return tor_table(*aug, m, b, "Tor(k,-)");
}

// a graded vector space as a module over the field k
ModuleSum over_field(const AlgebraPtr& k, const BigradedTable& t)
{
    ModuleSum out;
    out.alg = k;
    for (const auto& [x, d] : t.dims)
        for (std::size_t i = 0; i < d; ++i) out.parts.push_back(GradedModule::trivial(k, x));
    out.complete = t.fully_certified();
    if (!out.complete) out.window = t.coverage;
    return out;
}

bool is_field(const GradedAlgebra& a) { return a.exact() && a.top() <= 0; }

}  // namespace

std::string ring_name(Ring r)
{
    switch (r) {
        case Ring::S: return "S";
        case Ring::R: return "R";
        case Ring::Q: return "Q";
        case Ring::F: return "F";
        case Ring::E: return "E";
        case Ring::D: return "D";
        case Ring::Sh: return "Sh";
        case Ring::Rh: return "Rh";
        case Ring::Qh: return "Qh";
    }
    return "?";
}

std::string functor_name(Functor f) { return info(f).name; }
Ring functor_source(Functor f) { return info(f).from; }
Ring functor_target(Functor f) { return info(f).to; }

Recipe parse_recipe(const std::string& text)
{
    Recipe r;
    r.text = text;
    std::string rest = text;
    static const std::regex sigma_re(R"(^\s*Sigma\^\{([^}]*)\}\s*)");
    std::smatch sm;
    if (std::regex_search(rest, sm, sigma_re)) {
        std::string body = sm[1];
        static const std::regex term_re(R"(\s*([+-]?)\s*(a_[SRQFED])\s*)");
        std::size_t pos = 0;
        for (std::sregex_iterator it(body.begin(), body.end(), term_re), end; it != end; ++it) {
            if (static_cast<std::size_t>(it->position()) != pos) throw PreconditionFailed("bad suspension in recipe: " + body);
            r.sigma.emplace_back((*it)[1] == "-" ? -1 : 1, (*it)[2]);
            pos += static_cast<std::size_t>(it->length());
        }
        if (pos != body.size() || r.sigma.empty()) throw PreconditionFailed("bad suspension in recipe: " + body);
        rest = sm.suffix();
    }
    std::istringstream in(rest);
    std::vector<Functor> written;
    for (std::string tok; in >> tok;) {
        bool found = false;
        for (const auto& i : kFunctors)
            if (tok == i.name) {
                written.push_back(i.f);
                found = true;
            }
        if (!found) throw PreconditionFailed("unknown functor '" + tok + "' in recipe");
    }
    if (written.empty()) throw PreconditionFailed("empty recipe");
    r.steps.assign(written.rbegin(), written.rend());
    for (std::size_t n = 1; n < r.steps.size(); ++n)
        if (functor_target(r.steps[n - 1]) != functor_source(r.steps[n]))
            throw PreconditionFailed("recipe '" + text + "' does not compose: " + functor_name(r.steps[n - 1]) + " lands in " +
                                     ring_name(functor_target(r.steps[n - 1])) + "-modules, " + functor_name(r.steps[n]) + " starts from " +
                                     ring_name(functor_source(r.steps[n])) + "-modules");
    return r;
}

Ring recipe_source(const Recipe& r) { return functor_source(r.steps.front()); }
Ring recipe_target(const Recipe& r) { return functor_target(r.steps.back()); }

std::vector<SquareSpec> standard_squares()
{
    auto sq = [](std::string name, const char* l, const char* r) { return SquareSpec{std::move(name), parse_recipe(l), parse_recipe(r)}; };
    return {
        sq("Fq^* = j_*E", "F q^*", "j_* E"),
        sq("Fh j_* = qh^* Eh", "Fh j_*", "qh^* Eh"),
        sq("j^*F = Sigma^{a_S-a_R} Eq_*", "j^* F", "Sigma^{a_S-a_R} E q_*"),
        sq("Eh j^* = Sigma^{a_S-a_R} qh_* Fh", "Eh j^*", "Sigma^{a_S-a_R} qh_* Fh"),
        sq("Ep^* = i_*D", "E p^*", "i_* D"),
        sq("ph^* Dh = Eh i_*", "ph^* Dh", "Eh i_*"),
        sq("Sigma^{-a_D} Dp_* = Sigma^{-a_E} i^*E", "Sigma^{-a_D} D p_*", "Sigma^{-a_E} i^* E"),
        sq("Sigma^{a_D} Dh i^* = Sigma^{a_E} ph_* Eh", "Sigma^{a_D} Dh i^*", "Sigma^{a_E} ph_* Eh"),
    };
}

std::optional<SquareSpec> find_square(const std::string& name)
{
    auto all = standard_squares();
    for (const auto& s : all)
        if (s.name == name) return s;
    // T1..T4 and B1..B4 in the order above
    static const char* short_names[] = {"T1", "T2", "B1", "B2", "T3", "T4", "B3", "B4"};
    for (std::size_t n = 0; n < all.size(); ++n)
        if (name == short_names[n]) return all[n];
    return std::nullopt;
}

// ---------------------------------------------------------------- context

CommutationContext::CommutationContext(SixRingContext six) : six_(std::move(six)) {}

AlgebraPtr CommutationContext::ring(Ring r) const
{
    auto need = [this](const AlgebraPtr& a, const char* what) {
        if (!a) throw NotFormalizable(std::string(what) + " is not realized: " + six_.formality);
        return a;
    };
    switch (r) {
        case Ring::S: return six_.base.S;
        case Ring::R: return six_.base.R;
        case Ring::Q:
            if (!six_.base.Q) throw PreconditionFailed("no cofibre: " + six_.base.note);
            return six_.base.Q;
        case Ring::F: return need(six_.Fr, "F");
        case Ring::E: return need(six_.Er, "E");
        case Ring::D: return need(six_.Dr, "D");
        case Ring::Sh: return completions().Sh;
        case Ring::Rh: return completions().Rh;
        case Ring::Qh: return completions().Qh;
    }
    throw PreconditionFailed("unknown ring");
}

Bideg CommutationContext::shift(const std::string& symbol) const
{
    if (auto it = shifts_.find(symbol); it != shifts_.end()) return it->second;
    static const std::map<std::string, Ring> rings = {{"a_S", Ring::S}, {"a_R", Ring::R}, {"a_Q", Ring::Q},
                                                      {"a_F", Ring::F}, {"a_E", Ring::E}, {"a_D", Ring::D}};
    auto r = rings.find(symbol);
    if (r == rings.end()) throw PreconditionFailed("unknown shift " + symbol);
    GorensteinCertificate g = gorenstein_test(ring(r->second), bounds());
    if (!g.gorenstein()) throw PreconditionFailed(ring_name(r->second) + " is not certified Gorenstein: " + g.detail);
    shifts_.emplace(symbol, g.shift);
    return g.shift;
}

Bideg CommutationContext::sigma(const Recipe& r) const
{
    Bideg out;
    for (const auto& [sign, sym] : r.sigma) out = out + shift(sym) * sign;
    return out;
}

const CommutationContext::Completions& CommutationContext::completions() const
{
    if (hats_) return *hats_;
    if (!hats_error_.empty()) throw NotFormalizable(hats_error_);
    try {
        if (!six_.formal() || !six_.im || !six_.jm) throw NotFormalizable("completions need realized Ext algebras: " + six_.formality);
        for (const auto& a : {six_.base.S, six_.base.R, six_.base.Q}) {
            Verdict dc = double_centralizer_check(a, bounds());
            if (dc.status != Status::Pass) throw NotFormalizable(a->name() + " is outside the double-centralizer regime: " + dc.detail);
        }
        auto c = std::make_shared<Completions>();
        c->Fx = ext_algebra(six_.Fr, bounds());
        c->Ex = ext_algebra(six_.Er, bounds());
        c->Dx = ext_algebra(six_.Dr, bounds());
        c->Sh = c->Fx->realize("Sh");
        c->Rh = c->Ex->realize("Rh");
        c->Qh = c->Dx->realize("Qh");
        c->qh = realize_comparison(comparison_map(*six_.jm, *c->Ex, *c->Fx, "qh"), c->Sh, c->Rh);
        c->ph = realize_comparison(comparison_map(*six_.im, *c->Dx, *c->Ex, "ph"), c->Rh, c->Qh);
        hats_ = c;
    } catch (const NotFormalizable& e) {
        hats_error_ = e.what();
        throw;
    } catch (const BoundExceeded& e) {
        hats_error_ = e.what();
        throw NotFormalizable(hats_error_);
    }
    return *hats_;
}

std::vector<Sample> CommutationContext::default_samples(Ring r) const
{
    std::vector<Sample> out;
    if (r == Ring::R) {
        for (const auto& m : kdsg::default_samples(six_.base)) out.push_back({m.name(), ModuleSum::of(m), m.name() == "R"});
        return out;
    }
    AlgebraPtr a = ring(r);
    out.push_back({ring_name(r), ModuleSum::of(GradedModule::regular(a)), true});
    if (!is_field(*a)) out.push_back({"k", ModuleSum::of(GradedModule::trivial(a))});
    if (r == Ring::S) out.push_back({"q^*R", restrict_module(*six_.base.q, GradedModule::regular(six_.base.R))});
    return out;
}

// ---------------------------------------------------------------- evaluation

namespace {

MorphismPtr morphism_of(const CommutationContext& ctx, Functor f)
{
    const SixRingContext& six = ctx.six();
    auto need = [&](const MorphismPtr& m, const char* what) {
        if (!m) throw NotFormalizable(std::string(what) + " is not realized: " + six.formality);
        return m;
    };
    switch (f) {
        case Functor::q_up:
        case Functor::q_down: return six.base.q;
        case Functor::p_up:
        case Functor::p_down:
            if (!six.base.p) throw PreconditionFailed("no cofibre: " + six.base.note);
            return six.base.p;
        case Functor::i_up:
        case Functor::i_down: return need(six.im, "i");
        case Functor::j_up:
        case Functor::j_down: return need(six.jm, "j");
        case Functor::qh_up:
        case Functor::qh_down: return ctx.completions().qh;
        case Functor::ph_up:
        case Functor::ph_down: return ctx.completions().ph;
        default: return nullptr;
    }
}

struct Value {
    std::optional<ModuleSum> module;
    BigradedTable table;
    std::optional<Bideg> not_flat;  // why the module structure was lost
    bool regular = false;
};

const char* gorenstein_symbol(Ring r)
{
    switch (r) {
        case Ring::S: return "a_S";
        case Ring::R: return "a_R";
        case Ring::Q: return "a_Q";
        case Ring::F: return "a_F";
        case Ring::E: return "a_E";
        case Ring::D: return "a_D";
        default: return nullptr;
    }
}

// B (x)^L_A m for f: A -> B
Value induce(const CommutationContext& ctx, Functor fn, const AlgebraMorphism& f, const ModuleSum& m)
{
    const Bounds& b = ctx.bounds();
    const AlgebraPtr& A = f.source();
    const AlgebraPtr& B = f.target();
    Value v;
    if (is_field(*B)) {
        v.table = tor_with_k(A, m, b);
        v.module = over_field(B, v.table);
        return v;
    }
    if (A->line() == B->line()) {
        if (!flatness_witness(f, b)) {
            v.module = induce_module(f, m, b);
            v.table = v.module->table();
        } else {
            v.table = tor_table(f, m, b);
            v.not_flat = flatness_witness(f, b);
        }
        return v;
    }
    if (fn == Functor::j_down) {
        // F = E (x)_D k, so F (x)_E X = k (x)_D X
        const SixRingContext& six = ctx.six();
        bool cofibre = false;
        for (const auto& c : six.checks)
            if (c.name == "F = E (x)_D k") cofibre = c.status == Status::Pass;
        if (!cofibre || !six.im) throw Unsupported("j changes the grading line and F = E (x)_D k is not certified");
        v.table = tor_with_k(six.Dr, restrict_module(*six.im, m), b);
        return v;
    }
    throw Unsupported("derived induction along " + f.name() + " changes the grading line");
}

Value apply(const CommutationContext& ctx, Functor fn, const Value& in)
{
    Value out;
    switch (fn) {
        case Functor::q_up:
        case Functor::p_up:
        case Functor::i_up:
        case Functor::j_up:
        case Functor::qh_up:
        case Functor::ph_up: {
            MorphismPtr f = morphism_of(ctx, fn);
            if (!in.module) {
                out.table = in.table;  // restriction keeps the underlying graded space
                out.not_flat = in.not_flat;
            } else {
                out.module = restrict_module(*f, *in.module);
                out.table = out.module->table();
            }
            return out;
        }
        case Functor::q_down:
        case Functor::p_down:
        case Functor::i_down:
        case Functor::j_down:
        case Functor::qh_down:
        case Functor::ph_down: {
            if (!in.module) throw Unsupported("induction needs a module structure the previous step could not keep");
            return induce(ctx, fn, *morphism_of(ctx, fn), *in.module);
        }
        case Functor::E:
        case Functor::F:
        case Functor::D:
        case Functor::Eh:
        case Functor::Fh:
        case Functor::Dh: {
            if (!in.module) throw Unsupported("Ext needs a module structure the previous step could not keep");
            const SixRingContext& six = ctx.six();
            ExtAlgebraPtr ext;
            Bideg shift;
            switch (fn) {
                case Functor::E: ext = six.E; break;
                case Functor::F: ext = six.F; break;
                case Functor::D: ext = six.D; break;
                case Functor::Eh:
                    ext = ctx.completions().Ex;
                    shift = Bideg{} - ctx.shift("a_R");
                    break;
                case Functor::Fh:
                    ext = ctx.completions().Fx;
                    shift = Bideg{} - ctx.shift("a_S");
                    break;
                default:
                    ext = ctx.completions().Dx;
                    shift = Bideg{} - ctx.shift("a_Q");
                    break;
            }
            AlgebraPtr target = ctx.ring(functor_target(fn));
            ModuleSum m = ext_module(ext, target, *in.module);
            if (!m.complete && in.regular) {
                // Ext of a certified Gorenstein ring into itself is one class
                try {
                    Bideg a = ctx.shift(gorenstein_symbol(functor_source(fn)));
                    BigradedTable seen = m.table();
                    bool consistent = true;
                    for (const auto& [x, d] : seen.dims)
                        if (x != a || d != 1) consistent = false;
                    if (consistent && seen.certified(a)) m = ModuleSum::of(GradedModule::trivial(target, a));
                } catch (const PreconditionFailed&) {
                }
            }
            m = m.shifted(shift);
            out.table = m.table();
            out.module = std::move(m);
            return out;
        }
    }
    throw PreconditionFailed("unknown functor");
}

std::string describe(const BigradedTable& t)
{
    std::string s = "total " + std::to_string(t.total());
    if (!t.fully_certified()) s += ", truncated";
    return s;
}

}  // namespace

Evaluation eval_recipe(const CommutationContext& ctx, const Recipe& r, const Sample& m)
{
    Ring src = recipe_source(r);
    AlgebraPtr a = ctx.ring(src);
    if (m.module.alg != a) throw PreconditionFailed("sample " + m.name + " is not a " + ring_name(src) + "-module");
    Evaluation ev;
    Value v{m.module, m.module.table(), std::nullopt, m.regular};
    std::optional<std::size_t> lost_at;
    for (std::size_t n = 0; n < r.steps.size(); ++n) {
        Functor fn = r.steps[n];
        bool needs_module = !(fn == Functor::q_up || fn == Functor::p_up || fn == Functor::i_up || fn == Functor::j_up ||
                              fn == Functor::qh_up || fn == Functor::ph_up);
        if (!v.module && needs_module && v.not_flat && lost_at)
            throw NotFlat(step_tag(*lost_at, r.steps[*lost_at]) + ring_name(functor_target(r.steps[*lost_at])) + " is not free over " +
                              ring_name(functor_source(r.steps[*lost_at])) + ", so " + functor_name(fn) + " has no module to act on",
                          v.not_flat->h, v.not_flat->w);
        try {
            v = apply(ctx, fn, v);
        } catch (const NotFlat& e) {
            throw NotFlat(step_tag(n, fn) + e.what(), e.h, e.w);
        } catch (const NotFormalizable& e) {
            throw NotFormalizable(step_tag(n, fn) + e.what());
        } catch (const Unsupported& e) {
            throw Unsupported(step_tag(n, fn) + e.what());
        } catch (const BoundExceeded& e) {
            throw BoundExceeded(step_tag(n, fn) + e.what());
        } catch (const PreconditionFailed& e) {
            throw PreconditionFailed(step_tag(n, fn) + e.what());
        }
        if (!v.module && v.not_flat && !lost_at) lost_at = n;
        ev.heuristic = ev.heuristic || v.table.heuristic;
        ev.trace.push_back(functor_name(fn) + ": " + describe(v.table) + (v.module ? "" : ", dimensions only"));
    }
    Bideg s = ctx.sigma(r);
    ev.table = v.table.shifted(s);
    ev.table.name = r.text + "(" + m.name + ")";
    if (v.module) ev.module = v.module->shifted(s);
    return ev;
}

std::vector<Verdict> check_square(const CommutationContext& ctx, const SquareSpec& sq, const std::vector<Sample>& samples)
{
    std::vector<Verdict> out;
    for (const auto& m : samples) {
        std::string name = sq.name + " on " + m.name;
        try {
            Evaluation l = eval_recipe(ctx, sq.lhs, m);
            Evaluation r = eval_recipe(ctx, sq.rhs, m);
            Verdict v = table_agreement(name, l.table, r.table);
            v.shift = ctx.sigma(sq.rhs) - ctx.sigma(sq.lhs);
            v.heuristic = v.heuristic || l.heuristic || r.heuristic;
            v.evidence = {l.table, r.table};
            out.push_back(std::move(v));
        } catch (const BoundExceeded& e) {
            out.push_back(make_verdict(name, Status::Unknown, e.what()));
        } catch (const Error& e) {
            out.push_back(make_verdict(name, Status::Unsupported, e.what()));
        }
    }
    return out;
}

std::vector<Verdict> check_square(const CommutationContext& ctx, const SquareSpec& sq)
{
    std::vector<Sample> samples;
    try {
        samples = ctx.default_samples(recipe_source(sq.lhs));
    } catch (const Error& e) {
        return {make_verdict(sq.name, Status::Unsupported, e.what())};
    }
    return check_square(ctx, sq, samples);
}

}  // namespace kdsg
