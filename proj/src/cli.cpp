#include "kdsg/cli.hpp"

#include "kdsg/commutation.hpp"
#include "kdsg/errors.hpp"
#include "kdsg/gorenstein.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace kdsg {

const std::vector<std::string>& commands()
{
    static const std::vector<std::string> names = {"realize", "hilbert",    "resolve",     "ext",     "ext-algebra", "gorenstein", "rel-gorenstein",
                                                   "small",   "torsion",    "qfg",         "cfg",     "koszul-dual", "koszulness", "cofibre",
                                                   "context", "invariance", "singularity", "roundtrip", "squares"};
    return names;
}

namespace {

std::vector<std::string> lines_of(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::string degrees(const std::vector<int>& ds)
{
    std::string s;
    for (int d : ds) s += (s.empty() ? "" : " ") + std::to_string(d);
    return s.empty() ? "none" : s;
}

BigradedTable hilbert_table(const GradedAlgebra& a, int dmax, const std::string& name)
{
    BigradedTable t;
    t.name = name;
    for (int l = 0; l <= std::min(dmax, a.bound()); ++l)
        if (std::size_t d = a.dim(l)) t.add(a.line().at(l), d);
    return t;
}

class Session {
public:
    explicit Session(const RunConfig& cfg) : cfg_(cfg)
    {
        if (cfg.inputs.empty()) throw UsageError("no input file");
        if (cfg.hmax < 1 || cfg.dmax < 1) throw UsageError("bounds must be positive");
        std::string all;
        for (const auto& path : cfg.inputs) {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw UsageError("cannot read " + path);
            std::ostringstream buf;
            buf << in.rdbuf();
            all += buf.str();
            Document d = parse_document(buf.str());
            if (!doc_.field && d.field) doc_.field = d.field;
            for (auto& a : d.algebras) {
                for (const auto& b : doc_.algebras)
                    if (b.name == a.name) throw UsageError("algebra '" + a.name + "' defined twice");
                doc_.algebras.push_back(std::move(a));
            }
            for (auto& m : d.morphisms) doc_.morphisms.push_back(std::move(m));
        }
        digest_ = sha1_hex(all);
        field_name_ = cfg.field ? *cfg.field : doc_.field ? *doc_.field : cfg.default_field ? *cfg.default_field : "Q";
        try {
            field_ = Field::parse(field_name_);
        } catch (const std::exception& e) {
            throw UsageError("bad field '" + field_name_ + "': " + e.what());
        }
        bounds_ = Bounds{cfg.hmax, cfg.dmax};
        if (cfg.algebra && !has_algebra(*cfg.algebra)) throw UsageError("no algebra named '" + *cfg.algebra + "'");
        for (const auto* m : {&cfg.morphism, &cfg.other_morphism})
            if (*m && !has_morphism(**m)) throw UsageError("no morphism named '" + **m + "'");
    }

    const RunConfig& cfg() const { return cfg_; }
    const Document& doc() const { return doc_; }
    const Bounds& bounds() const { return bounds_; }
    const std::string& digest() const { return digest_; }
    const std::string& field_name() const { return field_name_; }
    const Field& field() const { return field_; }

    SixRingOptions six_options() const { return {cfg_.formal ? Formality::TotalDegree : Formality::Diagonal, cfg_.threads}; }

    // --algebra, the only algebra, or the target of the first morphism
    std::string algebra_name() const
    {
        if (cfg_.algebra) return *cfg_.algebra;
        if (doc_.algebras.size() == 1) return doc_.algebras.front().name;
        if (!doc_.morphisms.empty()) return doc_.morphisms.front().target;
        if (doc_.algebras.empty()) throw UsageError("the input defines no algebra");
        throw UsageError("several algebras; choose one with --algebra");
    }

    AlgebraPtr algebra(const std::string& name)
    {
        auto it = algs_.find(name);
        if (it != algs_.end()) return it->second;
        AlgebraPtr a = GradedAlgebra::realize(doc_.algebra(name), field_, bounds_.dmax);
        algs_.emplace(name, a);
        return a;
    }
    AlgebraPtr algebra() { return algebra(algebra_name()); }

    // --morphism, the first morphism, or a normalization of the chosen
    // algebra: the unit map of a finite algebra, the identity otherwise
    MorphismPtr morphism()
    {
        if (cfg_.morphism) return morphism(*cfg_.morphism);
        if (!doc_.morphisms.empty()) return morphism(doc_.morphisms.front().name);
        AlgebraPtr a = algebra();
        if (a->exact()) return AlgebraMorphism::unit_map(GradedAlgebra::ground_field(field_, a->line()), a, "q");
        return AlgebraMorphism::identity(a, "q");
    }

    MorphismPtr morphism(const std::string& name)
    {
        const MorphismSpec& spec = doc_.morphism(name);
        return AlgebraMorphism::from_spec(spec, algebra(spec.source), algebra(spec.target));
    }

    MorphismPtr other_morphism()
    {
        if (cfg_.other_morphism) return morphism(*cfg_.other_morphism);
        if (doc_.morphisms.size() < 2) throw UsageError("invariance needs two morphisms; name the second with --with");
        return morphism(doc_.morphisms[1].name);
    }

    NormalizationContext context() { return normalization_context(morphism(), bounds_); }

    // --module over a, defaulting to k; Q needs the context
    GradedModule module(const AlgebraPtr& a, const std::string& fallback = "k")
    {
        std::string which = cfg_.module.value_or(fallback);
        if (which == "k") return GradedModule::trivial(a);
        if (which == "regular") return GradedModule::regular(a);
        auto ctx = context();
        if (!ctx.Q) throw PreconditionFailed("the context has no cofibre: " + ctx.note);
        if (ctx.R != a) throw PreconditionFailed("Q is a module over " + ctx.R->name() + ", not " + a->name());
        auto samples = default_samples(ctx);
        return samples.back();
    }

private:
    bool has_algebra(const std::string& n) const
    {
        return std::any_of(doc_.algebras.begin(), doc_.algebras.end(), [&](const auto& a) { return a.name == n; });
    }
    bool has_morphism(const std::string& n) const
    {
        return std::any_of(doc_.morphisms.begin(), doc_.morphisms.end(), [&](const auto& m) { return m.name == n; });
    }

    const RunConfig& cfg_;
    Document doc_;
    Bounds bounds_;
    std::string digest_, field_name_;
    Field field_ = Field::rationals();
    std::map<std::string, AlgebraPtr> algs_;
};

// Runs body; a computation error becomes a single row named `name`.
void guarded(Report& r, const std::string& name, const std::function<void()>& body)
{
    try {
        body();
    } catch (const NotANormalization& e) {
        r.add(make_verdict(name, Status::Fail, e.what()));
    } catch (const BoundExceeded& e) {
        r.add(make_verdict(name, Status::Unknown, e.what()));
    } catch (const Error& e) {
        r.add(make_verdict(name, Status::Unsupported, e.what()));
    }
}

using Command = std::function<void(Session&, Report&)>;

void realize_cmd(Session& s, Report& r)
{
    std::string name = s.algebra_name();
    AlgebraPtr a = s.algebra(name);
    for (const auto& l : lines_of(print_presentation(s.doc().algebra(name)))) r.output.push_back(l);
    std::vector<int> gens;
    for (const auto& g : a->generators()) gens.push_back(g.ell);
    r.output.push_back("generator degrees: " + degrees(gens));
    std::string dims;
    for (int l = 0; l <= (a->exact() ? a->top() : a->bound()); ++l) dims += (l ? " " : "") + std::to_string(a->dim(l));
    r.output.push_back("dimensions: " + dims + (a->exact() ? " (exact)" : " (truncated at " + std::to_string(a->bound()) + ")"));
}

void hilbert_cmd(Session& s, Report& r)
{
    AlgebraPtr a = s.algebra();
    auto h = hilbert_series(*a, std::min(s.bounds().dmax, a->bound()));
    std::string series;
    for (std::size_t l = 0; l < h.size(); ++l) {
        if (!h[l]) continue;
        if (!series.empty()) series += " + ";
        std::string c = h[l] == 1 && l ? "" : std::to_string(h[l]);
        series += c + (l == 0 ? "" : l == 1 ? "t" : "t^" + std::to_string(l));
    }
    r.output.push_back("H(" + a->name() + ") = " + series + (a->exact() ? "" : " + ..."));
    r.add(hilbert_table(*a, s.bounds().dmax, "H(" + a->name() + ")"));
}

void resolve_cmd(Session& s, Report& r)
{
    AlgebraPtr a = s.algebra();
    GradedModule m = s.module(a);
    guarded(r, "resolution of " + m.name(), [&] {
        ResolutionPtr F = resolve(m, s.bounds());
        auto betti = F->betti();
        BigradedTable t;
        t.name = "generators of the minimal resolution of " + m.name();
        for (int st = 0; st <= s.bounds().hmax && st < static_cast<int>(betti.size()); ++st) {
            r.output.push_back("F_" + std::to_string(st) + ": " + degrees(betti[static_cast<std::size_t>(st)]) +
                               (F->complete(st) ? "" : " (incomplete)"));
            for (int ell : betti[static_cast<std::size_t>(st)]) t.add(m.offset() + Bideg{st, 0} + a->line().at(ell), 1);
        }
        if (auto len = F->terminated()) r.output.push_back("terminates at stage " + std::to_string(*len));
        r.add(t);
        r.add(make_verdict("minimality of " + m.name(), F->minimal() ? Status::Pass : Status::Fail));
        r.add(make_verdict("Euler characteristic of " + m.name(), F->euler_identity() ? Status::Pass : Status::Fail));
        r.add(is_small(m, s.bounds()).verdict("small " + m.name()));
    });
}

void ext_cmd(Session& s, Report& r)
{
    AlgebraPtr a = s.algebra();
    GradedModule m = s.module(a);
    guarded(r, "Ext(k," + m.name() + ")", [&] { r.add(ext_table(GradedModule::trivial(a), m, s.bounds(), "Ext(k," + m.name() + ")")); });
}

void ext_algebra_cmd(Session& s, Report& r)
{
    AlgebraPtr a = s.algebra();
    guarded(r, "Ext algebra of " + a->name(), [&] {
        ExtAlgebraPtr E = ext_algebra(a, s.bounds());
        r.add(E->table("Ext(k,k)"));
        r.add(make_verdict("Yoneda associativity", E->check_associativity() ? Status::Pass : Status::Fail));
        r.add(make_verdict("Yoneda unit", E->check_unit() ? Status::Pass : Status::Fail));
        guarded(r, "realization", [&] {
            AlgebraPtr real;
            std::string how;
            try {
                real = E->realize();
                how = "diagonal of weight " + std::to_string(E->diagonal_weight());
            } catch (const NotFormalizable&) {
                if (!s.cfg().formal) throw;
                real = E->realize_total();
                how = "regraded by total degree";
            }
            r.add(make_verdict("realization", Status::Pass, how));
            r.add(hilbert_table(*real, s.bounds().dmax, "realized Ext of " + a->name()));
        });
    });
}

void gorenstein_cmd(Session& s, Report& r)
{
    AlgebraPtr a = s.algebra();
    guarded(r, "Gorenstein " + a->name(), [&] {
        GorensteinCertificate c = gorenstein_test(a, s.bounds());
        if (c.gorenstein()) r.output.push_back("Gorenstein, socle bidegree " + c.shift.str() + " (" + c.certificate + ")");
        if (!c.evidence.dims.empty()) r.add(c.evidence);
        r.add(c.verdict("Gorenstein " + a->name()));
    });
}

void rel_gorenstein_cmd(Session& s, Report& r)
{
    MorphismPtr q = s.morphism();
    guarded(r, "relatively Gorenstein " + q->name(), [&] {
        GorensteinCertificate c = relative_gorenstein_test(*q, s.bounds());
        if (c.gorenstein()) r.output.push_back("relatively Gorenstein, shift " + c.shift.str());
        r.add(c.verdict("relatively Gorenstein " + q->name()));
    });
}

void small_cmd(Session& s, Report& r)
{
    AlgebraPtr a = s.algebra();
    GradedModule m = s.module(a);
    guarded(r, "small " + m.name(), [&] { r.add(is_small(m, s.bounds()).verdict("small " + m.name())); });
}

void torsion_cmd(Session& s, Report& r)
{
    AlgebraPtr a = s.algebra();
    GradedModule m = s.module(a);
    guarded(r, "torsion " + m.name(), [&] { r.add(is_torsion(m, s.bounds()).verdict("torsion " + m.name())); });
}

void cfg_cmd(Session& s, Report& r)
{
    AlgebraPtr a = s.algebra();
    GradedModule m = s.module(a);
    guarded(r, "finitely generated " + m.name(), [&] { r.add(is_cfg(m, s.bounds()).verdict("finitely generated " + m.name())); });
}

void qfg_cmd(Session& s, Report& r)
{
    MorphismPtr q = s.morphism();
    GradedModule m = s.module(q->target());
    guarded(r, "q-finitely generated " + m.name(), [&] { r.add(is_qfg(*q, m, s.bounds()).verdict("q-finitely generated " + m.name())); });
}

void koszul_dual_cmd(Session& s, Report& r)
{
    std::string name = s.algebra_name();
    guarded(r, "quadratic dual of " + name, [&] {
        Presentation d = quadratic_dual(s.doc().algebra(name), s.field());
        d.name = name + "_dual";
        for (const auto& l : lines_of(print_presentation(d))) r.output.push_back(l);
        AlgebraPtr a = s.algebra(name);
        AlgebraPtr ad = GradedAlgebra::realize(d, s.field(), s.bounds().dmax);
        r.add(hilbert_table(*a, s.bounds().dmax, "H(" + name + ")"));
        r.add(hilbert_table(*ad, s.bounds().dmax, "H(" + d.name + ")"));
        int upto = std::min({s.bounds().dmax, a->bound(), ad->bound()});
        auto bad = koszul_reciprocity_failure(*a, *ad, upto);
        Verdict v = make_verdict("Hilbert reciprocity", bad ? Status::Fail : Status::Pass,
                                 bad ? "H(t) H_dual(-t) differs from 1 in degree " + std::to_string(*bad)
                                     : "H(t) H_dual(-t) = 1 through degree " + std::to_string(upto));
        if (bad) v.witness = Bideg{0, *bad};
        r.add(v);
    });
}

void koszulness_cmd(Session& s, Report& r)
{
    AlgebraPtr a = s.algebra();
    guarded(r, "Koszul " + a->name(), [&] { r.add(koszulness_check(a, s.bounds()).verdict("Koszul " + a->name())); });
}

void cofibre_cmd(Session& s, Report& r)
{
    MorphismPtr q = s.morphism();
    guarded(r, "normalization " + q->name(), [&] { r.add(validate_normalization(*q, s.bounds()).verdict("normalization " + q->name())); });
    guarded(r, "cofibre of " + q->name(), [&] {
        Cofibre c = cofibre_algebra(*q, s.bounds());
        std::string dims;
        for (int l = 0; l <= (c.Q->exact() ? c.Q->top() : c.Q->bound()); ++l) dims += (l ? " " : "") + std::to_string(c.Q->dim(l));
        r.output.push_back("Q dimensions: " + dims + (c.Q->exact() ? "" : " ..."));
        r.add(hilbert_table(*c.Q, s.bounds().dmax, "H(Q)"));
        r.add(c.built_from_k);
        r.add(c.small_over_R);
    });
}

void context_cmd(Session& s, Report& r)
{
    guarded(r, "normalization", [&] {
        NormalizationContext ctx = s.context();
        ContextReport rep = ctx.Q ? sgc_report(dual_cofibre_sequence(ctx, s.bounds(), s.six_options()), s.bounds()) : sgc_report(ctx, s.bounds());
        for (const auto& [sym, b] : rep.shifts) r.output.push_back(sym + " = " + b.str());
        for (const auto& v : rep.rows) r.add(v);
    });
}

void invariance_cmd(Session& s, Report& r)
{
    MorphismPtr q1 = s.morphism();
    MorphismPtr q2 = s.other_morphism();
    guarded(r, "invariance", [&] {
        auto samples = default_samples(normalization_context(q1, s.bounds()));
        r.add(invariance_check(*q1, *q2, samples, s.bounds()));
        r.add(cfg_equivalence_check(*q1, samples, s.bounds()));
        r.add(cfg_equivalence_check(*q2, samples, s.bounds()));
    });
}

void singularity_cmd(Session& s, Report& r)
{
    guarded(r, "singularity", [&] {
        SingularityReport rep = singularity_verdict(s.context(), s.bounds());
        r.add(rep.sg_trivial);
        r.add(rep.cosg_trivial);
        for (const auto& v : rep.objects) r.add(v);
        for (const auto& v : rep.interchange) r.add(v);
    });
}

void roundtrip_cmd(Session& s, Report& r)
{
    guarded(r, "roundtrip", [&] {
        SixRingContext six = dual_cofibre_sequence(s.context(), s.bounds(), s.six_options());
        std::vector<GradedModule> ms;
        if (s.cfg().module)
            ms.push_back(s.module(six.base.R));
        else
            ms = {GradedModule::regular(six.base.R), GradedModule::trivial(six.base.R)};
        for (const auto& m : ms) guarded(r, "roundtrip " + m.name(), [&] { r.add(roundtrip_check(six, m, s.bounds())); });
    });
}

void squares_cmd(Session& s, Report& r)
{
    std::vector<SquareSpec> squares;
    if (s.cfg().square) {
        auto sq = find_square(*s.cfg().square);
        if (!sq) throw UsageError("unknown square '" + *s.cfg().square + "'");
        squares.push_back(*sq);
    } else {
        squares = standard_squares();
    }
    guarded(r, "squares", [&] {
        CommutationContext ctx(dual_cofibre_sequence(s.context(), s.bounds(), s.six_options()));
        for (const auto& sq : squares) guarded(r, sq.name, [&] {
                for (const auto& v : check_square(ctx, sq)) r.add(v);
            });
    });
}

const std::map<std::string, Command>& table()
{
    static const std::map<std::string, Command> t = {
        {"realize", realize_cmd},         {"hilbert", hilbert_cmd},     {"resolve", resolve_cmd},
        {"ext", ext_cmd},                 {"ext-algebra", ext_algebra_cmd}, {"gorenstein", gorenstein_cmd},
        {"rel-gorenstein", rel_gorenstein_cmd}, {"small", small_cmd},   {"torsion", torsion_cmd},
        {"qfg", qfg_cmd},                 {"cfg", cfg_cmd},             {"koszul-dual", koszul_dual_cmd},
        {"koszulness", koszulness_cmd},   {"cofibre", cofibre_cmd},     {"context", context_cmd},
        {"invariance", invariance_cmd},   {"singularity", singularity_cmd}, {"roundtrip", roundtrip_cmd},
        {"squares", squares_cmd},
    };
    return t;
}

}  // namespace

Report execute(const RunConfig& cfg)
{
    auto it = table().find(cfg.command);
    if (it == table().end()) throw UsageError("unknown command '" + cfg.command + "'");
    if (cfg.report != "text" && cfg.report != "json") throw UsageError("--report must be text or json");
    if (cfg.threads < 1) throw UsageError("--threads must be positive");
    if (cfg.module && *cfg.module != "k" && *cfg.module != "regular" && *cfg.module != "Q")
        throw UsageError("--module must be k, regular or Q");
    Session s(cfg);
    Report r;
    r.command = cfg.command;
    r.input_digest = s.digest();
    r.hmax = cfg.hmax;
    r.dmax = cfg.dmax;
    r.field = s.field_name();
    try {
        guarded(r, cfg.command, [&] { it->second(s, r); });
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return r;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        RunConfig c = cfg;
        Report r = execute(c);
        while (cfg.escalate && r.count(Status::Unknown) && (c.hmax < cfg.ceiling_hmax || c.dmax < cfg.ceiling_dmax)) {
            c.hmax = std::min(2 * c.hmax, std::max(cfg.ceiling_hmax, c.hmax));
            c.dmax = std::min(2 * c.dmax, std::max(cfg.ceiling_dmax, c.dmax));
            r = execute(c);
        }
        out << (cfg.report == "json" ? r.json() : r.text());
        return r.exit_code();
    } catch (const UsageError& e) {
        err << "kdsg: " << e.what() << "\n";
    } catch (const ParseError& e) {
        err << "kdsg: parse error at " << e.what() << "\n";
    } catch (const Error& e) {
        err << "kdsg: " << e.what() << "\n";
    }
    return 2;
}

ParsedArgs parse_args(int argc, const char* const* argv)
{
    RunConfig cfg;
    CLI::App app{"Exact computations with graded algebras, their Ext algebras and Gorenstein contexts", "kdsg"};
    app.add_option("command", cfg.command, "one of: realize hilbert resolve ext ext-algebra gorenstein rel-gorenstein small torsion qfg cfg "
                                           "koszul-dual koszulness cofibre context invariance singularity roundtrip squares")
        ->required()
        ->check(CLI::IsMember(commands()));
    app.add_option("inputs", cfg.inputs, "presentation files")->required();
    std::string field;
    app.add_option("--field", field, "Q or F<p>; overrides the file and KDSG_DEFAULT_FIELD");
    app.add_option("--hmax", cfg.hmax, "homological bound")->check(CLI::PositiveNumber);
    app.add_option("--dmax", cfg.dmax, "internal-degree bound")->check(CLI::PositiveNumber);
    app.add_option("--ceiling-hmax", cfg.ceiling_hmax, "largest hmax reached by --escalate")->check(CLI::PositiveNumber);
    app.add_option("--ceiling-dmax", cfg.ceiling_dmax, "largest dmax reached by --escalate")->check(CLI::PositiveNumber);
    app.add_option("--report", cfg.report, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--escalate", cfg.escalate, "double the bounds while verdicts are UnknownUpToBound");
    app.add_flag("--formal", cfg.formal, "regrade off-diagonal Ext algebras by total degree");
    app.add_option("--threads", cfg.threads, "threads for independent Ext computations")->check(CLI::Range(1, 64));
    std::string algebra, morphism, other, square, module;
    app.add_option("--algebra", algebra, "algebra to use");
    app.add_option("--morphism", morphism, "normalization to use");
    app.add_option("--with", other, "second normalization, for invariance");
    app.add_option("--square", square, "one commutation square, by name or T1..T4, B1..B4");
    app.add_option("--module", module, "k, regular or Q")->check(CLI::IsMember({"k", "regular", "Q"}));
    app.set_version_flag("--version", "kdsg 1.0");

    ParsedArgs p;
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        p.message = app.help();
        return p;
    } catch (const CLI::CallForVersion&) {
        p.message = "kdsg 1.0\n";
        return p;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    auto set = [](std::optional<std::string>& dst, const std::string& v) {
        if (!v.empty()) dst = v;
    };
    set(cfg.field, field);
    set(cfg.algebra, algebra);
    set(cfg.morphism, morphism);
    set(cfg.other_morphism, other);
    set(cfg.square, square);
    set(cfg.module, module);
    if (const char* env = std::getenv("KDSG_DEFAULT_FIELD"); env && *env) cfg.default_field = env;
    p.config = cfg;
    return p;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    try {
        ParsedArgs p = parse_args(argc, argv);
        if (!p.config) {
            out << *p.message;
            return p.exit_code;
        }
        return run(*p.config, out, err);
    } catch (const UsageError& e) {
        err << "kdsg: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace kdsg
