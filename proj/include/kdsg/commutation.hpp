#pragma once

#include "kdsg/gorenstein.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kdsg {

// The nine module categories of a six-ring context.  Sh, Rh and Qh are the
// completions: Ext over the realized F, E and D.
enum class Ring { S, R, Q, F, E, D, Sh, Rh, Qh };

std::string ring_name(Ring r);

enum class Functor { q_up, q_down, p_up, p_down, i_up, i_down, j_up, j_down, qh_up, qh_down, ph_up, ph_down, E, F, D, Eh, Fh, Dh };

std::string functor_name(Functor f);
Ring functor_source(Functor f);
Ring functor_target(Functor f);

struct Recipe {
    std::string text;
    std::vector<Functor> steps;                     // in order of application
    std::vector<std::pair<int, std::string>> sigma;  // signed shift symbols a_S .. a_D
};

// "Sigma^{a_S-a_R} E q_*": functors right to left, an optional leading
// suspension.  Throws PreconditionFailed when the composite does not
// type-check.
Recipe parse_recipe(const std::string& text);
Ring recipe_source(const Recipe& r);
Ring recipe_target(const Recipe& r);

struct SquareSpec {
    std::string name;
    Recipe lhs, rhs;
};

// The four squares built from q, j and their completions, then the four
// built from p and i.
std::vector<SquareSpec> standard_squares();
std::optional<SquareSpec> find_square(const std::string& name);

struct Sample {
    std::string name;
    ModuleSum module;
    bool regular = false;  // the ring itself, so a Gorenstein certificate completes its Ext
};

// A six-ring context plus the lazily computed completions and certified
// Gorenstein shifts.
class CommutationContext {
public:
    explicit CommutationContext(SixRingContext six);

    const SixRingContext& six() const { return six_; }
    const Bounds& bounds() const { return six_.bounds; }

    // NotFormalizable when the ring has no realization
    AlgebraPtr ring(Ring r) const;
    // certified Gorenstein shift of a_S .. a_D; PreconditionFailed otherwise
    Bideg shift(const std::string& symbol) const;
    Bideg sigma(const Recipe& r) const;

    // regular and trivial modules, plus Q and q^*R where they exist
    std::vector<Sample> default_samples(Ring r) const;

    struct Completions {
        ExtAlgebraPtr Fx, Ex, Dx;
        AlgebraPtr Sh, Rh, Qh;
        MorphismPtr qh, ph;
    };
    const Completions& completions() const;

private:
    SixRingContext six_;
    mutable std::map<std::string, Bideg> shifts_;
    mutable std::shared_ptr<Completions> hats_;
    mutable std::string hats_error_;
};

struct Evaluation {
    BigradedTable table;
    std::optional<ModuleSum> module;  // absent once a derived tensor product loses the structure
    std::vector<std::string> trace;   // one line per step
    bool heuristic = false;
};

// Applies the recipe to m.  Errors carry the failing step in their message.
Evaluation eval_recipe(const CommutationContext& ctx, const Recipe& r, const Sample& m);

// One verdict per sample: lhs against rhs on the common certified region.
std::vector<Verdict> check_square(const CommutationContext& ctx, const SquareSpec& sq, const std::vector<Sample>& samples);
std::vector<Verdict> check_square(const CommutationContext& ctx, const SquareSpec& sq);

}  // namespace kdsg
