#pragma once

#include "kdsg/algebra.hpp"
#include "kdsg/table.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kdsg {

// Left module over a GradedAlgebra concentrated on one line: component l sits
// at offset() + line.at(l).  Components lo..hi are known; above hi the module
// is zero when exact(), unknown otherwise.
class GradedModule {
public:
    struct Data {
        AlgebraPtr alg;
        std::string name = "M";
        Bideg offset;
        int lo = 0, hi = -1;
        bool exact = true;
        std::vector<std::size_t> dims;  // indexed by l - lo
        std::optional<int> gen_bound;   // generated in components <= gen_bound, when known
        // gen_actions[g][l - lo]: component l -> component l + ell(g), for l + ell(g) <= hi
        std::vector<std::vector<Matrix>> gen_actions;
    };

    static GradedModule from_generator_actions(Data d);
    static GradedModule trivial(AlgebraPtr a, Bideg at = {});
    static GradedModule regular(AlgebraPtr a);
    static GradedModule zero(AlgebraPtr a, Bideg offset = {});

    const AlgebraPtr& algebra() const { return alg_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    Bideg offset() const { return offset_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool exact() const { return exact_; }
    std::optional<int> gen_bound() const { return gen_bound_; }
    bool known(int l) const { return l < lo_ || l <= hi_ || exact_; }
    std::size_t dim(int l) const;  // throws BoundExceeded for unknown components
    Bideg bideg(int l) const { return offset_ + alg_->line().at(l); }
    std::optional<int> ell_of(const Bideg& b) const;
    std::size_t total_dim() const;
    bool is_zero() const { return total_dim() == 0 && exact_; }
    int top() const;  // highest nonzero known component, lo-1 if none

    // e_i in A_la acting from component l to l + la
    const Matrix& action(int la, std::size_t i, int l) const;
    Vec act(int la, const Vec& a, int l, const Vec& m) const;
    Matrix action_matrix(int la, const Vec& a, int l) const;
    const Matrix& generator_action(std::size_t g, int l) const;

    GradedModule shifted(const Bideg& s) const;
    GradedModule truncated(int hi) const;
    // same data, with nothing claimed above hi()
    GradedModule inexact() const
    {
        GradedModule m = *this;
        m.exact_ = false;
        return m;
    }
    bool check_action(int limit) const;
    BigradedTable table() const;

private:
    GradedModule() = default;
    AlgebraPtr alg_;
    std::string name_;
    Bideg offset_;
    int lo_ = 0, hi_ = -1;
    bool exact_ = true;
    std::optional<int> gen_bound_;
    int act_limit_ = -1;  // largest algebra degree with a stored action
    std::vector<std::size_t> dims_;
    std::vector<std::vector<Matrix>> gen_;
    std::vector<std::vector<std::vector<Matrix>>> act_;  // act_[la][l - lo][i]
};

// Direct sum of single-line modules over one algebra.  When complete, offsets
// without a part are known to be zero.  Otherwise `window` says which
// bidegrees are known (parts included), and min_ell bounds the grading of
// every element, known or not, from below.
struct ModuleSum {
    AlgebraPtr alg;
    std::vector<GradedModule> parts;
    bool complete = true;
    std::vector<Coverage> window;
    std::optional<int> min_ell;

    static ModuleSum of(GradedModule m);
    bool certified(const Bideg& b) const;
    // every element at b - l*dir with l >= 0 is known
    bool certified_below(const Bideg& b) const;
    BigradedTable table(const std::string& name = "") const;
    ModuleSum shifted(const Bideg& s) const;
    bool is_zero() const;
};

// Free module on generators of the given degrees, all on one line.
class FreeModule {
public:
    FreeModule() = default;
    FreeModule(AlgebraPtr a, Bideg offset, std::vector<int> gen_ell);

    const AlgebraPtr& algebra() const { return alg_; }
    Bideg offset() const { return offset_; }
    std::size_t rank() const { return gens_.size(); }
    int gen_ell(std::size_t g) const { return gens_.at(g); }
    const std::vector<int>& gen_ells() const { return gens_; }
    int min_gen() const;
    int max_gen() const;
    void add_generator(int l) { gens_.push_back(l); }

    std::size_t dim(int l) const;
    // start of generator g's block in component l (its size is A.dim(l - ell(g)))
    std::size_t block(int l, std::size_t g) const;
    Vec generator(std::size_t g) const;
    Vec left_mul(int la, const Vec& a, int l, const Vec& v) const;
    Matrix left_mul_matrix(int la, std::size_t i, int l) const;
    // the part of v in generator g's block, an element of A_{l - ell(g)}
    Vec coefficient(int l, const Vec& v, std::size_t g) const;

private:
    AlgebraPtr alg_;
    Bideg offset_;
    std::vector<int> gens_;
};

// Quotient of a free module by the submodule generated by `relations`
// (pairs of degree and element), computed through component `upto`.
GradedModule presented_module(const FreeModule& free, const std::vector<std::pair<int, Vec>>& relations, int upto,
                              const std::string& name = "M");

// Restriction along f: source acts through f.
ModuleSum restrict_module(const AlgebraMorphism& f, const GradedModule& m);
ModuleSum restrict_module(const AlgebraMorphism& f, const ModuleSum& m);

// A / (left ideal generated by the relations)
GradedModule cyclic_module(AlgebraPtr a, const std::vector<std::pair<int, Vec>>& relations, int upto, const std::string& name);

std::vector<std::size_t> hilbert_series(const GradedModule& m, int dmax);

}  // namespace kdsg
