#pragma once

#include "kdsg/module.hpp"
#include "kdsg/table.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kdsg {

struct Bounds {
    int hmax = 12;
    int dmax = 16;
};

// Minimal free resolution F_s -> ... -> F_0 -> M, exact in components
// l <= top().  Stage s+1 is computed for every s <= hmax so that Ext^hmax
// can be read off.
class FreeResolution {
public:
    FreeResolution(GradedModule m, int hmax, int dmax);

    const GradedModule& module() const { return m_; }
    const AlgebraPtr& algebra() const { return m_.algebra(); }
    int hmax() const { return hmax_; }
    int dmax() const { return dmax_; }
    int lo() const { return lo_; }
    int top() const { return top_; }
    int stages() const { return static_cast<int>(stages_.size()); }  // hmax + 2
    const FreeModule& stage(int s) const { return stages_.at(static_cast<std::size_t>(s)); }
    std::size_t rank(int s) const { return s < stages() ? stage(s).rank() : 0; }

    // no generators of stage s lie above top()
    bool complete(int s) const { return s < stages() && complete_.at(static_cast<std::size_t>(s)); }
    // completeness of some stage <= s rests on the degree-margin heuristic
    bool heuristic(int s) const;
    std::optional<int> terminated() const { return length_; }
    bool terminated_heuristically() const { return length_ && heuristic(*length_ + 1); }

    // d(g) for generator g of stage s: an element of F_{s-1} (of M when s == 0)
    // in component ell(g)
    const Vec& boundary(int s, std::size_t g) const;
    // F_{s,l} -> F_{s-1,l} (M_l when s == 0)
    const Matrix& differential(int s, int l) const;
    const LinearSolver& solver(int s, int l) const;
    std::size_t dim(int s, int l) const;  // dim F_{s,l}, M_l for s == -1

    // every boundary coefficient lies in the augmentation ideal
    bool minimal() const;
    // alternating sum of stage dimensions equals dim M_l where it is determined
    bool euler_identity() const;
    // a >= 1, p >= 1 with d_{a+p} equal to d_a after a degree shift
    struct Period {
        int start, period, shift;
    };
    std::optional<Period> periodicity() const;

    // generator degrees per stage
    std::vector<std::vector<int>> betti() const;

private:
    GradedModule m_;
    int hmax_, dmax_, lo_, top_;
    std::vector<FreeModule> stages_;
    std::vector<std::vector<Vec>> bnd_;               // bnd_[s][g]
    std::vector<std::vector<Matrix>> diff_;           // diff_[s][l - lo]
    mutable std::map<std::pair<int, int>, LinearSolver> solvers_;
    std::vector<bool> complete_, heuristic_;
    std::optional<int> length_;
};

using ResolutionPtr = std::shared_ptr<const FreeResolution>;

ResolutionPtr resolve(const GradedModule& m, const Bounds& b);

// Chain map F_{degree+n} -> G_n over an algebra morphism F.alg -> G.alg
// (identity when both resolutions share the algebra).  A generator of F at
// bidegree x goes to G in bidegree x + shift, or to zero off G's line.
struct ChainMap {
    int degree = 0;
    Bideg shift;
    int length = -1;                                   // images known for n <= length
    std::vector<std::vector<std::optional<int>>> ell;  // ell[n][g]: target component
    std::vector<std::vector<Vec>> images;              // images[n][g] in G_n (empty when zero)
};

ChainMap lift_chain_map(const FreeResolution& F, const FreeResolution& G, const AlgebraMorphism* f, int degree, Bideg shift,
                        const std::vector<Vec>& initial, int nmax);

// Ext_A(M, N) from a resolution of M.  Group (s, c) is the s-th cohomology of
// Hom(F, N) in map degree c: generator g of F_s goes to N_{ell(g)+c}.
class ExtGroups {
public:
    ExtGroups(ResolutionPtr F, GradedModule N, int hmax);

    struct Group {
        int s = 0, c = 0;
        bool certified = false;
        std::vector<std::size_t> starts;  // block offsets per generator of F_s
        std::size_t hom_dim = 0;
        std::vector<Vec> reps;            // cocycle representatives
        std::shared_ptr<Quotient> quotient;
    };

    const ResolutionPtr& resolution() const { return F_; }
    const GradedModule& target() const { return N_; }
    int hmax() const { return hmax_; }
    const std::map<std::pair<int, int>, Group>& groups() const { return groups_; }
    const Group* group(int s, int c) const;
    std::size_t dim(int s, int c) const;
    Bideg bideg(int s, int c) const;
    std::optional<std::pair<int, int>> locate(const Bideg& b) const;  // (s, c) with bideg(s, c) == b
    bool certified(int s, int c) const;
    BigradedTable table(const std::string& name = "Ext") const;

    // Hom^c(F_s, N) helpers
    std::size_t hom_dim(int s, int c) const;
    Vec class_coords(int s, int c, const Vec& cocycle) const;
    // cocycle of F_s into N: component for generator g
    Vec hom_block(int s, int c, const Vec& phi, std::size_t g) const;

private:
    Matrix coboundary(int s, int c) const;  // Hom^c(F_{s-1}, N) -> Hom^c(F_s, N)
    bool hom_known(int s, int c) const;
    std::pair<int, int> valid_range(int s) const;

    ResolutionPtr F_;
    GradedModule N_;
    int hmax_;
    Bideg base_;
    std::map<std::pair<int, int>, Group> groups_;
};

// Tor^S_s(X, N) where X is the target of q: S -> X seen as a right S-module.
BigradedTable tor_table(const AlgebraMorphism& q, const GradedModule& n, const Bounds& b, const std::string& name = "Tor");
BigradedTable tor_table(const AlgebraMorphism& q, const ModuleSum& n, const Bounds& b, const std::string& name = "Tor");

// R (x)_S N through a presentation of N; requires Tor^S_{>0}(R, k) = 0.
GradedModule induce_module(const AlgebraMorphism& q, const GradedModule& n, const Bounds& b);
ModuleSum induce_module(const AlgebraMorphism& q, const ModuleSum& n, const Bounds& b);

// Bidegree of a Tor^S_{>0}(R, k) class witnessing that R is not free over S.
std::optional<Bideg> flatness_witness(const AlgebraMorphism& q, const Bounds& b);

BigradedTable ext_table(const GradedModule& m, const GradedModule& n, const Bounds& b, const std::string& name = "Ext");
BigradedTable ext_table(const GradedModule& m, const ModuleSum& n, const Bounds& b, const std::string& name = "Ext");

// Degree-margin used to call a stage complete over infinite algebras.
int completeness_margin(const GradedAlgebra& a);

}  // namespace kdsg
