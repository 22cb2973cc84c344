#pragma once

#include "kdsg/bideg.hpp"
#include "kdsg/matrix.hpp"
#include "kdsg/presentation.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kdsg {

class GradedAlgebra;
using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

// Connected graded algebra, realized component by component up to `bound`.
// Component l sits at bidegree line().at(l).
class GradedAlgebra {
public:
    struct Generator {
        std::string name;
        int ell = 1;
        Vec vec;  // coordinates in component ell
    };
    // basis element = sum of coeff * (basis element `left` of degree ell - ell(gen)) * gen
    struct DecompTerm {
        Scalar coeff;
        std::size_t left;
        std::size_t gen;
    };
    // Everything needed to assemble an algebra from structure constants.
    struct Data {
        Field field = Field::rationals();
        Line line;
        std::string name = "A";
        int bound = 0;
        bool exact = false;
        std::vector<std::size_t> dims;                 // dims[0] == 1
        std::vector<std::vector<std::string>> labels;  // optional
        std::vector<Generator> generators;
        // products[l1][l2][i * dims[l2] + j] for l1 + l2 <= bound
        std::vector<std::vector<std::vector<Vec>>> products;
        int relation_degree = 2;
    };

    static AlgebraPtr realize(const Presentation& p, const Field& f, int dmax);
    static AlgebraPtr from_data(Data d);  // throws if the generators do not generate
    static AlgebraPtr ground_field(const Field& f, Line line = {});

    AlgebraPtr opposite() const;

    const Field& field() const { return d_.field; }
    const Line& line() const { return d_.line; }
    const std::string& name() const { return d_.name; }
    int bound() const { return d_.bound; }
    // exact: the algebra is known to vanish above bound()
    bool exact() const { return d_.exact; }
    int top() const;  // largest l with a nonzero component (exact algebras only)
    bool is_field() const { return d_.generators.empty() || (exact() && top() == 0); }
    int relation_degree() const { return d_.relation_degree; }
    int max_generator_ell() const;
    const std::optional<Presentation>& presentation() const { return presentation_; }

    Bideg bideg(int l) const { return d_.line.at(l); }
    bool known(int l) const { return l >= 0 && (l <= d_.bound || d_.exact); }
    std::size_t dim(int l) const;  // throws when l is beyond a truncated bound
    std::vector<std::size_t> dims() const { return d_.dims; }
    std::string label(int l, std::size_t i) const;
    const std::vector<Generator>& generators() const { return d_.generators; }
    const std::vector<DecompTerm>& decomposition(int l, std::size_t i) const { return decomp_.at(static_cast<std::size_t>(l)).at(i); }

    const Vec& product(int l1, std::size_t i, int l2, std::size_t j) const;
    Vec multiply(int l1, const Vec& a, int l2, const Vec& b) const;
    // matrix of b -> e_i * b on component l2 (left) or b -> b * e_i (right)
    Matrix left_mult(int l1, std::size_t i, int l2) const;
    Matrix right_mult(int l1, std::size_t i, int l2) const;
    Vec unit() const { return Vec{Scalar(1)}; }

    // exhaustive check on basis triples with l1 + l2 + l3 <= limit
    bool check_associativity(int limit) const;

private:
    explicit GradedAlgebra(Data d) : d_(std::move(d)) {}
    void build_decomposition();

    Data d_;
    std::vector<std::vector<std::vector<DecompTerm>>> decomp_;
    std::optional<Presentation> presentation_;
};

// Presentation of the graded-commutativity relations implied by the flag.
std::vector<Polynomial> commutator_relations(const Presentation& p, const Field& f);

// Value of a polynomial in the generators of a realized algebra.
Vec evaluate(const GradedAlgebra& a, const Presentation& p, const Polynomial& poly, int* ell_out = nullptr);

class AlgebraMorphism;
using MorphismPtr = std::shared_ptr<const AlgebraMorphism>;

// Grading-preserving algebra map.  Components whose bidegree is not on the
// target's line map to zero.
class AlgebraMorphism {
public:
    static MorphismPtr from_images(std::string name, AlgebraPtr src, AlgebraPtr tgt, const std::vector<Vec>& gen_images);
    static MorphismPtr from_spec(const MorphismSpec& spec, AlgebraPtr src, AlgebraPtr tgt);
    static MorphismPtr identity(AlgebraPtr a, std::string name = "id");
    static MorphismPtr unit_map(AlgebraPtr k, AlgebraPtr a, std::string name = "unit");

    const std::string& name() const { return name_; }
    const AlgebraPtr& source() const { return src_; }
    const AlgebraPtr& target() const { return tgt_; }
    int bound() const { return bound_; }

    // target degree of source component l, if it lands on the target line
    std::optional<int> target_ell(int l) const;
    Vec apply(int l, const Vec& x) const;
    const Matrix& matrix(int l) const { return maps_.at(static_cast<std::size_t>(l)); }
    const std::vector<Vec>& generator_images() const { return gen_images_; }

    // f(ab) = f(a) f(b) on all basis pairs within bound; returns a failing pair's degree or nullopt
    std::optional<std::pair<int, int>> check_multiplicative() const;
    bool is_identity() const;

private:
    AlgebraMorphism() = default;
    std::string name_;
    AlgebraPtr src_, tgt_;
    int bound_ = 0;
    std::vector<Vec> gen_images_;
    std::vector<Matrix> maps_;  // maps_[l]: src_l -> tgt_{target_ell(l)} (0 x n when off-line)
};

std::vector<std::size_t> hilbert_series(const GradedAlgebra& a, int dmax);

}  // namespace kdsg
