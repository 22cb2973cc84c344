#pragma once

#include "kdsg/field.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kdsg {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line(line), col(col)
    {
    }
    int line, col;
};

struct GeneratorSpec {
    std::string name;
    int degree = 1;
    bool operator==(const GeneratorSpec&) const = default;
};

// A word in the generators.  `power` records the x^n spelling so printing
// reproduces the source.
struct Monomial {
    std::vector<int> word;
    bool power = false;
    bool operator==(const Monomial&) const = default;
};

struct Term {
    Scalar coeff;
    Monomial mono;
    bool operator==(const Term&) const = default;
};

struct Polynomial {
    std::vector<Term> terms;
    bool operator==(const Polynomial&) const = default;
};

enum class Commutativity { None, Graded };

struct Presentation {
    std::string name = "A";
    std::vector<GeneratorSpec> generators;
    std::vector<Polynomial> relations;
    Commutativity commutativity = Commutativity::None;

    bool operator==(const Presentation&) const = default;

    int generator_index(const std::string& n) const;  // -1 if absent
    int degree(const Monomial& m) const;
    int max_generator_degree() const;
    int max_relation_degree() const;
};

struct MorphismSpec {
    std::string name;
    std::string source, target;
    std::vector<std::pair<std::string, Polynomial>> images;  // polynomials in target generators
    bool operator==(const MorphismSpec&) const = default;
};

struct Document {
    std::optional<std::string> field;  // "Q" or "F<p>"
    std::vector<Presentation> algebras;
    std::vector<MorphismSpec> morphisms;
    bool operator==(const Document&) const = default;

    const Presentation& algebra(const std::string& name) const;
    const MorphismSpec& morphism(const std::string& name) const;
};

Document parse_document(const std::string& text);
// A single algebra body ("generators: ...; relations: ...;") without the
// surrounding "algebra NAME { }".
Presentation parse_presentation(const std::string& text, const std::string& name = "A");

std::string print_polynomial(const Polynomial& p, const std::vector<std::string>& names);
std::string print_presentation(const Presentation& p);
std::string print_document(const Document& d);

}  // namespace kdsg
