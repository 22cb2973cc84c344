#pragma once

#include "kdsg/algebra.hpp"
#include "kdsg/duality.hpp"

#include <string>

namespace fixtures {

inline kdsg::AlgebraPtr alg(const std::string& body, int dmax = 16, const kdsg::Field& f = kdsg::Field::rationals(),
                            const std::string& name = "A")
{
    return kdsg::GradedAlgebra::realize(kdsg::parse_presentation(body, name), f, dmax);
}

inline const char* kPoly1 = "generators: x:1;";
inline const char* kPoly2 = "generators: x0:1, x1:1; relations: x0*x1 - x1*x0;";
inline const char* kExt1 = "generators: t:1; relations: t^2;";
inline const char* kExt2 = "generators: a:1, b:1; relations: a*b + b*a; commutativity: graded;";
inline const char* kCubic = "generators: t:1; relations: t^3;";
inline const char* kQuadric = "generators: a:1, b:1; relations: a^2 + b^2;";
inline const char* kSquareRoot = "generators: X:2;";

// k[X] -> k[x], X -> x^2
inline kdsg::MorphismPtr worked_q(int dmax = 16)
{
    auto S = alg(kSquareRoot, dmax, kdsg::Field::rationals(), "S");
    auto R = alg(kPoly1, dmax, kdsg::Field::rationals(), "R");
    return kdsg::AlgebraMorphism::from_images("q", S, R, {kdsg::Vec{1}});
}

// the identity on k[x0, x1]
inline kdsg::MorphismPtr koszul_q(int dmax = 16)
{
    auto R = alg(kPoly2, dmax, kdsg::Field::rationals(), "R");
    return kdsg::AlgebraMorphism::identity(R, "q");
}

// k -> R for a finite-dimensional R
inline kdsg::MorphismPtr unit_q(const char* body, int dmax = 16)
{
    auto R = alg(body, dmax, kdsg::Field::rationals(), "R");
    auto k = kdsg::GradedAlgebra::ground_field(R->field());
    return kdsg::AlgebraMorphism::unit_map(k, R, "q");
}

}  // namespace fixtures
