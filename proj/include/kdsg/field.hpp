#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace kdsg {

using Scalar = mpq_class;
using Vec = std::vector<Scalar>;

// Ground field: the rationals or a prime field F_p.  Elements of F_p are kept
// as integers in [0, p).
class Field {
public:
    static Field rationals();
    static Field prime(std::int64_t p);  // throws std::invalid_argument unless p is prime
    static Field parse(const std::string& name);  // "Q", "F2", "F3", ...

    bool is_rational() const { return p_ == 0; }
    std::int64_t characteristic() const { return p_; }
    std::string name() const;

    Scalar from_int(std::int64_t v) const;
    Scalar reduce(const Scalar& v) const;
    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inv(const Scalar& a) const;  // throws std::domain_error on zero

    // a += c * b, the inner loop of every elimination
    void axpy(Scalar& a, const Scalar& c, const Scalar& b) const;

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

private:
    explicit Field(std::int64_t p) : p_(p) {}
    std::int64_t p_ = 0;
};

bool is_prime(std::int64_t n);

inline bool is_zero(const Scalar& v) { return sgn(v) == 0; }
bool is_zero(const Vec& v);
Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
std::string to_string(const Scalar& v);

}  // namespace kdsg
