#include "kdsg/field.hpp"

#include <stdexcept>

namespace kdsg {

bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

Field Field::rationals() { return Field(0); }

Field Field::prime(std::int64_t p)
{
    if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    if (p > (std::int64_t(1) << 31)) throw std::invalid_argument("prime too large: " + std::to_string(p));
    return Field(p);
}

Field Field::parse(const std::string& name)
{
    if (name == "Q") return rationals();
    if (name.size() >= 2 && name[0] == 'F') {
        std::size_t used = 0;
        std::int64_t p = 0;
        try {
            p = std::stoll(name.substr(1), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == name.size() - 1) return prime(p);
    }
    throw std::invalid_argument("unknown field '" + name + "' (expected Q or F<p>)");
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

static std::int64_t mod_p(const mpz_class& z, std::int64_t p)
{
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(p));
    return r.get_si();
}

Scalar Field::from_int(std::int64_t v) const
{
    if (p_ == 0) return Scalar(static_cast<long>(v));
    std::int64_t r = v % p_;
    if (r < 0) r += p_;
    return Scalar(static_cast<long>(r));
}

Scalar Field::reduce(const Scalar& v) const
{
    if (p_ == 0) return v;
    std::int64_t num = mod_p(v.get_num(), p_);
    std::int64_t den = mod_p(v.get_den(), p_);
    if (den == 0) throw std::domain_error("denominator divisible by the characteristic");
    return mul(Scalar(static_cast<long>(num)), inv(Scalar(static_cast<long>(den))));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const
{
    if (p_ == 0) return a + b;
    std::int64_t r = a.get_num().get_si() + b.get_num().get_si();
    if (r >= p_) r -= p_;
    return Scalar(static_cast<long>(r));
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const
{
    if (p_ == 0) return a - b;
    std::int64_t r = a.get_num().get_si() - b.get_num().get_si();
    if (r < 0) r += p_;
    return Scalar(static_cast<long>(r));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const
{
    if (p_ == 0) return a * b;
    std::int64_t r = (a.get_num().get_si() * b.get_num().get_si()) % p_;
    return Scalar(static_cast<long>(r));
}

Scalar Field::neg(const Scalar& a) const
{
    if (p_ == 0) return -a;
    std::int64_t v = a.get_num().get_si();
    return Scalar(static_cast<long>(v == 0 ? 0 : p_ - v));
}

Scalar Field::inv(const Scalar& a) const
{
    if (is_zero(a)) throw std::domain_error("division by zero");
    if (p_ == 0) return 1 / a;
    // extended Euclid
    std::int64_t t = 0, nt = 1, r = p_, nr = a.get_num().get_si();
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += p_;
    return Scalar(static_cast<long>(t));
}

void Field::axpy(Scalar& a, const Scalar& c, const Scalar& b) const
{
    if (p_ == 0) {
        a += c * b;
        return;
    }
    std::int64_t r = (a.get_num().get_si() + c.get_num().get_si() * b.get_num().get_si()) % p_;
    a = static_cast<long>(r);
}

bool is_zero(const Vec& v)
{
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

Vec zero_vec(std::size_t n) { return Vec(n, Scalar(0)); }

Vec unit_vec(std::size_t n, std::size_t i)
{
    Vec v(n, Scalar(0));
    v.at(i) = 1;
    return v;
}

std::string to_string(const Scalar& v) { return v.get_str(); }

}  // namespace kdsg
