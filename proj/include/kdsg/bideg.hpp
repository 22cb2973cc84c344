#pragma once

#include <compare>
#include <optional>
#include <string>

namespace kdsg {

// Derived bidegree (h, w): h is the homological coordinate (an Ext class of
// cohomological degree s sits at h = -s), w the internal one.
struct Bideg {
    int h = 0;
    int w = 0;

    friend auto operator<=>(const Bideg&, const Bideg&) = default;
    Bideg operator+(const Bideg& o) const { return {h + o.h, w + o.w}; }
    Bideg operator-(const Bideg& o) const { return {h - o.h, w - o.w}; }
    Bideg operator-() const { return {-h, -w}; }
    Bideg operator*(int k) const { return {h * k, w * k}; }
    std::string str() const { return "(" + std::to_string(h) + "," + std::to_string(w) + ")"; }
};

// Every algebra lives on a ray through the origin: its degree-l component sits
// at l*dir.  dir is primitive with dir.h in {0,-1}.
struct Line {
    Bideg dir{0, 1};

    bool operator==(const Line&) const = default;

    // the grading functional, defined on all of Z^2
    int ell(const Bideg& b) const { return dir.h != 0 ? b.h / dir.h : b.w / dir.w; }
    // the representative of b modulo dir with zero grading
    Bideg offset(const Bideg& b) const { return b - dir * ell(b); }
    Bideg at(int l) const { return dir * l; }
    std::optional<int> ell_on_line(const Bideg& b) const
    {
        int l = ell(b);
        if (dir * l == b) return l;
        return std::nullopt;
    }
};

}  // namespace kdsg
