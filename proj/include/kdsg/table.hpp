#pragma once

#include "kdsg/bideg.hpp"

#include <climits>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kdsg {

inline constexpr int kUnbounded = INT_MAX / 4;

// Points origin + l*dir with lo <= l <= hi.  A nonzero dir2 sweeps the
// segment into a strip: origin + l*dir + m*dir2 with mlo <= m <= mhi.
struct Segment {
    Bideg origin;
    Bideg dir{0, 1};
    int lo = -kUnbounded;
    int hi = kUnbounded;
    Bideg dir2{0, 0};
    int mlo = 0, mhi = 0;
    bool contains(const Bideg& b) const;
};

// Where a table is trustworthy: certified(b) holds when b avoids `unknown`
// and either lies in `known` or the default is known.
struct Coverage {
    bool default_known = true;
    std::vector<Segment> known;
    std::vector<Segment> unknown;
    std::function<bool(const Bideg&)> test;  // extra condition, when set
    bool certified(const Bideg& b) const;
    bool trivial() const { return default_known && unknown.empty() && !test; }
    Coverage shifted(const Bideg& s) const;
};

class BigradedTable {
public:
    std::string name;
    std::map<Bideg, std::size_t> dims;  // nonzero entries only
    std::vector<Coverage> coverage;     // all must certify; empty means everything is certified
    bool heuristic = false;             // some certification rests on a degree-margin heuristic

    std::size_t at(const Bideg& b) const;
    void add(const Bideg& b, std::size_t d);
    bool certified(const Bideg& b) const;
    bool fully_certified() const;
    std::size_t total() const;
    BigradedTable shifted(const Bideg& s) const;
    // componentwise sum, certified where all summands are
    static BigradedTable direct_sum(const std::vector<BigradedTable>& parts, std::string name = "");

    bool operator==(const BigradedTable& o) const { return dims == o.dims; }
};

struct TableComparison {
    bool agree = true;
    std::size_t compared = 0;    // nonzero entries checked in both tables
    std::size_t unverified = 0;  // nonzero entries outside the common certified region
    std::optional<Bideg> witness;
    std::size_t lhs_dim = 0, rhs_dim = 0;
};

// Compares lhs with rhs shifted by `shift`, on the common certified region.
TableComparison compare_tables(const BigradedTable& lhs, const BigradedTable& rhs, const Bideg& shift = {});

}  // namespace kdsg
