#include "kdsg/table.hpp"

#include <set>

namespace kdsg {

bool Segment::contains(const Bideg& b) const
{
    Bideg d = b - origin;
    if (dir2 != Bideg{}) {
        long det = static_cast<long>(dir.h) * dir2.w - static_cast<long>(dir.w) * dir2.h;
        long ln = static_cast<long>(d.h) * dir2.w - static_cast<long>(d.w) * dir2.h;
        long mn = static_cast<long>(dir.h) * d.w - static_cast<long>(dir.w) * d.h;
        if (det == 0 || ln % det != 0 || mn % det != 0) return false;
        long l = ln / det, m = mn / det;
        return l >= lo && l <= hi && m >= mlo && m <= mhi;
    }
    // d must be a multiple of dir
    int l;
    if (dir.h != 0) {
        if (d.h % dir.h != 0) return false;
        l = d.h / dir.h;
    } else {
        if (d.h != 0 || dir.w == 0 || d.w % dir.w != 0) return false;
        l = d.w / dir.w;
    }
    if (dir * l != d) return false;
    return l >= lo && l <= hi;
}

Coverage Coverage::shifted(const Bideg& s) const
{
    Coverage c = *this;
    for (auto& seg : c.known) seg.origin = seg.origin + s;
    for (auto& seg : c.unknown) seg.origin = seg.origin + s;
    if (test) c.test = [t = test, s](const Bideg& b) { return t(b - s); };
    return c;
}

bool Coverage::certified(const Bideg& b) const
{
    if (test && !test(b)) return false;
    for (const auto& s : unknown)
        if (s.contains(b)) return false;
    if (default_known) return true;
    for (const auto& s : known)
        if (s.contains(b)) return true;
    return false;
}

std::size_t BigradedTable::at(const Bideg& b) const
{
    auto it = dims.find(b);
    return it == dims.end() ? 0 : it->second;
}

void BigradedTable::add(const Bideg& b, std::size_t d)
{
    if (d == 0) return;
    dims[b] += d;
}

bool BigradedTable::certified(const Bideg& b) const
{
    for (const auto& c : coverage)
        if (!c.certified(b)) return false;
    return true;
}

bool BigradedTable::fully_certified() const
{
    for (const auto& c : coverage)
        if (!c.trivial()) return false;
    return true;
}

std::size_t BigradedTable::total() const
{
    std::size_t t = 0;
    for (const auto& [b, d] : dims) t += d;
    return t;
}

BigradedTable BigradedTable::shifted(const Bideg& s) const
{
    BigradedTable t;
    t.name = name;
    t.heuristic = heuristic;
    for (const auto& [b, d] : dims) t.dims[b + s] = d;
    for (const auto& c : coverage) t.coverage.push_back(c.shifted(s));
    return t;
}

BigradedTable BigradedTable::direct_sum(const std::vector<BigradedTable>& parts, std::string name)
{
    BigradedTable t;
    t.name = std::move(name);
    for (const auto& p : parts) {
        for (const auto& [b, d] : p.dims) t.add(b, d);
        t.coverage.insert(t.coverage.end(), p.coverage.begin(), p.coverage.end());
        t.heuristic = t.heuristic || p.heuristic;
    }
    return t;
}

TableComparison compare_tables(const BigradedTable& lhs, const BigradedTable& rhs, const Bideg& shift)
{
    TableComparison r;
    BigradedTable rs = rhs.shifted(shift);
    std::set<Bideg> keys;
    for (const auto& [b, d] : lhs.dims) keys.insert(b);
    for (const auto& [b, d] : rs.dims) keys.insert(b);
    for (const auto& b : keys) {
        if (!lhs.certified(b) || !rs.certified(b)) {
            ++r.unverified;
            continue;
        }
        ++r.compared;
        std::size_t a = lhs.at(b), c = rs.at(b);
        if (a != c && r.agree) {
            r.agree = false;
            r.witness = b;
            r.lhs_dim = a;
            r.rhs_dim = c;
        }
    }
    return r;
}

}  // namespace kdsg
