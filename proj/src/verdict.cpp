#include "kdsg/verdict.hpp"

#include "kdsg/errors.hpp"

namespace kdsg {

std::string to_string(Status s)
{
    switch (s) {
    case Status::Pass: return "Pass";
    case Status::Fail: return "Fail";
    case Status::Unknown: return "UnknownUpToBound";
    case Status::Unsupported: return "Unsupported";
    }
    return "UnknownUpToBound";
}

Status status_from_string(const std::string& s)
{
    if (s == "Pass") return Status::Pass;
    if (s == "Fail") return Status::Fail;
    if (s == "UnknownUpToBound") return Status::Unknown;
    if (s == "Unsupported") return Status::Unsupported;
    throw PreconditionFailed("unknown status " + s);
}

Verdict make_verdict(std::string name, Status s, std::string detail)
{
    Verdict v;
    v.name = std::move(name);
    v.status = s;
    v.detail = std::move(detail);
    return v;
}

Status combine(const std::vector<Status>& parts)
{
    bool unknown = false;
    for (Status s : parts) {
        if (s == Status::Fail) return Status::Fail;
        if (s != Status::Pass) unknown = true;
    }
    return unknown ? Status::Unknown : Status::Pass;
}

Verdict table_agreement(const std::string& name, const BigradedTable& lhs, const BigradedTable& rhs, const Bideg& shift)
{
    TableComparison c = compare_tables(lhs, rhs, shift);
    Verdict v;
    v.name = name;
    v.heuristic = lhs.heuristic || rhs.heuristic;
    v.evidence = {lhs, rhs};
    if (!c.agree) {
        v.status = Status::Fail;
        v.witness = c.witness;
        v.detail = "dimensions differ at " + c.witness->str() + ": " + std::to_string(c.lhs_dim) + " vs " + std::to_string(c.rhs_dim);
    } else if (c.compared == 0) {
        v.status = Status::Unknown;
        v.detail = "nothing to compare inside the certified region";
    } else {
        v.status = Status::Pass;
        v.detail = "agree on " + std::to_string(c.compared) + " entries";
        if (c.unverified) v.detail += ", " + std::to_string(c.unverified) + " outside the certified region";
    }
    return v;
}

}  // namespace kdsg
