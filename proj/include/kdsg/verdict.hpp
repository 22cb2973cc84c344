#pragma once

#include "kdsg/bideg.hpp"
#include "kdsg/table.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kdsg {

enum class Status { Pass, Fail, Unknown, Unsupported };

std::string to_string(Status s);
Status status_from_string(const std::string& s);

// One row of a report.  `heuristic` marks a verdict that rests on the
// degree-margin completeness rule somewhere in its evidence.
struct Verdict {
    std::string name;
    Status status = Status::Unknown;
    std::string detail;
    std::optional<Bideg> shift;
    std::optional<Bideg> witness;
    bool heuristic = false;
    std::string origin;  // "checked", "derived" or empty
    std::vector<BigradedTable> evidence;

    bool passed() const { return status == Status::Pass; }
};

Verdict make_verdict(std::string name, Status s, std::string detail = {});

// Compares lhs with rhs shifted by `shift` on the common certified region;
// Unknown when nothing nonzero can be compared.
Verdict table_agreement(const std::string& name, const BigradedTable& lhs, const BigradedTable& rhs, const Bideg& shift = {});

// Fail beats Unknown beats Pass; Unsupported counts as Unknown.
Status combine(const std::vector<Status>& parts);

}  // namespace kdsg
