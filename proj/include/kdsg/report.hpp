#pragma once

#include "kdsg/verdict.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kdsg {

// Lowercase hex SHA-1.
std::string sha1_hex(std::string_view bytes);

struct ReportRow {
    std::string name;
    Status status = Status::Unknown;
    std::optional<Bideg> shift, witness;
    std::string detail;
    bool heuristic = false;
    std::string origin;
    std::string evidence_digest;

    bool operator==(const ReportRow&) const = default;
};

// Nonzero entries [h, w, dim] in increasing bidegree order.
struct ReportTable {
    std::string name;
    std::vector<std::array<long long, 3>> entries;

    bool operator==(const ReportTable&) const = default;
};

struct Report {
    std::string command;
    std::string input_digest;
    int hmax = 0, dmax = 0;
    std::string field;
    std::vector<ReportRow> verdicts;
    std::vector<ReportTable> tables;
    std::vector<std::string> output;  // free text: presentations, certified shifts

    bool operator==(const Report&) const = default;

    void add(const Verdict& v);
    void add(const BigradedTable& t);

    std::size_t count(Status s) const;
    // 1 on any Fail, 3 when UnknownUpToBound rows outnumber Pass rows, else 0
    int exit_code() const;

    std::string json() const;
    std::string text() const;
    static Report from_json(std::string_view s);  // PreconditionFailed on malformed input
};

ReportRow report_row(const Verdict& v);
ReportTable report_table(const BigradedTable& t);

}  // namespace kdsg
