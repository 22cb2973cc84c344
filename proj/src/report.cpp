#include "kdsg/report.hpp"

#include "kdsg/errors.hpp"

#include <boost/uuid/detail/sha1.hpp>
#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace kdsg {

using Json = nlohmann::ordered_json;

std::string sha1_hex(std::string_view bytes)
{
    boost::uuids::detail::sha1 h;
    h.process_bytes(bytes.data(), bytes.size());
    boost::uuids::detail::sha1::digest_type d;
    h.get_digest(d);
    char buf[41];
    for (int i = 0; i < 5; ++i) std::snprintf(buf + 8 * i, 9, "%08x", d[i]);
    return std::string(buf, 40);
}

ReportTable report_table(const BigradedTable& t)
{
    ReportTable r;
    r.name = t.name;
    for (const auto& [b, d] : t.dims)
        if (d) r.entries.push_back({b.h, b.w, static_cast<long long>(d)});
    return r;
}

namespace {

std::string canonical(const ReportTable& t)
{
    std::string s = t.name + ":";
    for (const auto& e : t.entries) s += std::to_string(e[0]) + "," + std::to_string(e[1]) + "," + std::to_string(e[2]) + ";";
    return s;
}

Json pair(const Bideg& b) { return Json::array({b.h, b.w}); }

Bideg unpair(const Json& j)
{
    if (!j.is_array() || j.size() != 2) throw PreconditionFailed("report: expected a bidegree pair");
    return {j.at(0).get<int>(), j.at(1).get<int>()};
}

}  // namespace

ReportRow report_row(const Verdict& v)
{
    ReportRow r;
    r.name = v.name;
    r.status = v.status;
    r.shift = v.shift;
    r.witness = v.witness;
    r.detail = v.detail;
    r.heuristic = v.heuristic;
    r.origin = v.origin;
    std::string ev = v.name + "|" + to_string(v.status) + "|" + (v.shift ? v.shift->str() : "") + "|" + (v.witness ? v.witness->str() : "");
    for (const auto& t : v.evidence) ev += "|" + canonical(report_table(t));
    r.evidence_digest = sha1_hex(ev);
    return r;
}

void Report::add(const Verdict& v) { verdicts.push_back(report_row(v)); }
void Report::add(const BigradedTable& t) { tables.push_back(report_table(t)); }

std::size_t Report::count(Status s) const
{
    std::size_t n = 0;
    for (const auto& r : verdicts) n += r.status == s;
    return n;
}

int Report::exit_code() const
{
    if (count(Status::Fail)) return 1;
    if (count(Status::Unknown) > count(Status::Pass)) return 3;
    return 0;
}

std::string Report::json() const
{
    Json j;
    j["command"] = command;
    j["input_digest"] = input_digest;
    j["bounds"] = {{"hmax", hmax}, {"dmax", dmax}};
    j["field"] = field;
    j["verdicts"] = Json::array();
    for (const auto& r : verdicts) {
        Json v;
        v["name"] = r.name;
        v["status"] = to_string(r.status);
        if (r.shift) v["shift"] = pair(*r.shift);
        if (r.witness) v["witness"] = pair(*r.witness);
        v["detail"] = r.detail;
        v["heuristic"] = r.heuristic;
        v["origin"] = r.origin;
        v["evidence_digest"] = r.evidence_digest;
        j["verdicts"].push_back(std::move(v));
    }
    if (!tables.empty()) {
        j["tables"] = Json::array();
        for (const auto& t : tables) j["tables"].push_back({{"name", t.name}, {"entries", t.entries}});
    }
    if (!output.empty()) j["output"] = output;
    return j.dump(2) + "\n";
}

Report Report::from_json(std::string_view s)
{
    try {
        Json j = Json::parse(s);
        Report r;
        r.command = j.at("command").get<std::string>();
        r.input_digest = j.at("input_digest").get<std::string>();
        r.hmax = j.at("bounds").at("hmax").get<int>();
        r.dmax = j.at("bounds").at("dmax").get<int>();
        r.field = j.at("field").get<std::string>();
        for (const auto& v : j.at("verdicts")) {
            ReportRow row;
            row.name = v.at("name").get<std::string>();
            row.status = status_from_string(v.at("status").get<std::string>());
            if (v.contains("shift")) row.shift = unpair(v["shift"]);
            if (v.contains("witness")) row.witness = unpair(v["witness"]);
            row.detail = v.at("detail").get<std::string>();
            row.heuristic = v.at("heuristic").get<bool>();
            row.origin = v.at("origin").get<std::string>();
            row.evidence_digest = v.at("evidence_digest").get<std::string>();
            r.verdicts.push_back(std::move(row));
        }
        if (j.contains("tables"))
            for (const auto& t : j["tables"])
                r.tables.push_back({t.at("name").get<std::string>(), t.at("entries").get<std::vector<std::array<long long, 3>>>()});
        if (j.contains("output")) r.output = j["output"].get<std::vector<std::string>>();
        return r;
    } catch (const Json::exception& e) {
        throw PreconditionFailed(std::string("report: ") + e.what());
    }
}

std::string Report::text() const
{
    std::ostringstream o;
    o << command << "  field " << field << "  hmax " << hmax << "  dmax " << dmax << "\n";
    o << "input " << input_digest << "\n";
    for (const auto& line : output) o << line << "\n";
    for (const auto& t : tables) {
        o << "\n" << t.name << "  (h, w): dim\n";
        if (t.entries.empty()) o << "  zero\n";
        for (const auto& e : t.entries) o << "  (" << e[0] << "," << e[1] << "): " << e[2] << "\n";
    }
    if (!verdicts.empty()) o << "\n";
    for (const auto& r : verdicts) {
        std::string st = to_string(r.status);
        o << st << std::string(st.size() < 17 ? 17 - st.size() : 1, ' ') << r.name;
        if (r.shift) o << "  shift " << r.shift->str();
        if (r.witness) o << "  witness " << r.witness->str();
        if (r.heuristic) o << "  [heuristic]";
        if (!r.detail.empty()) o << "\n" << std::string(17, ' ') << r.detail;
        o << "\n";
    }
    return o.str();
}

}  // namespace kdsg
