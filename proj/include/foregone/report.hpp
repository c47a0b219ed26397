#pragma once

#include "foregone/checkers.hpp"
#include "foregone/scenarios/run.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace foregone {

using Json = nlohmann::ordered_json;

struct ReportContext {
    std::vector<std::uint64_t> seeds;
    std::size_t budget = kDefaultBudget;
};

inline Json cell_json(const std::optional<Cell>& c)
{
    if (!c) {
        return nullptr;
    }
    return Json{
        {"world", c->world},
        {"action", c->action},
        {"seed", c->seed},
        {"expected_value", c->expected.to_string()},
        {"got_value", to_string(c->got)},
    };
}

/// The fixed report schema. `expected` is null when no expectation applies.
inline Json report_json(const std::string& scenario, const std::string& check, const std::string& evidence,
                        const CheckReport& r, const std::optional<Verdict>& expected, const std::string& citation,
                        const ReportContext& ctx)
{
    Json j;
    j["scenario"] = scenario;
    j["check"] = check;
    j["evidence"] = evidence;
    j["verdict"] = to_string(r.verdict);
    j["expected"] = expected ? Json(to_string(*expected)) : Json(nullptr);
    j["counterexample"] = cell_json(r.counterexample);
    j["cells"] = r.cells_checked;
    j["seeds"] = ctx.seeds;
    j["budget"] = ctx.budget;
    j["citation"] = citation;
    return j;
}

inline Json report_json(const scenarios::ExpectationResult& x, const ReportContext& ctx)
{
    return report_json(x.scenario, scenarios::to_string(x.expectation.check), x.expectation.evidence, x.report,
                       x.expectation.verdict, x.expectation.citation, ctx);
}

inline std::string markdown_cell(const Json& c)
{
    if (c.is_null()) {
        return "-";
    }
    return "(" + c["world"].get<std::string>() + ", " + c["action"].get<std::string>() + ", " +
           std::to_string(c["seed"].get<std::uint64_t>()) + "): expected " + c["expected_value"].get<std::string>() +
           ", got " + c["got_value"].get<std::string>();
}

/// One table row per report.
inline std::string markdown(const std::vector<Json>& reports)
{
    std::ostringstream out;
    out << "| scenario | check | evidence | verdict | expected | cells | counterexample | citation |\n";
    out << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& r : reports) {
        out << "| " << r["scenario"].get<std::string>() << " | " << r["check"].get<std::string>() << " | "
            << r["evidence"].get<std::string>() << " | " << r["verdict"].get<std::string>() << " | "
            << (r["expected"].is_null() ? std::string("-") : r["expected"].get<std::string>()) << " | "
            << r["cells"].get<std::size_t>() << " | " << markdown_cell(r["counterexample"]) << " | "
            << r["citation"].get<std::string>() << " |\n";
    }
    if (!reports.empty()) {
        const auto& seeds = reports.front()["seeds"];
        out << "\nseeds: " << seeds.dump() << ", budget: " << reports.front()["budget"].get<std::size_t>() << "\n";
    }
    return out.str();
}

}  // namespace foregone
