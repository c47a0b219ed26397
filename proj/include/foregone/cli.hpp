#pragma once

#include "foregone/report.hpp"
#include "foregone/scenarios/registry.hpp"
#include "foregone/scenarios/run.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace foregone::cli {

enum Exit : int { kMatch = 0, kMismatch = 1, kUsage = 2 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::uint64_t parse_u64(std::string_view s)
{
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
        throw UsageError("not a seed: '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace detail

/// Comma-separated seeds; `a..b` is an inclusive range. Empty lists are rejected.
inline std::vector<std::uint64_t> parse_seeds(std::string_view text)
{
    std::vector<std::uint64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        const std::string item = detail::trim(text.substr(start, end - start));
        if (!item.empty()) {
            if (const auto dots = item.find(".."); dots != std::string::npos) {
                const auto lo = detail::parse_u64(item.substr(0, dots));
                const auto hi = detail::parse_u64(item.substr(dots + 2));
                if (hi < lo || hi - lo >= 1U << 16) {
                    throw UsageError("bad seed range '" + item + "'");
                }
                for (auto s = lo; s <= hi; ++s) {
                    out.push_back(s);
                }
            } else {
                out.push_back(detail::parse_u64(item));
            }
        }
        start = end + 1;
    }
    if (out.empty()) {
        throw UsageError("the seed list is empty");
    }
    return out;
}

/// `0x…` is a byte string, anything else a decimal integer.
inline Value parse_override_value(const std::string& text)
{
    if (text.rfind("0x", 0) == 0) {
        const std::string hex = text.substr(2);
        if (hex.size() % 2 != 0) {
            throw UsageError("odd-length hex value '" + text + "'");
        }
        std::string out;
        for (std::size_t i = 0; i < hex.size(); i += 2) {
            unsigned v = 0;
            const auto [p, ec] = std::from_chars(hex.data() + i, hex.data() + i + 2, v, 16);
            if (ec != std::errc{} || p != hex.data() + i + 2) {
                throw UsageError("bad hex value '" + text + "'");
            }
            out.push_back(static_cast<char>(v));
        }
        return Value::bytes(std::move(out));
    }
    std::int64_t v = 0;
    const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size() || text.empty()) {
        throw UsageError("value '" + text + "' is neither 0x-hex nor an integer");
    }
    return Value::integer(v);
}

/// One `scenario.param = value` per line; '#' starts a comment. A
/// scenario name stands for its parameter group.
inline scenarios::Overrides parse_overrides(std::istream& in)
{
    scenarios::Overrides out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string body = detail::trim(line);
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        const std::string key = eq == std::string::npos ? std::string{} : detail::trim(body.substr(0, eq));
        const auto dot = key.rfind('.');
        if (eq == std::string::npos || dot == std::string::npos || dot == 0 || dot + 1 == key.size()) {
            throw UsageError("line " + std::to_string(n) + ": expected 'scenario.param = value'");
        }
        std::string group = key.substr(0, dot);
        if (const auto* e = scenarios::find_entry(group)) {
            group = e->group;
        }
        out[group][key.substr(dot + 1)] = parse_override_value(detail::trim(body.substr(eq + 1)));
    }
    scenarios::validate_overrides(out);
    return out;
}

inline scenarios::Overrides load_overrides(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read overrides file " + path);
    }
    return parse_overrides(in);
}

struct RunConfig {
    std::string scenario;
    std::string check;
    std::string evidence;
    std::vector<std::uint64_t> seeds = default_seeds();
    std::size_t budget = kDefaultBudget;
    std::string overrides_path;
    std::string output_path;
    bool json = false;
    bool parallel = false;
};

namespace detail {

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out)
{
    if (cfg.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot write " + cfg.output_path);
    }
    f << text;
}

inline std::string render(const RunConfig& cfg, const std::vector<Json>& reports, bool single)
{
    if (cfg.json) {
        return (single ? reports.front() : Json(reports)).dump(2) + "\n";
    }
    return markdown(reports);
}

inline CheckOptions options(const RunConfig& cfg)
{
    CheckOptions o;
    o.seeds = cfg.seeds;
    o.budget = cfg.budget;
    o.parallel = cfg.parallel;
    return o;
}

}  // namespace detail

/// Prints every scenario with its citation and expected verdicts.
inline int cmd_list(const std::vector<scenarios::RegistryEntry>& entries, bool json, std::ostream& out,
                    std::ostream& err)
{
    if (entries.empty()) {
        err << "foregone: the scenario registry is empty\n";
        return kMismatch;
    }
    Json all = Json::array();
    std::ostringstream text;
    for (const auto& e : entries) {
        const scenarios::Scenario s = e.build(e.defaults());
        Json item{{"name", e.name}, {"group", e.group}, {"citation", e.citation}, {"expected", Json::array()}};
        text << e.name << " (" << e.citation << ")\n";
        for (const auto& x : s.expectations) {
            item["expected"].push_back({{"check", scenarios::to_string(x.check)},
                                        {"evidence", x.evidence},
                                        {"verdict", to_string(x.verdict)},
                                        {"citation", x.citation}});
            text << "  " << scenarios::to_string(x.check) << " [" << x.evidence << "] " << to_string(x.verdict)
                 << "\n";
        }
        all.push_back(std::move(item));
    }
    out << (json ? all.dump(2) + "\n" : text.str());
    return kMatch;
}

/// Runs every expectation of the selected scenarios.
inline int run_all_expectations(const RunConfig& cfg, const std::vector<const scenarios::RegistryEntry*>& entries,
                                const scenarios::Overrides& overrides, std::ostream& out, std::ostream& err,
                                bool with_sweeps)
{
    const ReportContext ctx{cfg.seeds, cfg.budget};
    const CheckOptions opts = detail::options(cfg);
    std::vector<Json> reports;
    std::optional<std::string> first_failure;
    for (const auto* e : entries) {
        scenarios::Scenario s;
        try {
            s = scenarios::load_scenario(*e, overrides, cfg.budget);
        } catch (const scenarios::MalformedScenario& ex) {
            first_failure = first_failure.value_or(e->name + ": " + ex.what());
            continue;
        }
        for (const auto& x : s.expectations) {
            const auto r = scenarios::evaluate(s, x, opts);
            reports.push_back(report_json(r, ctx));
            if (!r.matched && !first_failure) {
                first_failure = s.name + " " + scenarios::to_string(x.check) + " [" + x.evidence + "]: expected " +
                                to_string(x.verdict) + ", got " + to_string(r.report.verdict);
            }
        }
    }
    std::string text;
    if (with_sweeps) {
        Json sweeps = Json::array();
        for (const auto& sw : scenarios::crypto_sweeps()) {
            sweeps.push_back({{"name", sw.name}, {"passed", sw.passed}, {"detail", sw.detail}});
            if (!sw.passed && !first_failure) {
                first_failure = "crypto sweep " + sw.name + ": " + sw.detail;
            }
        }
        if (cfg.json) {
            text = Json{{"reports", reports}, {"sweeps", sweeps}, {"passed", !first_failure}}.dump(2) + "\n";
        } else {
            text = markdown(reports) + "\n| sweep | passed |\n|---|---|\n";
            for (const auto& sw : sweeps) {
                text += "| " + sw["name"].get<std::string>() + " | " + (sw["passed"].get<bool>() ? "yes" : "no") +
                        " |\n";
            }
        }
    } else {
        text = detail::render(cfg, reports, false);
    }
    detail::emit(cfg, text, out);
    if (first_failure) {
        err << "foregone: mismatch: " << *first_failure << "\n";
        return kMismatch;
    }
    return kMatch;
}

inline int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto entries = scenarios::select_entries(cfg.scenario);
    if (entries.empty()) {
        throw UsageError("unknown scenario " + cfg.scenario);
    }
    const auto kind = scenarios::parse_check(cfg.check);
    if (!kind && cfg.check != "audit-all") {
        throw UsageError("unknown check " + cfg.check);
    }
    const scenarios::Overrides overrides =
        cfg.overrides_path.empty() ? scenarios::Overrides{} : load_overrides(cfg.overrides_path);
    if (!kind) {
        return run_all_expectations(cfg, entries, overrides, out, err, false);
    }
    if (entries.size() != 1) {
        throw UsageError(cfg.scenario + " is a group; name one of its scenarios or use --check audit-all");
    }
    scenarios::Scenario s;
    try {
        s = scenarios::load_scenario(*entries.front(), overrides, cfg.budget);
    } catch (const scenarios::MalformedScenario& ex) {
        err << "foregone: " << ex.what() << "\n";
        return kMismatch;
    }
    const scenarios::Expectation* x = scenarios::find_expectation(s, *kind, cfg.evidence);
    if (x == nullptr) {
        throw UsageError("scenario " + s.name + " declares no " + cfg.check + " expectation" +
                         (cfg.evidence.empty() ? "" : " for evidence " + cfg.evidence));
    }
    const auto r = scenarios::evaluate(s, *x, detail::options(cfg));
    detail::emit(cfg, detail::render(cfg, {report_json(r, {cfg.seeds, cfg.budget})}, true), out);
    if (!r.matched) {
        err << "foregone: " << s.name << " " << cfg.check << " [" << x->evidence << "]: expected "
            << to_string(x->verdict) << ", got " << to_string(r.report.verdict) << "\n";
        return kMismatch;
    }
    return kMatch;
}

inline int cmd_audit(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const scenarios::Overrides overrides =
        cfg.overrides_path.empty() ? scenarios::Overrides{} : load_overrides(cfg.overrides_path);
    std::vector<const scenarios::RegistryEntry*> all;
    for (const auto& e : scenarios::registry()) {
        all.push_back(&e);
    }
    return run_all_expectations(cfg, all, overrides, out, err, true);
}

/// Full command line. Returns the process exit status.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr,
                const char* env_seeds = std::getenv("FOREGONE_SEED"))
{
    CLI::App app{"Bounded checker for compelled-computation scenarios", "foregone"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string seeds_text;
    bool list_json = false;

    auto* list = app.add_subcommand("list", "List scenarios with citations and expected verdicts");
    list->add_flag("--json", list_json, "Emit JSON");

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--seeds", seeds_text, "Seeds, e.g. 0..15 or 1,2,7 (default 0..15 or $FOREGONE_SEED)");
        sub->add_option("--budget", cfg.budget, "Step budget per execution")->check(CLI::PositiveNumber);
        sub->add_option("--overrides", cfg.overrides_path, "Parameter overrides file");
        sub->add_option("--out", cfg.output_path, "Write the report here instead of stdout");
        sub->add_flag("--json", cfg.json, "Emit JSON instead of markdown");
        sub->add_flag("--parallel", cfg.parallel, "Evaluate worlds concurrently");
    };
    auto* run = app.add_subcommand("run", "Run one check of a scenario");
    run->add_option("scenario", cfg.scenario, "Scenario or group name")->required();
    run->add_option("--check", cfg.check, "Check name, or audit-all")->required();
    run->add_option("--evidence", cfg.evidence, "Evidence variant (weak, strong, star, or an edge label)");
    common(run);
    auto* audit = app.add_subcommand("audit", "Run every expectation, evidence audit and crypto sweep");
    common(audit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kMatch : kUsage;
    }
    try {
        if (!seeds_text.empty() || run->count("--seeds") + audit->count("--seeds") > 0) {
            cfg.seeds = parse_seeds(seeds_text);
        } else if (env_seeds != nullptr) {
            cfg.seeds = parse_seeds(env_seeds);
        }
        if (list->parsed()) {
            return cmd_list(scenarios::registry(), list_json, out, err);
        }
        if (run->parsed()) {
            return cmd_run(cfg, out, err);
        }
        return cmd_audit(cfg, out, err);
    } catch (const UsageError& e) {
        err << "foregone: " << e.what() << "\n";
        return kUsage;
    } catch (const scenarios::UnknownParameter& e) {
        err << "foregone: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace foregone::cli
