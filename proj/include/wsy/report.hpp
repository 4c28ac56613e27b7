#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "wsy/pyramid.hpp"

namespace wsy {

// One verified identity: pass iff the residual is exactly zero.
struct Check {
    std::string id;
    std::vector<std::pair<std::string, int>> params;
    enum class St { Pass, Fail, Skip } status = St::Pass;
    std::string residual; // printed residual (fail) or a notice (skip)
    double ms = 0;

    static Check pass(std::string id, std::vector<std::pair<std::string, int>> p)
    {
        return Check{std::move(id), std::move(p), St::Pass, "", 0};
    }
    static Check skip(std::string id, std::string why)
    {
        return Check{std::move(id), {}, St::Skip, std::move(why), 0};
    }
};

struct VerificationReport {
    json pyramid; // canonical triple
    int bound = 0;
    std::vector<Check> checks;

    bool all_ok() const
    {
        return std::none_of(checks.begin(), checks.end(),
                            [](const Check& c) { return c.status == Check::St::Fail; });
    }
    size_t count(Check::St st) const
    {
        return std::count_if(checks.begin(), checks.end(),
                             [&](const Check& c) { return c.status == st; });
    }
    // Deterministic order regardless of evaluation schedule.
    void sort_checks()
    {
        std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) {
            return std::tie(a.id, a.params) < std::tie(b.id, b.params);
        });
    }
    void append(VerificationReport other)
    {
        for (auto& c : other.checks) checks.push_back(std::move(c));
    }

    json to_json(bool with_time = false) const
    {
        json j;
        j["pyramid"] = pyramid;
        j["bound"] = bound;
        j["checks"] = json::array();
        for (const auto& c : checks) {
            json e;
            e["id"] = c.id;
            json p = json::object();
            for (const auto& [k, v] : c.params) p[k] = v;
            e["params"] = p;
            e["status"] = c.status == Check::St::Pass   ? "pass"
                          : c.status == Check::St::Fail ? "fail"
                                                        : "skip";
            e["residual"] = c.residual.empty() ? json(nullptr) : json(c.residual);
            if (with_time) e["ms"] = c.ms;
            j["checks"].push_back(std::move(e));
        }
        return j;
    }
};

} // namespace wsy
