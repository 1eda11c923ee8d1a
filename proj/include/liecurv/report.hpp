#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace liecurv {

/// One verified claim: {check, status, residual, details}.
struct CheckReport {
    std::string check;
    bool pass = false;
    double residual = 0.0;
    nlohmann::json details = nlohmann::json::object();

    std::string status() const { return pass ? "pass" : "fail"; }
    nlohmann::json to_json() const {
        return {{"check", check}, {"status", status()}, {"residual", residual}, {"details", details}};
    }
};

inline bool all_pass(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return true;
}

inline nlohmann::json to_json(const std::vector<CheckReport>& reports) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : reports) out.push_back(r.to_json());
    return out;
}

} // namespace liecurv
