#pragma once

#include "flux/serialize.hpp"

namespace flux {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    Json data = Json::object();
};

inline CheckResult pass_check(std::string name, std::string detail = "", Json data = Json::object()) {
    return {std::move(name), true, std::move(detail), std::move(data)};
}

inline CheckResult fail_check(std::string name, std::string detail, Json data = Json::object()) {
    return {std::move(name), false, std::move(detail), std::move(data)};
}

Json report_to_json(const std::vector<CheckResult>& results);
std::string render_text(const std::vector<CheckResult>& results);

}  // namespace flux
