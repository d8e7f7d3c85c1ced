#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace iforms {

using Json = nlohmann::ordered_json;

/// One verified statement: an expected vs. actual value at a named slot.
struct Assertion {
    std::string name;
    std::string slot;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct Report {
    std::vector<Assertion> assertions;
    Json tables = Json::object();

    bool all_pass() const {
        for (const auto& a : assertions)
            if (!a.pass) return false;
        return true;
    }

    void check(const std::string& name, const std::string& slot, long expected, long actual) {
        assertions.push_back(
            {name, slot, std::to_string(expected), std::to_string(actual), expected == actual});
    }
    void check_true(const std::string& name, const std::string& slot, bool ok) {
        assertions.push_back({name, slot, "true", ok ? "true" : "false", ok});
    }

    void merge(const Report& other, const std::string& prefix);

    Json assertions_json() const;
};

} // namespace iforms
