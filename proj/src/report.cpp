#include "iforms/report.hpp"

namespace iforms {

void Report::merge(const Report& other, const std::string& prefix) {
    for (Assertion a : other.assertions) {
        a.name = prefix + a.name;
        assertions.push_back(std::move(a));
    }
    for (const auto& [key, value] : other.tables.items()) tables[prefix + key] = value;
}

Json Report::assertions_json() const {
    Json arr = Json::array();
    for (const auto& a : assertions) {
        arr.push_back(Json{{"name", a.name},
                           {"slot", a.slot},
                           {"expected", a.expected},
                           {"actual", a.actual},
                           {"pass", a.pass}});
    }
    return arr;
}

} // namespace iforms
