#include "cartan/report.hpp"

#include <json.hpp>
#include <sstream>

namespace cartan {

void Report::info(const std::string& name, const std::string& detail) {
    items.push_back({name, "INFO", detail});
}

void Report::check(const std::string& name, bool ok, const std::string& detail) {
    items.push_back({name, ok ? "PASS" : "FAIL", detail});
}

bool Report::pass() const {
    for (const ReportItem& it : items)
        if (it.verdict == "FAIL")
            return false;
    return true;
}

std::string Report::renderText() const {
    std::ostringstream out;
    out << "command: " << command << "\n";
    for (const auto& [k, v] : inputs)
        out << "  " << k << ": " << v << "\n";
    for (const ReportItem& it : items) {
        out << it.verdict << "  " << it.name;
        if (!it.detail.empty())
            out << ": " << it.detail;
        out << "\n";
    }
    out << (pass() ? "RESULT PASS" : "RESULT FAIL") << "\n";
    return out.str();
}

std::string Report::renderJson() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["inputs"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : inputs)
        j["inputs"][k] = v;
    j["checks"] = nlohmann::ordered_json::array();
    for (const ReportItem& it : items) {
        nlohmann::ordered_json c;
        c["check"] = it.name;
        c["verdict"] = it.verdict;
        if (!it.detail.empty())
            c["detail"] = it.detail;
        j["checks"].push_back(c);
    }
    j["pass"] = pass();
    return j.dump(2) + "\n";
}

}  // namespace cartan
