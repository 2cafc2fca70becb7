#pragma once

#include <string>
#include <vector>

namespace cartan {

// Machine-checkable command outcome. Rendering is deterministic: identical
// inputs and options produce identical bytes.
struct ReportItem {
    std::string name;
    std::string verdict;  // "PASS", "FAIL" or "INFO"
    std::string detail;   // canonical text of the value / residue
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // echoed canonically
    std::vector<ReportItem> items;

    void info(const std::string& name, const std::string& detail);
    void check(const std::string& name, bool ok, const std::string& detail = "");

    bool pass() const;
    std::string renderText() const;
    std::string renderJson() const;
};

}  // namespace cartan
