#include "cartan_forge.h"

#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "cartan/corpus.hpp"

struct cf_result {
    std::string report;
    int exit_code = 0;
};

namespace {

cf_result* makeError(const std::string& message) {
    auto* res = new (std::nothrow) cf_result;
    if (!res)
        return nullptr;
    res->report = "error: " + message + "\n";
    res->exit_code = 2;
    return res;
}

cf_result* finish(const cartan::Report& rep, bool json) {
    auto* res = new (std::nothrow) cf_result;
    if (!res)
        return nullptr;
    res->report = json ? rep.renderJson() : rep.renderText();
    res->exit_code = rep.pass() ? 0 : 1;
    return res;
}

}  // namespace

extern "C" {

cf_result* cf_run_text(const char* command, const char* text, int json,
                       int max_order) {
    if (!command || !text)
        return makeError("null argument");
    try {
        cartan::ProblemFile pf = cartan::parseProblemFile(text);
        if (max_order > 0)
            pf.maxOrder = max_order;
        cartan::Report rep = cartan::runCommand(command, pf);
        return finish(rep, json != 0 || pf.jsonOutput);
    } catch (const std::exception& e) {
        return makeError(e.what());
    }
}

cf_result* cf_run_file(const char* command, const char* path, int json,
                       int max_order) {
    if (!command || !path)
        return makeError("null argument");
    std::ifstream in(path);
    if (!in)
        return makeError(std::string("cannot open file: ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return cf_run_text(command, buf.str().c_str(), json, max_order);
}

cf_result* cf_run_corpus(const char* name, int json, int max_order) {
    if (!name)
        return makeError("null argument");
    try {
        cartan::Report rep = cartan::corpusReport(name, max_order);
        return finish(rep, json != 0);
    } catch (const std::exception& e) {
        return makeError(e.what());
    }
}

const char* cf_result_report(const cf_result* res) {
    return res ? res->report.c_str() : "";
}

int cf_result_exit_code(const cf_result* res) {
    return res ? res->exit_code : 2;
}

void cf_result_free(cf_result* res) {
    delete res;
}

const char* cf_version(void) {
    return "0.1.0";
}

}  // extern "C"
