#pragma once

// Check results for the verification suites, serializable to JSON.

#include <string>
#include <vector>

#include <json.hpp>

#include "ncpoly.hpp"

namespace qflag {

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
    std::string check_id;
    std::string paper_ref;  // the law being exercised, in plain ascii
    CheckStatus status = CheckStatus::Pass;
    std::string witness;  // serialized offending element on failure

    static CheckResult pass(std::string id, std::string law) {
        return {std::move(id), std::move(law), CheckStatus::Pass, ""};
    }
    static CheckResult fail(std::string id, std::string law, std::string wit) {
        return {std::move(id), std::move(law), CheckStatus::Fail, std::move(wit)};
    }
    static CheckResult skipped(std::string id, std::string law, std::string why) {
        return {std::move(id), std::move(law), CheckStatus::Skipped, std::move(why)};
    }
    static CheckResult of(std::string id, std::string law, bool ok, std::string wit = "") {
        return ok ? pass(std::move(id), std::move(law))
                  : fail(std::move(id), std::move(law), std::move(wit));
    }
};

inline const char* to_cstr(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
    }
    return "?";
}

inline nlohmann::json to_json(const std::vector<CheckResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CheckResult& r : results) {
        nlohmann::json item;
        item["check_id"] = r.check_id;
        item["paper_ref"] = r.paper_ref;
        item["status"] = to_cstr(r.status);
        if (!r.witness.empty()) item["witness"] = r.witness;
        arr.push_back(item);
    }
    return arr;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results)
        if (r.status == CheckStatus::Fail) return false;
    return true;
}

// canonical JSON serialization of an algebra element:
// [{word: [[i,j],...], coeff_num: "...", coeff_den: "..."}]
inline nlohmann::json to_json(const NCPoly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& kv : p.terms) {
        nlohmann::json item;
        nlohmann::json w = nlohmann::json::array();
        for (char c : kv.first) w.push_back({letter_row(c), letter_col(c)});
        item["word"] = w;
        item["coeff_num"] = to_sparse_s_string(kv.second.num());
        item["coeff_den"] = to_sparse_s_string(kv.second.den());
        arr.push_back(item);
    }
    return arr;
}

}  // namespace qflag
