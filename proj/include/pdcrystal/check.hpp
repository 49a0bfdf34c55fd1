#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace pdcrystal {

enum class CheckStatus { Pass, Fail, Inconclusive };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string witness;  // first counterexample / refusal reason; empty on pass
    double ms = 0.0;
};

inline const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        default: return "inconclusive";
    }
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

}  // namespace pdcrystal
