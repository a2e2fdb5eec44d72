#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tfim::cli {

/// Entry point shared by the executable and the tests. Returns the process exit code:
/// 0 when every requested computation converged, 1 when something did not, 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace tfim::cli
