#ifndef MCLAIMS_ERROR_HPP
#define MCLAIMS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace mclaims {

// Process exit codes double as error categories.
enum class ErrorCode : int {
    config = 2,
    condition = 3,    // parameter box violated
    hypothesis = 4,   // theorem-specific hypothesis violated
    numerical = 5,    // non-convergence, branch or degeneracy failure
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace mclaims

#endif
