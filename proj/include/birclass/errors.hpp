#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace birclass {

// Domain failures carry a stable code; the CLI prints it verbatim and exits 2.
class domain_error : public std::runtime_error {
public:
    domain_error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& detail) {
    throw domain_error(code, detail);
}

} // namespace birclass
