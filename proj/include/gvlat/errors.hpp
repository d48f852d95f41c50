#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gvlat {

// Library errors carry a stable machine-readable name next to the human
// message. The CLI maps names to exit codes and JSON failure reports.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

[[noreturn]] inline void fail(const std::string& name, const std::string& message) {
    throw Error(name, message);
}

}  // namespace gvlat
