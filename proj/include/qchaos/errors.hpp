#ifndef QCHAOS_ERRORS_HPP
#define QCHAOS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qchaos {

// Bad or inconsistent run configuration (CLI exit code 1).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A solver failed: non-convergence, overflow, escape from bounding box (exit code 2).
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A pipeline stage was asked to run before its prerequisites exist (exit code 3).
struct missing_dependency : std::runtime_error {
    explicit missing_dependency(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qchaos

#endif
