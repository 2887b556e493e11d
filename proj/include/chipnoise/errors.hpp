#ifndef CHIPNOISE_ERRORS_HPP
#define CHIPNOISE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace chipnoise {

// Config-file problems (missing keys, bad units, violated preconditions).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failures of the numerical machinery (quadrature non-convergence,
// NaN detection, relaxation that does not settle).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-fatal diagnostics. Operations with soft preconditions append here
// when given a sink; a null sink silently drops them.
class WarningLog {
public:
    void add(std::string msg) { messages_.push_back(std::move(msg)); }
    const std::vector<std::string>& messages() const { return messages_; }
    bool empty() const { return messages_.empty(); }
    void clear() { messages_.clear(); }

private:
    std::vector<std::string> messages_;
};

inline void warn(WarningLog* log, const std::string& msg) {
    if (log) log->add(msg);
}

}  // namespace chipnoise

#endif
