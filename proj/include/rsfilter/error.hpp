#ifndef RSFILTER_ERROR_HPP
#define RSFILTER_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace rsfilter {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter is outside its documented range. Carries every violation found, not just the first.
class ValidationError : public Error {
public:
    explicit ValidationError(std::string message) : Error(message), violations_{std::move(message)} {}

    explicit ValidationError(std::vector<std::string> violations) : Error(join(violations)), violations_(std::move(violations)) {}

    [[nodiscard]] const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& items) {
        std::string out;
        for (const auto& item : items) {
            if (!out.empty()) {
                out += "; ";
            }
            out += item;
        }
        return out;
    }

    std::vector<std::string> violations_;
};

/// A numerical procedure (quadrature, root bracketing, estimation) did not meet its tolerance.
class NumericError : public Error {
public:
    using Error::Error;
};

/// File ingestion or output failed.
class IoError : public Error {
public:
    using Error::Error;
};

namespace detail {

/// Collects violations and throws them together.
class Violations {
public:
    void require(bool ok, std::string message) {
        if (!ok) {
            items_.push_back(std::move(message));
        }
    }

    void add(std::string message) { items_.push_back(std::move(message)); }

    void append(const std::vector<std::string>& more) { items_.insert(items_.end(), more.begin(), more.end()); }

    [[nodiscard]] bool empty() const noexcept { return items_.empty(); }
    [[nodiscard]] const std::vector<std::string>& items() const noexcept { return items_; }

    void throw_if_any() const {
        if (!items_.empty()) {
            throw ValidationError(items_);
        }
    }

private:
    std::vector<std::string> items_;
};

} // namespace detail
} // namespace rsfilter

#endif // RSFILTER_ERROR_HPP
