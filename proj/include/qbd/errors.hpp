// errors.hpp: Error types shared by all qbd modules

#pragma once

#include <stdexcept>
#include <string>

namespace qbd {

// Base class; code() is a stable machine-readable tag used in reports.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }
    // Validation errors map to CLI exit code 2, numeric failures to 3.
    virtual bool is_validation() const noexcept { return true; }

private:
    std::string code_;
};

class TrappingState : public Error {
public:
    explicit TrappingState(int index)
        : Error("TrappingState", "TrappingState(" + std::to_string(index) + ")"), index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

class NormalizationViolation : public Error {
public:
    explicit NormalizationViolation(const std::string& what) : Error("NormalizationViolation", what) {}
};

class OutOfRange : public Error {
public:
    explicit OutOfRange(const std::string& what) : Error("OutOfRange", what) {}
};

class IndexOutOfRange : public Error {
public:
    explicit IndexOutOfRange(const std::string& what) : Error("IndexOutOfRange", what) {}
};

class ShapeMismatch : public Error {
public:
    explicit ShapeMismatch(const std::string& what) : Error("ShapeMismatch", what) {}
};

class PreconditionViolated : public Error {
public:
    explicit PreconditionViolated(const std::string& what) : Error("PreconditionViolated", what) {}
};

class DimensionGuard : public Error {
public:
    explicit DimensionGuard(const std::string& what) : Error("DimensionGuard", what) {}
};

class ConvergenceFailure : public Error {
public:
    explicit ConvergenceFailure(const std::string& what) : Error("ConvergenceFailure", what) {}
    bool is_validation() const noexcept override { return false; }
};

class EigensolveFailure : public Error {
public:
    explicit EigensolveFailure(const std::string& what) : Error("EigensolveFailure", what) {}
    bool is_validation() const noexcept override { return false; }
};

}  // namespace qbd
