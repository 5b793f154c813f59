// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fpsvm Authors

#pragma once

#include <stdexcept>
#include <string>

namespace fpsvm {

enum class ErrorCode {
    InvalidArgument = 1,
    Io,
    Schema,
    Parse,
    Label,
    Convergence,
    CorruptModel,
};

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message)
        , code_(code)
    {
    }

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// SMO gave up before the maximal KKT violation dropped below tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& message, double violation)
        : Error(ErrorCode::Convergence, message)
        , violation_(violation)
    {
    }

    [[nodiscard]] double violation() const noexcept { return violation_; }

private:
    double violation_;
};

} // namespace fpsvm
