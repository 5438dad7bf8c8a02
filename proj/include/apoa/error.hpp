#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace apoa {

enum class ErrorCode {
    EmptyInput,
    DuplicateAppId,
    MetricOutOfRange,
    EmptySubset,
    InvalidInstance,
    UnknownContext,
    UnknownMetric,
    IndexOutOfRange,
    NonPositiveLoad,
    InvalidBattery,
    ShapeMismatch,
    SearchSpaceTooLarge,
    InstanceMismatch,
    CutOutOfRange,
    InvalidParams,
    EmptyFront,
    UnknownObjective,
    UnknownCategory,
    UnknownApp,
    ParseError,
    ValidationError,
    IoError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Location details attached to data errors. Rows are 1-based file lines
/// (the header is row 1); columns are 1-based field positions.
struct ErrorLocation {
    std::optional<std::size_t> record_index;
    std::optional<std::size_t> row;
    std::optional<std::size_t> column;
    std::string field;
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, ErrorLocation location = {})
        : std::runtime_error(message), code_(code), location_(std::move(location)) {}

    ErrorCode code() const noexcept { return code_; }
    const ErrorLocation& location() const noexcept { return location_; }

private:
    ErrorCode code_;
    ErrorLocation location_;
};

}  // namespace apoa
