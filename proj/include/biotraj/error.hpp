#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace biotraj {

enum class ErrorCode {
    invalid_argument,
    out_of_span,
    ill_conditioned_mass_matrix,
    non_uniform_time_step,
    file_not_found,
    empty_file,
    malformed_header,
    missing_column,
    ragged_row,
    non_numeric_cell,
    non_monotonic_time,
    cutoff_above_nyquist,
    no_peak_found,
    dimension_mismatch,
    unknown_kind,
    infeasible_plan,
    invalid_config,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace biotraj
