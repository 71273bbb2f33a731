#include "biotraj/error.hpp"

namespace biotraj {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::out_of_span: return "out_of_span";
    case ErrorCode::ill_conditioned_mass_matrix: return "ill_conditioned_mass_matrix";
    case ErrorCode::non_uniform_time_step: return "non_uniform_time_step";
    case ErrorCode::file_not_found: return "file_not_found";
    case ErrorCode::empty_file: return "empty_file";
    case ErrorCode::malformed_header: return "malformed_header";
    case ErrorCode::missing_column: return "missing_column";
    case ErrorCode::ragged_row: return "ragged_row";
    case ErrorCode::non_numeric_cell: return "non_numeric_cell";
    case ErrorCode::non_monotonic_time: return "non_monotonic_time";
    case ErrorCode::cutoff_above_nyquist: return "cutoff_above_nyquist";
    case ErrorCode::no_peak_found: return "no_peak_found";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::unknown_kind: return "unknown_kind";
    case ErrorCode::infeasible_plan: return "infeasible_plan";
    case ErrorCode::invalid_config: return "invalid_config";
    }
    return "unknown";
}

}  // namespace biotraj
