#pragma once

#include <stdexcept>
#include <string>

namespace ecm {

enum class Errc {
    geometry,            // platform above the slant range
    bad_carrier,
    bad_noise_power,
    bad_range,
    bad_power,
    bad_array_size,
    subarray_partition,
    orthogonality,
    undersampled,
    spacing_mismatch,
    bad_pulse,
    too_few_samples,
    bad_jammer_count,
    bad_jammer_offset,
    bad_jammer_amplitude,
    length_mismatch,
    unsupported_combination,
    closed_form_precondition,
    transmit_null,
    undefined_window,
    case_mismatch,
    delay_outside_window,
    too_few_trials,
    singular,
    not_rank_one,
    config,
    io,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what);
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace ecm
