#include "ecm/error.hpp"

namespace ecm {

const char* errc_name(Errc code) noexcept
{
    switch (code) {
    case Errc::geometry: return "geometry";
    case Errc::bad_carrier: return "bad_carrier";
    case Errc::bad_noise_power: return "bad_noise_power";
    case Errc::bad_range: return "bad_range";
    case Errc::bad_power: return "bad_power";
    case Errc::bad_array_size: return "bad_array_size";
    case Errc::subarray_partition: return "subarray_partition";
    case Errc::orthogonality: return "orthogonality";
    case Errc::undersampled: return "undersampled";
    case Errc::spacing_mismatch: return "spacing_mismatch";
    case Errc::bad_pulse: return "bad_pulse";
    case Errc::too_few_samples: return "too_few_samples";
    case Errc::bad_jammer_count: return "bad_jammer_count";
    case Errc::bad_jammer_offset: return "bad_jammer_offset";
    case Errc::bad_jammer_amplitude: return "bad_jammer_amplitude";
    case Errc::length_mismatch: return "length_mismatch";
    case Errc::unsupported_combination: return "unsupported_combination";
    case Errc::closed_form_precondition: return "closed_form_precondition";
    case Errc::transmit_null: return "transmit_null";
    case Errc::undefined_window: return "undefined_window";
    case Errc::case_mismatch: return "case_mismatch";
    case Errc::delay_outside_window: return "delay_outside_window";
    case Errc::too_few_trials: return "too_few_trials";
    case Errc::singular: return "singular";
    case Errc::not_rank_one: return "not_rank_one";
    case Errc::config: return "config";
    case Errc::io: return "io";
    }
    return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
{
}

}  // namespace ecm
