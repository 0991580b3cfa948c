#pragma once

#include <stdexcept>
#include <string>

namespace mzop {

// Violated precondition / type invariant (caller bug).
struct ContractViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A state or stage value became non-finite during integration.
struct BlowupError : std::runtime_error {
    double time;
    long step;
    long member;  // -1 when not ensemble-related
    BlowupError(const std::string& msg, double t, long step_, long member_ = -1)
        : std::runtime_error(msg), time(t), step(step_), member(member_) {}
};

// Quadrature failed to reach the requested tolerance.
struct QuadratureError : std::runtime_error {
    double achieved_tol;
    QuadratureError(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_tol(achieved) {}
};

// Kernel table queried outside its lag range.
struct KernelRangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Memory solve requested beyond the kernel horizon.
struct HorizonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rejection sampler exceeded its iteration cap.
struct SamplerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mzop
