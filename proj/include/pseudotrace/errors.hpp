#ifndef PSEUDOTRACE_ERRORS_HPP
#define PSEUDOTRACE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pt
{

// A coefficient was requested outside the exactly known window of a series.
struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SubstitutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation would need vectors above the weight cutoff of the vertex data.
struct TruncationOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotProjectiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IrreducibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input data that violates a structural invariant (associativity, unit laws, vacuum laws, ...).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace pt

#endif
