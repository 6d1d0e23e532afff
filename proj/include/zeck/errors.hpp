#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace zeck {

// Domain error with a stable machine-readable name. The CLI maps these to
// exit code 1 and prints the name, so names are part of the interface.
class error : public std::runtime_error {
public:
    error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define ZECK_DEFINE_ERROR(cls, name_str)                                   \
    class cls : public error {                                             \
    public:                                                                \
        explicit cls(const std::string& what) : error(name_str, what) {}   \
    }

ZECK_DEFINE_ERROR(invalid_spec, "invalid_spec");
ZECK_DEFINE_ERROR(out_of_range, "out_of_range");
ZECK_DEFINE_ERROR(unrepresentable, "unrepresentable");
ZECK_DEFINE_ERROR(not_legal, "not_legal");
ZECK_DEFINE_ERROR(budget_exceeded, "budget_exceeded");
ZECK_DEFINE_ERROR(index_out_of_range, "index_out_of_range");
ZECK_DEFINE_ERROR(boundary_regime, "boundary_regime");
ZECK_DEFINE_ERROR(empty_condition, "empty_condition");
ZECK_DEFINE_ERROR(missing_h_values, "missing_h_values");
ZECK_DEFINE_ERROR(table_too_short, "table_too_short");
ZECK_DEFINE_ERROR(digit_out_of_range, "digit_out_of_range");
ZECK_DEFINE_ERROR(non_positive_input, "non_positive_input");
ZECK_DEFINE_ERROR(degenerate_sample, "degenerate_sample");

#undef ZECK_DEFINE_ERROR

} // namespace zeck
