/*
   Copyright 2026 The hermite-forge Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef HFORGE_ERROR_HPP
#define HFORGE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace hforge {

/** Failure categories raised by the library. Every algebraic hypothesis that
 *  can fail at run time has its own code so callers (and the CLI) can report
 *  which condition was violated. */
enum class errc {
    not_divisible,
    not_triangular,
    singular_diagonal,
    not_in_vd,
    window_too_small,
    not_annihilated,
    span_hypothesis_failed,
    eigenvalue_clash,
    bad_seed,
    zero_order_check_failed,
    bad_order,
    parse_error,
    invalid_argument,
    invariant_violated,
};

inline std::string_view to_string(errc code) noexcept {
    switch (code) {
        case errc::not_divisible: return "NotDivisible";
        case errc::not_triangular: return "NotTriangular";
        case errc::singular_diagonal: return "SingularDiagonal";
        case errc::not_in_vd: return "NotInVd";
        case errc::window_too_small: return "WindowTooSmall";
        case errc::not_annihilated: return "NotAnnihilated";
        case errc::span_hypothesis_failed: return "SpanHypothesisFailed";
        case errc::eigenvalue_clash: return "EigenvalueClash";
        case errc::bad_seed: return "BadSeed";
        case errc::zero_order_check_failed: return "ZeroOrderCheckFailed";
        case errc::bad_order: return "BadOrder";
        case errc::parse_error: return "ParseError";
        case errc::invalid_argument: return "InvalidArgument";
        case errc::invariant_violated: return "InvariantViolated";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace hforge

#endif // HFORGE_ERROR_HPP
