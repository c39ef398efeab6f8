#ifndef SYNTO_ERROR_HPP
#define SYNTO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace synto {

// Every failure carries a machine-parsable code; the CLI prints "CODE: detail"
// and maps codes to exit statuses.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

namespace errc {
inline constexpr const char* composition_nonzero = "COMPOSITION_NONZERO";
inline constexpr const char* infinite_window = "INFINITE_WINDOW";
inline constexpr const char* window_too_small = "WINDOW_TOO_SMALL";
inline constexpr const char* bidegree_mismatch = "BIDEGREE_MISMATCH";
inline constexpr const char* dimension_mismatch = "DIMENSION_MISMATCH";
inline constexpr const char* precondition = "PRECONDITION";
inline constexpr const char* range_empty = "RANGE_EMPTY";
inline constexpr const char* parse_error = "PARSE_ERROR";
inline constexpr const char* config_error = "CONFIG_ERROR";
inline constexpr const char* no_room_failed = "NO_ROOM_FAILED";
}  // namespace errc

}  // namespace synto

#endif
