#pragma once

#include <stdexcept>
#include <string>

namespace stego {

// Library-wide error taxonomy. The CLI maps each code to a distinct
// process exit status (see tools/).
enum class Errc {
    invalid_argument,
    model_io,
    entropy_exhausted,
    format,
    digest_mismatch,
    ambiguous,
    state_space,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond) raise(code, what);
}

} // namespace stego
