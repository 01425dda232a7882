#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace gabor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitContract = 2;

/// Entry point shared by gaborctl and the tests. Subcommands:
/// norm | stft | apply | bounds | sweep | wexler-raz | counterexample | selftest.
/// Tables go to --out (or `out` when absent); JSON summaries go to `out`.
/// Errors are reported on `err` as {"error": {"kind", "message"}}.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// JSON text with every floating-point number printed at 17 significant digits.
/// Non-finite values become the strings "inf", "-inf" and "nan".
std::string dump17(const nlohmann::json& value);

}  // namespace gabor::cli
