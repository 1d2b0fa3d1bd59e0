#pragma once

#include <string>

namespace pinsker {

// Locale-independent formatting with 17 significant digits ('.' decimal
// separator), enough for bit-stable round trips.
std::string format_double(double value);

std::string format_int(long long value);

}  // namespace pinsker
