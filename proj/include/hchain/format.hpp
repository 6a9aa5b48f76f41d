#pragma once

#include <string>

namespace hchain {

/// Locale-independent rendering with 12 significant digits; the single number
/// format used by the CLI and the CSV writer.
std::string render_number(double value);

}  // namespace hchain
