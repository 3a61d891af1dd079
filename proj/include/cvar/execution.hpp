#pragma once

namespace cvar {

/// Selects the OpenMP kernel or the serial reference implementation. Both
/// produce identical results; the serial path exists for testing.
enum class Execution { serial, parallel };

}  // namespace cvar
