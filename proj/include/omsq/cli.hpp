#pragma once

namespace omsq {

/// Entry point behind the `omsq` binary; exposed here so tests can drive the
/// command surface in-process. Returns 0 on success, 1 on configuration or
/// usage errors, 2 on numerical failures.
int cli_main(int argc, const char* const* argv);

} // namespace omsq
