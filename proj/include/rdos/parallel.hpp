#pragma once

namespace rdos {

/// Caps the OpenMP worker count. A non-positive request falls back to the
/// RESONATOR_DOS_THREADS environment variable, then to the runtime default.
/// No-op without OpenMP.
void configure_threads(int requested);

int max_threads();

} // namespace rdos
