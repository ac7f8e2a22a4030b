#pragma once

namespace wl {

// Kernels that have an OpenMP implementation also keep a serial reference.
// Both produce identical results: work is split into fixed chunks whose
// partial results are reduced in chunk order.
enum class Exec { Serial, Parallel };

}  // namespace wl
