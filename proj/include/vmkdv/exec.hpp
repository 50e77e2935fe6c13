#pragma once

namespace vmkdv {

/// Kernel execution policy. Parallel runs the per-cell work under OpenMP;
/// global accumulation is always a serial fixed-order scatter, so both
/// policies produce bit-identical results.
enum class ExecPolicy { Serial, Parallel };

/// Process-wide default used by the assembly and quadrature kernels.
ExecPolicy default_policy();
void set_default_policy(ExecPolicy p);

} // namespace vmkdv
