#pragma once

#include <string>

// Built-in invariant suite over the bundled graph corpus. Runs everything the
// library promises, deterministically, and reports one line per check. Used
// by the `selftest` subcommand; the fault hook exists so the failure path is
// itself testable.

namespace renorm {

enum class FaultInjection { none, antipode };

struct SelftestResult {
  int exit_code = 0;  // 0 all pass, 1 at least one failure
  std::string report;
};

// seed 0 means the built-in default; any other value reseeds the randomized
// property sections (kept deterministic for a fixed seed).
SelftestResult run_selftest(FaultInjection fault = FaultInjection::none,
                            unsigned seed = 0);

}  // namespace renorm
