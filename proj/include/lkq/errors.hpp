#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lkq {

// Raised when a re-verification that a theorem guarantees must pass fails at
// a concrete instance. Distinct from user error: the artifact doubles as an
// empirical audit, and suites assert this never fires. Constructing one
// increments a process-wide counter.
class falsification_error : public std::runtime_error {
public:
    explicit falsification_error(const std::string& what);
};

uint64_t falsification_event_count();

} // namespace lkq
