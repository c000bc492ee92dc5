#pragma once

#include <atomic>
#include <cstdint>

#include "motiv/errors.hpp"

namespace motiv {

/// Shared step counter for solvers and oracles. Charges are cheap and
/// thread-safe; exceeding the limit raises the configured error code so
/// long runs abort with a structured failure instead of truncating.
class Budget {
public:
    explicit Budget(uint64_t limit, Errc code = Errc::InstanceTooLarge)
        : limit_(limit), code_(code) {}

    void charge(uint64_t steps = 1) {
        if (used_.fetch_add(steps, std::memory_order_relaxed) + steps > limit_)
            fail(code_, "step budget of " + std::to_string(limit_) + " exceeded");
    }

    uint64_t used() const { return used_.load(std::memory_order_relaxed); }
    uint64_t limit() const { return limit_; }

private:
    uint64_t limit_;
    Errc code_;
    std::atomic<uint64_t> used_{0};
};

}  // namespace motiv
