#pragma once

#include <array>
#include <cstdint>

namespace expsel {

/// Philox4x32-10 block function (Salmon et al., SC'11). Stateless: the output
/// is a pure function of (counter, key).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// SplitMix64 finalizer; used to fold (seed, stream_id) into a Philox key.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Uniform variates for one (key, replication, lane) triple. Successive calls
/// walk the block counter, so the sequence depends only on the triple.
class UniformStream {
public:
    UniformStream(PhiloxKey key, std::uint64_t replication, std::uint32_t lane) noexcept;

    /// Uniform on the open interval (0, 1), 53 bits of resolution.
    double next_open01() noexcept;

private:
    void refill() noexcept;

    PhiloxKey key_;
    PhiloxCounter counter_;
    std::array<std::uint64_t, 2> buffer_{};
    int available_ = 0;
};

}  // namespace expsel
