#pragma once

#include <cstdint>
#include <initializer_list>

namespace framesched {

/// Counter-seeded pseudo-random stream (splitmix64).
///
/// Every simulation frame gets its own stream derived from (run seed, frame
/// index), so a frame's draws do not depend on how many draws earlier frames
/// consumed. Draw order within a frame is normative: job-generation bits
/// app-major/worker-major, then workload-level draws (when the completion
/// model has levels), then any policy draws, then completion bits
/// app-major/worker-major.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// True with probability p. p=0 never fires, p=1 always does.
    bool bernoulli(double p) { return next_u01() < p; }

    /// Uniform integer in [0, n), n >= 1. Multiply-shift reduction.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

/// splitmix64 finalizer; the project-wide 64-bit mixing primitive.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Hash-combines parts into a derived seed. Used to key per-frame,
/// per-grid-point, and per-replicate streams off one base seed.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t p : parts) {
        h = mix64(h ^ (p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
    }
    return h;
}

/// Stream for one frame of one run.
inline RngStream frame_stream(std::uint64_t run_seed, std::int64_t frame_index) {
    return RngStream(derive_seed({run_seed, static_cast<std::uint64_t>(frame_index)}));
}

} // namespace framesched
