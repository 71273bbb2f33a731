#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace biotraj {

struct PsoConfig {
    std::size_t swarm_size = 40;
    std::size_t iterations = 300;
    double inertia = 0.72;
    double cognitive = 1.49;
    double social = 1.49;
    std::uint64_t seed = 42;
    double tolerance = 1e-8;          // stagnation threshold on best fitness
    std::size_t stagnation_window = 50;  // iterations
    double velocity_clamp = 0.2;      // fraction of box width per dimension
    std::size_t threads = 0;          // parallel fitness evaluations; 0 = sequential

    void validate() const;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Axis-aligned box; lo < hi in every dimension.
using Bounds = std::vector<Interval>;

/// Objective with a declared dimension; must be pure and reentrant when threads > 0.
struct Objective {
    std::size_t dimension = 0;
    std::function<double(std::span<const double>)> fn;
};

enum class Termination { iterations, stagnation };

struct OptResult {
    std::vector<double> best_position;
    double best_fitness = 0.0;
    std::vector<double> history;  // global best after each iteration
    std::size_t evaluations = 0;
    std::size_t iterations_run = 0;
    Termination terminated_by = Termination::iterations;
    std::string rng = "mt19937_64";
};

std::string_view to_string(Termination t) noexcept;

/**
 * Global-best inertia-weight PSO.
 *
 *   v <- w v + c1 r1 (pbest - x) + c2 r2 (gbest - x)
 *   x <- clamp(x + v)
 *
 * Velocities are clamped to `velocity_clamp` times the box width and zeroed on
 * any dimension whose position hit a bound. Non-finite fitness counts as +inf.
 * Random numbers come from std::mt19937_64 seeded with `seed`; doubles are
 * (u >> 11) * 2^-53. Results are bit-identical for a given seed regardless of
 * `threads`.
 */
OptResult optimize(const Objective& objective, const Bounds& bounds, const PsoConfig& config = {});

/// Reads BIOTRAJ_THREADS (0 or unset = sequential).
std::size_t threads_from_env();

}  // namespace biotraj
