#include "biotraj/pso.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

#include "biotraj/error.hpp"

namespace biotraj {

void PsoConfig::validate() const
{
    if (swarm_size < 2) throw Error(ErrorCode::invalid_config, "swarm_size must be at least 2");
    if (!(inertia >= 0.0 && inertia < 1.0)) throw Error(ErrorCode::invalid_config, "inertia must be in [0, 1)");
    if (!(cognitive > 0.0) || !(social > 0.0)) {
        throw Error(ErrorCode::invalid_config, "cognitive and social coefficients must be positive");
    }
    if (!(tolerance >= 0.0)) throw Error(ErrorCode::invalid_config, "tolerance must be non-negative");
    if (!(velocity_clamp > 0.0)) throw Error(ErrorCode::invalid_config, "velocity_clamp must be positive");
}

std::string_view to_string(Termination t) noexcept
{
    return t == Termination::iterations ? "iterations" : "stagnation";
}

std::size_t threads_from_env()
{
    const char* raw = std::getenv("BIOTRAJ_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    char* end = nullptr;
    const long long n = std::strtoll(raw, &end, 10);
    if (*end != '\0' || n < 0) return 0;
    return static_cast<std::size_t>(n);
}

namespace {

class Uniform01 {
public:
    explicit Uniform01(std::uint64_t seed) : engine_(seed) {}
    double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

double safe_eval(const Objective& obj, std::span<const double> x)
{
    const double f = obj.fn(x);
    return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
}

// Evaluates every particle; results land in index order regardless of scheduling.
void evaluate_swarm(const Objective& obj, const std::vector<std::vector<double>>& positions,
                    std::vector<double>& fitness, std::size_t threads)
{
    const std::size_t n = positions.size();
    const std::size_t workers = std::min(threads, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fitness[i] = safe_eval(obj, positions[i]);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) fitness[i] = safe_eval(obj, positions[i]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

OptResult optimize(const Objective& objective, const Bounds& bounds, const PsoConfig& config)
{
    config.validate();
    if (!objective.fn) throw Error(ErrorCode::invalid_argument, "objective function is empty");
    if (objective.dimension != bounds.size() || bounds.empty()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "objective dimension " + std::to_string(objective.dimension) + " does not match " +
                        std::to_string(bounds.size()) + " bounds");
    }
    for (const auto& b : bounds) {
        if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi)) {
            throw Error(ErrorCode::invalid_argument, "bounds must be finite with lo < hi");
        }
    }

    const std::size_t dim = bounds.size();
    const std::size_t n = config.swarm_size;
    Uniform01 rand(config.seed);

    std::vector<double> vmax(dim);
    for (std::size_t d = 0; d < dim; ++d) vmax[d] = config.velocity_clamp * (bounds[d].hi - bounds[d].lo);

    std::vector<std::vector<double>> x(n, std::vector<double>(dim));
    std::vector<std::vector<double>> v(n, std::vector<double>(dim));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < dim; ++d) {
            x[i][d] = bounds[d].lo + rand() * (bounds[d].hi - bounds[d].lo);
            v[i][d] = (2.0 * rand() - 1.0) * vmax[d];
        }
    }

    std::vector<double> fitness(n);
    evaluate_swarm(objective, x, fitness, config.threads);
    auto pbest = x;
    auto pbest_fit = fitness;
    std::size_t g = static_cast<std::size_t>(std::min_element(pbest_fit.begin(), pbest_fit.end()) - pbest_fit.begin());
    std::vector<double> gbest = pbest[g];
    double gbest_fit = pbest_fit[g];

    OptResult result;
    result.evaluations = n;
    result.history.reserve(config.iterations);

    for (std::size_t iter = 0; iter < config.iterations; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t d = 0; d < dim; ++d) {
                const double r1 = rand();
                const double r2 = rand();
                double vel = config.inertia * v[i][d] + config.cognitive * r1 * (pbest[i][d] - x[i][d]) +
                             config.social * r2 * (gbest[d] - x[i][d]);
                vel = std::clamp(vel, -vmax[d], vmax[d]);
                double pos = x[i][d] + vel;
                if (pos < bounds[d].lo || pos > bounds[d].hi) {
                    pos = std::clamp(pos, bounds[d].lo, bounds[d].hi);
                    vel = 0.0;
                }
                x[i][d] = pos;
                v[i][d] = vel;
            }
        }
        evaluate_swarm(objective, x, fitness, config.threads);
        result.evaluations += n;
        for (std::size_t i = 0; i < n; ++i) {
            if (fitness[i] < pbest_fit[i]) {
                pbest_fit[i] = fitness[i];
                pbest[i] = x[i];
                if (fitness[i] < gbest_fit) {
                    gbest_fit = fitness[i];
                    gbest = x[i];
                }
            }
        }
        result.history.push_back(gbest_fit);
        result.iterations_run = iter + 1;

        const std::size_t w = config.stagnation_window;
        if (w > 0 && result.history.size() > w) {
            const double before = result.history[result.history.size() - 1 - w];
            if (before - gbest_fit < config.tolerance) {
                result.terminated_by = Termination::stagnation;
                break;
            }
        }
    }

    result.best_position = gbest;
    result.best_fitness = gbest_fit;
    return result;
}

}  // namespace biotraj
