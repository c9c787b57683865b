#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "shep/geometry.hpp"
#include "shep/potential.hpp"

namespace shep {

/// Parameters of the stochastic target model.
struct TargetParams {
    double lambda;     ///< herder influence radius, m
    double beta;       ///< repulsive drift gain
    double diffusion;  ///< Brownian diffusion D, m^2/s
};

struct TargetState {
    Vec2 position;
    bool captured{false};  ///< inside the goal disc right now
};

/// Indices of herders strictly within lambda of the target.
std::vector<std::size_t> neighbor_herders(Vec2 target, std::span<const Vec2> herders,
                                          double lambda);

/// Deterministic part of the target velocity: herder repulsion plus obstacle
/// repulsion.  The noise term is sampled separately.
Vec2 drift(Vec2 target, std::span<const Vec2> herders, std::span<const ObstacleField> fields,
           const TargetParams& params, bool* clamped = nullptr);

/// Embodied variant: drift plus pairwise repulsion from the other targets.
/// Noise-free by definition (diffusion is ignored).
Vec2 embodied_drift(std::size_t a, std::span<const TargetState> targets,
                    std::span<const Vec2> herders, std::span<const ObstacleField> fields,
                    const TargetParams& params, const PairRepulsion& rep,
                    bool* clamped = nullptr);

/// One Euler-Maruyama noise increment: i.i.d. Gaussian components with
/// standard deviation sqrt(2 D dt).  Zero (without consuming the stream)
/// when D = 0.
Vec2 noise_increment(std::mt19937_64& rng, double diffusion, double dt);

} // namespace shep
