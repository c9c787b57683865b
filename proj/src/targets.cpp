#include "shep/targets.hpp"

#include <cmath>

#include "shep/rng.hpp"

namespace shep {

std::vector<std::size_t> neighbor_herders(Vec2 target, std::span<const Vec2> herders,
                                          double lambda) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < herders.size(); ++i) {
        if ((herders[i] - target).norm() < lambda) out.push_back(i);
    }
    return out;
}

Vec2 drift(Vec2 target, std::span<const Vec2> herders, std::span<const ObstacleField> fields,
           const TargetParams& params, bool* clamped) {
    Vec2 v{0.0, 0.0};
    for (const Vec2& h : herders) {
        Vec2 away = target - h;  // repulsion pushes the target away from the herder
        double d = away.norm();
        if (d < params.lambda) {
            v += away.normalized() * (params.beta * (params.lambda - d));
        }
    }
    for (const ObstacleField& f : fields) {
        v += obstacle_force(f, target, clamped);
    }
    return v;
}

Vec2 embodied_drift(std::size_t a, std::span<const TargetState> targets,
                    std::span<const Vec2> herders, std::span<const ObstacleField> fields,
                    const TargetParams& params, const PairRepulsion& rep, bool* clamped) {
    Vec2 v = drift(targets[a].position, herders, fields, params, clamped);
    for (std::size_t j = 0; j < targets.size(); ++j) {
        if (j == a) continue;
        v += pair_force(rep, targets[a].position, targets[j].position, clamped);
    }
    return v;
}

Vec2 noise_increment(std::mt19937_64& rng, double diffusion, double dt) {
    if (diffusion == 0.0) return {0.0, 0.0};
    // Box-Muller on two pinned 53-bit uniforms; one draw pair yields both
    // components, keeping the stream layout independent of the platform's
    // std::normal_distribution.
    double u1 = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = uniform01(rng);                                      // [0, 1)
    double r = std::sqrt(-2.0 * std::log(u1));
    double sigma = std::sqrt(2.0 * diffusion * dt);
    constexpr double two_pi = 6.283185307179586476925286766559;
    return {sigma * r * std::cos(two_pi * u2), sigma * r * std::sin(two_pi * u2)};
}

} // namespace shep
