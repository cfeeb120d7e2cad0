#pragma once

// Kinetic Monte Carlo of a two-compartment vessel split by a spin-active
// mirror. Mirror encounters are decoherent probabilistic channels; wall
// bounces preserve compartment and spin. Each step every particle meets the
// mirror once. Macro-states are indexed 0=(I,+), 1=(II,+), 2=(II,-),
// 3=(I,-); the monitored loop is 0 -> 1 -> 2 -> 3 -> 0.

#include <array>
#include <cstdint>

#include "spinrefl/stack_solver.hpp"

namespace spinrefl {

enum class Side : int { left = 0, right = 1 };   // compartment I faces left
enum class Spin : int { plus = 0, minus = 1 };

struct ChannelProbs {
    double transmit_noflip;
    double transmit_flip;
    double reflect_noflip;
    double reflect_flip;
    double absorb;

    double sum() const {
        return transmit_noflip + transmit_flip + reflect_noflip + reflect_flip + absorb;
    }
};

struct MirrorChannelTable {
    // Indexed [side][spin].
    std::array<std::array<ChannelProbs, 2>, 2> channels;

    const ChannelProbs& channel(Side s, Spin sp) const {
        return channels[static_cast<int>(s)][static_cast<int>(sp)];
    }
};

// Probabilities from the left-incidence and right-incidence solutions of the
// same mirror (right = reversed layer order / reversed helix handedness).
// Throws NegativeProbability if an absorbed fraction computes below -1e-12;
// both solutions must share k.
MirrorChannelTable channel_table_from_solution(const ScatteringSolution& left,
                                               const ScatteringSolution& right);

struct VesselReport {
    long long n_particles;
    long long n_steps;
    std::uint64_t seed;

    // Time-block statistics over the post-warmup 80% of steps (10 blocks).
    double occupancy_I, occupancy_I_sigma;
    double polarization_I, polarization_I_sigma;
    double polarization_II, polarization_II_sigma;

    // Cycle current around the 4-state loop, per particle-step, all steps:
    // J = (N_forward - N_backward) / N, sigma from Skellam counting.
    double cycle_current, cycle_current_sigma;
    std::uint64_t loop_forward, loop_backward;

    std::array<std::array<std::uint64_t, 4>, 4> transitions;  // [from][to]
    long long absorbed;

    // Occupancy change between the last two 20% windows, in block sigmas.
    double occupancy_drift, occupancy_drift_sigma;
    bool steady;
};

// Deterministic given seed (bit-for-bit counters): a master mt19937_64 draws
// initial states and per-particle stream keys; particle trajectories advance
// on splitmix64 substreams.
VesselReport run_vessel(const MirrorChannelTable& table, long long n_particles,
                        long long n_steps, std::uint64_t seed);

}  // namespace spinrefl
