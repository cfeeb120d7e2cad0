#include "spinrefl/vessel_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace spinrefl {

namespace {

// splitmix64: tiny deterministic per-particle stream.
inline std::uint64_t splitmix64_next(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline double to_unit(std::uint64_t x) { return (x >> 11) * 0x1.0p-53; }

// Macro-state index: 0=(I,+), 1=(II,+), 2=(II,-), 3=(I,-).
inline int macro_state(int comp, int spin) {
    return comp == 0 ? (spin == 0 ? 0 : 3) : (spin == 0 ? 1 : 2);
}

ChannelProbs probs_from(const SpinMatrix& R, const SpinMatrix& T, Spin in) {
    const int j = static_cast<int>(in);
    const ProbTable PR = spin_probabilities(R), PT = spin_probabilities(T);
    const double tnf = j == 0 ? PT.pp : PT.mm;
    const double tf = j == 0 ? PT.mp : PT.pm;
    const double rnf = j == 0 ? PR.pp : PR.mm;
    const double rf = j == 0 ? PR.mp : PR.pm;
    double absorb = 1.0 - (tnf + tf + rnf + rf);
    if (absorb < -1e-12)
        throw NegativeProbability(
            "channel_table_from_solution: outgoing probability exceeds 1 by " +
            std::to_string(-absorb));
    if (absorb < 0.0) absorb = 0.0;
    return {tnf, tf, rnf, rf, absorb};
}

struct BlockAccum {
    std::uint64_t steps_I = 0;      // particle-steps spent in compartment I
    std::uint64_t steps_total = 0;  // alive particle-steps
    std::uint64_t plus_I = 0, minus_I = 0;
    std::uint64_t plus_II = 0, minus_II = 0;
};

double block_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double block_sigma(const std::vector<double>& v, double mean) {
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    const auto n = static_cast<double>(v.size());
    return std::sqrt(s / (n - 1.0) / n);  // standard error of the mean
}

}  // namespace

MirrorChannelTable channel_table_from_solution(const ScatteringSolution& left,
                                               const ScatteringSolution& right) {
    if (left.k != right.k)
        throw std::invalid_argument("channel_table_from_solution: k mismatch");
    MirrorChannelTable t;
    t.channels[0][0] = probs_from(left.R, left.T, Spin::plus);
    t.channels[0][1] = probs_from(left.R, left.T, Spin::minus);
    t.channels[1][0] = probs_from(right.R, right.T, Spin::plus);
    t.channels[1][1] = probs_from(right.R, right.T, Spin::minus);
    return t;
}

VesselReport run_vessel(const MirrorChannelTable& table, long long n_particles,
                        long long n_steps, std::uint64_t seed) {
    if (n_particles < 1000) throw std::invalid_argument("run_vessel: n_particles >= 1000");
    if (n_steps < 100) throw std::invalid_argument("run_vessel: n_steps >= 100");

    // Cumulative outcome thresholds per (side, spin); the final else branch
    // is absorption, so the tiny clamp slack folds into it.
    double cum[2][2][4];
    for (int s = 0; s < 2; ++s)
        for (int sp = 0; sp < 2; ++sp) {
            const ChannelProbs& c = table.channels[s][sp];
            cum[s][sp][0] = c.transmit_noflip;
            cum[s][sp][1] = cum[s][sp][0] + c.transmit_flip;
            cum[s][sp][2] = cum[s][sp][1] + c.reflect_noflip;
            cum[s][sp][3] = cum[s][sp][2] + c.reflect_flip;
        }

    // Initial states and per-particle stream keys from the master generator.
    std::mt19937_64 master(seed);
    std::vector<std::uint8_t> comp(static_cast<std::size_t>(n_particles));
    std::vector<std::uint8_t> spin(static_cast<std::size_t>(n_particles));
    std::vector<std::uint8_t> alive(static_cast<std::size_t>(n_particles), 1);
    std::vector<std::uint64_t> stream(static_cast<std::size_t>(n_particles));
    for (long long i = 0; i < n_particles; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        comp[idx] = to_unit(master()) < 0.5 ? 0 : 1;
        spin[idx] = to_unit(master()) < 0.5 ? 0 : 1;
        stream[idx] = master();
    }

    const long long warmup = n_steps / 5;
    const int n_blocks = 10;
    std::vector<BlockAccum> blocks(static_cast<std::size_t>(n_blocks));
    const long long block_len = std::max<long long>(1, (n_steps - warmup) / n_blocks);

    VesselReport rep{};
    rep.n_particles = n_particles;
    rep.n_steps = n_steps;
    rep.seed = seed;
    for (auto& row : rep.transitions) row.fill(0);

    std::uint64_t alive_steps = 0;
    for (long long i = 0; i < n_particles; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        std::uint64_t s = stream[idx];
        int c = comp[idx], sp = spin[idx];
        for (long long step = 0; step < n_steps; ++step) {
            if (!alive[idx]) break;
            const int from = macro_state(c, sp);
            const double x = to_unit(splitmix64_next(s));
            const double* cu = cum[c][sp];  // side index == compartment index
            if (x < cu[0]) {
                c = 1 - c;
            } else if (x < cu[1]) {
                c = 1 - c;
                sp = 1 - sp;
            } else if (x < cu[2]) {
                // reflect, no flip: state unchanged
            } else if (x < cu[3]) {
                sp = 1 - sp;
            } else {
                alive[idx] = 0;
                ++rep.absorbed;
                break;
            }
            ++rep.transitions[static_cast<std::size_t>(from)]
                             [static_cast<std::size_t>(macro_state(c, sp))];
            ++alive_steps;
            if (step >= warmup) {
                const auto b = static_cast<std::size_t>(
                    std::min<long long>((step - warmup) / block_len, n_blocks - 1));
                BlockAccum& acc = blocks[b];
                ++acc.steps_total;
                if (c == 0) {
                    ++acc.steps_I;
                    (sp == 0 ? acc.plus_I : acc.minus_I) += 1;
                } else {
                    (sp == 0 ? acc.plus_II : acc.minus_II) += 1;
                }
            }
        }
        comp[idx] = static_cast<std::uint8_t>(c);
        spin[idx] = static_cast<std::uint8_t>(sp);
    }

    std::vector<double> occ, pol_I, pol_II;
    for (const BlockAccum& b : blocks) {
        if (b.steps_total == 0) continue;
        occ.push_back(static_cast<double>(b.steps_I) / static_cast<double>(b.steps_total));
        const double nI = static_cast<double>(b.plus_I + b.minus_I);
        const double nII = static_cast<double>(b.plus_II + b.minus_II);
        if (nI > 0)
            pol_I.push_back((static_cast<double>(b.plus_I) - static_cast<double>(b.minus_I)) / nI);
        if (nII > 0)
            pol_II.push_back(
                (static_cast<double>(b.plus_II) - static_cast<double>(b.minus_II)) / nII);
    }
    rep.occupancy_I = block_mean(occ);
    rep.occupancy_I_sigma = block_sigma(occ, rep.occupancy_I);
    rep.polarization_I = block_mean(pol_I);
    rep.polarization_I_sigma = block_sigma(pol_I, rep.polarization_I);
    rep.polarization_II = block_mean(pol_II);
    rep.polarization_II_sigma = block_sigma(pol_II, rep.polarization_II);

    // Loop edges 0->1->2->3->0.
    static constexpr int loop[4][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    rep.loop_forward = rep.loop_backward = 0;
    for (const auto& e : loop) {
        rep.loop_forward += rep.transitions[static_cast<std::size_t>(e[0])]
                                           [static_cast<std::size_t>(e[1])];
        rep.loop_backward += rep.transitions[static_cast<std::size_t>(e[1])]
                                            [static_cast<std::size_t>(e[0])];
    }
    const double n_tot = static_cast<double>(alive_steps);
    rep.cycle_current =
        (static_cast<double>(rep.loop_forward) - static_cast<double>(rep.loop_backward)) / n_tot;
    rep.cycle_current_sigma =
        std::sqrt(static_cast<double>(rep.loop_forward + rep.loop_backward)) / n_tot;

    // Drift: occupancy over the final 20% of blocks versus the preceding 20%.
    const std::size_t nb = occ.size();
    if (nb >= 4) {
        const std::size_t w = nb / 5 > 0 ? nb / 5 : 1;
        double last = 0.0, prev = 0.0;
        for (std::size_t i = nb - w; i < nb; ++i) last += occ[i];
        for (std::size_t i = nb - 2 * w; i < nb - w; ++i) prev += occ[i];
        last /= static_cast<double>(w);
        prev /= static_cast<double>(w);
        rep.occupancy_drift = last - prev;
        rep.occupancy_drift_sigma =
            rep.occupancy_I_sigma * std::sqrt(2.0 * static_cast<double>(nb) / static_cast<double>(w));
    } else {
        rep.occupancy_drift = 0.0;
        rep.occupancy_drift_sigma = rep.occupancy_I_sigma;
    }
    rep.steady = std::abs(rep.occupancy_drift) <
                 2.0 * std::max(rep.occupancy_drift_sigma, 1e-300);
    return rep;
}

}  // namespace spinrefl
