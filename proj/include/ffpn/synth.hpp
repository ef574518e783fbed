#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ffpn/csr.hpp"
#include "ffpn/descriptor.hpp"

namespace ffpn {

/// Random band-limited contour generator. Harmonic i draws each
/// coefficient uniformly in +-(base_radius / i^decay_power), then the
/// first-harmonic x and y amplitudes are pushed up to at least
/// 0.5 * base_radius so shapes cannot collapse. Centers land far enough
/// from the border for the nominal radius to fit.
struct SynthConfig {
    int count = 1;
    int n_harmonics = 7; // at most 7
    double base_radius = 50.0;
    double decay_power = 2.0;
    int image_w = 416;
    int image_h = 416;
    uint64_t seed = 0;
};

/// Draws `count` items; each is the ground-truth polygon (decoded at
/// 360 samples) plus the descriptor it came from. Candidates that
/// self-intersect or leave the image are redrawn, consuming a fixed
/// number of random draws per attempt so outcomes stay reproducible.
/// More than 1000 rejections for one item throws GenerationFailure.
std::vector<std::pair<Contour, FourierDescriptor>> synth_dataset(const SynthConfig& cfg);

/// Perturbation model for exercising the refinement pipeline.
struct NoiseConfig {
    double coeff_sigma = 0.1; // fraction of the first-harmonic amplitude
    double center_sigma = 0.0; // pixels
    int proposals_per_gt = 20;
    uint64_t seed = 0;
};

/// proposals_per_gt copies of gt with independent zero-mean Gaussian
/// noise on every coefficient (sigma = coeff_sigma * first-harmonic
/// amplitude, the mean of the x and y amplitudes) and on the center
/// (sigma = center_sigma). Each proposal is scored by its combined
/// overlap with the unperturbed gt. Zero sigmas reproduce gt exactly.
std::vector<ScoredProposal> simulate_proposals(const FourierDescriptor& gt,
                                               const NoiseConfig& cfg);

} // namespace ffpn
