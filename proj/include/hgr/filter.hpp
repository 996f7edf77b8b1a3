#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hgr {

enum class Fusion { Mean, Median };
enum class Similarity { Cosine, Euclidean };

/// Per-class prototypes plus the acceptance threshold of the
/// false-positive filter. For Euclidean similarity the score is
/// 1 / (1 + distance), so `mu` is a similarity in both modes.
struct RepresentativeSet {
    std::vector<std::vector<double>> prototypes;  // indexed by class
    Fusion fusion = Fusion::Mean;
    Similarity similarity = Similarity::Cosine;
    double mu = 0.93;

    std::size_t dimension() const { return prototypes.empty() ? 0 : prototypes.front().size(); }
};

/// `training[c]` holds the vectors of class c. Throws EmptyClass or
/// DimensionMismatch.
RepresentativeSet build_filter(const std::vector<std::vector<std::vector<double>>>& training, Fusion fusion,
                               Similarity similarity, double mu);

/// Throws ZeroVector for cosine with an all-zero operand.
double similarity(std::span<const double> a, std::span<const double> b, Similarity kind);

/// Highest similarity to any prototype.
double best_similarity(std::span<const double> v, const RepresentativeSet& filt);

/// True iff some prototype is strictly more similar than mu.
bool passes_filter(std::span<const double> v, const RepresentativeSet& filt);

}  // namespace hgr
