#include "hgr/filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hgr/error.hpp"

namespace hgr {

namespace {

std::vector<double> fuse(const std::vector<std::vector<double>>& members, Fusion fusion) {
    const std::size_t dim = members.front().size();
    std::vector<double> out(dim, 0.0);
    if (fusion == Fusion::Mean) {
        for (const auto& v : members)
            for (std::size_t i = 0; i < dim; ++i) out[i] += v[i];
        for (auto& x : out) x /= static_cast<double>(members.size());
        return out;
    }
    std::vector<double> column(members.size());
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t m = 0; m < members.size(); ++m) column[m] = members[m][i];
        std::sort(column.begin(), column.end());
        const std::size_t n = column.size();
        out[i] = n % 2 ? column[n / 2] : 0.5 * (column[n / 2 - 1] + column[n / 2]);
    }
    return out;
}

}  // namespace

RepresentativeSet build_filter(const std::vector<std::vector<std::vector<double>>>& training, Fusion fusion,
                               Similarity similarity_kind, double mu) {
    if (similarity_kind == Similarity::Cosine && (mu < -1.0 || mu > 1.0))
        throw std::invalid_argument("cosine threshold must lie in [-1, 1]");
    if (similarity_kind == Similarity::Euclidean && mu < 0.0)
        throw std::invalid_argument("euclidean similarity threshold must be non-negative");

    RepresentativeSet set;
    set.fusion = fusion;
    set.similarity = similarity_kind;
    set.mu = mu;

    std::size_t dim = 0;
    bool have_dim = false;
    for (std::size_t c = 0; c < training.size(); ++c) {
        if (training[c].empty()) throw EmptyClass(c);
        for (const auto& v : training[c]) {
            if (!have_dim) {
                dim = v.size();
                have_dim = true;
            } else if (v.size() != dim) {
                throw DimensionMismatch(dim, v.size());
            }
        }
        set.prototypes.push_back(fuse(training[c], fusion));
    }
    return set;
}

double similarity(std::span<const double> a, std::span<const double> b, Similarity kind) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
    if (kind == Similarity::Cosine) {
        double dot = 0, na = 0, nb = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            dot += a[i] * b[i];
            na += a[i] * a[i];
            nb += b[i] * b[i];
        }
        if (na == 0.0 || nb == 0.0) throw ZeroVector();
        return dot / (std::sqrt(na) * std::sqrt(nb));
    }
    double d2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d2 += (a[i] - b[i]) * (a[i] - b[i]);
    return 1.0 / (1.0 + std::sqrt(d2));
}

double best_similarity(std::span<const double> v, const RepresentativeSet& filt) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& proto : filt.prototypes) best = std::max(best, similarity(v, proto, filt.similarity));
    return best;
}

bool passes_filter(std::span<const double> v, const RepresentativeSet& filt) {
    return best_similarity(v, filt) > filt.mu;
}

}  // namespace hgr
