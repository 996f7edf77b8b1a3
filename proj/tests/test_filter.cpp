#include <doctest.h>

#include <cmath>
#include <random>

#include "hgr/error.hpp"
#include "hgr/filter.hpp"
#include "synthetic.hpp"

using namespace hgr;
using Vecs = std::vector<std::vector<double>>;

TEST_CASE("mean and median fusion") {
    auto mean = build_filter({Vecs{{1, 0}, {0, 1}}}, Fusion::Mean, Similarity::Cosine, 0.9);
    CHECK(mean.prototypes[0] == std::vector<double>{0.5, 0.5});

    const std::vector<double> v{0.3, -2.0, 7.0};
    for (Fusion f : {Fusion::Mean, Fusion::Median}) {
        auto same = build_filter({Vecs{v, v, v}}, f, Similarity::Cosine, 0.9);
        CHECK(same.prototypes[0] == v);
    }

    auto median = build_filter({Vecs{{0, 0}, {0, 0}, {9, 9}}}, Fusion::Median, Similarity::Euclidean, 0.5);
    CHECK(median.prototypes[0] == std::vector<double>{0, 0});
}

TEST_CASE("build_filter errors") {
    CHECK_THROWS_AS(build_filter({Vecs{{1, 2}}, Vecs{}}, Fusion::Mean, Similarity::Cosine, 0.5), EmptyClass);
    CHECK_THROWS_AS(build_filter({Vecs{{1, 2}}, Vecs{{1, 2, 3}}}, Fusion::Mean, Similarity::Cosine, 0.5),
                    DimensionMismatch);
}

TEST_CASE("cosine gate") {
    auto filt = build_filter({Vecs{{1, 0, 0}}, Vecs{{0, 1, 0}}}, Fusion::Mean, Similarity::Cosine, 0.99);
    const std::vector<double> self{0, 1, 0};
    CHECK(passes_filter(self, filt));
    filt.mu = 0.5;
    const std::vector<double> ortho{0, 0, 3};
    CHECK_FALSE(passes_filter(ortho, filt));
    const std::vector<double> zero{0, 0, 0};
    CHECK_THROWS_AS(passes_filter(zero, filt), ZeroVector);
}

TEST_CASE("euclidean gate uses 1/(1+d)") {
    auto filt = build_filter({Vecs{{0, 0}}}, Fusion::Mean, Similarity::Euclidean, 0.6);
    const std::vector<double> v{1, 0};
    CHECK(best_similarity(v, filt) == doctest::Approx(0.5));
    CHECK_FALSE(passes_filter(v, filt));
    filt.mu = 0.4;
    CHECK(passes_filter(v, filt));
}

TEST_CASE("mean prototype norm is bounded by its members") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 100; ++trial) {
        Vecs members;
        double max_norm = 0;
        const std::size_t m = 1 + gen() % 8;
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<double> v(6);
            double n2 = 0;
            for (auto& x : v) {
                x = hgr::testing::uniform(gen, -3, 3);
                n2 += x * x;
            }
            max_norm = std::max(max_norm, std::sqrt(n2));
            members.push_back(v);
        }
        const auto f = build_filter({members}, Fusion::Mean, Similarity::Cosine, 0.5);
        double n2 = 0;
        for (double x : f.prototypes[0]) n2 += x * x;
        CHECK(std::sqrt(n2) <= max_norm + 1e-12);
    }
}

TEST_CASE("filter acceptance is monotone in mu") {
    std::mt19937_64 gen(23);
    auto filt = build_filter({Vecs{{1, 0.2, 0}}, Vecs{{-0.3, 1, 0.5}}}, Fusion::Mean, Similarity::Cosine, 0.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::vector<double> v{hgr::testing::uniform(gen, -1, 1), hgr::testing::uniform(gen, -1, 1),
                                    hgr::testing::uniform(gen, -1, 1)};
        const double mu1 = hgr::testing::uniform(gen, -1, 1);
        const double mu2 = hgr::testing::uniform(gen, -1, mu1);
        filt.mu = mu1;
        const bool at1 = passes_filter(v, filt);
        filt.mu = mu2;
        if (at1) CHECK(passes_filter(v, filt));
    }
}

TEST_CASE("threshold range validation") {
    CHECK_THROWS_AS(build_filter({Vecs{{1}}}, Fusion::Mean, Similarity::Cosine, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(build_filter({Vecs{{1}}}, Fusion::Mean, Similarity::Euclidean, -0.1), std::invalid_argument);
}
