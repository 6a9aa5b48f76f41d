#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hchain/errors.hpp"
#include "hchain/linalg.hpp"

using namespace hchain;

namespace {

SymMatrix random_symmetric(std::size_t n, std::mt19937& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.set(i, j, dist(rng));
    return m;
}

SymMatrix random_spd(std::size_t n, std::mt19937& rng) {
    // A^T A + I keeps the spectrum comfortably positive.
    const SymMatrix a = random_symmetric(n, rng);
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double acc = i == j ? 1.0 : 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * a(j, k);
            m.set(i, j, acc);
        }
    return m;
}

double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) d = std::max(d, std::fabs(a(i, j) - b(i, j)));
    return d;
}

SymMatrix circulant_from_row(const std::vector<double>& row) {
    const std::size_t n = row.size();
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.set(i, j, row[(j - i) % n]);
    return m;
}

}  // namespace

TEST_CASE("identity matrix has a unit spectrum and exact reconstruction") {
    const SymMatrix m = SymMatrix::identity(3);
    const auto e = eigh_symmetric(m);
    for (double v : e.eigenvalues) CHECK(v == 1.0);
    const SymMatrix recon = matrix_function(e, [](double x) { return x; });
    CHECK(max_abs_diff(recon, m) == 0.0);
}

TEST_CASE("diagonal matrix sorts its spectrum ascending") {
    SymMatrix m(3);
    m.set(0, 0, 3.0);
    m.set(1, 1, 1.0);
    m.set(2, 2, 2.0);
    const auto e = eigh_symmetric(m);
    CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(e.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("2x2 exchange matrix has eigenvalues -1 and 1") {
    SymMatrix m(2);
    m.set(0, 1, 1.0);
    const auto e = eigh_symmetric(m);
    CHECK(e.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eigenvectors are orthonormal and reconstruct the input") {
    std::mt19937 rng(7);
    for (std::size_t n : {2u, 5u, 13u, 40u}) {
        const SymMatrix m = random_symmetric(n, rng, 3.0);
        const auto e = eigh_symmetric(m);

        double ortho = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double acc = 0.0;
                for (std::size_t k = 0; k < n; ++k) acc += e.eigenvector(k, i) * e.eigenvector(k, j);
                ortho = std::max(ortho, std::fabs(acc - (i == j ? 1.0 : 0.0)));
            }
        CHECK(ortho <= 1e-10);

        const SymMatrix recon = matrix_function(e, [](double x) { return x; });
        CHECK(max_abs_diff(recon, m) <= 1e-9 * std::max(1.0, m.max_abs()));

        double tr = 0.0;
        for (double v : e.eigenvalues) tr += v;
        CHECK(tr == doctest::Approx(m.trace()).epsilon(1e-9));
    }
}

TEST_CASE("eigh output is deterministic") {
    std::mt19937 rng(11);
    const SymMatrix m = random_symmetric(17, rng);
    const auto e1 = eigh_symmetric(m);
    const auto e2 = eigh_symmetric(m);
    CHECK(e1.eigenvalues == e2.eigenvalues);
    CHECK(e1.eigenvectors == e2.eigenvectors);
}

TEST_CASE("square root composed with square returns the input") {
    std::mt19937 rng(23);
    for (std::size_t n : {3u, 8u, 21u}) {
        const SymMatrix m = random_spd(n, rng);
        const auto e = eigh_symmetric(m);
        const SymMatrix root = matrix_function(e, [](double x) { return std::sqrt(x); });
        const SymMatrix back = matrix_function(eigh_symmetric(root), [](double x) { return x * x; });
        CHECK(max_abs_diff(back, m) <= 1e-8 * std::max(1.0, m.max_abs()));
    }
}

TEST_CASE("square root trace of the n=4 strongly coupled ring potential") {
    // First row (1+2a, -a, 0, -a) with a = 20; mode eigenvalues 1, 41, 81, 41.
    const SymMatrix v = circulant_from_row({41.0, -20.0, 0.0, -20.0});
    const SymMatrix root = matrix_function(eigh_symmetric(v), [](double x) { return std::sqrt(x); });
    CHECK(root.trace() == doctest::Approx(10.0 + 2.0 * std::sqrt(41.0)).epsilon(1e-9));
}

TEST_CASE("matrix_function rejects maps that blow up on the spectrum") {
    SymMatrix m(2);
    m.set(0, 0, 1.0);
    m.set(1, 1, -1.0);
    const auto e = eigh_symmetric(m);
    CHECK_THROWS_WITH_AS(matrix_function(e, [](double x) { return std::sqrt(x); }),
                         doctest::Contains("-1"), numeric_error);
}

TEST_CASE("circulant eigenvalues of the nearest-neighbor row") {
    const double a = 20.0;
    const auto lam = circulant_eigenvalues(std::vector<double>{1.0 + 2.0 * a, -a, 0.0, -a});
    REQUIRE(lam.size() == 4);
    CHECK(lam[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lam[1] == doctest::Approx(1.0 + 2.0 * a).epsilon(1e-12));
    CHECK(lam[2] == doctest::Approx(1.0 + 4.0 * a).epsilon(1e-12));
    CHECK(lam[3] == doctest::Approx(1.0 + 2.0 * a).epsilon(1e-12));
}

TEST_CASE("uncoupled row gives a flat unit spectrum") {
    const auto lam = circulant_eigenvalues(std::vector<double>{1.0, 0.0, 0.0, 0.0, 0.0});
    for (double v : lam) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("circulant formula matches the dense eigensolver as a multiset") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (std::size_t n : {2u, 3u, 5u, 8u, 17u, 32u, 64u}) {
        std::vector<double> row(n, 0.0);
        row[0] = dist(rng) + 4.0;
        for (std::size_t j = 1; 2 * j <= n; ++j) {
            const double v = dist(rng);
            row[j] = v;
            row[n - j] = v;
        }
        auto lam = circulant_eigenvalues(row);
        std::sort(lam.begin(), lam.end());
        const auto dense = eigh_symmetric(circulant_from_row(row)).eigenvalues;
        for (std::size_t k = 0; k < n; ++k) CHECK(lam[k] == doctest::Approx(dense[k]).epsilon(1e-9));
    }
}

TEST_CASE("asymmetric circulant rows are rejected") {
    CHECK_THROWS_AS(circulant_eigenvalues(std::vector<double>{1.0, 0.5, 0.0, -0.5}), validation_error);
}

TEST_CASE("degenerate circulant rows are allowed") {
    CHECK(circulant_eigenvalues(std::vector<double>{3.0}).at(0) == 3.0);
    const auto lam = circulant_eigenvalues(std::vector<double>{2.0, -1.0});
    CHECK(lam[0] == doctest::Approx(1.0));
    CHECK(lam[1] == doctest::Approx(3.0));
}

TEST_CASE("sign conjugation flips only mixed-sign entries") {
    std::mt19937 rng(5);
    const SymMatrix m = random_symmetric(4, rng);
    const std::vector<int> signs = {1, -1, 1, -1};
    const SymMatrix c = sign_conjugate(m, signs);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(c(i, j) == (signs[i] * signs[j] < 0 ? -m(i, j) : m(i, j)));
}
