// Acceptance suite: every published contract of the library, one pass/fail
// line per criterion, exit code = number of failures.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "hchain/experiments.hpp"
#include "hchain/negativity.hpp"

using namespace hchain;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": " << title;
    if (!detail.empty()) std::cout << " — " << detail;
    std::cout << "\n";
    if (!pass) ++failures;
}

ChainSpec ring(std::size_t n, std::vector<double> couplings,
               double beta = std::numeric_limits<double>::infinity()) {
    ChainSpec spec;
    spec.n = n;
    spec.couplings = std::move(couplings);
    spec.inverse_temperature = beta;
    return spec;
}

GroupSelection contiguous_bisection(std::size_t n) {
    std::vector<std::size_t> a(n / 2), b(n - n / 2);
    std::iota(a.begin(), a.end(), 0);
    std::iota(b.begin(), b.end(), n / 2);
    return GroupSelection(std::move(a), std::move(b));
}

std::vector<double> product_spectrum(const SymMatrix& a, const SymMatrix& b) {
    const SymMatrix root = matrix_function(eigh_symmetric(a), [](double x) { return std::sqrt(x); });
    return eigh_symmetric(sym_sandwich(root, b)).eigenvalues;
}

void criterion_1() {
    double worst = 0.0;
    for (double alpha : {0.1, 1.0, 5.0, 20.0}) {
        const double closed = 0.5 * std::log2(1.0 + 4.0 * alpha);
        for (std::size_t n : {4u, 8u, 16u, 32u, 64u}) {
            const double n_num =
                chain_log_negativity(ring(n, {alpha}), contiguous_bisection(n)).log_negativity;
            worst = std::max(worst, std::fabs(n_num - closed));
        }
    }
    std::ostringstream os;
    os << "max |N - log2(1+4a)/2| = " << worst << " over a in {0.1,1,5,20}, n in {4..64}";
    report(1, "nearest-neighbor bisection matches the closed form, independent of n (tol 1e-8)",
           worst <= 1e-8, os.str());
}

void criterion_2() {
    const CovariancePair cov = covariance_for(ring(40, {20.0}));
    const ReducedState pairs = reduce(cov, GroupSelection({0, 1}, {3, 4}));
    const auto spectrum = log_negativity(pairs.x_block, pairs.p_block, pairs.signs).symplectic_spectrum;
    const double expected[] = {0.88361, 1.0938, 1.1339, 2.063};
    bool pass = spectrum.size() == 4;
    double worst = 0.0;
    for (std::size_t k = 0; pass && k < 4; ++k) worst = std::max(worst, std::fabs(spectrum[k] - expected[k]));
    pass = pass && worst <= 5e-4;

    const ReducedState single = reduce(cov, GroupSelection({0}, {3}));
    const NegativityResult pair_res = log_negativity(single.x_block, single.p_block, single.signs);
    const double pair_expected[] = {1.1724, 1.8065};
    double pair_worst = 0.0;
    for (std::size_t k = 0; k < 2; ++k)
        pair_worst = std::max(pair_worst, std::fabs(pair_res.symplectic_spectrum[k] - pair_expected[k]));
    pass = pass && pair_worst <= 5e-4 && pair_res.log_negativity == 0.0;

    std::ostringstream os;
    os << "group spectrum off by " << worst << ", pair spectrum off by " << pair_worst
       << ", pair N = " << pair_res.log_negativity;
    report(2, "n=40, a=20 golden spectra for {1,2}|{4,5} and (1,4) (tol 5e-4)", pass, os.str());
}

double energy_per_negativity(std::size_t n, double alpha) {
    const SymMatrix v = build_potential(ring(n, {alpha}));
    const double e_per = ground_energy(v) / static_cast<double>(n);
    const double log_neg =
        chain_log_negativity(ring(n, {alpha}), contiguous_bisection(n)).log_negativity;
    return e_per / std::exp2(log_neg);
}

void criterion_3() {
    const double r20 = energy_per_negativity(20, 1e6);
    const double r400 = energy_per_negativity(400, 1e6);
    const double two_over_pi = 2.0 / std::acos(-1.0);
    const bool pass = std::fabs(r20 - 0.63531) <= 1e-3 && std::fabs(r400 - two_over_pi) <= 1e-3;
    std::ostringstream os;
    os << "n=20: " << r20 << " (ref 0.63531), n=400: " << r400 << " (ref 2/pi = " << two_over_pi << ")";
    report(3, "energy per oscillator per unit negativity at strong coupling (tol 1e-3)", pass, os.str());
}

void criterion_4() {
    std::mt19937 rng(515);
    std::uniform_real_distribution<double> alpha_dist(0.1, 30.0);
    bool pass = true;
    double worst_closed = 0.0, min_indefinite_gap = 1e300, worst_equality = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 8 + 2 * (rng() % 13);
        const std::size_t m = 1 + rng() % 3;
        std::vector<double> alphas;
        for (std::size_t k = 0; k < m; ++k) alphas.push_back(alpha_dist(rng));
        const SymMatrix v = build_potential(ring(n, alphas));
        const double n_bisect =
            chain_log_negativity(ring(n, alphas), contiguous_bisection(n)).log_negativity;
        const double bound = bisection_bound(v);
        pass = pass && n_bisect >= bound - 1e-9;
        worst_closed = std::max(worst_closed, std::fabs(2.0 * bound - coupling_closed_form(alphas)));
        const bool semidefinite = classify_vpp_f(v) != Definiteness::Indefinite;
        const double gap = std::fabs(n_bisect - bound);
        if (semidefinite)
            worst_equality = std::max(worst_equality, gap);
        else
            min_indefinite_gap = std::min(min_indefinite_gap, gap);
        pass = pass && ((gap <= 1e-9) == semidefinite);
    }
    pass = pass && worst_closed <= 1e-10;
    std::ostringstream os;
    os << "equality residual " << worst_equality << " when semidefinite, smallest strict gap "
       << min_indefinite_gap << ", closed-form residual " << worst_closed;
    report(4, "bisection bound, equality condition and coupling closed form over 100 random chains",
           pass, os.str());
}

void criterion_5() {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> alpha_dist(0.1, 25.0);
    double worst = 0.0;
    int checked = 0;
    while (checked < 200) {
        const std::size_t n = 8 + 2 * (rng() % 13);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const std::size_t size_a = 1 + rng() % 8;
        const std::size_t size_b = 1 + rng() % 8;
        if (size_a + size_b > std::min<std::size_t>(n, 16)) continue;
        const double betas[] = {std::numeric_limits<double>::infinity(), 2.0, 0.5};
        const CovariancePair cov = covariance_for(ring(n, {alpha_dist(rng)}, betas[rng() % 3]));
        std::vector<std::size_t> ga(perm.begin(), perm.begin() + size_a);
        std::vector<std::size_t> gb(perm.begin() + size_a, perm.begin() + size_a + size_b);
        const ReducedState red = reduce(cov, GroupSelection(std::move(ga), std::move(gb)));
        const double direct = log_negativity(red.x_block, red.p_block, red.signs).log_negativity;
        const double oracle = log_negativity_oracle(red.x_block, red.p_block, red.signs).log_negativity;
        worst = std::max(worst, std::fabs(direct - oracle));
        ++checked;
    }
    std::ostringstream os;
    os << "max |N_direct - N_block| = " << worst << " over 200 bipartitions, ground and thermal";
    report(5, "spectral route agrees with the block-product route (tol 1e-9)", worst <= 1e-9, os.str());
}

void criterion_6() {
    bool reciprocal_ok = true, count_ok = true, separation_ok = true;
    double worst_recip = 0.0, min_distance = 1e300;
    for (double alpha : {0.5, 5.0, 20.0}) {
        const auto lam = q_spectrum(build_potential(ring(20, {alpha})));
        std::vector<double> recip;
        for (double v : lam) recip.push_back(1.0 / v);
        std::sort(recip.begin(), recip.end());
        for (std::size_t k = 0; k < lam.size(); ++k)
            worst_recip = std::max(worst_recip, std::fabs(recip[k] - lam[k]));
        const auto above = std::count_if(lam.begin(), lam.end(), [](double v) { return v > 1.0; });
        count_ok = count_ok && above == 10;
        for (double v : lam) min_distance = std::min(min_distance, std::fabs(v - 1.0));
    }
    reciprocal_ok = worst_recip <= 1e-8;
    separation_ok = min_distance > 1e-6;
    std::ostringstream os;
    os << "reciprocal residual " << worst_recip << ", n/2 split " << (count_ok ? "exact" : "broken")
       << ", min |eig - 1| = " << min_distance;
    report(6, "Q-spectrum: reciprocal pairs, exact n/2 split, no eigenvalue within 1e-6 of 1",
           reciprocal_ok && count_ok && separation_ok, os.str());
    if (!separation_ok && reciprocal_ok && count_ok) {
        std::cout << "       note: the near-unity eigenvalues approach 1 exponentially in the chain "
                     "length; at n=20 the true spectrum passes within ~4e-9 (a=20) and ~2e-11 (a=0.5) "
                     "of 1, so a 1e-6 exclusion band around 1 cannot hold. Reciprocal pairing and the "
                     "exact n/2 split above/below 1 both hold.\n";
    }
}

void criterion_7() {
    double worst = 0.0;
    for (std::size_t n = 8; n <= 80; n += 8) {
        std::vector<std::size_t> evens, odds;
        for (std::size_t i = 0; i < n; i += 2) evens.push_back(i);
        for (std::size_t i = 1; i < n; i += 2) odds.push_back(i);
        const double general =
            chain_log_negativity(ring(n, {20.0}), GroupSelection(evens, odds)).log_negativity;
        const double closed = even_odd_negativity(n, std::vector<double>{20.0});
        worst = std::max(worst, std::fabs(general - closed));
    }
    const double rate = even_odd_rate(20.0);
    const double per_site = even_odd_negativity(400, std::vector<double>{20.0}) / 400.0;
    const bool pass = worst <= 1e-9 && std::fabs(per_site - rate) <= 1e-3;
    std::ostringstream os;
    os << "closed-vs-general residual " << worst << "; N/n at n=400 is " << per_site
       << " vs quadrature rate " << rate;
    report(7, "even-odd closed sum (tol 1e-9) and its linear growth rate (tol 1e-3)", pass, os.str());
}

void criterion_8() {
    const CovariancePair cov = covariance_for(ring(40, {20.0}));
    bool pass = true;
    for (std::size_t d = 1; d <= 19; ++d) {
        const ReducedState red = reduce(cov, GroupSelection({0}, {1 + d}));
        pass = pass && log_negativity(red.x_block, red.p_block, red.signs).log_negativity == 0.0;
    }
    const ReducedState sep1 = reduce(cov, GroupSelection({0, 1}, {3, 4}));
    const ReducedState sep2 = reduce(cov, GroupSelection({0, 1}, {4, 5}));
    const double n_sep1 = log_negativity(sep1.x_block, sep1.p_block, sep1.signs).log_negativity;
    const double n_sep2 = log_negativity(sep2.x_block, sep2.p_block, sep2.signs).log_negativity;
    pass = pass && n_sep1 > 0.0 && n_sep2 == 0.0;
    std::ostringstream os;
    os << "pairs vanish at every separation >= 1; size-2 groups: N(sep 1) = " << n_sep1
       << ", N(sep 2) = " << n_sep2;
    report(8, "separation thresholds in the n=40, a=20 ring (exact zeros)", pass, os.str());
}

void criterion_9() {
    const SymMatrix v = build_potential(ring(20, {20.0}));
    const CovariancePair ground = ground_covariance(v);
    const CovariancePair frozen = thermal_covariance(v, std::numeric_limits<double>::infinity());
    const bool bitwise =
        std::memcmp(ground.x_block.data().data(), frozen.x_block.data().data(), sizeof(double) * 400) == 0 &&
        std::memcmp(ground.p_block.data().data(), frozen.p_block.data().data(), sizeof(double) * 400) == 0;

    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    double last = -1.0;
    for (int k = 0; k < 50; ++k) {
        const double t = 50.0 * static_cast<double>(k) / 49.0;
        const double beta = t > 0.0 ? 1.0 / t : std::numeric_limits<double>::infinity();
        last = chain_log_negativity(ring(20, {20.0}, beta), contiguous_bisection(20)).log_negativity;
        monotone = monotone && last <= prev + 1e-9;
        prev = last;
    }
    const bool pass = bitwise && monotone && last == 0.0;
    std::ostringstream os;
    os << "beta=inf covariance " << (bitwise ? "bit-identical" : "differs") << "; N(T) "
       << (monotone ? "nonincreasing" : "not monotone") << ", N(T=50) = " << last;
    report(9, "thermal limits: exact ground-state limit and monotone decay to zero", pass, os.str());
}

void criterion_10() {
    double ground_worst = 0.0;
    double thermal_min = 1e300;
    for (double alpha : {0.1, 20.0}) {
        for (std::size_t n : {8u, 20u, 40u}) {
            const CovariancePair g = covariance_for(ring(n, {alpha}));
            for (double lam : product_spectrum(g.x_block, g.p_block))
                ground_worst = std::max(ground_worst, std::fabs(lam - 1.0));
            for (double beta : {0.5, 2.0}) {
                const CovariancePair t = covariance_for(ring(n, {alpha}, beta));
                for (double lam : product_spectrum(t.x_block, t.p_block))
                    thermal_min = std::min(thermal_min, lam);
            }
        }
    }
    const bool pass = ground_worst <= 1e-8 && thermal_min >= 1.0 - 1e-10;
    std::ostringstream os;
    os << "ground |spec(xp) - 1| <= " << ground_worst << ", thermal min spec(xp) = " << thermal_min;
    report(10, "purity of the ground state and thermal uncertainty across the suite specs", pass, os.str());
}

void criterion_11() {
    ScenarioConfig cfg = default_scenario(ScenarioKind::BisectionGrid);
    cfg.n1 = {1, 8, 1};
    cfg.n2 = {1, 8, 1};
    std::ostringstream a, b;
    write_csv(run_scenario(cfg), a);
    write_csv(run_scenario(cfg), b);
    const bool pass = a.str() == b.str() && !a.str().empty();
    report(11, "scenario runner emits byte-identical CSV across runs", pass,
           pass ? "identical" : "outputs differ");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed")
              << "\n";
    return failures;
}
