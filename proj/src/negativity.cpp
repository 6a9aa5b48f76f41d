#include "hchain/negativity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hchain/errors.hpp"

namespace hchain {

namespace {

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v, const char* which) {
    if (v.empty()) {
        std::ostringstream os;
        os << "group selection: group " << which << " must not be empty";
        throw validation_error(os.str());
    }
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
        std::ostringstream os;
        os << "group selection: group " << which << " contains a repeated index";
        throw validation_error(os.str());
    }
    return v;
}

double negativity_from_min_one(double sum_of_logs) {
    const double n = -sum_of_logs;
    return n == 0.0 ? 0.0 : n;  // never report -0
}

// Lower Cholesky factor; throws on a non-positive pivot.
std::vector<double> cholesky_lower(const SymMatrix& a, const char* who) {
    const std::size_t n = a.dim();
    std::vector<double> l(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double acc = a(i, j);
            for (std::size_t k = 0; k < j; ++k) acc -= l[i * n + k] * l[j * n + k];
            if (i == j) {
                if (acc <= 0.0) {
                    std::ostringstream os;
                    os << who << ": block is not positive definite (Cholesky pivot " << acc
                       << " at index " << i << ")";
                    throw numeric_error(os.str());
                }
                l[i * n + i] = std::sqrt(acc);
            } else {
                l[i * n + j] = acc / l[j * n + j];
            }
        }
    }
    return l;
}

void check_blocks(const SymMatrix& mu_x, const SymMatrix& mu_p, const SignPattern& signs, const char* who) {
    if (mu_x.dim() != mu_p.dim() || mu_x.dim() != signs.signs.size()) {
        std::ostringstream os;
        os << who << ": block dimensions and sign pattern disagree";
        throw validation_error(os.str());
    }
    for (int s : signs.signs)
        if (s != 1 && s != -1) throw validation_error("sign pattern entries must be +1 or -1");
}

std::vector<int> half_split_signs(std::size_t n, bool half_split) {
    std::vector<int> signs(n);
    for (std::size_t i = 0; i < n; ++i)
        signs[i] = half_split ? (i < n / 2 ? 1 : -1) : (i % 2 == 0 ? 1 : -1);
    return signs;
}

bool is_circulant(const SymMatrix& v) {
    const std::size_t n = v.dim();
    const double tol = 1e-12 * std::max(1.0, v.max_abs());
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::fabs(v(i, j) - v(0, (j + n - i) % n)) > tol) return false;
    return true;
}

}  // namespace

GroupSelection::GroupSelection(std::vector<std::size_t> group_a, std::vector<std::size_t> group_b)
    : a_(sorted_unique(std::move(group_a), "a")), b_(sorted_unique(std::move(group_b), "b")) {
    std::vector<std::size_t> overlap;
    std::set_intersection(a_.begin(), a_.end(), b_.begin(), b_.end(), std::back_inserter(overlap));
    if (!overlap.empty()) {
        std::ostringstream os;
        os << "group selection: groups overlap at index " << overlap.front();
        throw validation_error(os.str());
    }
}

std::size_t GroupSelection::max_index() const noexcept {
    return std::max(a_.back(), b_.back());
}

ReducedState reduce(const CovariancePair& cov, const GroupSelection& sel) {
    const std::size_t n = cov.x_block.dim();
    if (sel.max_index() >= n) {
        std::ostringstream os;
        os << "reduce: index " << sel.max_index() << " is out of range for " << n << " oscillators";
        throw validation_error(os.str());
    }
    // Merge the two sorted groups into the union, tracking membership.
    const auto& a = sel.group_a();
    const auto& b = sel.group_b();
    std::vector<std::size_t> union_idx;
    std::vector<int> signs;
    union_idx.reserve(sel.size());
    signs.reserve(sel.size());
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() || ib < b.size()) {
        if (ib == b.size() || (ia < a.size() && a[ia] < b[ib])) {
            union_idx.push_back(a[ia++]);
            signs.push_back(1);
        } else {
            union_idx.push_back(b[ib++]);
            signs.push_back(-1);
        }
    }
    const std::size_t m = union_idx.size();
    SymMatrix mu_x(m), mu_p(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            mu_x.set(i, j, cov.x_block(union_idx[i], union_idx[j]));
            mu_p.set(i, j, cov.p_block(union_idx[i], union_idx[j]));
        }
    return ReducedState{std::move(mu_x), std::move(mu_p), SignPattern{std::move(signs)}};
}

NegativityResult log_negativity(const SymMatrix& mu_x, const SymMatrix& mu_p, const SignPattern& signs) {
    check_blocks(mu_x, mu_p, signs, "log_negativity");
    const auto ex = eigh_symmetric(mu_x);
    if (ex.eigenvalues.front() <= 0.0) {
        std::ostringstream os;
        os << "log_negativity: position block is not positive definite (eigenvalue "
           << ex.eigenvalues.front() << ")";
        throw numeric_error(os.str());
    }
    const SymMatrix root_x = matrix_function(ex, [](double x) { return std::sqrt(x); });
    const SymMatrix flipped_p = sign_conjugate(mu_p, signs.signs);
    const SymMatrix w = sym_sandwich(root_x, flipped_p);
    auto spectrum = eigh_symmetric(w).eigenvalues;
    if (spectrum.front() <= 0.0) {
        std::ostringstream os;
        os << "log_negativity: momentum block is not positive definite (product eigenvalue "
           << spectrum.front() << ")";
        throw numeric_error(os.str());
    }
    double acc = 0.0;
    for (double lam : spectrum) acc += std::log2(std::min(1.0, lam));
    return NegativityResult{negativity_from_min_one(acc), std::move(spectrum)};
}

NegativityResult log_negativity_oracle(const SymMatrix& mu_x, const SymMatrix& mu_p, const SignPattern& signs) {
    check_blocks(mu_x, mu_p, signs, "log_negativity_oracle");
    const std::size_t m = mu_x.dim();
    const auto l = cholesky_lower(mu_x, "log_negativity_oracle");
    const SymMatrix flipped_p = sign_conjugate(mu_p, signs.signs);

    // eig((P mu_p P) mu_x) = eig(L^T (P mu_p P) L) with mu_x = L L^T.
    std::vector<double> al(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            double acc = 0.0;
            for (std::size_t k = j; k < m; ++k) acc += flipped_p(i, k) * l[k * m + j];
            al[i * m + j] = acc;
        }
    std::vector<double> lal(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            double acc = 0.0;
            for (std::size_t k = i; k < m; ++k) acc += l[k * m + i] * al[k * m + j];
            lal[i * m + j] = acc;
        }
    auto spectrum = eigh_symmetric(SymMatrix(m, std::move(lal))).eigenvalues;
    if (spectrum.front() <= 0.0) {
        std::ostringstream os;
        os << "log_negativity_oracle: momentum block is not positive definite (product eigenvalue "
           << spectrum.front() << ")";
        throw numeric_error(os.str());
    }
    // The 2m eigenvalues of B are ±sqrt(lambda)/2; each contributes
    // log2 min(1, 2|eig|) once.
    double acc = 0.0;
    for (double lam : spectrum) {
        const double b_abs = 0.5 * std::sqrt(lam);
        acc += 2.0 * std::log2(std::min(1.0, 2.0 * b_abs));
    }
    return NegativityResult{negativity_from_min_one(acc), std::move(spectrum)};
}

NegativityResult chain_log_negativity(const ChainSpec& spec, const GroupSelection& sel) {
    const CovariancePair cov = covariance_for(spec);
    const ReducedState red = reduce(cov, sel);
    return log_negativity(red.x_block, red.p_block, red.signs);
}

std::vector<double> q_spectrum(const SymMatrix& v, bool half_split) {
    const std::size_t n = v.dim();
    if (n % 2 != 0) throw validation_error("q_spectrum: chain length must be even");
    const auto e = eigh_symmetric(v);
    if (e.eigenvalues.front() <= 0.0) {
        std::ostringstream os;
        os << "q_spectrum: matrix is not positive definite (eigenvalue " << e.eigenvalues.front() << ")";
        throw numeric_error(os.str());
    }
    const SymMatrix root = matrix_function(e, [](double x) { return std::sqrt(x); });
    const SymMatrix quarter_inv = matrix_function(e, [](double x) { return std::pow(x, -0.25); });
    const auto signs = half_split_signs(n, half_split);
    const SymMatrix flipped = sign_conjugate(root, signs);
    return eigh_symmetric(sym_sandwich(quarter_inv, flipped)).eigenvalues;
}

double bisection_bound(const SymMatrix& v) {
    const std::size_t n = v.dim();
    if (n % 2 != 0) throw validation_error("bisection_bound: chain length must be even");
    if (!is_circulant(v)) throw validation_error("bisection_bound: matrix is not circulant");
    const auto e = eigh_symmetric(v);
    if (e.eigenvalues.front() <= 0.0) {
        std::ostringstream os;
        os << "bisection_bound: matrix is not positive definite (eigenvalue " << e.eigenvalues.front() << ")";
        throw numeric_error(os.str());
    }
    const SymMatrix log_v = matrix_function(e, [](double x) { return std::log2(x); });
    double anti_trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) anti_trace += log_v(i, n - 1 - i);
    return 0.5 * std::fabs(anti_trace);
}

double coupling_closed_form(std::span<const double> couplings) {
    double odd_sum = 0.0;
    for (std::size_t k = 0; k < couplings.size(); k += 2) odd_sum += couplings[k];
    const double arg = 1.0 + 4.0 * odd_sum;
    if (arg <= 0.0) {
        std::ostringstream os;
        os << "coupling_closed_form: 1 + 4(alpha_1 + alpha_3 + ...) = " << arg
           << " is not positive (unstable regime)";
        throw numeric_error(os.str());
    }
    return std::log2(arg);
}

double nn_closed_form(double alpha) {
    if (!(alpha >= 0.0)) throw validation_error("nn_closed_form: coupling must be nonnegative");
    return 0.5 * std::log2(1.0 + 4.0 * alpha);
}

double even_odd_negativity(std::size_t n, std::span<const double> couplings) {
    if (n % 2 != 0 || n == 0) throw validation_error("even_odd_negativity: chain length must be even");
    ChainSpec spec;
    spec.n = n;
    spec.couplings.assign(couplings.begin(), couplings.end());
    spec.validate();
    const auto lam = circulant_eigenvalues(ring_first_row(n, couplings));
    const double lam_min = *std::min_element(lam.begin(), lam.end());
    if (lam_min <= 0.0) {
        std::ostringstream os;
        os << "unstable chain: ring mode eigenvalue " << lam_min << " is not positive";
        throw numeric_error(os.str());
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double ratio = std::log2(lam[(k + n / 2) % n] / lam[k]);
        if (ratio > 0.0) acc += ratio;
    }
    return 0.5 * acc;
}

namespace {

double eo_integrand(double alpha, double x) {
    return std::log2((1.0 + 2.0 * alpha * (1.0 + std::cos(x))) / (1.0 + 2.0 * alpha * (1.0 - std::cos(x))));
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (std::fabs(err) <= 15.0 * tol) return left + right + err / 15.0;
    if (depth <= 0) {
        std::ostringstream os;
        os << "even_odd_rate: quadrature did not converge (residual estimate " << std::fabs(err) / 15.0 << ")";
        throw numeric_error(os.str());
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double even_odd_rate(double alpha) {
    if (!(alpha > 0.0)) throw validation_error("even_odd_rate: coupling must be positive");
    const double pi = std::acos(-1.0);
    const std::function<double(double)> f = [alpha](double x) { return eo_integrand(alpha, x); };
    const double a = 0.0, b = 0.5 * pi;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double integral = adaptive_simpson(f, a, b, fa, fm, fb, whole, 1e-10, 40);
    return integral / (2.0 * pi);
}

Definiteness classify_vpp_f(const SymMatrix& v) {
    const std::size_t n = v.dim();
    if (n % 2 != 0) throw validation_error("classify_vpp_f: chain length must be even");
    if (!is_circulant(v)) throw validation_error("classify_vpp_f: matrix is not circulant");
    const std::size_t h = n / 2;
    // (V'' F)_{ i j } = V(i, n-1-j) on the half-size block.
    SymMatrix block(h);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = i; j < h; ++j) block.set(i, j, v(i, n - 1 - j));
    const auto ev = eigh_symmetric(block).eigenvalues;
    constexpr double tol = 1e-10;
    if (ev.back() <= tol) return Definiteness::NegativeSemidefinite;
    if (ev.front() >= -tol) return Definiteness::PositiveSemidefinite;
    return Definiteness::Indefinite;
}

}  // namespace hchain
