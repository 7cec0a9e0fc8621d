#include "fermatkit/nonexistence.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace fermatkit {

const char* function_class_name(FunctionClass cls) {
    return cls == FunctionClass::Entire ? "entire" : "meromorphic";
}

GateVerdict gate(unsigned m, unsigned n, std::size_t tau, FunctionClass cls) {
    if (m < 1 || n < 1 || tau < 1) {
        raise(ErrorCode::InvalidArgument, "gate requires m >= 1, n >= 1, tau >= 1");
    }
    if (cls == FunctionClass::Meromorphic) {
        const std::size_t threshold = (tau + 1) * (static_cast<std::size_t>(n) + 2) + 2;
        return {m >= threshold, "meromorphic-linear-shift-threshold"};
    }
    return {m >= static_cast<std::size_t>(n) + 2, "entire-linear-shift-threshold"};
}

AnsatzSpace default_lattice(const Scalar& c, int max_j, unsigned max_poly_degree,
                            std::size_t max_terms) {
    if (max_j < 0) raise(ErrorCode::InvalidArgument, "max_j must be >= 0");
    std::complex<double> cc = c.to_complex();
    if (std::abs(cc) == 0.0) raise(ErrorCode::InvalidArgument, "c must be nonzero");
    AnsatzSpace space;
    space.max_poly_degree = max_poly_degree;
    space.max_terms = max_terms;
    space.freq_lattice.push_back(Scalar::floating(0.0));
    for (int j = 1; j <= max_j; ++j) {
        std::complex<double> base = std::complex<double>(0.0, std::numbers::pi * j) / cc;
        space.freq_lattice.push_back(Scalar::floating(base));
        space.freq_lattice.push_back(Scalar::floating(-base));
    }
    std::sort(space.freq_lattice.begin(), space.freq_lattice.end(),
              [](const Scalar& x, const Scalar& y) { return Scalar::cmp_lex(x, y) < 0; });
    return space;
}

namespace {

using cpx = std::complex<double>;

/// Saturating count of nonempty supports of size <= max_terms.
std::size_t count_supports(std::size_t lattice, std::size_t max_terms, std::size_t cap) {
    std::size_t total = 0;
    for (std::size_t s = 1; s <= std::min(max_terms, lattice); ++s) {
        // C(lattice, s), saturating against cap.
        long double binom = 1.0L;
        for (std::size_t t = 0; t < s; ++t) {
            binom = binom * static_cast<long double>(lattice - t) /
                    static_cast<long double>(t + 1);
            if (binom > static_cast<long double>(cap) * 2.0L) return cap + 1;
        }
        std::size_t b = static_cast<std::size_t>(binom + 0.5L);
        if (total > cap - std::min(cap, b)) return cap + 1;
        total += b;
        if (total > cap) return cap + 1;
    }
    return total;
}

void next_combination_init(std::vector<std::size_t>& comb, std::size_t s) {
    comb.resize(s);
    for (std::size_t t = 0; t < s; ++t) comb[t] = t;
}

bool next_combination(std::vector<std::size_t>& comb, std::size_t lattice) {
    std::size_t s = comb.size();
    for (std::size_t t = s; t-- > 0;) {
        if (comb[t] + (s - t) < lattice) {
            ++comb[t];
            for (std::size_t u = t + 1; u < s; ++u) comb[u] = comb[u - 1] + 1;
            return true;
        }
    }
    return false;
}

/// Deterministic uniform draw in [-1.5, 1.5] from the generator's top 53 bits,
/// so every platform sees the same start vectors.
double uniform_sym(std::mt19937_64& rng) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return -1.5 + 3.0 * u;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t support, std::uint64_t start) {
    std::uint64_t h = seed;
    h ^= (support + 1) * 0x9e3779b97f4a7c15ull;
    h ^= (h >> 29);
    h ^= (start + 1) * 0xbf58476d1ce4e5b9ull;
    h ^= (h >> 32);
    return h;
}

cpx ipow(cpx base, unsigned e) {
    cpx acc(1.0, 0.0);
    while (e) {
        if (e & 1u) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

struct SupportProblem {
    std::vector<std::size_t> support; // lattice indices
    std::vector<cpx> freqs;
    unsigned deg = 0;                 // per-frequency polynomial degree cap
    std::size_t unknowns = 0;         // complex unknowns
    unsigned m = 1, n = 1;
    std::vector<cpx> shift_coeffs;    // linear-shift a_j
    // Per fit point: p, q, denom values and the basis (z + j c)^d e^{mu (z + j c)}.
    std::vector<cpx> pv, qv, dv;
    std::vector<std::vector<std::vector<cpx>>> basis; // [point][shift][unknown]
};

SupportProblem make_problem(const std::vector<std::size_t>& support,
                            const std::vector<cpx>& lattice, unsigned deg,
                            const NonlinearShiftEquation& eq,
                            const std::vector<cpx>& points) {
    SupportProblem pr;
    pr.support = support;
    pr.deg = deg;
    pr.m = eq.m;
    pr.n = eq.n;
    for (std::size_t idx : support) pr.freqs.push_back(lattice[idx]);
    pr.unknowns = pr.freqs.size() * (deg + 1);
    for (const Scalar& s : eq.L.coeffs) pr.shift_coeffs.push_back(s.to_complex());
    const cpx c = eq.L.c.to_complex();
    const std::size_t tau = eq.L.coeffs.size() - 1;
    pr.pv.reserve(points.size());
    for (cpx z : points) {
        pr.pv.push_back(ep_eval(eq.p, z));
        pr.qv.push_back(ep_eval(eq.q, z));
        pr.dv.push_back(eq.denom.is_zero() ? cpx(1.0, 0.0) : eq.denom.eval_c(z));
        std::vector<std::vector<cpx>> per_shift;
        for (std::size_t j = 0; j <= tau; ++j) {
            cpx zj = z + static_cast<double>(j) * c;
            std::vector<cpx> row;
            row.reserve(pr.unknowns);
            for (cpx mu : pr.freqs) {
                cpx e = std::exp(mu * zj);
                cpx zp(1.0, 0.0);
                for (unsigned d = 0; d <= deg; ++d) {
                    row.push_back(zp * e);
                    zp *= zj;
                }
            }
            per_shift.push_back(std::move(row));
        }
        pr.basis.push_back(std::move(per_shift));
    }
    return pr;
}

/// Real residual vector (re, im interleaved) of the equation at the fit
/// points for the realified unknown vector x.
bool eval_residual(const SupportProblem& pr, const Eigen::VectorXd& x, Eigen::VectorXd& out) {
    const std::size_t npts = pr.basis.size();
    out.resize(static_cast<long>(2 * npts));
    std::vector<cpx> coef(pr.unknowns);
    for (std::size_t u = 0; u < pr.unknowns; ++u) {
        coef[u] = cpx(x[static_cast<long>(2 * u)], x[static_cast<long>(2 * u + 1)]);
    }
    for (std::size_t i = 0; i < npts; ++i) {
        cpx f0(0.0, 0.0), lf(0.0, 0.0);
        for (std::size_t j = 0; j < pr.basis[i].size(); ++j) {
            cpx fj(0.0, 0.0);
            const auto& row = pr.basis[i][j];
            for (std::size_t u = 0; u < pr.unknowns; ++u) fj += coef[u] * row[u];
            if (j == 0) f0 = fj;
            lf += pr.shift_coeffs[j] * fj;
        }
        cpx r = pr.dv[i] * ipow(f0, pr.m) + pr.qv[i] * ipow(lf, pr.n) - pr.pv[i];
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) return false;
        out[static_cast<long>(2 * i)] = r.real();
        out[static_cast<long>(2 * i + 1)] = r.imag();
    }
    return true;
}

/// Levenberg-Marquardt with forward-difference Jacobian. Returns the final
/// max pointwise |residual|, or +inf when the iteration never reached a
/// finite state.
double levenberg_marquardt(const SupportProblem& pr, Eigen::VectorXd& x, int max_iterations,
                           double target) {
    const long nx = x.size();
    Eigen::VectorXd r;
    if (!eval_residual(pr, x, r)) return std::numeric_limits<double>::infinity();
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    Eigen::MatrixXd jac(r.size(), nx);
    Eigen::VectorXd rh, xt, rt;
    for (int iter = 0; iter < max_iterations; ++iter) {
        double maxabs = 0.0;
        for (long i = 0; i < r.size(); i += 2) {
            maxabs = std::max(maxabs, std::hypot(r[i], r[i + 1]));
        }
        if (maxabs < target) break;
        for (long col = 0; col < nx; ++col) {
            const double h = 1e-7 * std::max(1.0, std::abs(x[col]));
            Eigen::VectorXd xh = x;
            xh[col] += h;
            if (!eval_residual(pr, xh, rh)) return std::numeric_limits<double>::infinity();
            jac.col(col) = (rh - r) / h;
        }
        Eigen::MatrixXd hess = jac.transpose() * jac;
        Eigen::VectorXd grad = jac.transpose() * r;
        if (grad.lpNorm<Eigen::Infinity>() < 1e-14) break;
        bool improved = false;
        for (int tries = 0; tries < 16 && !improved; ++tries) {
            Eigen::MatrixXd damped = hess;
            damped.diagonal().array() += lambda;
            Eigen::VectorXd step = damped.ldlt().solve(-grad);
            xt = x + step;
            if (eval_residual(pr, xt, rt)) {
                double ct = rt.squaredNorm();
                if (ct < cost) {
                    x = xt;
                    r = rt;
                    cost = ct;
                    lambda = std::max(lambda * 0.3, 1e-12);
                    improved = true;
                    break;
                }
            }
            lambda *= 8.0;
            if (lambda > 1e14) break;
        }
        if (!improved) break;
    }
    double maxabs = 0.0;
    for (long i = 0; i < r.size(); i += 2) {
        maxabs = std::max(maxabs, std::hypot(r[i], r[i + 1]));
    }
    return maxabs;
}

ExpPoly assemble_candidate(const SupportProblem& pr, const Eigen::VectorXd& x,
                           const Context& ctx, double trim_eps) {
    std::vector<ExpTerm> terms;
    std::size_t u = 0;
    for (cpx mu : pr.freqs) {
        std::vector<Scalar> coeffs;
        for (unsigned d = 0; d <= pr.deg; ++d, ++u) {
            coeffs.push_back(Scalar::floating(
                cpx(x[static_cast<long>(2 * u)], x[static_cast<long>(2 * u + 1)])));
        }
        Poly p(std::move(coeffs), trim_eps);
        if (!p.is_zero()) terms.push_back({std::move(p), Scalar::floating(mu)});
    }
    return normalize(std::move(terms), ctx);
}

bool less_canonical(const ExpPoly& a, const ExpPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t t = 0; t < a.size(); ++t) {
        int fc = Scalar::cmp_lex(a.terms()[t].freq, b.terms()[t].freq);
        if (fc != 0) return fc < 0;
        const auto& pa = a.terms()[t].poly.coeffs();
        const auto& pb = b.terms()[t].poly.coeffs();
        if (pa.size() != pb.size()) return pa.size() < pb.size();
        for (std::size_t d = 0; d < pa.size(); ++d) {
            int cc = Scalar::cmp_lex(pa[d], pb[d]);
            if (cc != 0) return cc < 0;
        }
    }
    return false;
}

} // namespace

SearchOutcome ansatz_search(const NonlinearShiftEquation& eq, const AnsatzSpace& space,
                            const SearchOptions& opts, const Context& ctx) {
    if (ctx.backend != Backend::Float) {
        raise(ErrorCode::InvalidArgument, "ansatz search runs on the float backend");
    }
    if (space.max_terms < 1) raise(ErrorCode::InvalidArgument, "max_terms must be >= 1");
    if (!(opts.tol > 0.0)) raise(ErrorCode::InvalidArgument, "tol must be positive");
    if (opts.starts < 1 || opts.max_iterations < 1) {
        raise(ErrorCode::InvalidArgument, "starts and max_iterations must be >= 1");
    }
    std::vector<cpx> lattice;
    for (const Scalar& s : space.freq_lattice) lattice.push_back(s.to_complex());

    const std::size_t total = count_supports(lattice.size(), space.max_terms, opts.budget);
    if (total > opts.budget) {
        raise(ErrorCode::BudgetExceeded,
              "the ansatz space holds more than " + std::to_string(opts.budget) +
                  " frequency supports; shrink the lattice or raise the budget");
    }

    std::vector<std::vector<std::size_t>> supports;
    supports.reserve(total);
    for (std::size_t s = 1; s <= std::min(space.max_terms, lattice.size()); ++s) {
        std::vector<std::size_t> comb;
        next_combination_init(comb, s);
        do {
            supports.push_back(comb);
        } while (next_combination(comb, lattice.size()));
    }

    // Fixed quasi-random points: first half fits, second half cross-checks,
    // so an interpolation artifact on the fit set cannot slip through.
    const std::size_t half = std::max<std::size_t>(
        24, 2 * (space.max_poly_degree + 1) * space.max_terms + 8);
    const std::vector<cpx> all_points = halton_disk(2 * half);
    const std::vector<cpx> fit_points(all_points.begin(), all_points.begin() + half);

    std::vector<std::vector<ExpPoly>> found(supports.size());

    auto examine = [&](std::size_t sidx) {
        const auto& support = supports[sidx];
        SupportProblem pr = make_problem(support, lattice, space.max_poly_degree, eq,
                                         fit_points);
        const long nx = static_cast<long>(2 * pr.unknowns);
        std::vector<ExpPoly> hits;
        for (int start = 0; start < opts.starts; ++start) {
            Eigen::VectorXd x(nx);
            if (start == 0) {
                x.setZero();
            } else if (start == 1) {
                for (long t = 0; t < nx; t += 2) {
                    x[t] = 1.0;
                    x[t + 1] = 0.0;
                }
            } else {
                std::mt19937_64 rng(mix_seed(opts.seed, sidx, static_cast<std::uint64_t>(start)));
                for (long t = 0; t < nx; ++t) x[t] = uniform_sym(rng);
            }
            double fit = levenberg_marquardt(pr, x, opts.max_iterations, 0.01 * opts.tol);
            if (!(fit < opts.tol)) continue;
            ExpPoly cand = assemble_candidate(pr, x, ctx, ctx.eps_zero);
            double res = sample_residual(cand, eq, all_points);
            if (!(res < opts.tol)) {
                // Trimming may have removed a coefficient that mattered.
                cand = assemble_candidate(pr, x, ctx, 0.0);
                res = sample_residual(cand, eq, all_points);
                if (!(res < opts.tol)) continue;
            }
            if (cand.is_zero()) continue;
            hits.push_back(std::move(cand));
        }
        return hits;
    };

    if (opts.parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
        for (long sidx = 0; sidx < static_cast<long>(supports.size()); ++sidx) {
            found[static_cast<std::size_t>(sidx)] = examine(static_cast<std::size_t>(sidx));
        }
#else
        for (std::size_t sidx = 0; sidx < supports.size(); ++sidx) found[sidx] = examine(sidx);
#endif
    } else {
        for (std::size_t sidx = 0; sidx < supports.size(); ++sidx) found[sidx] = examine(sidx);
    }

    std::vector<ExpPoly> results;
    Context loose = ctx;
    loose.eps_zero = 1e-6; // dedup tolerance for near-identical candidates
    for (auto& slot : found) {
        for (auto& cand : slot) {
            bool dup = false;
            for (const ExpPoly& kept : results) {
                if (ep_equal(kept, cand, loose)) {
                    dup = true;
                    break;
                }
            }
            if (!dup) results.push_back(std::move(cand));
        }
    }
    if (results.empty()) {
        return ExhaustionCertificate{space, supports.size(), opts.tol};
    }
    std::sort(results.begin(), results.end(), less_canonical);
    return results;
}

} // namespace fermatkit
