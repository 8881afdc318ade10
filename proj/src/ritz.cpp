#include "gapcert/ritz.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "gapcert/quadrature.hpp"

namespace gapcert {

namespace {

constexpr int kOrder = 10;
using JK = Jet<kOrder>;
using JP = Jet<kOrder + 1>;

using Weights = std::vector<std::vector<double>>;  // [combo][basis function]

struct Context {
    Interval T, L, L2, pi2T, T2, C0;
    std::vector<Interval> nu;
    std::optional<double> apex_u;
    int nb = 0;

    Context(const Interval& t0, const TrialBasis& basis) {
        if (!(t0.lo > 0.0)) throw DomainError("t0 must be positive");
        T = Interval(1.0) / pow_2_3(t0);
        L = Interval(2.0) * T;
        L2 = sqr(L);
        T2 = sqr(T);
        pi2T = sqr(pi_enclosure()) * T;
        C0 = barrier_constant();
        nu = basis.nu;
        apex_u = basis.apex_u;
        nb = basis.size();
    }

    // Ql(u,s) = [pi^2 T (T^2 (1+s)^2 - u^2 L^2) + C0] / L^2 and the mirrored Qr.
    Interval ql_const(const Interval& s) const { return (pi2T * T2 * sqr(Interval(1.0) + s) + C0) / L2; }
    Interval qr_const(const Interval& s) const { return (pi2T * T2 * sqr(Interval(1.0) - s) + C0) / L2; }
    Interval dql(const Interval& s) const { return Interval(2.0) * pi2T * T2 * (Interval(1.0) + s) / L2; }
    Interval dqr(const Interval& s) const { return -(Interval(2.0) * pi2T * T2 * (Interval(1.0) - s) / L2); }
};

struct ComboJets {
    std::vector<JK> psi, dpsi, ell, r;
};

// Evaluates the combinations psi_k, psi_k', psi_k/u and psi_k/(1-u) as order-K jets.
void eval_combos(const Context& c, const Weights& w, const Interval& u, bool apex_active, ComboJets& out) {
    std::size_t m = w.size();
    JP U = JP::variable(u);
    JP one_minus = Interval(1.0) - U;
    int n = static_cast<int>(c.nu.size());
    std::vector<JP> G(n);
    std::vector<bool> used(n, false);
    for (std::size_t k = 0; k < m; ++k)
        for (int i = 0; i < n; ++i)
            if (w[k][i] != 0.0) used[i] = true;
    for (int i = 0; i < n; ++i)
        if (used[i]) G[i] = exp(-sqr((U - c.nu[i]) * c.L));
    JP E, apex_phi, apex_ell;
    bool apex = apex_active && c.apex_u.has_value();
    if (apex) {
        Interval uc(*c.apex_u);
        JP lin = (U - uc) * c.L + Interval(1.0);
        E = exp(-sqr(lin));
        JP cap = (uc - U) * c.L2;
        apex_ell = cap * E;
        apex_phi = U * apex_ell;
    }
    JP base = U * one_minus;
    Interval negL2 = -c.L2;
    out.psi.resize(m);
    out.dpsi.resize(m);
    out.ell.resize(m);
    out.r.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        JP S;
        for (int i = 0; i < n; ++i)
            if (w[k][i] != 0.0) S = S + G[i] * Interval(w[k][i]);
        JP psi = base * S * negL2;
        JP ell = one_minus * S * negL2;
        JP r = U * S * negL2;
        if (apex) {
            double wa = w[k][n];
            if (wa != 0.0) {
                psi = psi + apex_phi * Interval(wa);
                ell = ell + apex_ell * Interval(wa);
            }
        }
        out.dpsi[k] = differentiate(psi);
        out.psi[k] = truncate<kOrder>(psi);
        out.ell[k] = truncate<kOrder>(ell);
        out.r[k] = truncate<kOrder>(r);
    }
}

struct Segment {
    double a, b;
    bool left;
    bool apex;
    bool lint;
    bool rint;
};

struct Parts {
    std::size_t m = 0;
    std::vector<Interval> mass, grad, pot, deriv;  // packed upper triangle, raw u-integrals except deriv
    bool budget_exceeded = false;
};

std::size_t pair_count(std::size_t m) { return m * (m + 1) / 2; }

// Dyadic point of J so that (1 + s_m)/2 is exact.
double dyadic_mid(const Interval& J) {
    if (J.is_point()) return J.lo;
    double m = std::ldexp(std::nearbyint(std::ldexp(J.mid(), 40)), -40);
    return std::clamp(m, J.lo, J.hi);
}

Interval apex_preimage(const Interval& s) { return (Interval(1.0) + s) / Interval(2.0); }

// Raw integrals of all pair products over u in [0,1] at s_m, plus the mean-value
// derivative term over J.
Parts rigorous_parts(const Context& c, const Weights& w, const Interval& J, double s_m, double target) {
    if (J.lo < 0.0 || J.hi > 1.0) throw DomainError("s interval outside [0,1]");
    std::size_t m = w.size();
    std::size_t P = pair_count(m);
    Parts parts;
    parts.m = m;
    parts.mass.assign(P, Interval(0.0));
    parts.grad.assign(P, Interval(0.0));
    parts.pot.assign(P, Interval(0.0));
    parts.deriv.assign(P, Interval(0.0));
    std::vector<Interval> lint(P, Interval(0.0)), rint(P, Interval(0.0));

    Interval M = apex_preimage(J);
    Interval um = apex_preimage(Interval(s_m));
    Interval sm(s_m);
    Interval qlm = c.ql_const(sm), qrm = c.qr_const(sm);

    std::vector<Segment> segs;
    double start = 0.0;
    if (c.apex_u) {
        double uc = *c.apex_u;
        if (uc > M.lo) throw DomainError("apex function extends past the apex preimage");
        segs.push_back({0.0, uc, true, true, true, false});
        start = uc;
    }
    segs.push_back({start, M.lo, true, false, true, false});
    segs.push_back({M.lo, um.lo, true, false, false, false});
    segs.push_back({um.hi, M.hi, false, false, false, false});
    segs.push_back({M.hi, 1.0, false, false, false, true});

    double seg_target = target / 4.0;
    double tl = seg_target / c.L.hi;
    ComboJets cj;
    for (const Segment& sg : segs) {
        if (!(sg.a < sg.b)) continue;
        bool extra = sg.lint || sg.rint;
        std::size_t outputs = (extra ? 4 : 3) * P;
        std::vector<double> targets(outputs, tl);
        for (std::size_t p = 0; p < P; ++p) targets[P + p] = seg_target * c.L.lo;
        auto f = [&](const JK& u, std::vector<JK>& out) {
            eval_combos(c, w, u.c[0], sg.apex, cj);
            JK U = JK::variable(u.c[0]);
            JK Q = sg.left ? qlm - sqr(U) * c.pi2T : qrm - sqr(Interval(1.0) - U) * c.pi2T;
            const std::vector<JK>& side = sg.left ? cj.ell : cj.r;
            std::vector<JK> qside(m);
            for (std::size_t k = 0; k < m; ++k) qside[k] = Q * side[k];
            std::size_t p = 0;
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = a; b < m; ++b, ++p) {
                    out[p] = cj.psi[a] * cj.psi[b];
                    out[P + p] = cj.dpsi[a] * cj.dpsi[b];
                    out[2 * P + p] = qside[a] * side[b];
                    if (extra) out[3 * P + p] = side[a] * side[b];
                }
        };
        QuadManyResult q = integrate_many<kOrder>(f, sg.a, sg.b, outputs, targets, 1 << 14, 4);
        parts.budget_exceeded = parts.budget_exceeded || q.budget_exceeded;
        for (std::size_t p = 0; p < P; ++p) {
            parts.mass[p] += q.values[p];
            parts.grad[p] += q.values[P + p];
            parts.pot[p] += q.values[2 * P + p];
            if (sg.lint) lint[p] += q.values[3 * P + p];
            if (sg.rint) rint[p] += q.values[3 * P + p];
        }
    }

    // Sub-ulp segment around a non-dyadic apex preimage: enclose by width times range.
    if (um.lo < um.hi) {
        double wdt = um.width();
        Interval full(0.0, wdt);
        ComboJets tj;
        eval_combos(c, w, um, false, tj);
        Interval qa = qlm - sqr(um) * c.pi2T;
        Interval qb = qrm - sqr(Interval(1.0) - um) * c.pi2T;
        std::size_t p = 0;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a; b < m; ++b, ++p) {
                parts.mass[p] += Interval(wdt) * (tj.psi[a].c[0] * tj.psi[b].c[0]);
                parts.grad[p] += Interval(wdt) * (tj.dpsi[a].c[0] * tj.dpsi[b].c[0]);
                parts.pot[p] += full * (qa * tj.ell[a].c[0] * tj.ell[b].c[0]) +
                                full * (qb * tj.r[a].c[0] * tj.r[b].c[0]);
            }
    }

    // Boundary and interior terms of d/ds over J.
    if (!J.is_point()) {
        std::vector<Interval> ellM(m), rM(m);
        double mm = M.mid();
        ComboJets at_mid, over;
        eval_combos(c, w, Interval(mm), false, at_mid);
        eval_combos(c, w, M, false, over);
        Interval off = M - Interval(mm);
        for (std::size_t k = 0; k < m; ++k) {
            ellM[k] = taylor_form(at_mid.ell[k], over.ell[k], off);
            rM[k] = taylor_form(at_mid.r[k], over.r[k], off);
        }
        // Ql and Qr both equal C0/L^2 at the moving apex preimage.
        Interval qapex = c.C0 / c.L2;
        Interval dl = c.dql(J), dr = c.dqr(J);
        Interval span(0.0, M.width());
        Interval half(0.5);
        std::size_t p = 0;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a; b < m; ++b, ++p) {
                Interval ll = ellM[a] * ellM[b];
                Interval rr = rM[a] * rM[b];
                Interval d = half * qapex * (ll - rr) + dl * (lint[p] + span * ll) + dr * (rint[p] + span * rr);
                parts.deriv[p] = c.L * d;
            }
    }
    return parts;
}

// A = grad/L + L pot(s_m) + deriv (J - s_m), B = L mass.
void finish(const Context& c, const Parts& parts, const Interval& J, double s_m, IntervalMatrix& A, IntervalMatrix& B) {
    int m = static_cast<int>(parts.m);
    A = IntervalMatrix(m, m);
    B = IntervalMatrix(m, m);
    Interval ds = J - Interval(s_m);
    std::size_t p = 0;
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b, ++p) {
            Interval av = parts.grad[p] / c.L + c.L * parts.pot[p] + parts.deriv[p] * ds;
            Interval bv = c.L * parts.mass[p];
            A(a, b) = A(b, a) = av;
            B(a, b) = B(b, a) = bv;
        }
}

Weights identity_weights(int nb) {
    Weights w(nb, std::vector<double>(nb, 0.0));
    for (int i = 0; i < nb; ++i) w[i][i] = 1.0;
    return w;
}

// Gauss-Legendre nodes and weights on [-1,1].
struct GaussRule {
    std::vector<double> x, w;
    explicit GaussRule(int n) : x(n), w(n) {
        for (int i = 0; i < n; ++i) {
            double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                double dz = p1 / dp;
                z -= dz;
                if (std::fabs(dz) < 1e-16) break;
            }
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }
};

const GaussRule& gauss10() {
    static const GaussRule rule(10);
    return rule;
}

}  // namespace

TrialBasis make_basis(const ScaledInterval& endpoints, int n) {
    if (n < 2) throw DomainError("basis dimension must be at least 2");
    TrialBasis b;
    b.n = n;
    b.endpoints = endpoints;
    Interval den(2.0 * (n - 1));
    for (int i = 1; i <= n; ++i) {
        Interval wl(static_cast<double>(n - i)), wr(static_cast<double>(i + n - 2));
        b.centers.push_back((wl * endpoints.a_left + wr * endpoints.a_right) / den);
        b.nu.push_back(wr / den);
    }
    return b;
}

TrialBasis with_apex(TrialBasis basis, double s_lo) {
    basis.apex_u = fp::div_down(fp::add_down(1.0, s_lo), 2.0);
    return basis;
}

IntervalPencil assemble_pencil(const Interval& s_interval, const Interval& t0, const TrialBasis& basis,
                               double quad_target) {
    if (!(quad_target > 0.0)) throw DomainError("quad_target must be positive");
    Context c(t0, basis);
    double s_m = dyadic_mid(s_interval);
    Parts parts = rigorous_parts(c, identity_weights(c.nb), s_interval, s_m, quad_target);
    IntervalPencil pen;
    pen.s_interval = s_interval;
    finish(c, parts, s_interval, s_m, pen.A, pen.B);
    pen.assembly_width = std::max(pen.A.max_width(), pen.B.max_width());
    pen.budget_exceeded = parts.budget_exceeded;
    return pen;
}

void float_pencil(double s, double t0, const TrialBasis& basis, Matrix& A, Matrix& B) {
    double T = std::pow(t0, -2.0 / 3.0);
    double L = 2.0 * T, L2 = L * L;
    double pi2 = M_PI * M_PI;
    double C0 = (3.0 + 4.0 * pi2) / 12.0;
    double um = 0.5 * (1.0 + s);
    int n = basis.n;
    int nb = basis.size();
    std::vector<double> nu(n);
    for (int i = 0; i < n; ++i) nu[i] = basis.nu[i].mid();
    A = Matrix(nb, nb);
    B = Matrix(nb, nb);
    std::vector<double> phi(nb), dphi(nb), side(nb);
    auto accumulate = [&](double a, double b, bool left, bool apex) {
        if (!(a < b)) return;
        const GaussRule& g = gauss10();
        const int panels = 48;
        double h = (b - a) / panels;
        for (int pnl = 0; pnl < panels; ++pnl) {
            double pa = a + pnl * h;
            for (std::size_t q = 0; q < g.x.size(); ++q) {
                double u = pa + 0.5 * h * (g.x[q] + 1.0);
                double wq = 0.5 * h * g.w[q];
                for (int i = 0; i < n; ++i) {
                    double z = L * (u - nu[i]);
                    double G = std::exp(-z * z);
                    phi[i] = -L2 * u * (1.0 - u) * G;
                    dphi[i] = -L2 * ((1.0 - 2.0 * u) * G + u * (1.0 - u) * G * (-2.0 * z * L));
                    side[i] = left ? -L2 * (1.0 - u) * G : -L2 * u * G;
                }
                if (nb > n) {
                    double uc = *basis.apex_u;
                    if (apex) {
                        double z = L * (u - uc) + 1.0;
                        double E = std::exp(-z * z);
                        phi[n] = L2 * u * (uc - u) * E;
                        dphi[n] = L2 * ((uc - 2.0 * u) * E + u * (uc - u) * E * (-2.0 * z * L));
                        side[n] = L2 * (uc - u) * E;
                    } else {
                        phi[n] = dphi[n] = side[n] = 0.0;
                    }
                }
                double Q = left ? (pi2 * T * (T * T * (1 + s) * (1 + s) - u * u * L2) + C0) / L2
                                : (pi2 * T * (T * T * (1 - s) * (1 - s) - (1 - u) * (1 - u) * L2) + C0) / L2;
                for (int i = 0; i < nb; ++i)
                    for (int j = i; j < nb; ++j) {
                        B(i, j) += wq * L * phi[i] * phi[j];
                        A(i, j) += wq * (dphi[i] * dphi[j] / L + L * Q * side[i] * side[j]);
                    }
            }
        }
    };
    double start = 0.0;
    if (basis.apex_u) {
        accumulate(0.0, *basis.apex_u, true, true);
        start = *basis.apex_u;
    }
    accumulate(start, um, true, false);
    accumulate(um, 1.0, false, false);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < i; ++j) {
            A(i, j) = A(j, i);
            B(i, j) = B(j, i);
        }
}

std::vector<EigenPair> approx_spectrum(const Matrix& A, const Matrix& B) { return generalized_eigen(A, B); }

namespace {

// Tightens an upper bound on the larger root of det(A - x B) = 0. With det(B) > 0 the
// determinant is a convex parabola in x, so det > 0 and d/dx det > 0 at x put x above
// both roots for every member of the interval pencil.
double tighten_root(const IntervalMatrix& A2, const IntervalMatrix& B2, double bound) {
    long double a = A2(0, 0).mid(), b = A2(0, 1).mid(), d = A2(1, 1).mid();
    long double p = B2(0, 0).mid(), q = B2(0, 1).mid(), r = B2(1, 1).mid();
    long double c2 = p * r - q * q, c1 = -(a * r + d * p - 2.0L * b * q), c0 = a * d - b * b;
    long double disc = c1 * c1 - 4.0L * c2 * c0;
    if (!(c2 > 0.0L) || !(disc >= 0.0L)) return bound;
    long double root = c1 <= 0.0L ? (-c1 + std::sqrt(disc)) / (2.0L * c2) : (2.0L * c0) / (-c1 - std::sqrt(disc));
    double x = static_cast<double>(root);
    for (int step = 0; step < 64 && x < bound; ++step, x = fp::next_up(x)) {
        Interval X(x);
        Interval e11 = A2(0, 0) - X * B2(0, 0), e12 = A2(0, 1) - X * B2(0, 1), e22 = A2(1, 1) - X * B2(1, 1);
        Interval det = e11 * e22 - sqr(e12);
        // d/dx det = -(b11 e22 + b22 e11 - 2 b12 e12)
        Interval slope = -(B2(0, 0) * e22 + B2(1, 1) * e11 - Interval(2.0) * B2(0, 1) * e12);
        if (det.lo > 0.0 && slope.lo > 0.0) return x;
    }
    return bound;
}

}  // namespace

double reduced_upper(const IntervalMatrix& A2, const IntervalMatrix& B2) {
    const Interval &b11 = B2(0, 0), &b12 = B2(0, 1), &b22 = B2(1, 1);
    Interval detb = b11 * b22 - sqr(b12);
    if (!(b11.lo > 0.0) || !(detb.lo > 0.0)) throw PosDefFail("reduced mass matrix not certified positive definite");
    // Normalize by the float Cholesky factor of mid(B): C B C^T = I + E with ||E|| <= delta.
    double m11 = b11.mid(), m12 = b12.mid(), m22 = b22.mid();
    double r11 = std::sqrt(m11);
    double r21 = m12 / r11;
    double r22 = std::sqrt(m22 - r21 * r21);
    if (!(r22 > 0.0)) throw PosDefFail("midpoint reduced mass matrix is not positive definite");
    // C = R^{-1} with R lower triangular.
    Interval c11(1.0 / r11), c22(1.0 / r22), c21(-r21 / (r11 * r22));
    auto congruence = [&](const IntervalMatrix& X, Interval& y11, Interval& y12, Interval& y22) {
        y11 = sqr(c11) * X(0, 0);
        y12 = c11 * (c21 * X(0, 0) + c22 * X(0, 1));
        y22 = sqr(c21) * X(0, 0) + Interval(2.0) * c21 * c22 * X(0, 1) + sqr(c22) * X(1, 1);
    };
    Interval a11, a12, a22, e11, e12, e22;
    congruence(A2, a11, a12, a22);
    congruence(B2, e11, e12, e22);
    double delta = std::max(fp::add_up(abs(e11 - Interval(1.0)).hi, abs(e12).hi),
                            fp::add_up(abs(e22 - Interval(1.0)).hi, abs(e12).hi));
    if (!(delta < 0.5)) throw PosDefFail("reduced mass matrix too far from its midpoint");
    // The larger eigenvalue (a+d)/2 + sqrt(((a-d)/2)^2 + b^2) is increasing in a, d and |b|.
    Interval p(a11.hi), q(a22.hi), off(abs(a12).hi);
    Interval half(0.5);
    Interval disc = sqr(half * (p - q)) + sqr(off);
    if (disc.hi < 0.0) throw ComplexRoots("negative discriminant in the reduced pencil");
    Interval lam = half * (p + q) + sqrt(disc);
    Interval bound = lam.hi >= 0.0 ? Interval(lam.hi) / (Interval(1.0) - Interval(delta))
                                   : Interval(lam.hi) / (Interval(1.0) + Interval(delta));
    return tighten_root(A2, B2, bound.hi);
}

UpperBoundResult certified_upper_mu2(const IntervalPencil& pencil, const std::vector<double>& seed1,
                                     const std::vector<double>& seed2) {
    int n = pencil.A.rows;
    if (static_cast<int>(seed1.size()) != n || static_cast<int>(seed2.size()) != n)
        throw DomainError("seed vector dimension mismatch");
    const std::vector<double>* W[2] = {&seed1, &seed2};
    IntervalMatrix A2(2, 2), B2(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = a; b < 2; ++b) {
            Interval sa(0.0), sb(0.0);
            for (int i = 0; i < n; ++i) {
                Interval ta(0.0), tb(0.0);
                for (int j = 0; j < n; ++j) {
                    Interval wj((*W[b])[j]);
                    ta += pencil.A(i, j) * wj;
                    tb += pencil.B(i, j) * wj;
                }
                Interval wi((*W[a])[i]);
                sa += wi * ta;
                sb += wi * tb;
            }
            A2(a, b) = A2(b, a) = sa;
            B2(a, b) = B2(b, a) = sb;
        }
    UpperBoundResult res;
    res.s_interval = pencil.s_interval;
    res.upper = reduced_upper(A2, B2);
    res.posdef_certified = true;
    std::vector<EigenPair> sp = approx_spectrum(pencil.A.midpoint(), pencil.B.midpoint());
    res.float_estimate = sp.size() > 1 ? sp[1].value : sp[0].value;
    return res;
}

UpperBoundResult certified_upper_reduced(const Interval& s_interval, const Interval& t0, const TrialBasis& basis,
                                         const std::vector<double>& seed1, const std::vector<double>& seed2,
                                         double quad_target) {
    Context c(t0, basis);
    if (static_cast<int>(seed1.size()) != c.nb || static_cast<int>(seed2.size()) != c.nb)
        throw DomainError("seed vector dimension mismatch");
    double s_m = dyadic_mid(s_interval);
    Parts parts = rigorous_parts(c, Weights{seed1, seed2}, s_interval, s_m, quad_target);
    IntervalMatrix A2, B2;
    finish(c, parts, s_interval, s_m, A2, B2);
    UpperBoundResult res;
    res.s_interval = s_interval;
    res.upper = reduced_upper(A2, B2);
    res.posdef_certified = true;
    return res;
}

UpperBoundResult upper_on_subinterval(const Interval& s_interval, const SweepConfig& cfg) {
    TrialBasis basis = make_basis(scaled_interval(TriangleParams{s_interval, cfg.t0}), cfg.n_basis);
    if (cfg.basis == BasisKind::Enriched && s_interval.lo >= cfg.apex_from) basis = with_apex(basis, s_interval.lo);
    double s_m = dyadic_mid(s_interval);
    Matrix A, B;
    float_pencil(s_m, cfg.t0.mid(), basis, A, B);
    std::vector<EigenPair> sp = approx_spectrum(A, B);
    UpperBoundResult res =
        certified_upper_reduced(s_interval, cfg.t0, basis, sp[0].vector, sp[1].vector, cfg.quad_target);
    res.float_estimate = sp[1].value;
    return res;
}

namespace {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    int nt = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    nt = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(nt), count));
    if (nt <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nt));
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = next++; i < count; i = next++) body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    for (std::thread& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// Float estimate that bisection can approach: at the midpoint, with the apex
// function (if any) clamped at the midpoint preimage.
double achievable_estimate(const Interval& s_interval, const SweepConfig& cfg) {
    double s_m = dyadic_mid(s_interval);
    TrialBasis basis = make_basis(scaled_interval(TriangleParams{Interval(s_m), cfg.t0}), cfg.n_basis);
    if (cfg.basis == BasisKind::Enriched && s_interval.lo >= cfg.apex_from) basis = with_apex(basis, s_m);
    Matrix A, B;
    float_pencil(s_m, cfg.t0.mid(), basis, A, B);
    return approx_spectrum(A, B)[1].value;
}

}  // namespace

SweepResult algorithm1_sweep(const SweepConfig& cfg) {
    if (cfg.n_basis < 2 || cfg.n_s < 1) throw DomainError("sweep needs n >= 2 and n_s >= 1");
    struct Item {
        Interval s;
        int depth;
    };
    std::vector<Item> level;
    for (const Interval& piece : subdivide(Interval(0.0, 1.0), cfg.n_s)) level.push_back({piece, 0});
    SweepResult out;
    while (!level.empty()) {
        std::vector<UpperBoundResult> res(level.size());
        std::vector<char> failed(level.size(), 0);
        parallel_for(level.size(), cfg.threads, [&](std::size_t i) {
            try {
                res[i] = upper_on_subinterval(level[i].s, cfg);
            } catch (const PosDefFail&) {
                failed[i] = 1;
            } catch (const ComplexRoots&) {
                failed[i] = 1;
            }
        });
        std::vector<Item> next;
        for (std::size_t i = 0; i < level.size(); ++i) {
            const UpperBoundResult& r = res[i];
            bool wants = failed[i] || (r.upper > cfg.refine_above && achievable_estimate(level[i].s, cfg) < cfg.refine_above);
            if (wants && level[i].depth < cfg.max_depth) {
                for (const Interval& half : subdivide(level[i].s, 2)) next.push_back({half, level[i].depth + 1});
                ++out.refinements;
            } else if (failed[i]) {
                throw PosDefFail("certification failed on s in " + to_string(level[i].s));
            } else {
                out.per_subinterval.push_back(r);
            }
        }
        level = std::move(next);
    }
    std::sort(out.per_subinterval.begin(), out.per_subinterval.end(),
              [](const UpperBoundResult& a, const UpperBoundResult& b) { return a.s_interval.lo < b.s_interval.lo; });
    out.U = -std::numeric_limits<double>::infinity();
    for (const UpperBoundResult& r : out.per_subinterval) out.U = std::max(out.U, r.upper);
    return out;
}

SweepResult algorithm1_sweep(int n, int n_s, const Interval& t0, double quad_target) {
    SweepConfig cfg;
    cfg.n_basis = n;
    cfg.n_s = n_s;
    cfg.t0 = t0;
    cfg.quad_target = quad_target;
    return algorithm1_sweep(cfg);
}

}  // namespace gapcert
